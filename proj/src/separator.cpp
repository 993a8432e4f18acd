#include "sspd/separator.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sspd/geometry.hpp"
#include "sspd/partition.hpp"
#include "sspd/quadtree.hpp"
#include "sspd/rng.hpp"
#include "sspd/sspd.hpp"

namespace sspd {

namespace {

IndexSet merge_sorted(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IndexSet minus_sorted(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

PairDecomposition mild_sspd(const IndexSet& pin, const IndexSet& pout, const RingGap& gap,
                            const PointSet& pts, double eps) {
  if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("mild_sspd: eps must be in (0, 1]");
  PairDecomposition out;
  out.kind = DecompositionKind::sspd;
  out.separation = 1.0 / eps;
  if (pin.empty() || pout.empty()) return out;
  if (!(gap.r >= 0.0) || !(gap.t_gap > 0.0) || gap.R < gap.r + gap.t_gap)
    throw std::invalid_argument("mild_sspd: malformed gap");

  const double inner_sq = gap.r * gap.r;
  const double mid = gap.r + gap.t_gap;
  const double mid_sq = mid * mid;
  const double outer_sq = gap.R * gap.R;
  for (Index q : pin)
    if (dist_sq(pts, gap.center, q) > inner_sq)
      throw std::invalid_argument("mild_sspd: gap violated by inner point " + std::to_string(q));
  for (Index q : pout) {
    const double dsq = dist_sq(pts, gap.center, q);
    if (!(dsq > mid_sq) || dsq > outer_sq)
      throw std::invalid_argument("mild_sspd: gap violated by outer point " + std::to_string(q));
  }

  const auto d = static_cast<double>(pts.dim());
  const double cell = eps * gap.t_gap / (8.0 * d);
  const IndexSet rset = merge_sorted(pin, pout);
  const GridSnap snap = snap_to_grid(rset, pts, cell);
  const BoundedWspd w = wspd_bounded_spread(snap.points.all_indices(), snap.points, 1.0);

  std::vector<std::uint8_t> in_mask(pts.size(), 0);
  for (Index q : pin) in_mask[q] = 1;

  auto refine_and_emit = [&](IndexSet&& u, IndexSet&& v) {
    if (u.empty() || v.empty()) return;
    const double du = diameter(u, pts, DiameterMode::approx);
    const double dv = diameter(v, pts, DiameterMode::approx);
    IndexSet& small = du <= dv ? u : v;
    IndexSet& other = du <= dv ? v : u;
    const double delta = eps * std::min(du, dv) / 4.0;
    std::vector<IndexSet> clusters;
    if (small.size() == 1 || !(delta > 0.0)) clusters.push_back(std::move(small));
    else clusters = cluster_by_diameter(small, pts, delta);
    for (IndexSet& c : clusters) {
      Pair pr{std::move(c), IndexSet(other), PairTag::plain};
      pr.canonicalize();
      out.pairs.push_back(std::move(pr));
    }
  };

  for (const Pair& pr : w.decomposition.pairs) {
    IndexSet a, b;
    for (Index cj : pr.left) a.insert(a.end(), snap.originals[cj].begin(), snap.originals[cj].end());
    for (Index cj : pr.right) b.insert(b.end(), snap.originals[cj].begin(), snap.originals[cj].end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    IndexSet a_in, a_out, b_in, b_out;
    for (Index q : a) (in_mask[q] ? a_in : a_out).push_back(q);
    for (Index q : b) (in_mask[q] ? b_in : b_out).push_back(q);
    refine_and_emit(std::move(a_in), std::move(b_out));
    refine_and_emit(std::move(b_in), std::move(a_out));
  }
  return out;
}

namespace {

struct SepCtx {
  const PointSet* pts = nullptr;
  double eps = 0.0;
  SeparatorSspd out;
};

std::size_t pick_t(std::size_t n, std::size_t dim) {
  const double v = 0.5 * std::pow(static_cast<double>(n), 1.0 / static_cast<double>(dim));
  const auto t = static_cast<std::size_t>(std::ceil(v - 1e-9));
  return std::max<std::size_t>(std::size_t{1}, t);
}

void sep_recurse(SepCtx& ctx, const IndexSet& x, Rng rng, std::size_t level) {
  const std::size_t n = x.size();
  if (n <= 1) return;
  PairDecomposition& dec = ctx.out.decomposition;
  if (n == 2) {
    dec.pairs.push_back(Pair{{x[0]}, {x[1]}, PairTag::base});
    return;
  }

  const PointSet& pts = *ctx.pts;
  const std::size_t t = pick_t(n, pts.dim());
  const RingResult ring = ring_separator(x, pts, t, rng);
  const Index p = ring.center;
  const double r = ring.radius;
  const double outer = r * (1.0 + 1.0 / static_cast<double>(t));
  const double r_sq = r * r;
  const double outer_sq = outer * outer;
  const double twor = 2.0 * r;
  const double twor_sq = twor * twor;

  IndexSet pin, pring, pout, pouter;
  for (Index q : x) {
    const double dsq = dist_sq(pts, p, q);
    if (dsq <= r_sq) pin.push_back(q);
    else if (dsq <= outer_sq) pring.push_back(q);
    else if (dsq <= twor_sq) pout.push_back(q);
    else pouter.push_back(q);
  }

  ctx.out.levels.push_back(
      LevelBrief{level, n, t, pin.size(), pring.size(), pout.size(), pouter.size()});
  const bool top = level == 0;
  if (top) {
    ctx.out.top.center = p;
    ctx.out.top.r = r;
    ctx.out.top.r_outer = outer;
    ctx.out.top.t = t;
    ctx.out.top.effective_c = ring.effective_c;
    ctx.out.top.pin = pin;
    ctx.out.top.pring = pring;
    ctx.out.top.pout = pout;
    ctx.out.top.pouter = pouter;
  }

  // Stage A: the randomized decomposition of the whole node, kept only where
  // it crosses the ring. Residues of ring-free pairs are never built.
  if (!pring.empty()) {
    SspdConfig cfg;
    cfg.eps = ctx.eps;
    cfg.seed = rng.split(4).seed();
    cfg.reduce = false;
    PairDecomposition cut = sspd_optimal_cut(x, pts, cfg, pring, PairTag::stage_a);
    for (Pair& pr : cut.pairs) dec.pairs.push_back(std::move(pr));
  }

  // Stage B: inner clusters against the far outside.
  if (!pin.empty() && !pouter.empty()) {
    std::vector<IndexSet> clusters;
    if (pin.size() == 1 || !(r > 0.0)) clusters.push_back(pin);
    else clusters = cluster_by_diameter(pin, pts, ctx.eps * r / 10.0);
    for (IndexSet& c : clusters) {
      if (top) ctx.out.top_stage_b.push_back(dec.pairs.size());
      Pair pr{std::move(c), IndexSet(pouter), PairTag::stage_b};
      pr.canonicalize();
      dec.pairs.push_back(std::move(pr));
    }
  }

  // Stage C: across the (now point-free) ring.
  if (!pin.empty() && !pout.empty() && r > 0.0) {
    const double t_gap = outer - r;  // exact: outer <= 2r
    PairDecomposition mild = mild_sspd(pin, pout, RingGap{p, r, t_gap, twor}, pts, ctx.eps);
    for (Pair& pr : mild.pairs) {
      pr.tag = PairTag::stage_c;
      if (top) ctx.out.top_stage_c.push_back(dec.pairs.size());
      dec.pairs.push_back(std::move(pr));
    }
  }

  // Stage D.
  sep_recurse(ctx, pin, rng.split(1), level + 1);
  sep_recurse(ctx, pring, rng.split(2), level + 1);
  sep_recurse(ctx, merge_sorted(pout, pouter), rng.split(3), level + 1);
}

}  // namespace

SeparatorSspd sspd_with_separator(const IndexSet& x, const PointSet& pts, double eps,
                                  std::uint64_t seed) {
  if (!(eps > 0.0) || eps > 1.0)
    throw std::invalid_argument("sspd_with_separator: eps must be in (0, 1]");
  SepCtx ctx;
  ctx.pts = &pts;
  ctx.eps = eps;
  ctx.out.decomposition.kind = DecompositionKind::sspd;
  ctx.out.decomposition.separation = 1.0 / eps;
  sep_recurse(ctx, x, Rng(seed), 0);
  return std::move(ctx.out);
}

SeparatorBuild separator_spanner_build(const IndexSet& x, const PointSet& pts, double eps,
                                       std::uint64_t seed) {
  if (!(eps > 0.0) || eps > 1.0)
    throw std::invalid_argument("separator_spanner_build: eps must be in (0, 1]");
  const Rng base(seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    const std::uint64_t s = attempt == 0 ? seed : base.split(100 + attempt).seed();
    SeparatorSspd dec = sspd_with_separator(x, pts, eps / 16.0, s);
    SpannerResult sp = spanner_from_sspd(dec.decomposition, pts, eps);

    IndexSet hubs;
    for (std::size_t i : dec.top_stage_b) hubs.push_back(sp.hubs.hub_of_pair[i]);
    for (std::size_t i : dec.top_stage_c) hubs.push_back(sp.hubs.hub_of_pair[i]);
    std::sort(hubs.begin(), hubs.end());
    hubs.erase(std::unique(hubs.begin(), hubs.end()), hubs.end());

    SeparatorCertificate cert;
    cert.separator = merge_sorted(dec.top.pring, hubs);
    cert.side_a = minus_sorted(dec.top.pin, cert.separator);
    cert.side_b = minus_sorted(merge_sorted(dec.top.pout, dec.top.pouter), cert.separator);
    if (cert.side_a.empty() || cert.side_b.empty()) continue;  // degenerate split, reseed

    return SeparatorBuild{std::move(sp.graph), std::move(cert), std::move(sp.hubs),
                          std::move(dec)};
  }
  throw std::runtime_error("separator_spanner_build: degenerate split after 8 attempts");
}

SeparatorReport verify_separator(const SpannerGraph& g, const SeparatorCertificate& cert) {
  SeparatorReport rep;
  rep.separator_size = cert.separator.size();
  rep.side_a_size = cert.side_a.size();
  rep.side_b_size = cert.side_b.size();

  std::vector<std::uint8_t> role(g.n, 0);  // 1 separator, 2 side_a, 3 side_b
  bool okp = true;
  auto mark = [&](const IndexSet& s, std::uint8_t v) {
    for (Index q : s) {
      if (q >= g.n || role[q] != 0) {
        okp = false;
        continue;
      }
      role[q] = v;
    }
  };
  mark(cert.separator, 1);
  mark(cert.side_a, 2);
  mark(cert.side_b, 3);
  for (std::size_t v = 0; v < g.n; ++v)
    if (role[v] == 0) okp = false;
  rep.partition_ok = okp;

  for (const auto& e : g.edges) {
    const bool crossing = (role[e.u] == 2 && role[e.v] == 3) || (role[e.u] == 3 && role[e.v] == 2);
    if (crossing) {
      if (rep.crossing_edges == 0) rep.first_crossing = {e.u, e.v};
      ++rep.crossing_edges;
    }
  }
  rep.ok = rep.partition_ok && rep.crossing_edges == 0;
  return rep;
}

void write_certificate(std::ostream& out, const SeparatorCertificate& cert) {
  const auto line = [&out](const char* name, const IndexSet& s) {
    out << name;
    for (Index q : s) out << ' ' << q;
    out << '\n';
  };
  line("SEP:", cert.separator);
  line("A:", cert.side_a);
  line("B:", cert.side_b);
}

}  // namespace sspd
