#include "sspd/sspd.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sspd/geometry.hpp"
#include "sspd/partition.hpp"
#include "sspd/quadtree.hpp"
#include "sspd/rng.hpp"

namespace sspd {

namespace {

IndexSet merge_sorted(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool disjoint_sorted(const IndexSet& a, const IndexSet& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j]) ++i;
    else ++j;
  }
  return true;
}

bool subset_has_duplicates(const IndexSet& x, const PointSet& pts) {
  std::vector<Index> order(x.begin(), x.end());
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    auto pa = pts[a], pb = pts[b];
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    auto pa = pts[order[i - 1]], pb = pts[order[i]];
    if (std::equal(pa.begin(), pa.end(), pb.begin(), pb.end())) return true;
  }
  return false;
}

std::size_t auto_base_threshold(double eps, std::size_t dim) {
  const double v = std::ceil(std::pow(1.0 / eps, static_cast<double>(dim)));
  if (v > 32.0 && v < 1e9) return static_cast<std::size_t>(v);
  return 32;
}

void bump(std::vector<std::size_t>& hist, std::size_t idx, std::size_t by) {
  if (hist.size() <= idx) hist.resize(idx + 1, 0);
  hist[idx] += by;
}

// --- randomized decomposition ------------------------------------------------

struct OptCtx {
  const PointSet* pts = nullptr;
  double eps = 0.0;
  std::size_t base = 0;
  double rho = 0.0;  // separation parameter of the cross-cut WSPD
  PairDecomposition out;
  SspdDiagnostics diag;
  double gap_sum = 0.0;
  std::vector<std::uint8_t> labels;    // scratch side marks, indexed by point
  std::vector<std::uint8_t> cut_mask;  // nonempty: keep only residues crossing the cut
  PairTag cut_tag = PairTag::plain;
  bool record = true;  // keep per-step diagnostics
};

void push_canonical(OptCtx& ctx, IndexSet&& a, IndexSet&& b, PairTag tag) {
  Pair pr{std::move(a), std::move(b), tag};
  pr.canonicalize();
  ctx.out.pairs.push_back(std::move(pr));
}

/// Emit (a, b) as constructed, or only its residues crossing the cut.
void emit_pair(OptCtx& ctx, IndexSet&& a, IndexSet&& b, PairTag tag) {
  if (ctx.cut_mask.empty()) {
    push_canonical(ctx, std::move(a), std::move(b), tag);
    return;
  }
  IndexSet a_in, a_out, b_in, b_out;
  for (Index q : a) (ctx.cut_mask[q] ? a_in : a_out).push_back(q);
  for (Index q : b) (ctx.cut_mask[q] ? b_in : b_out).push_back(q);
  if (!a_in.empty() && !b_out.empty()) push_canonical(ctx, std::move(a_in), std::move(b_out), ctx.cut_tag);
  if (!a_out.empty() && !b_in.empty()) push_canonical(ctx, std::move(a_out), std::move(b_in), ctx.cut_tag);
}

void emit_base_pairs(OptCtx& ctx, const IndexSet& x) {
  if (ctx.cut_mask.empty()) {
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = i + 1; j < x.size(); ++j)
        ctx.out.pairs.push_back(Pair{{x[i]}, {x[j]}, PairTag::base});
    return;
  }
  IndexSet ins, outs;
  for (Index q : x) (ctx.cut_mask[q] ? ins : outs).push_back(q);
  for (Index a : ins)
    for (Index b : outs)
      ctx.out.pairs.push_back(Pair{{std::min(a, b)}, {std::max(a, b)}, ctx.cut_tag});
}

void opt_recurse(OptCtx& ctx, const IndexSet& x, Rng rng, std::size_t level) {
  const std::size_t n = x.size();
  if (n <= 1) return;
  if (n <= ctx.base) {
    emit_base_pairs(ctx, x);
    return;
  }

  const PointSet& pts = *ctx.pts;
  const BallResult ball = small_ball(x, pts, 20.0, rng);
  const Index p = ball.center;
  const double r = ball.radius;
  const double x_cut = rng.uniform(5.0 * r, 6.0 * r);
  const double cut_sq = x_cut * x_cut;
  const double far_sq = (20.0 * r) * (20.0 * r);

  IndexSet pin, pout, pouter;
  for (Index q : x) {
    const double dsq = dist_sq(pts, p, q);
    if (dsq <= cut_sq) pin.push_back(q);
    else if (dsq <= far_sq) pout.push_back(q);
    else pouter.push_back(q);
  }

  std::size_t long_pairs = 0, short_pairs = 0;
  std::vector<std::size_t> depth_hist;

  // Long pairs: clusters of the inner ball against everything far away.
  if (!pin.empty() && !pouter.empty()) {
    std::vector<IndexSet> clusters;
    if (pin.size() == 1 || !(r > 0.0)) clusters.push_back(pin);
    else clusters = cluster_by_diameter(pin, pts, ctx.eps * r / 20.0);
    long_pairs = clusters.size();
    if (ctx.cut_mask.empty()) {
      for (IndexSet& c : clusters)
        push_canonical(ctx, std::move(c), IndexSet(pouter), PairTag::long_range);
    } else {
      IndexSet far_in, far_out;  // the shared far side splits once, not per cluster
      for (Index q : pouter) (ctx.cut_mask[q] ? far_in : far_out).push_back(q);
      for (const IndexSet& c : clusters) {
        IndexSet c_in, c_out;
        for (Index q : c) (ctx.cut_mask[q] ? c_in : c_out).push_back(q);
        if (!c_in.empty() && !far_out.empty())
          push_canonical(ctx, std::move(c_in), IndexSet(far_out), ctx.cut_tag);
        if (!c_out.empty() && !far_in.empty())
          push_canonical(ctx, std::move(c_out), IndexSet(far_in), ctx.cut_tag);
      }
    }
  }

  const IndexSet ring_set = merge_sorted(pin, pout);

  // Short pairs: same-level WSPD over the cut neighborhood, restricted to
  // pairs that cross the cut sphere.
  if (!pin.empty() && !pout.empty()) {
    for (Index q : pin) ctx.labels[q] = 1;
    for (Index q : pout) ctx.labels[q] = 2;
    SameLevelOptions opt;
    opt.labels = &ctx.labels;
    opt.prune_single_side = true;
    const BoundedWspd w = same_level_wspd(ring_set, pts, ctx.rho, opt);
    for (std::size_t k = 0; k < w.decomposition.pairs.size(); ++k) {
      const Pair& pr = w.decomposition.pairs[k];
      IndexSet a_in, a_out, b_in, b_out;
      for (Index q : pr.left) (ctx.labels[q] == 1 ? a_in : a_out).push_back(q);
      for (Index q : pr.right) (ctx.labels[q] == 1 ? b_in : b_out).push_back(q);
      const auto depth = static_cast<std::size_t>(w.pair_depths[k]);
      if (!a_in.empty() && !b_out.empty()) {
        emit_pair(ctx, std::move(a_in), std::move(b_out), PairTag::short_range);
        bump(depth_hist, depth, 1);
        ++short_pairs;
      }
      if (!a_out.empty() && !b_in.empty()) {
        emit_pair(ctx, std::move(b_in), std::move(a_out), PairTag::short_range);
        bump(depth_hist, depth, 1);
        ++short_pairs;
      }
    }
    for (Index q : ring_set) ctx.labels[q] = 0;
  }

  if (ctx.record) {
    SspdStep step;
    step.part.center = p;
    step.part.r = r;
    step.part.x_cut = x_cut;
    step.level = level;
    step.gaps.reserve(ring_set.size());
    for (Index q : ring_set) {
      const double dq = dist(pts, p, q) - x_cut;
      step.gaps.push_back(dq);
      // The proxy estimates how many cube-tree levels q straddles the cut
      // sphere. A degenerate ball (r = 0) leaves the ring set a lone center
      // with no tree at all, so there is nothing to sample there.
      if (r > 0.0) {
        const double a = std::fabs(dq);
        double sample = 64.0;
        if (a > 0.0) sample = std::min(64.0, std::max(0.0, std::log2(r / a)));
        ctx.gap_sum += sample;
        ++ctx.diag.gap_samples;
      }
    }
    step.long_pairs = long_pairs;
    step.short_pairs = short_pairs;
    step.short_depth_histogram = std::move(depth_hist);
    step.part.pin = pin;
    step.part.pout = pout;
    step.part.pouter = pouter;
    bump(ctx.diag.longs_per_level, level, long_pairs);
    bump(ctx.diag.shorts_per_level, level, short_pairs);
    ctx.diag.steps.push_back(std::move(step));
  }

  const IndexSet rest = merge_sorted(pout, pouter);
  opt_recurse(ctx, pin, rng.split(1), level + 1);
  opt_recurse(ctx, rest, rng.split(2), level + 1);
}

OptCtx make_opt_ctx(const IndexSet& x, const PointSet& pts, const SspdConfig& cfg,
                    const char* who) {
  if (!(cfg.eps > 0.0) || cfg.eps > 1.0)
    throw std::invalid_argument(std::string(who) + ": eps must be in (0, 1]");
  if (subset_has_duplicates(x, pts))
    throw std::invalid_argument(std::string(who) + ": duplicate points");
  OptCtx ctx;
  ctx.pts = &pts;
  ctx.eps = cfg.eps;
  ctx.base = cfg.base_threshold ? cfg.base_threshold : auto_base_threshold(cfg.eps, pts.dim());
  ctx.rho = cfg.reduce ? cfg.eps / 24.0 : cfg.eps / 4.0;
  ctx.labels.assign(pts.size(), 0);
  ctx.out.kind = DecompositionKind::sspd;
  ctx.out.separation = 1.0 / cfg.eps;
  return ctx;
}

// --- ring-based decomposition ------------------------------------------------

struct SimpleCtx {
  const PointSet* pts = nullptr;
  double eps = 0.0;
  PairDecomposition out;
  std::vector<std::uint8_t> in_mask;  // scratch, indexed by point
};

void simple_recurse(SimpleCtx& ctx, const IndexSet& x, Rng rng) {
  const std::size_t n = x.size();
  if (n <= 1) return;
  if (n == 2) {
    ctx.out.pairs.push_back(Pair{{x[0]}, {x[1]}, PairTag::plain});
    return;
  }

  const PointSet& pts = *ctx.pts;
  const RingResult ring = ring_separator(x, pts, n, rng);  // t = n: the ring is point-free
  const Index p = ring.center;
  const double r = ring.radius;
  const double r_sq = r * r;
  const double far = 4.0 * r / ctx.eps;
  const double far_sq = far * far;

  IndexSet pin, pout, pouter;
  for (Index q : x) {
    const double dsq = dist_sq(pts, p, q);
    if (dsq <= r_sq) pin.push_back(q);
    else if (dsq <= far_sq) pout.push_back(q);
    else pouter.push_back(q);
  }

  if (!pin.empty() && !pouter.empty()) {
    Pair pr{pin, pouter, PairTag::plain};
    pr.canonicalize();
    ctx.out.pairs.push_back(std::move(pr));
  }

  if (!pin.empty() && !pout.empty() && r > 0.0) {
    const IndexSet rset = merge_sorted(pin, pout);
    const double sd = std::sqrt(static_cast<double>(pts.dim()));
    // r/(2n) underestimates the closest-pair distance of rset on anything but
    // adversarial data; the snapped spread stays polynomial in n.
    double cell = ctx.eps * (r / (2.0 * static_cast<double>(n))) / (2.0 * sd);
    for (Index q : pin) ctx.in_mask[q] = 1;

    for (int attempt = 0;; ++attempt) {
      const GridSnap snap = snap_to_grid(rset, pts, cell);
      bool mixed = false;
      for (const IndexSet& members : snap.originals) {
        bool has_in = false, has_out = false;
        for (Index q : members) (ctx.in_mask[q] ? has_in : has_out) = true;
        if (has_in && has_out) {
          mixed = true;
          break;
        }
      }
      if (!mixed) {
        const BoundedWspd w =
            wspd_bounded_spread(snap.points.all_indices(), snap.points, ctx.eps / 2.0);
        for (const Pair& pr : w.decomposition.pairs) {
          IndexSet a, b;
          for (Index cj : pr.left)
            a.insert(a.end(), snap.originals[cj].begin(), snap.originals[cj].end());
          for (Index cj : pr.right)
            b.insert(b.end(), snap.originals[cj].begin(), snap.originals[cj].end());
          std::sort(a.begin(), a.end());
          std::sort(b.begin(), b.end());
          IndexSet a_in, a_out, b_in, b_out;
          for (Index q : a) (ctx.in_mask[q] ? a_in : a_out).push_back(q);
          for (Index q : b) (ctx.in_mask[q] ? b_in : b_out).push_back(q);
          if (!a_in.empty() && !b_out.empty()) {
            Pair s{std::move(a_in), std::move(b_out), PairTag::plain};
            s.canonicalize();
            ctx.out.pairs.push_back(std::move(s));
          }
          if (!a_out.empty() && !b_in.empty()) {
            Pair s{std::move(b_in), std::move(a_out), PairTag::plain};
            s.canonicalize();
            ctx.out.pairs.push_back(std::move(s));
          }
        }
        break;
      }
      // A cell holds points from both sides of the sphere, so re-expansion
      // would lose their crossings. Re-snap below the exact cross gap; a
      // second mixed cell is then geometrically impossible.
      if (attempt >= 1) throw std::logic_error("sspd_simple: grid refinement failed");
      double cross_min_sq = std::numeric_limits<double>::infinity();
      for (Index a : pin)
        for (Index b : pout) cross_min_sq = std::min(cross_min_sq, dist_sq(pts, a, b));
      cell = ctx.eps * std::sqrt(cross_min_sq) / (2.0 * sd);
    }

    for (Index q : pin) ctx.in_mask[q] = 0;
  }

  const IndexSet rest = merge_sorted(pout, pouter);
  simple_recurse(ctx, pin, rng.split(1));
  simple_recurse(ctx, rest, rng.split(2));
}

}  // namespace

PairDecomposition sspd_simple(const IndexSet& x, const PointSet& pts, double eps,
                              std::uint64_t seed) {
  if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("sspd_simple: eps must be in (0, 1]");
  if (subset_has_duplicates(x, pts)) throw std::invalid_argument("sspd_simple: duplicate points");
  SimpleCtx ctx;
  ctx.pts = &pts;
  ctx.eps = eps;
  ctx.in_mask.assign(pts.size(), 0);
  ctx.out.kind = DecompositionKind::sspd;
  ctx.out.separation = 1.0 / eps;
  simple_recurse(ctx, x, Rng(seed));
  return std::move(ctx.out);
}

SspdResult sspd_optimal(const IndexSet& x, const PointSet& pts, const SspdConfig& cfg) {
  OptCtx ctx = make_opt_ctx(x, pts, cfg, "sspd_optimal");
  opt_recurse(ctx, x, Rng(cfg.seed), 0);
  ctx.diag.mean_gap_proxy = ctx.diag.gap_samples
                                ? ctx.gap_sum / static_cast<double>(ctx.diag.gap_samples)
                                : 0.0;
  return SspdResult{std::move(ctx.out), std::move(ctx.diag)};
}

PairDecomposition sspd_optimal_cut(const IndexSet& x, const PointSet& pts, const SspdConfig& cfg,
                                   const IndexSet& cut, PairTag tag) {
  OptCtx ctx = make_opt_ctx(x, pts, cfg, "sspd_optimal_cut");
  ctx.record = false;
  ctx.cut_tag = tag;
  ctx.cut_mask.assign(pts.size(), 0);
  for (Index q : cut) ctx.cut_mask[q] = 1;
  opt_recurse(ctx, x, Rng(cfg.seed), 0);
  return std::move(ctx.out);
}

PairDecomposition reduce_pairs(const PairDecomposition& dec, const PointSet& pts, double eps) {
  if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("reduce_pairs: eps must be in (0, 1]");
  for (const Pair& pr : dec.pairs)
    if (pr.tag == PairTag::plain) throw std::invalid_argument("reduce_pairs: untagged decomposition");

  PairDecomposition out;
  out.separation = dec.separation;
  out.kind = dec.kind;

  IndexSet universe;
  std::vector<std::size_t> shorts;
  for (std::size_t i = 0; i < dec.pairs.size(); ++i) {
    const Pair& pr = dec.pairs[i];
    universe.insert(universe.end(), pr.left.begin(), pr.left.end());
    universe.insert(universe.end(), pr.right.begin(), pr.right.end());
    if (pr.tag == PairTag::short_range) shorts.push_back(i);
    else out.pairs.push_back(pr);
  }
  if (shorts.empty()) return out;
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());

  // Group short pairs by the coarse WSPD pair covering their lowest-index
  // representatives, orienting each member along the coarse pair.
  const GeneralWspd aux(universe, pts, eps / 4.0);
  struct Group {
    std::vector<std::size_t> members;
    std::vector<char> flipped;
  };
  std::map<std::size_t, Group> groups;
  for (std::size_t i : shorts) {
    const Pair& pr = dec.pairs[i];
    const GeneralWspd::Located loc = aux.locate_pair(pr.left.front(), pr.right.front());
    Group& g = groups[loc.pair_index];
    g.members.push_back(i);
    g.flipped.push_back(loc.first_contains_q ? 0 : 1);
  }

  for (const auto& [aux_idx, g] : groups) {
    IndexSet xs, ys;
    for (std::size_t m = 0; m < g.members.size(); ++m) {
      const Pair& pr = dec.pairs[g.members[m]];
      xs = merge_sorted(xs, g.flipped[m] ? pr.right : pr.left);
      ys = merge_sorted(ys, g.flipped[m] ? pr.left : pr.right);
    }
    // The merged pair must be provably as separated as what it replaces; at
    // eps close to 1 the union can fail, in which case the group stays as is.
    bool ok = disjoint_sorted(xs, ys);
    if (ok) ok = check_separation(xs, ys, pts, 1.0 / eps, SeparationMode::well);
    if (ok) {
      Pair merged{std::move(xs), std::move(ys), PairTag::merged};
      merged.canonicalize();
      out.pairs.push_back(std::move(merged));
    } else {
      for (std::size_t i : g.members) out.pairs.push_back(dec.pairs[i]);
    }
  }
  return out;
}

SspdResult sspd_optimal_reduced(const IndexSet& x, const PointSet& pts, const SspdConfig& cfg) {
  SspdConfig tuned = cfg;
  tuned.reduce = true;
  SspdResult res = sspd_optimal(x, pts, tuned);
  res.decomposition = reduce_pairs(res.decomposition, pts, tuned.eps);
  return res;
}

}  // namespace sspd
