#include "sspd/spanner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <vector>

namespace sspd {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::size_t checked_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::size_t>::max() / 4 / base)
      throw std::invalid_argument("build_cones: cone count overflow");
    r *= base;
  }
  return r;
}

}  // namespace

std::size_t ConeSet::count() const {
  if (dim == 2) return sectors;
  return 2 * dim * checked_pow(k, dim - 1);
}

std::size_t ConeSet::cone_index(std::span<const double> dir) const {
  if (dim == 2) {
    double ang = std::atan2(dir[1], dir[0]);
    if (dir[0] == 0.0 && dir[1] == 0.0)
      throw std::invalid_argument("cone_index: zero direction");
    if (ang < 0.0) ang += 2.0 * kPi;
    auto idx = static_cast<std::size_t>(ang / (2.0 * kPi / static_cast<double>(sectors)));
    return idx < sectors ? idx : sectors - 1;
  }
  std::size_t axis = 0;
  double best = std::fabs(dir[0]);
  for (std::size_t j = 1; j < dim; ++j)
    if (std::fabs(dir[j]) > best) {
      best = std::fabs(dir[j]);
      axis = j;
    }
  if (best == 0.0) throw std::invalid_argument("cone_index: zero direction");
  const std::size_t face = 2 * axis + (dir[axis] > 0.0 ? 0 : 1);
  std::size_t cell = 0;
  for (std::size_t j = 0; j < dim; ++j) {
    if (j == axis) continue;
    const double u = dir[j] / best;  // central projection onto the face, in [-1, 1]
    auto c = static_cast<long long>(std::floor((u + 1.0) * 0.5 * static_cast<double>(k)));
    if (c < 0) c = 0;
    if (c >= static_cast<long long>(k)) c = static_cast<long long>(k) - 1;
    cell = cell * k + static_cast<std::size_t>(c);
  }
  return face * checked_pow(k, dim - 1) + cell;
}

ConeSet build_cones(double psi, std::size_t dim) {
  if (!(psi > 0.0) || psi > kPi / 3.0)
    throw std::invalid_argument("build_cones: psi must be in (0, pi/3]");
  if (dim == 0) throw std::invalid_argument("build_cones: dimension must be positive");
  ConeSet c;
  c.psi = psi;
  c.dim = dim;
  if (dim == 2) {
    c.sectors = static_cast<std::size_t>(std::ceil(2.0 * kPi / psi));
  } else {
    c.k = static_cast<std::size_t>(std::ceil(2.0 * std::sqrt(static_cast<double>(dim)) / psi));
    checked_pow(c.k, dim - 1);  // reject index spaces that cannot be addressed
  }
  return c;
}

namespace {

SpannerGraph graph_from_edges(std::vector<std::pair<Index, Index>> raw, const PointSet& pts) {
  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  SpannerGraph g;
  g.n = pts.size();
  g.edges.reserve(raw.size());
  g.adj.assign(g.n, {});
  for (const auto& [u, v] : raw) {
    const double w = dist(pts, u, v);
    g.edges.push_back(SpannerGraph::Edge{u, v, w});
    g.adj[u].push_back({v, w});
    g.adj[v].push_back({u, w});
  }
  return g;
}

}  // namespace

SpannerResult spanner_from_sspd(const PairDecomposition& s, const PointSet& pts, double eps,
                                DiameterMode mode) {
  if (!(eps > 0.0)) throw std::invalid_argument("spanner_from_sspd: eps must be positive");
  const double required = (mode == DiameterMode::approx ? 16.0 : 8.0) / eps;
  if (s.separation < required * (1.0 - 1e-9))
    throw std::invalid_argument("spanner_from_sspd: decomposition separation below required margin");

  SpannerResult res;
  res.cones = build_cones(eps / 40.0, pts.dim());
  res.hubs.hub_of_pair.resize(s.pairs.size());

  std::vector<std::pair<Index, Index>> raw;
  std::vector<double> dirbuf(pts.dim());
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    const Pair& pr = s.pairs[i];
    const double dl = diameter(pr.left, pts, mode);
    const double dr = diameter(pr.right, pts, mode);
    const IndexSet& near_side = dl <= dr ? pr.left : pr.right;
    const IndexSet& far_side = dl <= dr ? pr.right : pr.left;
    const Index hub = near_side.front();
    res.hubs.hub_of_pair[i] = hub;

    // Nearest far-side point per cone around the hub; ties keep the lowest
    // index because the scan ascends and only strict improvements replace.
    std::map<std::size_t, std::pair<double, Index>> best;
    const auto hp = pts[hub];
    for (Index q : far_side) {
      const auto qp = pts[q];
      for (std::size_t j = 0; j < dirbuf.size(); ++j) dirbuf[j] = qp[j] - hp[j];
      const std::size_t cone = res.cones.cone_index(dirbuf);
      const double dsq = dist_sq(pts, hub, q);
      auto it = best.find(cone);
      if (it == best.end() || dsq < it->second.first) best[cone] = {dsq, q};
    }
    for (const auto& [cone, hit] : best)
      raw.push_back({std::min(hub, hit.second), std::max(hub, hit.second)});
  }
  res.graph = graph_from_edges(std::move(raw), pts);
  return res;
}

StretchReport stretch_factor(const SpannerGraph& g, const PointSet& pts) {
  if (g.n != pts.size())
    throw std::invalid_argument("stretch_factor: graph and point set disagree on n");
  if (g.n > 4096) throw std::invalid_argument("stretch_factor: more than 4096 points");
  StretchReport rep;
  if (g.n < 2) return rep;

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d(g.n);
  using Entry = std::pair<double, Index>;
  for (Index src = 0; src < g.n; ++src) {
    std::fill(d.begin(), d.end(), inf);
    d[src] = 0.0;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    heap.push({0.0, src});
    while (!heap.empty()) {
      const auto [du, u] = heap.top();
      heap.pop();
      if (du > d[u]) continue;
      for (const auto& [v, w] : g.adj[u])
        if (du + w < d[v]) {
          d[v] = du + w;
          heap.push({d[v], v});
        }
    }
    for (Index v = src + 1; v < g.n; ++v) {
      if (d[v] == inf) return StretchReport{inf, src, v};
      const double euclid = dist(pts, src, v);
      if (euclid == 0.0) continue;  // coincident points carry no stretch demand
      const double ratio = d[v] / euclid;
      if (ratio > rep.stretch) rep = StretchReport{ratio, src, v};
    }
  }
  return rep;
}

GraphStats graph_stats(const SpannerGraph& g) {
  GraphStats st;
  st.edges = g.edges.size();
  for (const auto& nb : g.adj) st.max_degree = std::max(st.max_degree, nb.size());
  for (const auto& e : g.edges) st.total_weight += e.w;
  return st;
}

void write_graph(std::ostream& out, const SpannerGraph& g) {
  out << g.n << ' ' << g.edges.size() << '\n';
  char buf[64];
  for (const auto& e : g.edges) {
    std::snprintf(buf, sizeof buf, "%.17g", e.w);
    out << e.u << ' ' << e.v << ' ' << buf << '\n';
  }
}

}  // namespace sspd
