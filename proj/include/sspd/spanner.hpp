#ifndef SSPD_SPANNER_HPP
#define SSPD_SPANNER_HPP

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "sspd/geometry.hpp"
#include "sspd/pairs.hpp"
#include "sspd/points.hpp"

namespace sspd {

/// Partition of all directions into cones of opening angle <= psi.
/// d=2: equal angular sectors anchored at angle 0; otherwise a k x ... x k
/// grid of central-projection cells per unit-cube face (two cones for d=1).
/// Boundaries are half-open with the lower side inclusive; membership is O(d).
struct ConeSet {
  double psi = 0.0;
  std::size_t dim = 0;
  std::size_t sectors = 0;  // d = 2 only
  std::size_t k = 0;        // cells per face axis, d != 2

  std::size_t count() const;
  /// Index of the cone containing direction dir (nonzero, length d).
  std::size_t cone_index(std::span<const double> dir) const;
};

/// Requires psi in (0, pi/3]; the stretch argument needs cos(psi) >= 1/2.
ConeSet build_cones(double psi, std::size_t dim);

struct SpannerGraph {
  struct Edge {
    Index u = 0, v = 0;  // u < v
    double w = 0.0;      // Euclidean length, recomputed from coordinates
  };
  std::size_t n = 0;
  std::vector<Edge> edges;                                 // sorted by (u, v), unique
  std::vector<std::vector<std::pair<Index, double>>> adj;  // derived from edges
};

/// pair id -> hub point; the hub is the lowest-index point of the pair side
/// with the smaller (approximate) diameter.
struct HubRecord {
  std::vector<Index> hub_of_pair;
};

struct SpannerResult {
  SpannerGraph graph;
  HubRecord hubs;
  ConeSet cones;
};

/// Convert a semi-separated decomposition into a (1+eps)-spanner: per pair,
/// connect the hub to its nearest neighbor of the far side inside every cone
/// (psi = eps/40). With approximate hub-side diameters (the default, linear
/// time) s must carry separation >= 16/eps; exact diameters allow 8/eps.
SpannerResult spanner_from_sspd(const PairDecomposition& s, const PointSet& pts, double eps,
                                DiameterMode mode = DiameterMode::approx);

struct StretchReport {
  double stretch = 1.0;  // +infinity when disconnected
  Index a = 0, b = 0;    // witness pair attaining it
};

/// Exact max over point pairs of d_G(p,q)/dist(p,q) via all-sources Dijkstra.
/// Guarded to n <= 4096.
StretchReport stretch_factor(const SpannerGraph& g, const PointSet& pts);

struct GraphStats {
  std::size_t edges = 0;
  std::size_t max_degree = 0;
  double total_weight = 0.0;
};

GraphStats graph_stats(const SpannerGraph& g);

/// "n m" header, then one "u v weight" line per edge.
void write_graph(std::ostream& out, const SpannerGraph& g);

}  // namespace sspd

#endif
