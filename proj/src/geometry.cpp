#include "sspd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace sspd {

double set_distance(const IndexSet& a, const IndexSet& b, const PointSet& pts) {
  if (a.empty() || b.empty()) throw std::invalid_argument("set_distance: empty set");
  double best = std::numeric_limits<double>::infinity();
  for (Index i : a)
    for (Index j : b) best = std::min(best, dist_sq(pts, i, j));
  return std::sqrt(best);
}

double diameter(const IndexSet& x, const PointSet& pts, DiameterMode mode) {
  if (x.empty()) throw std::invalid_argument("diameter: empty set");
  double best = 0.0;
  if (mode == DiameterMode::exact) {
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = i + 1; j < x.size(); ++j) best = std::max(best, dist_sq(pts, x[i], x[j]));
  } else {
    const Index anchor = *std::min_element(x.begin(), x.end());
    for (Index i : x) best = std::max(best, dist_sq(pts, anchor, i));
  }
  return std::sqrt(best);
}

double spread(const PointSet& pts) {
  const std::size_t n = pts.size();
  if (n < 2) throw std::invalid_argument("spread: need at least 2 points");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double d = dist_sq(pts, i, j);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
  }
  if (lo == 0.0) throw std::invalid_argument("spread: duplicate points give infinite spread");
  return std::sqrt(hi / lo);
}

namespace {

using Cell = std::vector<std::int64_t>;

Cell cell_of(std::span<const double> p, std::span<const double> anchor, double side) {
  Cell c(p.size());
  for (std::size_t j = 0; j < p.size(); ++j)
    c[j] = static_cast<std::int64_t>(std::floor((p[j] - anchor[j]) / side));
  return c;
}

}  // namespace

std::vector<IndexSet> cluster_by_diameter(const IndexSet& x, const PointSet& pts, double max_diameter) {
  if (x.empty()) throw std::invalid_argument("cluster_by_diameter: empty set");
  if (!(max_diameter > 0.0)) throw std::invalid_argument("cluster_by_diameter: max_diameter must be positive");

  const std::size_t d = pts.dim();
  std::vector<double> anchor(d, std::numeric_limits<double>::infinity());
  for (Index i : x) {
    auto p = pts[i];
    for (std::size_t j = 0; j < d; ++j) anchor[j] = std::min(anchor[j], p[j]);
  }
  const double side = max_diameter / std::sqrt(static_cast<double>(d));

  std::map<Cell, IndexSet> buckets;  // ordered: deterministic cluster order
  for (Index i : x) buckets[cell_of(pts[i], anchor, side)].push_back(i);

  std::vector<IndexSet> out;
  out.reserve(buckets.size());
  for (auto& [cell, members] : buckets) {
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

GridSnap snap_to_grid(const IndexSet& x, const PointSet& pts, double cell_side) {
  if (x.empty()) throw std::invalid_argument("snap_to_grid: empty set");
  if (!(cell_side > 0.0)) throw std::invalid_argument("snap_to_grid: cell side must be positive");

  const std::size_t d = pts.dim();
  const std::vector<double> origin(d, 0.0);
  std::map<Cell, Index> ids;
  GridSnap snap{PointSet(d), {}, {}};
  snap.snapped_of.reserve(x.size());

  // First pass: assign deterministic snapped ids in ascending cell order.
  std::map<Cell, IndexSet> buckets;
  for (Index i : x) buckets[cell_of(pts[i], origin, cell_side)].push_back(i);

  std::vector<double> center(d);
  for (auto& [cell, members] : buckets) {
    for (std::size_t j = 0; j < d; ++j)
      center[j] = (static_cast<double>(cell[j]) + 0.5) * cell_side;
    ids.emplace(cell, static_cast<Index>(snap.points.size()));
    snap.points.add(center);
    std::sort(members.begin(), members.end());
    snap.originals.push_back(members);
  }
  for (Index i : x) snap.snapped_of.push_back(ids.at(cell_of(pts[i], origin, cell_side)));
  return snap;
}

}  // namespace sspd
