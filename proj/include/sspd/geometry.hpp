#ifndef SSPD_GEOMETRY_HPP
#define SSPD_GEOMETRY_HPP

#include <vector>

#include "sspd/points.hpp"

namespace sspd {

enum class DiameterMode { exact, approx };

/// Minimum pairwise distance between two nonempty index sets (exhaustive scan).
double set_distance(const IndexSet& a, const IndexSet& b, const PointSet& pts);

/// exact: max pairwise distance (quadratic scan).
/// approx: max distance from the lowest-index point of x to any point of x;
/// the result D satisfies diam/2 <= D <= diam.
double diameter(const IndexSet& x, const PointSet& pts, DiameterMode mode);

/// Max pairwise distance / min pairwise distance over the whole set.
/// Requires >= 2 points and no duplicates.
double spread(const PointSet& pts);

/// Partition x into clusters of exact diameter <= max_diameter using a grid of
/// cell side max_diameter/sqrt(d) anchored at the coordinate-wise minimum of x.
/// Nonempty cells become clusters; cluster order follows ascending cell index.
std::vector<IndexSet> cluster_by_diameter(const IndexSet& x, const PointSet& pts, double max_diameter);

/// Result of snapping a set onto a grid anchored at the global origin.
/// Cells are half-open boxes; each snapped point is its cell center. Points
/// sharing a cell map to the same snapped point.
struct GridSnap {
  PointSet points;                   // deduplicated snapped points
  std::vector<Index> snapped_of;     // parallel to the input set: position into points
  std::vector<IndexSet> originals;   // per snapped point: original indices in its cell
};

GridSnap snap_to_grid(const IndexSet& x, const PointSet& pts, double cell_side);

}  // namespace sspd

#endif
