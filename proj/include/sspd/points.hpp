#ifndef SSPD_POINTS_HPP
#define SSPD_POINTS_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sspd {

using Index = std::uint32_t;
/// Index sets are kept sorted ascending; all set-valued results honor this.
using IndexSet = std::vector<Index>;

/// Finite sequence of points in R^d, stored row-major. Duplicates are legal
/// to store; operations that cannot tolerate them (spread, the randomized
/// decompositions) reject them explicitly.
class PointSet {
 public:
  explicit PointSet(std::size_t dim);
  PointSet(std::size_t dim, std::vector<double> coords);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return coords_.size() / dim_; }
  bool empty() const { return coords_.empty(); }

  std::span<const double> operator[](Index i) const {
    return {coords_.data() + static_cast<std::size_t>(i) * dim_, dim_};
  }

  void add(std::span<const double> p);
  const std::vector<double>& raw() const { return coords_; }

  bool has_duplicates() const;
  IndexSet all_indices() const;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
};

double dist_sq(const PointSet& pts, Index a, Index b);
double dist(const PointSet& pts, Index a, Index b);

/// Closed ball {q : |q - center| <= radius}.
struct Ball {
  std::vector<double> center;
  double radius = 0.0;
  bool contains(std::span<const double> p) const;
};

/// Half-open annulus {q : inner < |q - center| <= outer}.
struct Ring {
  std::vector<double> center;
  double inner = 0.0;
  double outer = 0.0;
  bool contains(std::span<const double> p) const;
};

// --- point file format ------------------------------------------------------
// Line 1: "<d> <n>"; then n lines of d decimal coordinates. Lines starting
// with '#' are comments and are skipped anywhere in the file.

PointSet read_points(std::istream& in);
void write_points(std::ostream& out, const PointSet& pts);
PointSet load_points(const std::string& path);
void save_points(const std::string& path, const PointSet& pts);

}  // namespace sspd

#endif
