#ifndef SSPD_PAIRS_HPP
#define SSPD_PAIRS_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sspd/points.hpp"

namespace sspd {

/// Provenance of a pair within a construction. "plain" marks pairs with no
/// special role (and is rejected by reduce_pairs, which needs real roles).
enum class PairTag { plain, base, long_range, short_range, stage_a, stage_b, stage_c, merged };

const char* tag_name(PairTag t);
PairTag tag_from_name(const std::string& name);

/// Unordered pair of disjoint nonempty index sets. Sides are sorted ascending;
/// canonicalize() additionally orders the sides lexicographically so that two
/// pairs with equal content compare equal.
struct Pair {
  IndexSet left;
  IndexSet right;
  PairTag tag = PairTag::plain;

  void canonicalize();
  bool operator==(const Pair& o) const { return left == o.left && right == o.right; }
};

enum class DecompositionKind { wspd, sspd };

struct PairDecomposition {
  std::vector<Pair> pairs;
  double separation = 1.0;  // the parameter s: pairs are (semi-)separated at s
  DecompositionKind kind = DecompositionKind::sspd;
};

struct DecompositionStats {
  std::size_t pair_count = 0;
  std::size_t weight = 0;              // sum of |left| + |right|
  std::size_t max_pairs_per_point = 0;
  std::vector<std::size_t> per_point;  // pair membership count per point index
};

DecompositionStats decomposition_stats(const PairDecomposition& w, const PointSet& pts);

enum class SeparationMode { well, semi };

/// Exact separation test at parameter s (no tolerance): with e = 1/s,
///   well: max(diam x, diam y) <= e * dist(x, y)
///   semi: min(diam x, diam y) <= e * dist(x, y)
/// Diameters and distances are exact; comparisons run on squared values.
/// Throws if the sets overlap or are empty.
bool check_separation(const IndexSet& x, const IndexSet& y, const PointSet& pts, double s,
                      SeparationMode mode);

/// Restrict every pair of w to the pairs crossing q: {x∩q, y\q} and {x\q, y∩q},
/// dropping empty sides. Tags are inherited. Runs in time linear in the weight.
PairDecomposition split_decomposition(const PairDecomposition& w, const IndexSet& q, const PointSet& pts);

struct CoverageReport {
  bool ok = false;
  std::size_t missing_count = 0;
  std::vector<std::pair<Index, Index>> missing;         // sample of uncovered expected pairs
  std::size_t unexpected_count = 0;                     // cut mode: covered but not expected
  std::vector<std::pair<Index, Index>> unexpected;      // sample of those
  std::map<std::size_t, std::size_t> multiplicity_histogram;  // over expected pairs
};

/// Every unordered pair {u,v} of distinct points of pts must be covered by
/// some pair (u on one side, v on the other) at least once.
CoverageReport verify_coverage_all(const PairDecomposition& w, const PointSet& pts);

/// Exactly the pairs with one endpoint in q and one outside must be covered
/// (>= 1); covering any non-crossing pair is an error.
CoverageReport verify_coverage_cut(const PairDecomposition& w, const PointSet& pts, const IndexSet& q);

/// True when every expected pair was covered exactly once.
bool exactly_once(const CoverageReport& r);

// --- dump format -------------------------------------------------------------
// One line per pair: "TAG | i1 i2 ... | j1 j2 ...".

void write_decomposition(std::ostream& out, const PairDecomposition& w);
PairDecomposition read_decomposition(std::istream& in);

}  // namespace sspd

#endif
