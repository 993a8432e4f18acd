#ifndef SSPD_SSPD_HPP
#define SSPD_SSPD_HPP

#include <cstdint>
#include <vector>

#include "sspd/pairs.hpp"
#include "sspd/points.hpp"

namespace sspd {

struct SspdConfig {
  double eps = 0.5;                // separation target, in (0, 1]
  std::size_t base_threshold = 0;  // 0 = automatic: max(32, ceil(eps^-d))
  std::uint64_t seed = 1;
  bool reduce = false;             // plan for a later merge pass (tightens the internal
                                   // short-pair separation from 4/eps to 24/eps)
};

/// One divide step of the randomized decomposition.
struct PartitionStep {
  Index center = 0;
  double r = 0.0;      // small-ball radius
  double x_cut = 0.0;  // random cut radius, uniform in [5r, 6r]
  IndexSet pin;        // dist <= x_cut (closed)
  IndexSet pout;       // x_cut < dist <= 20r
  IndexSet pouter;     // dist > 20r
};

struct SspdStep {
  PartitionStep part;
  std::size_t level = 0;      // recursion depth of this step
  std::vector<double> gaps;   // signed dist(q, center) - x_cut, ascending q over pin+pout
  std::size_t long_pairs = 0;
  std::size_t short_pairs = 0;
  std::vector<std::size_t> short_depth_histogram;  // short pairs by cube-tree depth
};

struct SspdDiagnostics {
  std::vector<SspdStep> steps;
  std::vector<std::size_t> longs_per_level;   // indexed by recursion depth
  std::vector<std::size_t> shorts_per_level;
  double mean_gap_proxy = 0.0;  // mean over samples of min(64, max(0, lg(r/|D_q|)))
  std::size_t gap_samples = 0;
};

struct SspdResult {
  PairDecomposition decomposition;
  SspdDiagnostics diagnostics;
};

/// Divide-and-conquer semi-separated decomposition from sparse-ring
/// separators plus a grid-snapped bounded-spread WSPD across the ring.
/// All pairs are tagged plain. Requires duplicate-free x and eps in (0, 1].
PairDecomposition sspd_simple(const IndexSet& x, const PointSet& pts, double eps, std::uint64_t seed);

/// Randomized decomposition: random cut sphere, diameter-bounded clusters
/// against the far set (long pairs), pruned same-level WSPD across the cut
/// (short pairs), singleton pairs below the base threshold (base pairs).
SspdResult sspd_optimal(const IndexSet& x, const PointSet& pts, const SspdConfig& cfg);

/// Merge short pairs that map to a common pair of a coarse auxiliary WSPD
/// (parameter 4/eps) into their componentwise unions (tag merged). Every
/// merged candidate is re-verified for exact well-separation at 1/eps;
/// groups failing the check (possible at eps near 1) keep their original
/// pairs. Base/long pairs pass through. Throws if dec carries plain tags.
PairDecomposition reduce_pairs(const PairDecomposition& dec, const PointSet& pts, double eps);

/// sspd_optimal with cfg.reduce forced on, followed by reduce_pairs.
SspdResult sspd_optimal_reduced(const IndexSet& x, const PointSet& pts, const SspdConfig& cfg);

/// Equivalent to running sspd_optimal and keeping only the residues of pairs
/// that cross cut ({left∩cut, right\cut} and {left\cut, right∩cut}, empties
/// dropped, all retagged to tag), but never materializes non-crossing bulk.
/// Same seed usage as sspd_optimal, so outputs agree pair-for-pair with
/// split_decomposition applied to the full construction.
PairDecomposition sspd_optimal_cut(const IndexSet& x, const PointSet& pts, const SspdConfig& cfg,
                                   const IndexSet& cut, PairTag tag);

}  // namespace sspd

#endif
