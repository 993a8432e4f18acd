#ifndef SSPD_SEPARATOR_HPP
#define SSPD_SEPARATOR_HPP

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "sspd/pairs.hpp"
#include "sspd/points.hpp"
#include "sspd/spanner.hpp"

namespace sspd {

/// Empty annulus certificate between two sets: Pin lives in b(center, r), Pout
/// in b(center, R) minus b(center, r + t_gap), nobody in between.
struct RingGap {
  Index center = 0;
  double r = 0.0;
  double t_gap = 0.0;
  double R = 0.0;
};

/// Semi-separated decomposition covering exactly pin (x) pout, built by
/// snapping both to a grid of side eps*t_gap/(8d), running the bounded-spread
/// WSPD at unit parameter, re-expanding, splitting by pin, and refining each
/// pair's smaller side into clusters of diameter <= eps/4 times that side's
/// approximate diameter. Verifies the gap invariants by scan first.
PairDecomposition mild_sspd(const IndexSet& pin, const IndexSet& pout, const RingGap& gap,
                            const PointSet& pts, double eps);

/// Top split of the separator construction at one node.
struct PartitionRecord {
  Index center = 0;
  double r = 0.0;
  double r_outer = 0.0;  // r * (1 + 1/t)
  std::size_t t = 0;
  std::size_t effective_c = 0;
  IndexSet pin;     // dist <= r
  IndexSet pring;   // r < dist <= r_outer
  IndexSet pout;    // r_outer < dist <= 2r
  IndexSet pouter;  // beyond 2r
};

/// Per-level size summary (the full index sets are kept for the top level only).
struct LevelBrief {
  std::size_t level = 0;
  std::size_t n = 0;
  std::size_t t = 0;
  std::size_t pin = 0, pring = 0, pout = 0, pouter = 0;
};

struct SeparatorSspd {
  PairDecomposition decomposition;
  PartitionRecord top;
  std::vector<LevelBrief> levels;        // preorder over recursion nodes
  std::vector<std::size_t> top_stage_b;  // indices into decomposition.pairs
  std::vector<std::size_t> top_stage_c;
};

/// Ring-separator recursion whose pairs either touch the thin ring (stage A:
/// the randomized decomposition split by the ring), jump across it from deep
/// inside (stage B: inner clusters x far set; stage C: mild_sspd across the
/// gap), or live entirely on one side (recursion). t = max(1, ceil(n^{1/d}/2)).
SeparatorSspd sspd_with_separator(const IndexSet& x, const PointSet& pts, double eps,
                                  std::uint64_t seed);

struct SeparatorCertificate {
  IndexSet separator;
  IndexSet side_a;
  IndexSet side_b;
};

struct SeparatorBuild {
  SpannerGraph graph;
  SeparatorCertificate cert;
  HubRecord hubs;
  SeparatorSspd sspd;
};

/// Build the decomposition at eps/16, convert it to a (1+eps)-spanner, and
/// extract a separator: the top-level ring plus the hubs of top-level stage
/// B/C pairs. side_a = top pin minus separator, side_b = the far rest. On a
/// degenerate split (either side empty) retries with derived seeds, 8 tries.
SeparatorBuild separator_spanner_build(const IndexSet& x, const PointSet& pts, double eps,
                                       std::uint64_t seed);

struct SeparatorReport {
  bool ok = false;
  bool partition_ok = false;
  std::size_t crossing_edges = 0;
  std::pair<Index, Index> first_crossing{0, 0};
  std::size_t separator_size = 0, side_a_size = 0, side_b_size = 0;
};

/// Exhaustive scan: the three certificate sets must partition [0, g.n) and no
/// edge may join side_a to side_b.
SeparatorReport verify_separator(const SpannerGraph& g, const SeparatorCertificate& cert);

/// Three lines: "SEP: ...", "A: ...", "B: ..." of space-separated indices.
void write_certificate(std::ostream& out, const SeparatorCertificate& cert);

}  // namespace sspd

#endif
