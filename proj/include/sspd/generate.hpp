#ifndef SSPD_GENERATE_HPP
#define SSPD_GENERATE_HPP

#include <cstdint>
#include <string>

#include "sspd/points.hpp"

namespace sspd {

/// Test-data families:
///   uniform    i.i.d. in the unit cube
///   lattice    ceil(n^{1/d})-per-side integer grid, truncated to n points
///   clustered  ceil(sqrt(n)) Gaussian blobs (sigma 0.01), points round-robin
///   expspread  coordinates 2^i on the first axis (exponentially unbounded
///              spread), tiny deterministic jitter on the second axis
/// Requires n >= 1, d in 1..8; expspread additionally n <= 1023 (double range).
PointSet generate_points(const std::string& kind, std::size_t n, std::size_t dim,
                         std::uint64_t seed);

}  // namespace sspd

#endif
