#ifndef SSPD_PARTITION_HPP
#define SSPD_PARTITION_HPP

#include <cstddef>

#include "sspd/points.hpp"
#include "sspd/rng.hpp"

namespace sspd {

/// Packing bound (2*mu*sqrt(d) + 1)^d: the sampling constant past which a
/// random center works with constant probability.
double ball_density_bound(double mu, std::size_t dim);

struct BallResult {
  Index center = 0;
  double radius = 0.0;      // k-th smallest distance from the center (the center counts, so k=1 gives 0)
  double radius_sq = 0.0;   // exact k-th order statistic of squared distances
  std::size_t effective_c = 0;
  std::size_t iterations = 0;  // total sampling attempts
};

/// Pick a center p in x and radius r with |b(p, r)| >= max(1, ceil(n/c)) and
/// |b(p, mu*r)| <= n/2 (closed balls, n = |x|, c = effective_c as recorded).
/// The sampling constant c starts at 8 and doubles after every 16 failed
/// attempts while the population target ceil(n/c) stays above two; the
/// two-point target then gets 16 random attempts plus an exhaustive sweep of
/// the centers in index order. Only when no center admits any radius > 0
/// ball does the result degrade to the trivial ball {p} with r = 0 (always
/// valid for duplicate-free input). Requires |x| >= 2 and mu >= 1.
BallResult small_ball(const IndexSet& x, const PointSet& pts, double mu, Rng& rng);

struct RingResult {
  Index center = 0;
  double radius = 0.0;  // inner radius r; the separating ring is Ring(p, r, r*(1+1/t))
  double alpha = 0.0;   // radius found by the inner small_ball call (mu = 8)
  std::size_t t = 0;
  std::size_t effective_c = 0;
  std::size_t inside_count = 0;   // |b(p, r)|
  std::size_t ring_count = 0;     // points strictly inside the ring annulus
  std::size_t outside_count = 0;  // |x| - |b(p, 2r)|
};

/// Sparse-ring separator: returns p and r with alpha <= r <= 4*alpha,
/// |b(p, r)| >= n/effective_c, at most n/(2t) points in
/// Ring(p, r, r*(1+1/t)), and at least n/2 points outside b(p, 2r).
/// The ring bounds downstream must be recomputed exactly as
/// outer = radius * (1.0 + 1.0 / t) in double precision.
/// Requires |x| >= 2 and t >= 1; t = |x| forces an empty ring.
RingResult ring_separator(const IndexSet& x, const PointSet& pts, std::size_t t, Rng& rng);

}  // namespace sspd

#endif
