#include "sspd/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace sspd {

double ball_density_bound(double mu, std::size_t dim) {
  return std::pow(2.0 * mu * std::sqrt(static_cast<double>(dim)) + 1.0, static_cast<double>(dim));
}

namespace {

// k-th smallest squared distance from x[center_pos] to x (the center itself
// contributes 0, so k = 1 always yields 0).
double kth_dist_sq(const IndexSet& x, const PointSet& pts, Index center, std::size_t k,
                   std::vector<double>& scratch) {
  scratch.clear();
  scratch.reserve(x.size());
  for (Index q : x) scratch.push_back(dist_sq(pts, center, q));
  std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.end());
  return scratch[k - 1];
}

std::size_t count_within_sq(const IndexSet& x, const PointSet& pts, Index center, double r_sq) {
  std::size_t cnt = 0;
  for (Index q : x)
    if (dist_sq(pts, center, q) <= r_sq) ++cnt;
  return cnt;
}

}  // namespace

BallResult small_ball(const IndexSet& x, const PointSet& pts, double mu, Rng& rng) {
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("small_ball: need at least two points");
  if (!(mu >= 1.0)) throw std::invalid_argument("small_ball: mu must be at least 1");

  const double cap = std::max(2.0 * ball_density_bound(mu, pts.dim()), static_cast<double>(n));
  std::vector<double> scratch;
  BallResult res;
  res.iterations = 0;

  auto attempt = [&](Index center, std::size_t k, std::size_t c) -> bool {
    ++res.iterations;
    double r_sq = kth_dist_sq(x, pts, center, k, scratch);
    if (2 * count_within_sq(x, pts, center, mu * mu * r_sq) > n) return false;
    res.center = center;
    res.radius_sq = r_sq;
    res.radius = std::sqrt(r_sq);
    res.effective_c = c;
    return true;
  };

  // Escalation ladder: try generous ball populations first, halving the
  // target on failure. The target is floored at two points: a ball holding
  // the center alone (radius 0) would be accepted unconditionally and stall
  // the callers, so it is reserved for the final fallback.
  std::size_t c = 8;
  while (static_cast<double>(c) <= cap && (n + c - 1) / c > 2) {
    for (int trial = 0; trial < 16; ++trial) {
      Index center = x[rng.uniform_index(n)];
      if (attempt(center, (n + c - 1) / c, c)) return res;
    }
    c *= 2;
  }
  const std::size_t c_floor = std::max(c, (n + 1) / 2);  // keeps n/c <= 2
  for (int trial = 0; trial < 16; ++trial) {
    Index center = x[rng.uniform_index(n)];
    if (attempt(center, 2, c_floor)) return res;
  }
  // A tight enough pair may exist even when random centers keep missing it
  // (few qualifying centers); sweep them all before giving up on radius > 0.
  for (Index center : x)
    if (attempt(center, 2, c_floor)) return res;
  // Trivial ball: the center alone, radius 0. Valid whenever the center has
  // no duplicate (|b(p,0)| = 1 <= n/2 for n >= 2).
  if (attempt(x[rng.uniform_index(n)], 1, std::max(c_floor, n))) return res;
  throw std::runtime_error("small_ball: no valid center (points may coincide)");
}

RingResult ring_separator(const IndexSet& x, const PointSet& pts, std::size_t t, Rng& rng) {
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("ring_separator: need at least two points");
  if (t < 1) throw std::invalid_argument("ring_separator: t must be at least 1");

  BallResult ball = small_ball(x, pts, 8.0, rng);
  const Index p = ball.center;
  const double q = 1.0 + 1.0 / static_cast<double>(t);

  // Geometric radius ladder r[0..t]; consecutive rings tile (alpha, r[t]]
  // exactly because each outer bound is the next inner bound verbatim.
  std::vector<double> radii(t + 1);
  radii[0] = ball.radius;
  for (std::size_t i = 1; i <= t; ++i) radii[i] = radii[i - 1] * q;

  std::vector<std::size_t> ring_pop(t + 1, 0);
  for (Index idx : x) {
    double d = dist(pts, p, idx);
    if (d <= radii[0] || d > radii[t]) continue;
    // Rings are rare (t <= n); binary-search the ladder.
    std::size_t i = static_cast<std::size_t>(
        std::upper_bound(radii.begin(), radii.end(), d) - radii.begin());
    // d lies in (radii[i-1], radii[i]]; upper_bound gives first radius > d,
    // except when d equals a ladder value exactly.
    if (i > t) i = t;
    if (i >= 1 && d <= radii[i - 1]) --i;
    ring_pop[i] += 1;
  }

  const std::vector<double> center(pts[p].begin(), pts[p].end());
  for (std::size_t i = 1; i <= t; ++i) {
    // Recount the candidate with the exact contract predicate before
    // accepting, in case the bucketing above disagrees on a boundary.
    Ring ring{center, radii[i - 1], radii[i - 1] * q};
    std::size_t cnt = ring_pop[i];
    if (2 * t * cnt > n || radii[i - 1] * q != radii[i]) {
      cnt = 0;
      for (Index idx : x)
        if (ring.contains(pts[idx])) ++cnt;
    }
    if (2 * t * cnt > n) continue;

    RingResult res;
    res.center = p;
    res.radius = radii[i - 1];
    res.alpha = ball.radius;
    res.t = t;
    res.effective_c = ball.effective_c;
    res.ring_count = cnt;
    Ball inner{center, res.radius};
    Ball doubled{center, 2.0 * res.radius};
    res.inside_count = 0;
    std::size_t within_2r = 0;
    for (Index idx : x) {
      if (inner.contains(pts[idx])) ++res.inside_count;
      if (doubled.contains(pts[idx])) ++within_2r;
    }
    res.outside_count = n - within_2r;
    return res;
  }
  throw std::runtime_error("ring_separator: no sparse ring found");
}

}  // namespace sspd
