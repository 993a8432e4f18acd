#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "sspd/generate.hpp"
#include "sspd/partition.hpp"
#include "test_util.hpp"

using namespace sspd;
using sspd_test::make_points;

namespace {

std::size_t count_within(const IndexSet& x, const PointSet& pts, Index center, double radius_sq) {
  std::size_t c = 0;
  for (Index q : x)
    if (dist_sq(pts, center, q) <= radius_sq) ++c;
  return c;
}

}  // namespace

TEST_CASE("partition: packing bound values") {
  CHECK(ball_density_bound(1.0, 1) == doctest::Approx(3.0));
  const double unit = 2.0 * std::sqrt(2.0) + 1.0;
  CHECK(ball_density_bound(1.0, 2) == doctest::Approx(unit * unit));
  const double side = 40.0 * std::sqrt(2.0) + 1.0;
  CHECK(ball_density_bound(20.0, 2) == doctest::Approx(side * side));
}

TEST_CASE("partition: small ball invariants across generators") {
  int trials = 0;
  for (const char* kind : {"uniform", "lattice", "clustered", "expspread"})
    for (std::size_t n : {2, 3, 9, 64, 300})
      for (std::size_t d : {2, 3})
        for (std::uint64_t seed : {1, 2, 3}) {
          PointSet pts = generate_points(kind, n, d, 40 + seed);
          IndexSet all = pts.all_indices();
          Rng rng(seed);
          BallResult ball = small_ball(all, pts, 20.0, rng);
          ++trials;

          CHECK(ball.radius == std::sqrt(ball.radius_sq));
          CHECK(ball.effective_c >= 8);
          const std::size_t need = (n + ball.effective_c - 1) / ball.effective_c;
          const std::size_t inside = count_within(all, pts, ball.center, ball.radius_sq);
          CHECK(inside >= std::max<std::size_t>(1, need));
          // The sparseness check runs on squared values: mu^2 * r_sq exactly.
          CHECK(2 * count_within(all, pts, ball.center, 20.0 * 20.0 * ball.radius_sq) <= n);
        }
  CHECK(trials == 120);
}

TEST_CASE("partition: small ball argument checks") {
  PointSet pts = make_points(1, {0.0, 1.0});
  Rng rng(1);
  CHECK_THROWS_AS(small_ball({0}, pts, 20.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(small_ball({0, 1}, pts, 0.5, rng), std::invalid_argument);
}

TEST_CASE("partition: small ball cannot serve coincident points") {
  PointSet pts = make_points(2, {1.0, 1.0, 1.0, 1.0});
  Rng rng(7);
  CHECK_THROWS_AS(small_ball(pts.all_indices(), pts, 20.0, rng), std::runtime_error);
}

TEST_CASE("partition: ring separator invariants across generators") {
  for (const char* kind : {"uniform", "lattice", "clustered"})
    for (std::size_t n : {2, 16, 100, 400})
      for (std::uint64_t seed : {1, 2}) {
        PointSet pts = generate_points(kind, n, 2, 60 + seed);
        IndexSet all = pts.all_indices();
        for (std::size_t t : {std::size_t{1}, std::size_t{3}, n}) {
          Rng rng(seed);
          RingResult ring = ring_separator(all, pts, t, rng);
          CHECK(ring.t == t);
          CHECK(ring.alpha <= ring.radius);
          CHECK(ring.radius <= 4.0 * ring.alpha);

          // Recount every population claim through the published Ball/Ring
          // predicates; these are the vocabulary the contract is stated in.
          const double outer = ring.radius * (1.0 + 1.0 / static_cast<double>(t));
          const std::vector<double> center(pts[ring.center].begin(), pts[ring.center].end());
          const Ball inner_ball{center, ring.radius};
          const Ball doubled{center, 2.0 * ring.radius};
          const Ring annulus{center, ring.radius, outer};
          std::size_t inside = 0, in_ring = 0, outside = 0;
          for (Index q : all) {
            if (inner_ball.contains(pts[q])) ++inside;
            if (annulus.contains(pts[q])) ++in_ring;
            if (!doubled.contains(pts[q])) ++outside;
          }
          CHECK(inside == ring.inside_count);
          CHECK(in_ring == ring.ring_count);
          CHECK(outside == ring.outside_count);
          CHECK(inside * ring.effective_c >= n);
          CHECK(2 * t * in_ring <= n);
          CHECK(2 * outside >= n);
          if (t == n) CHECK(in_ring == 0);  // the annulus must be point-free
        }
      }
}

TEST_CASE("partition: ring separator argument checks") {
  PointSet pts = make_points(1, {0.0, 1.0});
  Rng rng(1);
  CHECK_THROWS_AS(ring_separator({0}, pts, 1, rng), std::invalid_argument);
  CHECK_THROWS_AS(ring_separator(pts.all_indices(), pts, 0, rng), std::invalid_argument);
}
