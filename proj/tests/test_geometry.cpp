#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "sspd/generate.hpp"
#include "sspd/geometry.hpp"
#include "test_util.hpp"

using namespace sspd;
using sspd_test::make_points;

TEST_CASE("geometry: set_distance between opposite square corners") {
  // Nearest cross pair is (1,1)-(3,1) at distance exactly 2.
  PointSet pts = make_points(2, {0.0, 0.0, 1.0, 1.0, 3.0, 1.0, 5.0, 5.0});
  CHECK(set_distance({0, 1}, {2, 3}, pts) == 2.0);
  CHECK_THROWS_AS(set_distance({}, {0}, pts), std::invalid_argument);
}

TEST_CASE("geometry: exact diameter of a right triangle") {
  PointSet pts = make_points(2, {0.0, 0.0, 3.0, 0.0, 0.0, 4.0});
  CHECK(diameter({0, 1, 2}, pts, DiameterMode::exact) == 5.0);
  CHECK(diameter({0}, pts, DiameterMode::exact) == 0.0);
}

TEST_CASE("geometry: approximate diameter stays within a factor two") {
  PointSet pts = generate_points("uniform", 64, 3, 11);
  IndexSet all = pts.all_indices();
  const double exact = diameter(all, pts, DiameterMode::exact);
  const double approx = diameter(all, pts, DiameterMode::approx);
  CHECK(approx <= exact);
  CHECK(approx >= exact / 2.0);
}

TEST_CASE("geometry: spread of the 4x4 integer lattice") {
  PointSet pts = generate_points("lattice", 16, 2, 1);
  // Extremes are the main diagonal (length 3*sqrt(2)) and unit steps.
  CHECK(spread(pts) == std::sqrt(18.0));
}

TEST_CASE("geometry: spread rejects degenerate input") {
  CHECK_THROWS_AS(spread(make_points(1, {1.0})), std::invalid_argument);
  CHECK_THROWS_AS(spread(make_points(1, {1.0, 1.0})), std::invalid_argument);
}

TEST_CASE("geometry: far points cluster into singletons") {
  PointSet pts = make_points(2, {0.0, 0.0, 10.0, 10.0});
  auto clusters = cluster_by_diameter({0, 1}, pts, 1.0);
  REQUIRE(clusters.size() == 2);
  CHECK(clusters[0].size() == 1);
  CHECK(clusters[1].size() == 1);
}

TEST_CASE("geometry: clusters respect the diameter bound and partition the set") {
  PointSet pts = generate_points("clustered", 100, 2, 3);
  IndexSet all = pts.all_indices();
  const double bound = 0.05;
  auto clusters = cluster_by_diameter(all, pts, bound);
  IndexSet seen;
  for (const IndexSet& c : clusters) {
    REQUIRE_FALSE(c.empty());
    CHECK(diameter(c, pts, DiameterMode::exact) <= bound);
    seen.insert(seen.end(), c.begin(), c.end());
  }
  std::sort(seen.begin(), seen.end());
  CHECK(seen == all);
  CHECK_THROWS_AS(cluster_by_diameter(all, pts, 0.0), std::invalid_argument);
}

TEST_CASE("geometry: grid snap merges cell mates and keeps a partition") {
  // Cell side 1: the two points near the origin share a cell, the far one does not.
  PointSet pts = make_points(2, {0.1, 0.1, 0.2, 0.3, 5.5, 5.5});
  GridSnap snap = snap_to_grid({0, 1, 2}, pts, 1.0);
  CHECK(snap.points.size() == 2);
  CHECK(snap.snapped_of[0] == snap.snapped_of[1]);
  CHECK(snap.snapped_of[0] != snap.snapped_of[2]);
  REQUIRE(snap.originals.size() == 2);
  CHECK(snap.originals[snap.snapped_of[0]] == IndexSet{0, 1});
  CHECK(snap.originals[snap.snapped_of[2]] == IndexSet{2});
}

TEST_CASE("geometry: snapped points sit at cell centers") {
  PointSet pts = make_points(1, {0.25, 3.75});
  GridSnap snap = snap_to_grid({0, 1}, pts, 1.0);
  REQUIRE(snap.points.size() == 2);
  CHECK(snap.points[snap.snapped_of[0]][0] == 0.5);
  CHECK(snap.points[snap.snapped_of[1]][0] == 3.5);
}
