#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "sspd/points.hpp"
#include "test_util.hpp"

using namespace sspd;
using sspd_test::make_points;

TEST_CASE("points: construction and access") {
  PointSet pts = make_points(2, {0.0, 0.0, 3.0, 4.0});
  CHECK(pts.dim() == 2);
  CHECK(pts.size() == 2);
  CHECK_FALSE(pts.empty());
  CHECK(pts[1][0] == 3.0);
  CHECK(pts[1][1] == 4.0);

  std::vector<double> extra{1.5, -2.5};
  pts.add(extra);
  CHECK(pts.size() == 3);
  CHECK(pts[2][1] == -2.5);

  CHECK_THROWS_AS(PointSet(0), std::invalid_argument);
  CHECK_THROWS_AS(PointSet(2, std::vector<double>{1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("points: distances are exact") {
  PointSet pts = make_points(2, {0.0, 0.0, 3.0, 4.0});
  CHECK(dist_sq(pts, 0, 1) == 25.0);
  CHECK(dist(pts, 0, 1) == 5.0);
  CHECK(dist_sq(pts, 0, 0) == 0.0);
}

TEST_CASE("points: duplicate detection") {
  CHECK_FALSE(make_points(1, {0.0, 1.0, 2.0}).has_duplicates());
  CHECK(make_points(1, {0.0, 1.0, 0.0}).has_duplicates());
  CHECK(make_points(2, {5.0, 5.0, 5.0, 5.0}).has_duplicates());
}

TEST_CASE("points: all_indices is the identity range") {
  PointSet pts = make_points(1, {3.0, 1.0, 2.0});
  CHECK(pts.all_indices() == IndexSet{0, 1, 2});
}

TEST_CASE("points: ball is closed") {
  Ball b{{0.0, 0.0}, 5.0};
  CHECK(b.contains(make_points(2, {3.0, 4.0})[0]));   // boundary, dist exactly 5
  CHECK(b.contains(make_points(2, {0.0, 0.0})[0]));
  CHECK_FALSE(b.contains(make_points(2, {3.0, 4.001})[0]));
}

TEST_CASE("points: ring excludes inner boundary, includes outer") {
  Ring r{{0.0, 0.0}, 5.0, 10.0};
  CHECK_FALSE(r.contains(make_points(2, {3.0, 4.0})[0]));   // dist 5 = inner, excluded
  CHECK(r.contains(make_points(2, {6.0, 8.0})[0]));         // dist 10 = outer, included
  CHECK(r.contains(make_points(2, {7.0, 0.0})[0]));
  CHECK_FALSE(r.contains(make_points(2, {10.0, 0.001})[0]));
}

TEST_CASE("points: stream round trip preserves every bit") {
  PointSet pts = make_points(2, {0.1, -0.2, 1e-17, 12345.6789, 0.0, 3.0});
  std::ostringstream out;
  write_points(out, pts);
  std::istringstream in(out.str());
  PointSet back = read_points(in);
  CHECK(back.dim() == pts.dim());
  CHECK(back.raw() == pts.raw());
}

TEST_CASE("points: reader skips comments and blank lines") {
  std::istringstream in("# generated by hand\n\n2 2\n0 0\n# interior comment\n1 1\n");
  PointSet pts = read_points(in);
  CHECK(pts.size() == 2);
  CHECK(pts[1][0] == 1.0);
}

TEST_CASE("points: reader rejects truncated input") {
  std::istringstream in("2 3\n0 0\n1 1\n");
  CHECK_THROWS(read_points(in));
}
