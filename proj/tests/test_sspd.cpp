#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "sspd/generate.hpp"
#include "sspd/rng.hpp"
#include "sspd/sspd.hpp"
#include "test_util.hpp"

using namespace sspd;
using sspd_test::decomposition_valid;
using sspd_test::make_points;

namespace {

std::string dump(const PairDecomposition& dec) {
  std::ostringstream out;
  write_decomposition(out, dec);
  return out.str();
}

/// Multiset of canonicalized (left, right) pairs, tags ignored.
std::multiset<std::pair<IndexSet, IndexSet>> content(const PairDecomposition& dec) {
  std::multiset<std::pair<IndexSet, IndexSet>> s;
  for (Pair p : dec.pairs) {
    p.canonicalize();
    s.insert({p.left, p.right});
  }
  return s;
}

}  // namespace

TEST_CASE("sspd_simple: two points yield the singleton pair") {
  PointSet pts = make_points(2, {0.0, 0.0, 1.0, 0.0});
  PairDecomposition dec = sspd_simple(pts.all_indices(), pts, 0.5, 1);
  REQUIRE(dec.pairs.size() == 1);
  CHECK(dec.separation == 2.0);
  Pair p = dec.pairs.front();
  p.canonicalize();
  CHECK(p.left == IndexSet{0});
  CHECK(p.right == IndexSet{1});
}

TEST_CASE("sspd_simple: coverage and exact semi-separation") {
  for (const char* kind : {"uniform", "lattice", "clustered", "expspread"})
    for (double eps : {0.25, 1.0}) {
      PointSet pts = generate_points(kind, 96, 2, 17);
      PairDecomposition dec = sspd_simple(pts.all_indices(), pts, eps, 3);
      CHECK(decomposition_valid(dec, pts, SeparationMode::semi));
    }
}

TEST_CASE("sspd_simple: input validation") {
  PointSet dup = make_points(1, {0.0, 0.0});
  CHECK_THROWS_AS(sspd_simple(dup.all_indices(), dup, 0.5, 1), std::invalid_argument);
  PointSet pts = make_points(1, {0.0, 1.0});
  CHECK_THROWS_AS(sspd_simple(pts.all_indices(), pts, 1.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(sspd_simple(pts.all_indices(), pts, 0.0, 1), std::invalid_argument);
}

TEST_CASE("sspd_optimal: small inputs become all-singleton base pairs") {
  // n = 16 sits below the automatic threshold max(32, eps^-d).
  PointSet pts = generate_points("uniform", 16, 2, 2);
  SspdConfig cfg;
  cfg.eps = 0.5;
  SspdResult res = sspd_optimal(pts.all_indices(), pts, cfg);
  CHECK(res.decomposition.pairs.size() == 120);  // C(16,2)
  for (const Pair& p : res.decomposition.pairs) {
    CHECK(p.tag == PairTag::base);
    CHECK(p.left.size() == 1);
    CHECK(p.right.size() == 1);
  }
  CHECK(exactly_once(verify_coverage_all(res.decomposition, pts)));
}

TEST_CASE("sspd_optimal: threshold follows eps when eps is small") {
  // eps = 0.1 in d = 2 raises the cutoff to 100, so 64 points stay one base block.
  PointSet pts = generate_points("uniform", 64, 2, 2);
  SspdConfig cfg;
  cfg.eps = 0.1;
  SspdResult res = sspd_optimal(pts.all_indices(), pts, cfg);
  CHECK(res.decomposition.pairs.size() == 64 * 63 / 2);
  for (const Pair& p : res.decomposition.pairs) CHECK(p.tag == PairTag::base);
}

TEST_CASE("sspd_optimal: coverage, separation, tags, and diagnostics") {
  PointSet pts = generate_points("uniform", 256, 2, 12);
  SspdConfig cfg;
  cfg.eps = 0.5;
  cfg.seed = 5;
  SspdResult res = sspd_optimal(pts.all_indices(), pts, cfg);
  CHECK(decomposition_valid(res.decomposition, pts, SeparationMode::semi));
  for (const Pair& p : res.decomposition.pairs) {
    const bool known = p.tag == PairTag::base || p.tag == PairTag::long_range ||
                       p.tag == PairTag::short_range;
    CHECK(known);
  }

  const SspdDiagnostics& diag = res.diagnostics;
  REQUIRE_FALSE(diag.steps.empty());
  std::size_t longs = 0, shorts = 0;
  for (const SspdStep& st : diag.steps) {
    // Every divide step records one signed gap per ring-set point.
    CHECK(st.gaps.size() == st.part.pin.size() + st.part.pout.size());
    CHECK(st.part.x_cut >= 5.0 * st.part.r);
    CHECK(st.part.x_cut <= 6.0 * st.part.r);
    longs += st.long_pairs;
    shorts += st.short_pairs;
  }
  std::size_t by_level_l = 0, by_level_s = 0;
  for (std::size_t c : diag.longs_per_level) by_level_l += c;
  for (std::size_t c : diag.shorts_per_level) by_level_s += c;
  CHECK(longs == by_level_l);
  CHECK(shorts == by_level_s);
  CHECK(diag.mean_gap_proxy >= 0.0);
}

TEST_CASE("sspd_optimal: deterministic in the seed") {
  PointSet pts = generate_points("clustered", 200, 2, 9);
  SspdConfig cfg;
  cfg.eps = 0.5;
  cfg.seed = 11;
  const std::string first = dump(sspd_optimal(pts.all_indices(), pts, cfg).decomposition);
  const std::string second = dump(sspd_optimal(pts.all_indices(), pts, cfg).decomposition);
  CHECK(first == second);

  cfg.seed = 12;
  const std::string other = dump(sspd_optimal(pts.all_indices(), pts, cfg).decomposition);
  CHECK(first != other);  // a fresh seed moves the random cut
}

TEST_CASE("sspd_optimal: subsets of the point set are handled") {
  PointSet pts = generate_points("uniform", 120, 2, 14);
  IndexSet odd;
  for (Index i = 1; i < pts.size(); i += 2) odd.push_back(i);
  SspdConfig cfg;
  cfg.eps = 0.5;
  PairDecomposition dec = sspd_optimal(odd, pts, cfg).decomposition;
  // All pairs stay inside the subset.
  for (const Pair& p : dec.pairs) {
    for (Index q : p.left) CHECK((q % 2) == 1);
    for (Index q : p.right) CHECK((q % 2) == 1);
  }
  for (const Pair& p : dec.pairs)
    CHECK(check_separation(p.left, p.right, pts, dec.separation, SeparationMode::semi));
}

TEST_CASE("sspd_optimal_cut: matches splitting the full construction") {
  PointSet pts = generate_points("uniform", 80, 2, 23);
  SspdConfig cfg;
  cfg.eps = 0.5;
  cfg.seed = 6;
  Rng rng(77);
  IndexSet cut;
  for (Index i = 0; i < pts.size(); ++i)
    if (rng.uniform01() < 0.4) cut.push_back(i);

  PairDecomposition direct = sspd_optimal_cut(pts.all_indices(), pts, cfg, cut, PairTag::stage_a);
  for (const Pair& p : direct.pairs) CHECK(p.tag == PairTag::stage_a);

  PairDecomposition full = sspd_optimal(pts.all_indices(), pts, cfg).decomposition;
  PairDecomposition split = split_decomposition(full, cut, pts);
  CHECK(content(direct) == content(split));
}

TEST_CASE("reduce_pairs: lone well-separated short pair becomes a merged pair") {
  PointSet pts = make_points(1, {0.0, 100.0});
  PairDecomposition dec;
  dec.separation = 2.0;
  dec.pairs.push_back(Pair{{0}, {1}, PairTag::short_range});
  PairDecomposition out = reduce_pairs(dec, pts, 0.5);
  REQUIRE(out.pairs.size() == 1);
  CHECK(out.pairs.front().tag == PairTag::merged);
}

TEST_CASE("reduce_pairs: non-short pairs pass through untouched") {
  PointSet pts = make_points(1, {0.0, 1.0, 100.0});
  PairDecomposition dec;
  dec.separation = 2.0;
  dec.pairs.push_back(Pair{{0, 1}, {2}, PairTag::long_range});
  PairDecomposition out = reduce_pairs(dec, pts, 0.5);
  REQUIRE(out.pairs.size() == 1);
  CHECK(out.pairs.front().tag == PairTag::long_range);
  CHECK(out.pairs.front().left == IndexSet{0, 1});
}

TEST_CASE("reduce_pairs: refuses untagged decompositions and bad eps") {
  PointSet pts = make_points(1, {0.0, 1.0});
  PairDecomposition dec;
  dec.pairs.push_back(Pair{{0}, {1}, PairTag::plain});
  CHECK_THROWS_AS(reduce_pairs(dec, pts, 0.5), std::invalid_argument);
  dec.pairs.front().tag = PairTag::base;
  CHECK_THROWS_AS(reduce_pairs(dec, pts, 2.0), std::invalid_argument);
}

TEST_CASE("sspd_optimal_reduced: never grows the decomposition and stays valid") {
  for (double eps : {0.25, 0.5, 1.0}) {
    PointSet pts = generate_points("uniform", 300, 2, 31);
    SspdConfig cfg;
    cfg.eps = eps;
    cfg.seed = 2;
    SspdResult reduced = sspd_optimal_reduced(pts.all_indices(), pts, cfg);
    CHECK(decomposition_valid(reduced.decomposition, pts, SeparationMode::semi));
    for (const Pair& p : reduced.decomposition.pairs) CHECK(p.tag != PairTag::plain);

    // The merge pass must not add pairs or weight relative to its own input;
    // compare against the reduce-tuned construction it actually consumed.
    SspdConfig tuned = cfg;
    tuned.reduce = true;
    SspdResult pre = sspd_optimal(pts.all_indices(), pts, tuned);
    DecompositionStats before = decomposition_stats(pre.decomposition, pts);
    DecompositionStats after = decomposition_stats(reduced.decomposition, pts);
    CHECK(after.pair_count <= before.pair_count);
    CHECK(after.weight <= before.weight);
  }
}
