#include "sspd/pairs.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sspd {

const char* tag_name(PairTag t) {
  switch (t) {
    case PairTag::plain: return "plain";
    case PairTag::base: return "base";
    case PairTag::long_range: return "long";
    case PairTag::short_range: return "short";
    case PairTag::stage_a: return "stageA";
    case PairTag::stage_b: return "stageB";
    case PairTag::stage_c: return "stageC";
    case PairTag::merged: return "merged";
  }
  throw std::logic_error("tag_name: bad tag");
}

PairTag tag_from_name(const std::string& name) {
  for (PairTag t : {PairTag::plain, PairTag::base, PairTag::long_range, PairTag::short_range,
                    PairTag::stage_a, PairTag::stage_b, PairTag::stage_c, PairTag::merged}) {
    if (name == tag_name(t)) return t;
  }
  throw std::runtime_error("unknown pair tag: " + name);
}

void Pair::canonicalize() {
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  if (std::lexicographical_compare(right.begin(), right.end(), left.begin(), left.end()))
    std::swap(left, right);
}

DecompositionStats decomposition_stats(const PairDecomposition& w, const PointSet& pts) {
  DecompositionStats st;
  st.pair_count = w.pairs.size();
  st.per_point.assign(pts.size(), 0);
  for (const Pair& p : w.pairs) {
    st.weight += p.left.size() + p.right.size();
    for (Index i : p.left) ++st.per_point.at(i);
    for (Index i : p.right) ++st.per_point.at(i);
  }
  for (std::size_t c : st.per_point) st.max_pairs_per_point = std::max(st.max_pairs_per_point, c);
  return st;
}

namespace {

bool sorted_sets_intersect(const IndexSet& a, const IndexSet& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j]) ++i;
    else ++j;
  }
  return false;
}

IndexSet sorted_copy(const IndexSet& a) {
  if (std::is_sorted(a.begin(), a.end())) return a;
  IndexSet c = a;
  std::sort(c.begin(), c.end());
  return c;
}

double diameter_sq_exact(const IndexSet& x, const PointSet& pts) {
  double best = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) best = std::max(best, dist_sq(pts, x[i], x[j]));
  return best;
}

double set_distance_sq(const IndexSet& x, const IndexSet& y, const PointSet& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (Index i : x)
    for (Index j : y) best = std::min(best, dist_sq(pts, i, j));
  return best;
}

}  // namespace

bool check_separation(const IndexSet& x, const IndexSet& y, const PointSet& pts, double s,
                      SeparationMode mode) {
  if (x.empty() || y.empty()) throw std::invalid_argument("check_separation: empty side");
  if (!(s > 0.0)) throw std::invalid_argument("check_separation: separation must be positive");
  const IndexSet xs = sorted_copy(x);
  const IndexSet ys = sorted_copy(y);
  if (sorted_sets_intersect(xs, ys)) throw std::invalid_argument("check_separation: sides overlap");

  const double gap = set_distance_sq(xs, ys, pts);
  const double e = 1.0 / s;
  const double bound = e * e * gap;
  // Test the smaller side's (quadratic-time) diameter first: in semi mode one
  // passing side settles the answer, which skips the huge-far-side diameter
  // that dominates cluster-vs-rest pairs.
  const IndexSet& lo = xs.size() <= ys.size() ? xs : ys;
  const IndexSet& hi = xs.size() <= ys.size() ? ys : xs;
  const double d_lo = diameter_sq_exact(lo, pts);
  if (mode == SeparationMode::semi && d_lo <= bound) return true;
  if (mode == SeparationMode::well && d_lo > bound) return false;
  return diameter_sq_exact(hi, pts) <= bound;
}

PairDecomposition split_decomposition(const PairDecomposition& w, const IndexSet& q, const PointSet& pts) {
  std::vector<char> in_q(pts.size(), 0);
  for (Index i : q) in_q.at(i) = 1;

  PairDecomposition out;
  out.separation = w.separation;
  out.kind = w.kind;
  IndexSet a_in, a_out, b_in, b_out;
  for (const Pair& p : w.pairs) {
    a_in.clear(); a_out.clear(); b_in.clear(); b_out.clear();
    for (Index i : p.left) (in_q[i] ? a_in : a_out).push_back(i);
    for (Index i : p.right) (in_q[i] ? b_in : b_out).push_back(i);
    if (!a_in.empty() && !b_out.empty()) out.pairs.push_back(Pair{a_in, b_out, p.tag});
    if (!a_out.empty() && !b_in.empty()) out.pairs.push_back(Pair{a_out, b_in, p.tag});
  }
  return out;
}

namespace {

constexpr std::size_t kCoverageGuard = 4096;
constexpr std::size_t kWitnessCap = 32;

/// Flat upper-triangle index for u < v among n points.
std::size_t tri_index(std::size_t n, std::size_t u, std::size_t v) {
  return u * n - u * (u + 1) / 2 + (v - u - 1);
}

CoverageReport verify_coverage_impl(const PairDecomposition& w, const PointSet& pts, const IndexSet* q) {
  const std::size_t n = pts.size();
  if (n > kCoverageGuard) throw std::invalid_argument("verify_coverage: point set exceeds oracle guard");
  if (n < 2) {
    CoverageReport r;
    r.ok = true;
    return r;
  }

  std::vector<std::uint32_t> mult(n * (n - 1) / 2, 0);
  for (const Pair& p : w.pairs) {
    for (Index a : p.left) {
      for (Index b : p.right) {
        const std::size_t u = std::min<std::size_t>(a, b);
        const std::size_t v = std::max<std::size_t>(a, b);
        if (u == v) throw std::invalid_argument("verify_coverage: pair sides overlap");
        ++mult[tri_index(n, u, v)];
      }
    }
  }

  std::vector<char> in_q;
  if (q) {
    in_q.assign(n, 0);
    for (Index i : *q) in_q.at(i) = 1;
  }

  CoverageReport r;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const std::uint32_t m = mult[tri_index(n, u, v)];
      const bool expected = !q || (in_q[u] != in_q[v]);
      if (expected) {
        ++r.multiplicity_histogram[m];
        if (m == 0) {
          ++r.missing_count;
          if (r.missing.size() < kWitnessCap)
            r.missing.emplace_back(static_cast<Index>(u), static_cast<Index>(v));
        }
      } else if (m > 0) {
        ++r.unexpected_count;
        if (r.unexpected.size() < kWitnessCap)
          r.unexpected.emplace_back(static_cast<Index>(u), static_cast<Index>(v));
      }
    }
  }
  r.ok = r.missing_count == 0 && r.unexpected_count == 0;
  return r;
}

}  // namespace

CoverageReport verify_coverage_all(const PairDecomposition& w, const PointSet& pts) {
  return verify_coverage_impl(w, pts, nullptr);
}

CoverageReport verify_coverage_cut(const PairDecomposition& w, const PointSet& pts, const IndexSet& q) {
  return verify_coverage_impl(w, pts, &q);
}

bool exactly_once(const CoverageReport& r) {
  if (!r.ok) return false;
  for (const auto& [mult, count] : r.multiplicity_histogram) {
    if (mult != 1 && count > 0) return false;
  }
  return true;
}

void write_decomposition(std::ostream& out, const PairDecomposition& w) {
  for (const Pair& p : w.pairs) {
    out << tag_name(p.tag) << " |";
    for (Index i : p.left) out << ' ' << i;
    out << " |";
    for (Index i : p.right) out << ' ' << i;
    out << '\n';
  }
}

PairDecomposition read_decomposition(std::istream& in) {
  PairDecomposition w;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;

    const std::size_t bar1 = line.find('|');
    const std::size_t bar2 = bar1 == std::string::npos ? std::string::npos : line.find('|', bar1 + 1);
    if (bar2 == std::string::npos) throw std::runtime_error("decomposition dump: malformed line");

    Pair p;
    std::string tag = line.substr(start, bar1 - start);
    tag.erase(tag.find_last_not_of(" \t") + 1);
    p.tag = tag_from_name(tag);

    auto parse_side = [&](const std::string& text, IndexSet& side) {
      std::istringstream ss(text);
      Index i;
      while (ss >> i) side.push_back(i);
    };
    parse_side(line.substr(bar1 + 1, bar2 - bar1 - 1), p.left);
    parse_side(line.substr(bar2 + 1), p.right);
    if (p.left.empty() || p.right.empty()) throw std::runtime_error("decomposition dump: empty side");
    w.pairs.push_back(std::move(p));
  }
  return w;
}

}  // namespace sspd
