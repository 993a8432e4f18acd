#include "sspd/points.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sspd {

PointSet::PointSet(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("point dimension must be positive");
}

PointSet::PointSet(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
  if (dim == 0) throw std::invalid_argument("point dimension must be positive");
  if (coords_.size() % dim_ != 0) throw std::invalid_argument("coordinate count is not a multiple of dim");
}

void PointSet::add(std::span<const double> p) {
  if (p.size() != dim_) throw std::invalid_argument("point has wrong dimension");
  coords_.insert(coords_.end(), p.begin(), p.end());
}

bool PointSet::has_duplicates() const {
  const std::size_t n = size();
  if (n < 2) return false;
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    return std::lexicographical_compare((*this)[a].begin(), (*this)[a].end(), (*this)[b].begin(),
                                        (*this)[b].end());
  });
  for (std::size_t i = 1; i < n; ++i) {
    auto a = (*this)[order[i - 1]];
    auto b = (*this)[order[i]];
    if (std::equal(a.begin(), a.end(), b.begin())) return true;
  }
  return false;
}

IndexSet PointSet::all_indices() const {
  IndexSet out(size());
  std::iota(out.begin(), out.end(), Index{0});
  return out;
}

double dist_sq(const PointSet& pts, Index a, Index b) {
  auto pa = pts[a];
  auto pb = pts[b];
  double s = 0.0;
  for (std::size_t j = 0; j < pa.size(); ++j) {
    const double d = pa[j] - pb[j];
    s += d * d;
  }
  return s;
}

double dist(const PointSet& pts, Index a, Index b) { return std::sqrt(dist_sq(pts, a, b)); }

namespace {

double dist_to(std::span<const double> c, std::span<const double> p) {
  double s = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double d = c[j] - p[j];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

bool Ball::contains(std::span<const double> p) const { return dist_to(center, p) <= radius; }

bool Ring::contains(std::span<const double> p) const {
  const double d = dist_to(center, p);
  return inner < d && d <= outer;
}

PointSet read_points(std::istream& in) {
  std::string line;
  auto next_content_line = [&](std::string& out) {
    while (std::getline(in, line)) {
      std::size_t i = line.find_first_not_of(" \t\r");
      if (i == std::string::npos) continue;
      if (line[i] == '#') continue;
      out = line;
      return true;
    }
    return false;
  };

  std::string header;
  if (!next_content_line(header)) throw std::runtime_error("point file: missing header");
  std::istringstream hs(header);
  std::size_t d = 0, n = 0;
  if (!(hs >> d >> n) || d == 0) throw std::runtime_error("point file: bad header");

  PointSet pts(d);
  std::vector<double> row(d);
  for (std::size_t i = 0; i < n; ++i) {
    std::string body;
    if (!next_content_line(body)) throw std::runtime_error("point file: truncated");
    std::istringstream rs(body);
    for (std::size_t j = 0; j < d; ++j) {
      if (!(rs >> row[j])) throw std::runtime_error("point file: bad coordinate row");
    }
    pts.add(row);
  }
  return pts;
}

void write_points(std::ostream& out, const PointSet& pts) {
  out << pts.dim() << ' ' << pts.size() << '\n';
  char buf[64];
  for (Index i = 0; i < pts.size(); ++i) {
    auto p = pts[i];
    for (std::size_t j = 0; j < p.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", p[j]);
      if (j) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

PointSet load_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open point file: " + path);
  return read_points(in);
}

void save_points(const std::string& path, const PointSet& pts) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write point file: " + path);
  write_points(out, pts);
}

}  // namespace sspd
