#include "sspd/generate.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sspd/rng.hpp"

namespace sspd {

namespace {

PointSet gen_uniform(std::size_t n, std::size_t dim, Rng& rng) {
  PointSet pts(dim);
  std::vector<double> p(dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < dim; ++j) p[j] = rng.uniform01();
    pts.add(p);
  }
  return pts;
}

PointSet gen_lattice(std::size_t n, std::size_t dim) {
  const auto side = static_cast<std::size_t>(
      std::ceil(std::pow(static_cast<double>(n), 1.0 / static_cast<double>(dim)) - 1e-9));
  PointSet pts(dim);
  std::vector<std::size_t> idx(dim, 0);
  std::vector<double> p(dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < dim; ++j) p[j] = static_cast<double>(idx[j]);
    pts.add(p);
    for (std::size_t j = dim; j-- > 0;) {  // row-major increment
      if (++idx[j] < side) break;
      idx[j] = 0;
    }
  }
  return pts;
}

PointSet gen_clustered(std::size_t n, std::size_t dim, Rng& rng) {
  const auto k = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(n)) - 1e-9));
  std::vector<std::vector<double>> centers(k, std::vector<double>(dim));
  for (auto& c : centers)
    for (double& v : c) v = rng.uniform01();
  PointSet pts(dim);
  std::vector<double> p(dim);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = centers[i % k];
    for (std::size_t j = 0; j < dim; ++j) p[j] = c[j] + 0.01 * rng.gaussian();
    pts.add(p);
  }
  return pts;
}

PointSet gen_expspread(std::size_t n, std::size_t dim) {
  if (n > 1023) throw std::invalid_argument("generate_points: expspread needs n <= 1023");
  PointSet pts(dim);
  std::vector<double> p(dim, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    p[0] = std::ldexp(1.0, static_cast<int>(i));
    if (dim >= 2) p[1] = static_cast<double>(i) * 1e-7;  // keeps the set non-collinear
    pts.add(p);
  }
  return pts;
}

}  // namespace

PointSet generate_points(const std::string& kind, std::size_t n, std::size_t dim,
                         std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("generate_points: n must be >= 1");
  if (dim < 1 || dim > 8) throw std::invalid_argument("generate_points: d must be in 1..8");
  Rng rng(seed);
  if (kind == "uniform") return gen_uniform(n, dim, rng);
  if (kind == "lattice") return gen_lattice(n, dim);
  if (kind == "clustered") return gen_clustered(n, dim, rng);
  if (kind == "expspread") return gen_expspread(n, dim);
  throw std::invalid_argument("generate_points: unknown kind '" + kind + "'");
}

}  // namespace sspd
