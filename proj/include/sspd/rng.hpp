#ifndef SSPD_RNG_HPP
#define SSPD_RNG_HPP

#include <cmath>
#include <cstdint>

namespace sspd {

/// Deterministic splitmix64 generator. All randomized constructions take an
/// explicit seed so that identical (input, seed) gives identical output on
/// every platform; std:: distributions are avoided for the same reason.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n). Requires n > 0.
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(next_u64() % static_cast<std::uint64_t>(n));
  }

  /// Standard normal via Box-Muller (deterministic).
  double gaussian() {
    // uniform01 can return 0; shift into (0,1] for the log.
    double u = 1.0 - uniform01();
    double v = uniform01();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586477 * v);
  }

  /// Child generator for an independent branch of a recursive computation.
  /// Derived from the construction seed, not the current stream position, so
  /// sibling branches are reproducible regardless of draw order.
  Rng split(std::uint64_t branch) const {
    Rng child(mix(mix(seed_, 0x517cc1b727220a95ULL), branch));
    return child;
  }

  std::uint64_t seed() const { return seed_; }

 private:
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace sspd

#endif
