#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rvz {

/// Deterministic random source. mt19937_64 has a bit-exact portable output
/// sequence; the uniform/normal transforms below are spelled out explicitly so
/// streams do not depend on standard-library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// i in [0, n), n > 0.
  std::uint64_t index(std::uint64_t n) {
    // Rejection-free modulo is fine here: n is tiny relative to 2^64.
    return gen_() % n;
  }

  /// Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

}  // namespace rvz
