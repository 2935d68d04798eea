#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

#include "sgdf/rational.hpp"

namespace sgdf {

// Seeded generator for the randomized audits. mt19937_64 output is pinned by
// the standard; the distributions are implemented here so the streams do not
// depend on the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
    return bits() % bound;
  }

  // Uniform integer in [lo, hi].
  long integer(long lo, long hi) {
    if (hi < lo) throw std::invalid_argument("Rng::integer: empty range");
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Random p/q with 1 <= q <= max_den and |p| <= den_scale * q.
  Rational rational(long max_den, long num_scale = 2) {
    const long q = integer(1, max_den);
    const long p = integer(-num_scale * q, num_scale * q);
    return frac(p, q);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sgdf
