#pragma once

#include <cstdint>
#include <random>

#include "gfs/linalg.hpp"

namespace gfs {

// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Seeded random source. The bit stream is std::mt19937_64, which the C++
// standard pins exactly; the real and Gaussian conversions below are written
// out here because the standard distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Standard normal (Box-Muller, second variate cached).
  double normal();
  // Complex Gaussian with E|z|^2 = variance.
  cplx complex_normal(double variance);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace gfs
