#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace diffseq::detail {

// mt19937_64 output is bit-exact across platforms; the standard library's
// distribution adaptors are not. Mapping raw bits to doubles by hand keeps
// every randomized experiment byte-reproducible from its seed alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // uniform in [0, 1), 53-bit resolution
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // inclusive on both ends; modulo bias is irrelevant at the span sizes used
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1u;
    return lo + static_cast<std::int64_t>(eng_() % span);
  }

  std::complex<double> box() { return {uniform() - 0.5, uniform() - 0.5}; }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace diffseq::detail
