#pragma once

namespace diffseq::detail {

// Kahan compensated accumulator. The Hardy sweeps and the l_p norm
// accumulations run over up to 1e6 terms with 1e-3..1e-10 tolerances
// downstream; compensation keeps the summation error at ~1 ulp instead of
// O(N) ulps regardless of N.
struct Kahan {
  double s = 0.0;
  double c = 0.0;

  void add(double x) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double value() const { return s; }
};

}  // namespace diffseq::detail
