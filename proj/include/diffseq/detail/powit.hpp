#pragma once

// Largest singular value of a linear map given only matvec callbacks,
// via power iteration on A^H A. The callbacks receive and return
// std::vector<cplx>; sizes are fixed by n_cols / whatever A produces.

#include <cmath>
#include <cstdint>
#include <vector>

#include "diffseq/detail/rng.hpp"
#include "diffseq/sequences.hpp"

namespace diffseq::detail {

struct PowItOptions {
  double tol = 1e-11;     // stop when |s - s_prev| <= tol * s ...
  int consecutive = 3;    // ... for this many iterations in a row
  int maxit = 10000;
  std::uint64_t seed = 42;
};

struct PowItResult {
  double sigma = 0.0;
  bool converged = false;
  int iters = 0;
};

inline double vec2_norm(const std::vector<cplx>& v) {
  Kahan acc;
  for (const cplx& z : v) acc.add(std::norm(z));
  return std::sqrt(acc.value());
}

template <class ApplyA, class ApplyAH>
PowItResult power_iteration_sigma(std::int64_t n_cols, ApplyA&& A, ApplyAH&& AH,
                                  const PowItOptions& opts = {}) {
  Rng rng(opts.seed);
  std::vector<cplx> v(static_cast<std::size_t>(n_cols));
  for (cplx& z : v) z = rng.box();
  {
    const double nv = vec2_norm(v);
    if (nv == 0.0) v[0] = cplx(1.0, 0.0);
    else
      for (cplx& z : v) z /= nv;
  }

  PowItResult r;
  double s_prev = -1.0;
  int hits = 0;
  for (int it = 1; it <= opts.maxit; ++it) {
    std::vector<cplx> w = A(v);
    const double s = vec2_norm(w);
    r.iters = it;
    if (s == 0.0) {
      // v is (numerically) in the kernel; for the operators used here that
      // only happens when A itself is zero on the section
      r.sigma = 0.0;
      r.converged = true;
      return r;
    }
    for (cplx& z : w) z /= s;
    v = AH(w);
    const double nv = vec2_norm(v);
    if (nv > 0.0)
      for (cplx& z : v) z /= nv;

    if (s_prev >= 0.0 && std::abs(s - s_prev) <= opts.tol * s) {
      if (++hits >= opts.consecutive) {
        r.sigma = s;
        r.converged = true;
        return r;
      }
    } else {
      hits = 0;
    }
    s_prev = s;
    r.sigma = s;
  }
  return r;  // converged stays false; sigma holds the last estimate
}

}  // namespace diffseq::detail
