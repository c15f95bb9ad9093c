#pragma once

// The discrete Hardy inequality
//
//   sum_n ( (1/n) sum_{m<=n} a_m )^p  <=  (p/(p-1))^p  sum_n a_n^p,   a_n >= 0,
//
// evaluated on truncations, plus a sharpness probe built on the near-extremal
// family a_n = n^{-(1+eps)/p}.
//
// The truncated left-hand side underestimates the infinite one, so every
// report carries its truncation length N and all claims have the form
// "ratio at truncation N". In particular the sharpness ratios drift toward 1
// only when eps * ln N is large: at fixed N the ratio as a function of eps
// rises, peaks near eps ~ 2/ln N, and falls again, so a descending eps grid
// is monotone only while it stays right of that peak.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "diffseq/detail/kahan.hpp"
#include "diffseq/detail/parallel.hpp"

namespace diffseq {

struct HardyReport {
  double lhs = 0.0;    // sum of p-th powers of the Cesaro means, truncated
  double rhs = 0.0;    // (p/(p-1))^p * sum a_n^p
  double ratio = 0.0;  // lhs/rhs, in [0,1]; 0 for the zero sequence
  double p = 0.0;
  std::int64_t N = 0;
};

inline HardyReport hardy_sides(const std::vector<double>& a, double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::invalid_argument("hardy_sides: need finite p > 1");
  if (a.empty()) throw std::invalid_argument("hardy_sides: empty sequence");
  for (double x : a)
    if (!(x >= 0.0) || !std::isfinite(x))
      throw std::invalid_argument("hardy_sides: entries must be nonnegative and finite");

  detail::Kahan pref, lhs, rhs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    pref.add(a[i]);
    const double mean = pref.value() / static_cast<double>(i + 1);
    lhs.add(std::pow(mean, p));
    rhs.add(std::pow(a[i], p));
  }
  HardyReport r;
  r.p = p;
  r.N = static_cast<std::int64_t>(a.size());
  r.lhs = lhs.value();
  r.rhs = std::pow(p / (p - 1.0), p) * rhs.value();
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
  return r;
}

inline std::vector<double> near_extremal_family(double eps, std::int64_t N, double p) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw std::invalid_argument("near_extremal_family: need eps > 0");
  if (N < 1) throw std::invalid_argument("near_extremal_family: need N >= 1");
  if (!(p > 1.0)) throw std::invalid_argument("near_extremal_family: need p > 1");
  std::vector<double> a(static_cast<std::size_t>(N));
  const double expo = -(1.0 + eps) / p;
  for (std::int64_t n = 1; n <= N; ++n)
    a[static_cast<std::size_t>(n - 1)] = std::pow(static_cast<double>(n), expo);
  return a;
}

inline std::vector<HardyReport> hardy_sharpness_sweep(double p,
                                                      const std::vector<double>& eps_grid,
                                                      std::int64_t N) {
  if (eps_grid.empty())
    throw std::invalid_argument("hardy_sharpness_sweep: empty eps grid");
  if (N < 1000)
    throw std::invalid_argument("hardy_sharpness_sweep: need N >= 1e3");
  for (double eps : eps_grid)
    if (!(eps > 0.0) || !std::isfinite(eps))
      throw std::invalid_argument("hardy_sharpness_sweep: eps values must be > 0");
  return detail::parallel_map(eps_grid, [&](double eps) {
    return hardy_sides(near_extremal_family(eps, N, p), p);
  });
}

}  // namespace diffseq
