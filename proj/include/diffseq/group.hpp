#pragma once

// Finite sections of the diagonal group e^{i t f(n)} conjugated into the
// order-k difference picture, and the norm/growth diagnostics built on them:
//
//   M_{t,N} = Delta^k diag(e^{i t f(n)}) Sigma^k   (N x N, exact compression)
//
// The group law M_s M_t = M_{s+t} holds entrywise on sections (all factors
// are lower triangular), eigenvector action is exact, and the norm curves
// N -> ||M_{t,N}|| are nondecreasing in N with limit the true group norm.
// Whether that limit is finite separates the generators with bounded group
// from those with norms growing in t — the dichotomy the curves document.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "diffseq/detail/parallel.hpp"
#include "diffseq/operator_section.hpp"
#include "diffseq/sequences.hpp"
#include "diffseq/spectral_fn.hpp"

namespace diffseq {

inline OperatorSection group_section(const SpectralFn& f, double t,
                                     const DiffSpaceSpec& spec, std::int64_t N) {
  return OperatorSection::group(f, t, spec.k, N);
}

struct CurveRow {
  std::int64_t N = 0;
  double t = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool converged = true;
};

struct GroupNormCurve {
  std::string f;
  int k = 0;
  double p = 2.0;
  std::vector<CurveRow> rows;  // N-major, t-minor, same order as the grids
};

inline GroupNormCurve group_norm_curve(const SpectralFn& f, const DiffSpaceSpec& spec,
                                       const std::vector<std::int64_t>& N_grid,
                                       const std::vector<double>& t_grid) {
  if (N_grid.empty() || t_grid.empty())
    throw std::invalid_argument("group_norm_curve: empty grid");
  for (std::size_t i = 0; i < N_grid.size(); ++i) {
    if (N_grid[i] < 1) throw std::invalid_argument("group_norm_curve: need N >= 1");
    if (i > 0 && N_grid[i] <= N_grid[i - 1])
      throw std::invalid_argument("group_norm_curve: N grid must be strictly increasing");
  }
  for (double t : t_grid)
    if (!std::isfinite(t)) throw std::invalid_argument("group_norm_curve: t must be finite");

  std::vector<std::pair<std::int64_t, double>> jobs;
  jobs.reserve(N_grid.size() * t_grid.size());
  for (std::int64_t N : N_grid)
    for (double t : t_grid) jobs.emplace_back(N, t);

  std::vector<CurveRow> rows = detail::parallel_map(jobs, [&](const std::pair<std::int64_t, double>& j) {
    const OperatorSection sec = OperatorSection::group(f, j.second, spec.k, j.first);
    const NormBounds nb = section_norm(sec, spec.p);
    return CurveRow{j.first, j.second, nb.lower, nb.upper, nb.converged};
  });

  GroupNormCurve curve;
  curve.f = f.name();
  curve.k = spec.k;
  curve.p = spec.p;
  curve.rows = std::move(rows);
  return curve;
}

struct GrowthBoundReport {
  double estimate = 0.0;                 // max of ln(norm)/t over the sampled times
  std::vector<CurveRow> samples;         // the (t, norm) pairs that entered the max
};

// log-spaced times 10 .. 100, endpoint pinned exactly to 100
inline std::vector<double> default_growth_grid() {
  std::vector<double> g(80);
  for (int i = 0; i < 80; ++i) g[static_cast<std::size_t>(i)] = std::pow(10.0, 1.0 + i / 79.0);
  g[79] = 100.0;
  return g;
}

// Crude upper estimate of the growth exponent: omega_hat = max ln||M_t|| / t
// over the three largest grid times. ln||M_t||/t decreases toward the true
// exponent as t grows, so sampling anywhere below the largest times can only
// raise the estimate — the grid must reach well past the transient (hence the
// max >= 50 requirement).
inline GrowthBoundReport growth_bound_estimate(const SpectralFn& f, const DiffSpaceSpec& spec,
                                               std::int64_t N, const std::vector<double>& t_grid) {
  if (t_grid.size() < 3)
    throw std::invalid_argument("growth_bound_estimate: need at least 3 time points");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0) || !std::isfinite(t_grid[i]))
      throw std::invalid_argument("growth_bound_estimate: times must be positive and finite");
    if (i > 0 && t_grid[i] <= t_grid[i - 1])
      throw std::invalid_argument("growth_bound_estimate: times must be strictly increasing");
  }
  if (!(t_grid.back() >= 50.0))
    throw std::invalid_argument("growth_bound_estimate: largest time must be >= 50");

  std::vector<double> tail(t_grid.end() - 3, t_grid.end());
  GrowthBoundReport rep;
  rep.samples = detail::parallel_map(tail, [&](double t) {
    const NormBounds nb = section_norm(OperatorSection::group(f, t, spec.k, N), spec.p);
    return CurveRow{N, t, nb.lower, nb.upper, nb.converged};
  });
  for (const CurveRow& r : rep.samples)
    rep.estimate = std::max(rep.estimate, std::log(r.upper) / r.t);
  return rep;
}

// ||M_t x - x||_p for x given in difference coordinates (the picture where
// the space norm is the plain l_p norm). t must decrease strictly toward 0;
// the returned norms witness (or refute) strong continuity at this x.
inline std::vector<double> strong_continuity_probe(const CoefficientSeq& x, const SpectralFn& f,
                                                   const DiffSpaceSpec& spec,
                                                   const std::vector<double>& t_seq) {
  if (t_seq.empty()) throw std::invalid_argument("strong_continuity_probe: empty time sequence");
  for (std::size_t i = 0; i < t_seq.size(); ++i) {
    if (!(t_seq[i] >= 0.0) || !std::isfinite(t_seq[i]))
      throw std::invalid_argument("strong_continuity_probe: times must be finite and >= 0");
    if (i > 0 && t_seq[i] >= t_seq[i - 1])
      throw std::invalid_argument("strong_continuity_probe: times must decrease strictly");
  }
  std::vector<double> out;
  out.reserve(t_seq.size());
  for (double t : t_seq) {
    const OperatorSection sec = OperatorSection::group(f, t, spec.k, x.length());
    std::vector<cplx> d = sec.apply(x.entries);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= x.entries[i];
    out.push_back(lp_norm(d, spec.p));
  }
  return out;
}

// Weighted averaging section (A x)_n = n^{1/p-1} sum_{m<=n} x_m. Its p-norm
// grows like ((N+1)/2)^{1/p} (take x constant), quantifying how far the
// averaging operator is from bounded on the weighted scale.
inline OperatorSection cesaro_rate_section(double p, std::int64_t N) {
  return OperatorSection::cesaro_rate(p, N);
}

}  // namespace diffseq
