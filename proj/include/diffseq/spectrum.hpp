#pragma once

// Diagnostics on the eigenvalue sequence lambda_n = f(n): separation,
// decomposability into finitely many separated classes, the polynomial
// membership test behind the bounded/unbounded dichotomy, and growth-rate
// checks. Everything here is a statement about the first n_max values, which
// is the honest scope of any numerical run; the verdict strings say
// "consistent with" for that reason.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "diffseq/sequences.hpp"
#include "diffseq/spectral_fn.hpp"

namespace diffseq {

namespace detail {

inline std::vector<double> sample_values(const SpectralFn& f, std::int64_t N) {
  std::vector<double> lam(static_cast<std::size_t>(N));
  for (std::int64_t n = 1; n <= N; ++n) {
    const double v = f(n);
    if (!std::isfinite(v)) throw std::invalid_argument("spectrum: f(n) must stay finite");
    lam[static_cast<std::size_t>(n - 1)] = v;
  }
  return lam;
}

}  // namespace detail

// Smallest distance between any two of the first N eigenvalues (0 for
// duplicates). inf_n gap > 0 is the separation the eigenvector machinery
// needs; for lambda_n = ln n the gap decays like 1/N, vanishing in the limit.
inline double uniform_gap(const std::vector<double>& lam, std::int64_t N) {
  if (N < 2 || N > static_cast<std::int64_t>(lam.size()))
    throw std::invalid_argument("uniform_gap: need 2 <= N <= number of values");
  std::vector<double> s(lam.begin(), lam.begin() + N);
  std::sort(s.begin(), s.end());
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < s.size(); ++i) g = std::min(g, s[i + 1] - s[i]);
  return g;
}

inline double uniform_gap(const SpectralFn& f, std::int64_t N) {
  return uniform_gap(detail::sample_values(f, N), N);
}

struct DecomposeReport {
  int K = 0;
  double delta = 0.0;
  double inf_gap = 0.0;                 // plain uniform gap of the input
  double window_inf = 0.0;              // min over j of lam[j+K] - lam[j]
  std::vector<double> per_class_gaps;   // min adjacent gap inside each class
  bool feasible = false;
};

// Can the first N eigenvalues be split into K classes, each with uniform gap
// >= delta? Exact answer for points on a line: if K+1 consecutive values span
// < delta, two of them land in the same class (pigeonhole) and that class
// violates delta; conversely, when every such window spans >= delta, dealing
// the values round-robin gives in-class neighbors exactly one window apart.
// So the round-robin partition decides feasibility exactly and the decision
// reduces to window_inf >= delta. Input must come sorted ascending — the
// caller says what order the spectrum carries; silently sorting would hide
// mistakes.
inline DecomposeReport k_decompose(const std::vector<double>& lam, int K, double delta,
                                   std::int64_t N) {
  if (K < 1) throw std::invalid_argument("k_decompose: need K >= 1");
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw std::invalid_argument("k_decompose: need finite delta > 0");
  if (N < K + 1 || N > static_cast<std::int64_t>(lam.size()))
    throw std::invalid_argument("k_decompose: need K+1 <= N <= number of values");
  const std::vector<double> s(lam.begin(), lam.begin() + N);
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (!(s[i] <= s[i + 1]))
      throw std::invalid_argument("k_decompose: values must be sorted ascending");

  DecomposeReport rep;
  rep.K = K;
  rep.delta = delta;
  rep.inf_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    rep.inf_gap = std::min(rep.inf_gap, s[i + 1] - s[i]);
  rep.window_inf = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j + K < s.size(); ++j)
    rep.window_inf = std::min(rep.window_inf, s[j + static_cast<std::size_t>(K)] - s[j]);

  rep.per_class_gaps.assign(static_cast<std::size_t>(K),
                            std::numeric_limits<double>::infinity());
  for (std::size_t j = 0; j + K < s.size(); ++j) {
    const std::size_t cls = j % static_cast<std::size_t>(K);
    rep.per_class_gaps[cls] =
        std::min(rep.per_class_gaps[cls], s[j + static_cast<std::size_t>(K)] - s[j]);
  }
  rep.feasible = true;
  for (double g : rep.per_class_gaps)
    if (!(g >= delta)) rep.feasible = false;
  return rep;
}

inline DecomposeReport k_decompose(const SpectralFn& f, int K, double delta, std::int64_t N) {
  return k_decompose(detail::sample_values(f, N), K, delta, N);
}

struct SkReport {
  int k = 0;
  std::int64_t n_max = 0;
  std::vector<int> j_values;                                   // 1..k
  std::vector<std::vector<std::pair<std::int64_t, double>>> beta_table;  // per j, log-spaced
  std::vector<double> tail_sup;  // sup |beta| over (n_max/10, n_max]
  std::vector<double> prev_sup;  // sup |beta| over (n_max/100, n_max/10]
  std::string verdict;           // "consistent-with-membership" or "inconsistent"
};

// Membership test for the class where the order-k group stays bounded:
// it requires n^k (f(n-j) - f(n)) to remain bounded for each j = 1..k.
// A finite scan cannot prove a limit, so the verdict vocabulary is
// deliberately "consistent-with-membership", never "member". The heuristic:
// record beta_{k,j}(n) = n^k (f(n-j) - f(n)) over the full range; if a decade
// sup more than doubles over the previous decade the data is clearly tracking
// a power of n rather than flattening — inconsistent. Bounded betas give
// decade ratios -> 1, far inside the 2x margin, so the threshold separates
// the regimes with an order of magnitude to spare on each side.
inline SkReport sk_membership(const SpectralFn& f, int k, std::int64_t n_max) {
  if (k < 1 || k > kMaxOrder) throw std::invalid_argument("sk_membership: need 1 <= k <= 62");
  if (n_max < 1000) throw std::invalid_argument("sk_membership: need n_max >= 1000");

  SkReport rep;
  rep.k = k;
  rep.n_max = n_max;
  const std::int64_t tail_from = n_max / 10;   // exclusive
  const std::int64_t prev_from = n_max / 100;  // exclusive

  for (int j = 1; j <= k; ++j) {
    rep.j_values.push_back(j);
    double tail = 0.0, prev = 0.0;
    std::vector<std::pair<std::int64_t, double>> samples;
    std::int64_t next_sample = j + 1;
    const double step = std::pow(static_cast<double>(n_max) / (j + 1), 1.0 / 127.0);
    for (std::int64_t n = j + 1; n <= n_max; ++n) {
      const double beta = std::pow(static_cast<double>(n), k) * (f(n - j) - f(n));
      const double a = std::abs(beta);
      if (n > tail_from) tail = std::max(tail, a);
      else if (n > prev_from) prev = std::max(prev, a);
      if (n >= next_sample || n == n_max) {
        samples.emplace_back(n, beta);
        next_sample = std::max(next_sample + 1,
                               static_cast<std::int64_t>(static_cast<double>(n) * step));
      }
    }
    rep.beta_table.push_back(std::move(samples));
    rep.tail_sup.push_back(tail);
    rep.prev_sup.push_back(prev);
  }

  bool inconsistent = false;
  for (std::size_t i = 0; i < rep.tail_sup.size(); ++i)
    if (rep.tail_sup[i] > 2.0 * rep.prev_sup[i]) inconsistent = true;
  rep.verdict = inconsistent ? "inconsistent" : "consistent-with-membership";
  return rep;
}

struct GeometricReport {
  bool tends_up = false;     // the final stretch still sets new record values
  bool steps_vanish = false; // max_step < 1e-3
  double max_step = 0.0;     // largest adjacent increment over the last decade
};

// The geometric picture shared by both regimes: eigenvalues march off to
// +infinity while consecutive steps shrink to zero, so the spectrum
// accumulates along the line without repeating. tends_up asks whether the
// last tenth of the scan exceeds everything before it; steps_vanish whether
// adjacent increments over the last decade have dropped below 1e-3. Note both
// flags hold for sqrt as well as ln (at n_max large enough for the sqrt steps
// ~ 1/(2 sqrt n) to shrink) — this picture does not separate the regimes.
inline GeometricReport geometric_condition(const SpectralFn& f, std::int64_t n_max) {
  if (n_max < 1000) throw std::invalid_argument("geometric_condition: need n_max >= 1000");
  GeometricReport rep;
  double head_max = -std::numeric_limits<double>::infinity();
  const std::int64_t tail_from = n_max - n_max / 10;
  for (std::int64_t n = 1; n <= tail_from; ++n) head_max = std::max(head_max, f(n));
  double tail_max = -std::numeric_limits<double>::infinity();
  for (std::int64_t n = tail_from + 1; n <= n_max; ++n) tail_max = std::max(tail_max, f(n));
  rep.tends_up = tail_max > head_max;
  double prev = f(n_max / 10);
  for (std::int64_t n = n_max / 10 + 1; n <= n_max; ++n) {
    const double v = f(n);
    rep.max_step = std::max(rep.max_step, std::abs(v - prev));
    prev = v;
  }
  rep.steps_vanish = rep.max_step < 1e-3;
  return rep;
}

// inf over the last decade of n^{-1/p} |f(n)|: staying bounded away from zero
// as n_max grows flags eigenvalue growth at or above the n^{1/p} threshold
// (for f = ln the value decays like n^{-1/p} ln n instead).
inline double rate_check(const SpectralFn& f, double p, std::int64_t n_max) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("rate_check: need finite p >= 1");
  if (n_max < 1000) throw std::invalid_argument("rate_check: need n_max >= 1000");
  double inf = std::numeric_limits<double>::infinity();
  for (std::int64_t n = n_max / 10 + 1; n <= n_max; ++n)
    inf = std::min(inf, std::pow(static_cast<double>(n), -1.0 / p) * std::abs(f(n)));
  return inf;
}

}  // namespace diffseq
