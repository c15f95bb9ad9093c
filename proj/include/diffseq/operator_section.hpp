#pragma once

// Square N x N sections of the operators under study, stored as recipes, not
// matrices. Every recipe applies in O(kN) by streaming passes, so norms at
// N ~ 10^4 never materialize N^2 entries. A dense matrix is materialized only
// on demand (entries(), or the p-norm paths that need entrywise |A|).
//
// Why the sections are exact and composable: each factor (difference, partial
// sum, diagonal) is lower triangular in the canonical coordinates, so the
// leading N x N block of a product equals the product of the leading blocks.
// Norm curves computed here are therefore genuine compressions of the
// infinite operator, not discretization artifacts.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "diffseq/detail/kahan.hpp"
#include "diffseq/detail/powit.hpp"
#include "diffseq/sequences.hpp"
#include "diffseq/spectral_fn.hpp"

namespace diffseq {

struct NormBounds {
  double lower = 0.0;   // certified: attained by an explicit vector or exact
  double upper = 0.0;   // certified cap; equals lower when the value is exact
  bool converged = true;
};

namespace detail {

// In-place adjoint passes on the N-section (the forward passes live in
// sequences.hpp). delta^H: x_n -> x_n - x_{n+1}; sigma^H: suffix sums.
inline void delta_adjoint_once_inplace(std::vector<cplx>& c) {
  for (std::size_t n = 0; n + 1 < c.size(); ++n) c[n] -= c[n + 1];
}
inline void sigma_adjoint_once_inplace(std::vector<cplx>& c) {
  for (std::size_t n = c.size() - 1; n-- > 0;) c[n] += c[n + 1];
}

}  // namespace detail

class OperatorSection {
  struct GroupRecipe {
    std::vector<cplx> phase;   // e^{i t f(n)}, n = 1..N
    std::vector<double> fval;  // f(n), kept so entries() can rebuild phases precisely
    int k;
    double t;
    std::string fname;
  };
  struct CesaroRecipe {
    std::vector<double> weight;  // n^{1/p - 1}
    double p;
  };
  struct PartialSumRecipe {};  // lower-triangular all-ones
  struct DenseRecipe {
    std::shared_ptr<const std::vector<cplx>> a;  // row-major N x N
  };
  using Recipe = std::variant<GroupRecipe, CesaroRecipe, PartialSumRecipe, DenseRecipe>;

 public:
  // M_{t,N} = Delta^k diag(e^{i t f(n)}) Sigma^k on the coordinate picture.
  static OperatorSection group(const SpectralFn& f, double t, int k, std::int64_t N) {
    if (!std::isfinite(t)) throw std::invalid_argument("OperatorSection: t must be finite");
    if (k < 0 || k > kMaxOrder)
      throw std::invalid_argument("OperatorSection: order k out of range");
    check_dim(N);
    GroupRecipe g;
    g.k = k;
    g.t = t;
    g.fname = f.name();
    g.phase.resize(static_cast<std::size_t>(N));
    g.fval.resize(static_cast<std::size_t>(N));
    for (std::int64_t n = 1; n <= N; ++n) {
      const double fv = f(n);
      const long double ang = static_cast<long double>(t) * static_cast<long double>(fv);
      g.fval[static_cast<std::size_t>(n - 1)] = fv;
      g.phase[static_cast<std::size_t>(n - 1)] = {static_cast<double>(std::cos(ang)),
                                                  static_cast<double>(std::sin(ang))};
    }
    return OperatorSection(std::move(g), N);
  }

  // (A x)_n = n^{1/p - 1} sum_{m <= n} x_m  (weighted averaging section)
  static OperatorSection cesaro_rate(double p, std::int64_t N) {
    if (!(p >= 1.0) || !std::isfinite(p))
      throw std::invalid_argument("OperatorSection: need finite p >= 1");
    check_dim(N);
    CesaroRecipe c;
    c.p = p;
    c.weight.resize(static_cast<std::size_t>(N));
    for (std::int64_t n = 1; n <= N; ++n)
      c.weight[static_cast<std::size_t>(n - 1)] = std::pow(static_cast<double>(n), 1.0 / p - 1.0);
    return OperatorSection(std::move(c), N);
  }

  // Lower-triangular all-ones block (the partial-sum section).
  static OperatorSection all_ones(std::int64_t N) {
    check_dim(N);
    return OperatorSection(PartialSumRecipe{}, N);
  }

  static OperatorSection dense(std::vector<cplx> rowmajor, std::int64_t N) {
    check_dim(N);
    if (static_cast<std::int64_t>(rowmajor.size()) != N * N)
      throw std::invalid_argument("OperatorSection: dense storage must hold N*N entries");
    for (const cplx& z : rowmajor)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument("OperatorSection: dense entries must be finite");
    DenseRecipe d;
    d.a = std::make_shared<const std::vector<cplx>>(std::move(rowmajor));
    return OperatorSection(std::move(d), N);
  }

  std::int64_t dim() const { return N_; }

  std::vector<cplx> apply(const std::vector<cplx>& x) const {
    require_len(x);
    if (const auto* g = std::get_if<GroupRecipe>(&recipe_)) {
      std::vector<cplx> v = x;
      for (int i = 0; i < g->k; ++i) detail::sigma_once_inplace(v);
      for (std::size_t n = 0; n < v.size(); ++n) v[n] *= g->phase[n];
      for (int i = 0; i < g->k; ++i) detail::delta_once_inplace(v);
      return v;
    }
    if (const auto* c = std::get_if<CesaroRecipe>(&recipe_)) {
      std::vector<cplx> v = x;
      detail::sigma_once_inplace(v);
      for (std::size_t n = 0; n < v.size(); ++n) v[n] *= c->weight[n];
      return v;
    }
    if (std::get_if<PartialSumRecipe>(&recipe_)) {
      std::vector<cplx> v = x;
      detail::sigma_once_inplace(v);
      return v;
    }
    return dense_matvec(x, /*adjoint=*/false);
  }

  std::vector<cplx> apply_adjoint(const std::vector<cplx>& x) const {
    require_len(x);
    if (const auto* g = std::get_if<GroupRecipe>(&recipe_)) {
      std::vector<cplx> v = x;
      for (int i = 0; i < g->k; ++i) detail::delta_adjoint_once_inplace(v);
      for (std::size_t n = 0; n < v.size(); ++n) v[n] *= std::conj(g->phase[n]);
      for (int i = 0; i < g->k; ++i) detail::sigma_adjoint_once_inplace(v);
      return v;
    }
    if (const auto* c = std::get_if<CesaroRecipe>(&recipe_)) {
      std::vector<cplx> v = x;
      for (std::size_t n = 0; n < v.size(); ++n) v[n] *= c->weight[n];
      detail::sigma_adjoint_once_inplace(v);
      return v;
    }
    if (std::get_if<PartialSumRecipe>(&recipe_)) {
      std::vector<cplx> v = x;
      detail::sigma_adjoint_once_inplace(v);
      return v;
    }
    return dense_matvec(x, /*adjoint=*/true);
  }

  // Row-major N x N materialization, built column-by-column and cached. The
  // streaming paths exist precisely so large-N norm computations never pay
  // this O(N^2) cost. Group columns are computed in extended precision before
  // rounding: the alternating-binomial recombination cancels intermediates of
  // size ~N^(k-1), and a double-only pipeline would leave ~1e-10 noise on the
  // O(1) results — visible when checking the group law entrywise.
  const std::vector<cplx>& entries() const {
    if (cache_) return *cache_;
    if (const auto* d = std::get_if<DenseRecipe>(&recipe_)) {
      cache_ = d->a;
      return *cache_;
    }
    auto e = std::make_shared<std::vector<cplx>>(static_cast<std::size_t>(N_ * N_));
    if (const auto* g = std::get_if<GroupRecipe>(&recipe_)) {
      using lcplx = std::complex<long double>;
      std::vector<lcplx> lphase(static_cast<std::size_t>(N_));
      for (std::int64_t n = 0; n < N_; ++n) {
        const long double ang = static_cast<long double>(g->t) *
                                static_cast<long double>(g->fval[static_cast<std::size_t>(n)]);
        lphase[static_cast<std::size_t>(n)] = {std::cos(ang), std::sin(ang)};
      }
      std::vector<lcplx> col(static_cast<std::size_t>(N_));
      for (std::int64_t j = 0; j < N_; ++j) {
        std::fill(col.begin(), col.end(), lcplx{});
        col[static_cast<std::size_t>(j)] = 1.0L;
        for (int i = 0; i < g->k; ++i)
          for (std::size_t n = static_cast<std::size_t>(j) + 1; n < col.size(); ++n)
            col[n] += col[n - 1];
        for (std::size_t n = static_cast<std::size_t>(j); n < col.size(); ++n) col[n] *= lphase[n];
        for (int i = 0; i < g->k; ++i)
          for (std::size_t n = col.size(); n-- > 1;) col[n] -= col[n - 1];
        for (std::int64_t i = 0; i < N_; ++i)
          (*e)[static_cast<std::size_t>(i * N_ + j)] =
              static_cast<cplx>(col[static_cast<std::size_t>(i)]);
      }
      cache_ = std::move(e);
      return *cache_;
    }
    std::vector<cplx> unit(static_cast<std::size_t>(N_), cplx{});
    for (std::int64_t j = 0; j < N_; ++j) {
      unit[static_cast<std::size_t>(j)] = 1.0;
      const std::vector<cplx> col = apply(unit);
      unit[static_cast<std::size_t>(j)] = 0.0;
      for (std::int64_t i = 0; i < N_; ++i)
        (*e)[static_cast<std::size_t>(i * N_ + j)] = col[static_cast<std::size_t>(i)];
    }
    cache_ = std::move(e);
    return *cache_;
  }

  std::string describe() const {
    std::ostringstream os;
    if (const auto* g = std::get_if<GroupRecipe>(&recipe_))
      os << "group(f=" << g->fname << ", t=" << g->t << ", k=" << g->k << ", N=" << N_ << ")";
    else if (const auto* c = std::get_if<CesaroRecipe>(&recipe_))
      os << "cesaro-rate(p=" << c->p << ", N=" << N_ << ")";
    else if (std::get_if<PartialSumRecipe>(&recipe_))
      os << "partial-sum(N=" << N_ << ")";
    else
      os << "dense(N=" << N_ << ")";
    return os.str();
  }

 private:
  OperatorSection(Recipe r, std::int64_t N) : recipe_(std::move(r)), N_(N) {}

  static void check_dim(std::int64_t N) {
    if (N < 1) throw std::invalid_argument("OperatorSection: need N >= 1");
    if (N > 16384) {
      const double gib =
          static_cast<double>(N) * static_cast<double>(N) * 16.0 / (1024.0 * 1024.0 * 1024.0);
      std::ostringstream os;
      os << "OperatorSection: N = " << N << " exceeds the dense section budget of 16384 "
         << "(materializing it would take ~" << gib << " GiB)";
      throw std::invalid_argument(os.str());
    }
  }
  void require_len(const std::vector<cplx>& x) const {
    if (static_cast<std::int64_t>(x.size()) != N_)
      throw std::invalid_argument("OperatorSection: vector length " +
                                  std::to_string(x.size()) + " != section size " +
                                  std::to_string(N_));
  }

  std::vector<cplx> dense_matvec(const std::vector<cplx>& x, bool adjoint) const {
    const std::vector<cplx>& a = *std::get_if<DenseRecipe>(&recipe_)->a;
    std::vector<cplx> y(static_cast<std::size_t>(N_), cplx{});
    if (!adjoint) {
      for (std::int64_t i = 0; i < N_; ++i) {
        cplx acc{};
        const cplx* row = a.data() + i * N_;
        for (std::int64_t j = 0; j < N_; ++j) acc += row[j] * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = acc;
      }
    } else {
      for (std::int64_t i = 0; i < N_; ++i) {
        const cplx xi = x[static_cast<std::size_t>(i)];
        const cplx* row = a.data() + i * N_;
        for (std::int64_t j = 0; j < N_; ++j)
          y[static_cast<std::size_t>(j)] += std::conj(row[j]) * xi;
      }
    }
    return y;
  }

  Recipe recipe_;
  std::int64_t N_;
  mutable std::shared_ptr<const std::vector<cplx>> cache_;
};

namespace detail {

struct BoydResult {
  double value = 0.0;
  bool converged = false;
};

// Nonlinear power method for the p -> p norm of a nonnegative matrix B
// (row-major). Each iterate yields the certified lower value ||Bx||_p with
// ||x||_p = 1; for entrywise-positive B the sequence increases to ||B||_p.
inline BoydResult boyd_pnorm(const std::vector<double>& B, std::int64_t N, double p,
                             double tol = 1e-10, int maxit = 10000) {
  const double pc = p / (p - 1.0);  // conjugate exponent
  std::vector<double> x(static_cast<std::size_t>(N),
                        std::pow(static_cast<double>(N), -1.0 / p));
  std::vector<double> y(static_cast<std::size_t>(N));
  std::vector<double> z(static_cast<std::size_t>(N));
  BoydResult r;
  double prev = -1.0;
  for (int it = 0; it < maxit; ++it) {
    for (std::int64_t i = 0; i < N; ++i) {
      Kahan acc;
      const double* row = B.data() + i * N;
      for (std::int64_t j = 0; j < N; ++j) acc.add(row[j] * x[static_cast<std::size_t>(j)]);
      y[static_cast<std::size_t>(i)] = acc.value();
    }
    Kahan np;
    for (double v : y) np.add(std::pow(v, p));
    const double est = std::pow(np.value(), 1.0 / p);
    if (est == 0.0) return {0.0, true};
    r.value = est;
    if (prev >= 0.0 && std::abs(est - prev) <= tol * est) {
      r.converged = true;
      return r;
    }
    prev = est;
    for (std::int64_t i = 0; i < N; ++i)
      z[static_cast<std::size_t>(i)] = std::pow(y[static_cast<std::size_t>(i)] / est, p - 1.0);
    for (std::int64_t j = 0; j < N; ++j) {
      Kahan acc;
      for (std::int64_t i = 0; i < N; ++i)
        acc.add(B[static_cast<std::size_t>(i * N + j)] * z[static_cast<std::size_t>(i)]);
      x[static_cast<std::size_t>(j)] = acc.value();
    }
    Kahan nx;
    for (double& v : x) {
      v = std::pow(v, pc - 1.0);
      nx.add(std::pow(v, p));
    }
    const double xs = std::pow(nx.value(), 1.0 / p);
    if (xs == 0.0) return {r.value, true};
    for (double& v : x) v /= xs;
  }
  return r;  // not converged; r.value is still a valid lower value for ||B||_p
}

inline double ratio_on(const OperatorSection& sec, const std::vector<cplx>& x, double p) {
  const double nx = lp_norm(x, p);
  if (nx == 0.0) return 0.0;
  return lp_norm(sec.apply(x), p) / nx;
}

}  // namespace detail

// Operator p -> p norm of the section. Exact routes: p = 2 (largest singular
// value via power iteration on the streaming apply), p = 1 (max column sum).
// Other p: certified enclosure. The lower edge is the best Rayleigh ratio
// over structured probes; the upper edge is min of the entrywise-domination
// value ||(|A|)||_p and the interpolation cap ||A||_1^{1/p} ||A||_inf^{1-1/p}.
inline NormBounds section_norm(const OperatorSection& sec, double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw std::invalid_argument("section_norm: need finite p >= 1");
  const std::int64_t N = sec.dim();

  if (p == 2.0) {
    detail::PowItOptions opts;
    opts.tol = 1e-9;
    opts.consecutive = 2;
    opts.maxit = 20000;
    opts.seed = 42;
    const auto r = detail::power_iteration_sigma(
        N, [&](const std::vector<cplx>& v) { return sec.apply(v); },
        [&](const std::vector<cplx>& v) { return sec.apply_adjoint(v); }, opts);
    return {r.sigma, r.sigma, r.converged};
  }

  if (p == 1.0) {
    std::vector<cplx> unit(static_cast<std::size_t>(N), cplx{});
    double best = 0.0;
    for (std::int64_t j = 0; j < N; ++j) {
      unit[static_cast<std::size_t>(j)] = 1.0;
      const std::vector<cplx> col = sec.apply(unit);
      unit[static_cast<std::size_t>(j)] = 0.0;
      detail::Kahan acc;
      for (const cplx& z : col) acc.add(std::abs(z));
      best = std::max(best, acc.value());
    }
    return {best, best, true};
  }

  // probes for the lower edge
  std::vector<std::vector<cplx>> probes;
  probes.emplace_back(static_cast<std::size_t>(N), cplx{1.0, 0.0});
  for (std::int64_t idx : {std::int64_t{0}, N / 2, N - 1}) {
    std::vector<cplx> e(static_cast<std::size_t>(N), cplx{});
    e[static_cast<std::size_t>(idx)] = 1.0;
    probes.push_back(std::move(e));
  }
  {
    std::vector<cplx> h(static_cast<std::size_t>(N));
    std::vector<cplx> alt(static_cast<std::size_t>(N));
    for (std::int64_t n = 1; n <= N; ++n) {
      h[static_cast<std::size_t>(n - 1)] = 1.0 / static_cast<double>(n);
      alt[static_cast<std::size_t>(n - 1)] = (n % 2 == 1) ? 1.0 : -1.0;
    }
    probes.push_back(std::move(h));
    probes.push_back(std::move(alt));
  }
  double lower = 0.0;
  for (const auto& x : probes) lower = std::max(lower, detail::ratio_on(sec, x, p));

  const std::vector<cplx>& A = sec.entries();
  std::vector<double> absA(A.size());
  double col_cap = 0.0, row_cap = 0.0;
  {
    std::vector<double> colsum(static_cast<std::size_t>(N), 0.0);
    for (std::int64_t i = 0; i < N; ++i) {
      detail::Kahan rs;
      for (std::int64_t j = 0; j < N; ++j) {
        const double a = std::abs(A[static_cast<std::size_t>(i * N + j)]);
        absA[static_cast<std::size_t>(i * N + j)] = a;
        rs.add(a);
        colsum[static_cast<std::size_t>(j)] += a;
      }
      row_cap = std::max(row_cap, rs.value());
    }
    for (double v : colsum) col_cap = std::max(col_cap, v);
  }
  const double rt_cap = std::pow(col_cap, 1.0 / p) * std::pow(row_cap, 1.0 - 1.0 / p);
  const detail::BoydResult b = detail::boyd_pnorm(absA, N, p);
  double upper = std::min(b.converged ? b.value : rt_cap, rt_cap);
  upper = std::max(upper, lower);
  return {lower, upper, b.converged};
}

}  // namespace diffseq
