#pragma once

// The canonical coordinate system {e_n} seen inside the difference space, and
// the quantities that certify it is complete and minimal yet not a basis:
//
//   phi(n,k,N)   e_n written in difference coordinates, Delta^k e_n
//                (alternating binomial column, squared norm binom(2k,k))
//   psi(n,k,N)   representer of the n-th coordinate functional in the same
//                picture; entries binom(n-j+k-1, k-1) for j <= n
//   chi(n,k,N)   the representer pulled back to ambient coordinates
//
// <psi_i, phi_j> = delta_ij exactly (integer arithmetic confirms this in the
// tests), norms grow like n^{k-1/2}, and the coordinate projections
// P_M x = (x_1, ..., x_M, 0, ...) have norms that blow up with M. All of this
// is computed on finite sections that are exact, not truncated: the involved
// operators are lower triangular, so the leading block of a product is the
// product of leading blocks, and the reported numbers are true values of the
// infinite-dimensional quantities.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "diffseq/basis_model.hpp"
#include "diffseq/detail/kahan.hpp"
#include "diffseq/detail/powit.hpp"
#include "diffseq/sequences.hpp"

namespace diffseq {

inline CoefficientSeq phi(std::int64_t n, int k, std::int64_t N) {
  if (k < 0 || k > kMaxOrder) throw std::invalid_argument("phi: order k out of range");
  if (n < 1 || n + k > N)
    throw std::invalid_argument("phi: need 1 <= n and n + k <= N so the column is complete");
  std::vector<cplx> v(static_cast<std::size_t>(N), cplx{});
  for (int j = 0; j <= k; ++j) {
    const double c = static_cast<double>(binom(k, j));
    v[static_cast<std::size_t>(n - 1 + j)] = (j % 2 == 0) ? c : -c;
  }
  return CoefficientSeq(std::move(v));
}

inline CoefficientSeq psi(std::int64_t n, int k, std::int64_t N) {
  if (k < 0 || k > kMaxOrder) throw std::invalid_argument("psi: order k out of range");
  if (n < 1 || n > N) throw std::invalid_argument("psi: need 1 <= n <= N");
  // k suffix-sum passes of the impulse at n; closed form binom(n-j+k-1, k-1)
  std::vector<cplx> v(static_cast<std::size_t>(N), cplx{});
  v[static_cast<std::size_t>(n - 1)] = 1.0;
  for (int pass = 0; pass < k; ++pass)
    for (std::size_t j = static_cast<std::size_t>(n - 1); j-- > 0;) v[j] += v[j + 1];
  return CoefficientSeq(std::move(v));
}

inline CoefficientSeq chi(std::int64_t n, int k, std::int64_t N) {
  return sigma(psi(n, k, N), k);
}

// Norm of the coordinate projection P_M (keep the first Nproj coordinates) as
// an operator on the order-k difference space. Only p = 2 is offered: there
// the value is an exact largest singular value; for other p no finite
// computation yields the exact operator norm, and a bound would be reported
// under the same name as an exact number.
inline double projection_norm(std::int64_t Nproj, const DiffSpaceSpec& spec,
                              const BasisModel& model, std::int64_t Nsec) {
  if (spec.p != 2.0)
    throw std::invalid_argument(
        "projection_norm: exact values are computed only for p = 2; "
        "for other p use section_norm bounds on an explicit section");
  if (Nproj < 1) throw std::invalid_argument("projection_norm: need Nproj >= 1");
  if (Nproj + spec.k > Nsec)
    throw std::invalid_argument("projection_norm: need Nproj + k <= Nsec");
  const int k = spec.k;

  detail::PowItOptions opts;
  opts.tol = 1e-14;
  opts.consecutive = 4;
  opts.maxit = 50000;
  opts.seed = 42;

  if (model.kind() == BasisModel::Kind::EquivalenceConstants)
    throw std::invalid_argument(
        "projection_norm: equivalence-constants models carry no matrix "
        "realization; only two-sided transfer bounds exist for them");

  if (model.kind() == BasisModel::Kind::Orthonormal) {
    // In difference coordinates the projection acts as
    //   w |-> Delta^k [ (Sigma^k w)_{1..Nproj}, 0, ..., 0 ],
    // which reads the first Nproj inputs and writes the first Nproj + k
    // outputs. Its norm is therefore the largest singular value of an
    // (Nproj+k) x Nproj block and does not depend on Nsec.
    const std::int64_t rows = Nproj + k;
    auto fwd = [&](const std::vector<cplx>& x) {
      std::vector<cplx> u = x;
      for (int i = 0; i < k; ++i) detail::sigma_once_inplace(u);
      u.resize(static_cast<std::size_t>(rows), cplx{});
      for (int i = 0; i < k; ++i) detail::delta_once_inplace(u);
      return u;
    };
    auto adj = [&](const std::vector<cplx>& y) {
      std::vector<cplx> u = y;
      for (int i = 0; i < k; ++i)
        for (std::size_t j = 0; j + 1 < u.size(); ++j) u[j] -= u[j + 1];
      u.resize(static_cast<std::size_t>(Nproj));
      for (int i = 0; i < k; ++i)
        for (std::size_t j = u.size() - 1; j-- > 0;) u[j] += u[j + 1];
      return u;
    };
    const auto r = detail::power_iteration_sigma(Nproj, fwd, adj, opts);
    if (!r.converged)
      throw std::runtime_error("projection_norm: power iteration did not settle");
    return r.sigma;
  }

  // Riesz image of the coordinate system: P'_M = S P_M S^{-1} in ambient
  // coordinates, measured in the difference norm.
  const Eigen::MatrixXcd& S = model.S();
  if (S.rows() != Nsec)
    throw std::invalid_argument("projection_norm: basis matrix must be Nsec x Nsec");
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(S);

  auto to_eigen = [](const std::vector<cplx>& v) {
    Eigen::VectorXcd e(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) e(static_cast<Eigen::Index>(i)) = v[i];
    return e;
  };
  auto from_eigen = [](const Eigen::VectorXcd& e) {
    std::vector<cplx> v(static_cast<std::size_t>(e.size()));
    for (Eigen::Index i = 0; i < e.size(); ++i) v[static_cast<std::size_t>(i)] = e(i);
    return v;
  };

  auto fwd = [&](const std::vector<cplx>& w) {
    std::vector<cplx> x = w;
    for (int i = 0; i < k; ++i) detail::sigma_once_inplace(x);
    Eigen::VectorXcd a = lu.solve(to_eigen(x));
    for (Eigen::Index i = Nproj; i < a.size(); ++i) a(i) = 0.0;
    std::vector<cplx> y = from_eigen(S * a);
    for (int i = 0; i < k; ++i) detail::delta_once_inplace(y);
    return y;
  };
  auto adj = [&](const std::vector<cplx>& y) {
    std::vector<cplx> u = y;
    for (int i = 0; i < k; ++i)
      for (std::size_t j = 0; j + 1 < u.size(); ++j) u[j] -= u[j + 1];
    Eigen::VectorXcd a = S.adjoint() * to_eigen(u);
    for (Eigen::Index i = Nproj; i < a.size(); ++i) a(i) = 0.0;
    std::vector<cplx> w = from_eigen(lu.adjoint().solve(a));
    for (int i = 0; i < k; ++i)
      for (std::size_t j = w.size() - 1; j-- > 0;) w[j] += w[j + 1];
    return w;
  };
  const auto r = detail::power_iteration_sigma(Nsec, fwd, adj, opts);
  if (!r.converged)
    throw std::runtime_error("projection_norm: power iteration did not settle");
  return r.sigma;
}

// Expansion coefficients of the vector whose difference coordinates are the
// harmonic sequence (1/j): coefficient n is the k-fold partial sum at n.
// These grow without bound (k = 1 gives the harmonic numbers H_n), so the
// coordinate expansion of this element cannot converge — the necessary
// coefficient bound for a Schauder system fails. Compensated summation keeps
// the values exact to ~1e-15 even at N = 10^6.
inline std::vector<double> expansion_divergence(int k, std::int64_t N) {
  if (k < 1 || k > kMaxOrder)
    throw std::invalid_argument("expansion_divergence: need 1 <= k <= 62");
  if (N < 10) throw std::invalid_argument("expansion_divergence: need N >= 10");
  std::vector<double> v(static_cast<std::size_t>(N));
  for (std::int64_t n = 1; n <= N; ++n)
    v[static_cast<std::size_t>(n - 1)] = 1.0 / static_cast<double>(n);
  for (int pass = 0; pass < k; ++pass) {
    detail::Kahan acc;
    for (double& x : v) {
      acc.add(x);
      x = acc.value();
    }
  }
  return v;
}

struct MinimalityReport {
  std::vector<std::int64_t> n_grid;
  std::vector<double> phi_norms;
  std::vector<double> psi_norms;
  std::vector<double> products;  // phi_norms[i] * psi_norms[i]
  int k = 0;
  std::string model_kind;
  double model_m = 1.0;
  double model_M = 1.0;
};

// Minimality is uniform iff sup_n ||phi_n|| ||psi_n|| < infinity. Here the
// products grow like n^{k-1/2} (for k = 1: sqrt(2) * sqrt(n)), so the system
// is minimal but never uniformly so. Norms are reported in the canonical
// coordinates; for a model with constants (m, M) the corresponding products
// in the modeled space lie within [m/M, M/m] times these, so unboundedness
// transfers verbatim.
inline MinimalityReport uniform_minimality(int k, const BasisModel& model, std::int64_t N) {
  if (k < 0 || k > kMaxOrder)
    throw std::invalid_argument("uniform_minimality: order k out of range");
  if (N < 100) throw std::invalid_argument("uniform_minimality: need N >= 100");

  MinimalityReport rep;
  rep.k = k;
  rep.model_kind = model.kind_name();
  rep.model_m = model.m();
  rep.model_M = model.M();

  const std::int64_t n_max = N - k;
  for (std::int64_t n = 1; n <= std::min<std::int64_t>(16, n_max); ++n)
    rep.n_grid.push_back(n);
  for (std::int64_t n = 32; n < n_max; n *= 2) rep.n_grid.push_back(n);
  if (rep.n_grid.empty() || rep.n_grid.back() != n_max) rep.n_grid.push_back(n_max);

  for (std::int64_t n : rep.n_grid) {
    const CoefficientSeq ph = phi(n, k, n + k);
    rep.phi_norms.push_back(lp_norm(ph.entries, 2.0));
    const CoefficientSeq ps = psi(n, k, n);
    rep.psi_norms.push_back(lp_norm(ps.entries, 2.0));
    rep.products.push_back(rep.phi_norms.back() * rep.psi_norms.back());
  }
  return rep;
}

// A family of ramps showing how cheaply (in the difference norm) one travels
// from the zero block to the all-ones block: the ramp over L = m^2 steps has
// k = 1 norm exactly 1/m and k >= 2 norm at most 2^{k-1}/m. The unit step is
// therefore in the closure of vectors with arbitrarily small difference
// energy — coordinate truncations control nothing beyond what the projection
// norms already quantify.
inline std::vector<std::pair<std::int64_t, double>> closure_gap_demo(
    int k, const std::vector<std::int64_t>& m_grid) {
  if (k < 1 || k > kMaxOrder)
    throw std::invalid_argument("closure_gap_demo: need 1 <= k <= 62");
  if (m_grid.empty()) throw std::invalid_argument("closure_gap_demo: empty grid");
  std::vector<std::pair<std::int64_t, double>> out;
  out.reserve(m_grid.size());
  for (std::int64_t m : m_grid) {
    if (m < 1 || m > 100000)
      throw std::invalid_argument("closure_gap_demo: need 1 <= m <= 1e5");
    const std::int64_t L = m * m;
    const std::int64_t N = m + L + 8;
    std::vector<cplx> v(static_cast<std::size_t>(N));
    for (std::int64_t n = 1; n <= N; ++n) {
      double val = 0.0;
      if (n > m + L) val = 1.0;
      else if (n > m) val = static_cast<double>(n - m) / static_cast<double>(L);
      v[static_cast<std::size_t>(n - 1)] = val;
    }
    out.emplace_back(m, space_norm(CoefficientSeq(std::move(v)), DiffSpaceSpec(2.0, k)));
  }
  return out;
}

}  // namespace diffseq
