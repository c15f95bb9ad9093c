#pragma once

// Finite-dimensional models of the ambient basis. Three kinds:
//
//   Orthonormal            coordinates are the norm, m = M = 1
//   RieszMatrix            basis = image of orthonormal under invertible S;
//                          m = sigma_min(S)^2, M = sigma_max(S)^2, so that
//                          m sum|c|^2 <= ||Sc||^2 <= M sum|c|^2
//   EquivalenceConstants   only the two-sided constants are known. For p != 2
//                          a symmetric basis carries such constants but they
//                          are not a finite-section quantity, so they are
//                          supplied by the caller, never estimated.
//
// Normalization is deliberately left to the caller: a "normalized" system can
// mean scaling S's columns to unit vectors beforehand, or keeping S as given
// and normalizing at use sites. Both conventions work with frame_bounds,
// which is scale-covariant; nothing here renormalizes implicitly.

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "diffseq/sequences.hpp"

namespace diffseq {

struct FrameBounds {
  double m = 0.0;
  double M = 0.0;
};

namespace detail {

inline Eigen::VectorXd singular_values(const Eigen::MatrixXcd& S) {
  if (S.rows() >= 32) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(S);
    return svd.singularValues();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(S);
  return svd.singularValues();
}

inline double max_abs_col_sum(const Eigen::MatrixXcd& A) {
  return A.cwiseAbs().colwise().sum().maxCoeff();
}
inline double max_abs_row_sum(const Eigen::MatrixXcd& A) {
  return A.cwiseAbs().rowwise().sum().maxCoeff();
}

// Interpolated operator-norm cap: ||A||_p <= ||A||_1^(1/p) ||A||_inf^(1-1/p).
inline double interp_pnorm_cap(const Eigen::MatrixXcd& A, double p) {
  return std::pow(max_abs_col_sum(A), 1.0 / p) *
         std::pow(max_abs_row_sum(A), 1.0 - 1.0 / p);
}

}  // namespace detail

// Two-sided coordinate equivalence constants for the system {S e_n}:
//   m sum|c_n|^p <= ||S c||_p^p <= M sum|c_n|^p.
// p = 2 is exact via singular values. p != 2 returns certified (not tight)
// bounds through norm interpolation applied to S and S^{-1}; downstream code
// treats them as what they are, bounds.
inline FrameBounds frame_bounds(const Eigen::MatrixXcd& S, double p) {
  if (S.rows() == 0 || S.rows() != S.cols())
    throw std::invalid_argument("frame_bounds: need a nonempty square matrix");
  if (!(p >= 1.0) || !std::isfinite(p))
    throw std::invalid_argument("frame_bounds: need finite p >= 1");

  const Eigen::VectorXd sv = detail::singular_values(S);
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  const double cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(cond < 1e12))
    throw std::invalid_argument(
        "frame_bounds: matrix numerically singular (condition number " +
        std::to_string(cond) + " >= 1e12); double precision retains no digits there");

  if (p == 2.0) return {smin * smin, smax * smax};

  const Eigen::MatrixXcd Sinv =
      S.partialPivLu().solve(Eigen::MatrixXcd::Identity(S.rows(), S.cols()));
  const double up = detail::interp_pnorm_cap(S, p);       // ||S||_p <= up
  const double dn = detail::interp_pnorm_cap(Sinv, p);    // ||S^{-1}||_p <= dn
  // ||c||_p <= dn ||Sc||_p  gives the lower constant
  return {std::pow(dn, -p), std::pow(up, p)};
}

class BasisModel {
 public:
  enum class Kind { Orthonormal, RieszMatrix, EquivalenceConstants };

  static BasisModel orthonormal() { return BasisModel(Kind::Orthonormal, 1.0, 1.0, {}); }

  static BasisModel riesz(Eigen::MatrixXcd S) {
    const FrameBounds fb = frame_bounds(S, 2.0);  // also validates invertibility
    return BasisModel(Kind::RieszMatrix, fb.m, fb.M, std::move(S));
  }

  static BasisModel equivalence(double m, double M) {
    if (!(m > 0.0) || !(M >= m) || !std::isfinite(M))
      throw std::invalid_argument("BasisModel: need 0 < m <= M");
    return BasisModel(Kind::EquivalenceConstants, m, M, {});
  }

  Kind kind() const { return kind_; }
  double m() const { return m_; }
  double M() const { return M_; }

  const Eigen::MatrixXcd& S() const {
    if (kind_ != Kind::RieszMatrix)
      throw std::logic_error("BasisModel: no matrix realization for this kind");
    return S_;
  }

  std::string kind_name() const {
    switch (kind_) {
      case Kind::Orthonormal: return "orthonormal";
      case Kind::RieszMatrix: return "riesz-matrix";
      case Kind::EquivalenceConstants: return "equivalence-constants";
    }
    return "?";
  }

 private:
  BasisModel(Kind k, double m, double M, Eigen::MatrixXcd S)
      : kind_(k), m_(m), M_(M), S_(std::move(S)) {}

  Kind kind_;
  double m_;
  double M_;
  Eigen::MatrixXcd S_;
};

// Coordinates -> ambient vector x = sum c_n e_n. Orthonormal and
// EquivalenceConstants kinds act as the identity on coordinates (there is no
// matrix to apply); RieszMatrix multiplies by S.
inline CoefficientSeq apply_basis(const BasisModel& model, const CoefficientSeq& c) {
  if (model.kind() != BasisModel::Kind::RieszMatrix) return c;
  const Eigen::MatrixXcd& S = model.S();
  if (S.cols() != c.length())
    throw std::invalid_argument("apply_basis: dimension mismatch (matrix is " +
                                std::to_string(S.rows()) + "x" + std::to_string(S.cols()) +
                                ", sequence has length " + std::to_string(c.length()) + ")");
  Eigen::VectorXcd v(c.length());
  for (std::int64_t i = 0; i < c.length(); ++i) v(i) = c.entries[static_cast<std::size_t>(i)];
  const Eigen::VectorXcd w = S * v;
  std::vector<cplx> out(static_cast<std::size_t>(w.size()));
  for (std::int64_t i = 0; i < w.size(); ++i) out[static_cast<std::size_t>(i)] = w(i);
  return CoefficientSeq(std::move(out));
}

}  // namespace diffseq
