#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <complex>

#include "diffseq/basis_model.hpp"
#include "diffseq/detail/rng.hpp"

using Catch::Approx;
using namespace diffseq;

namespace {

Eigen::MatrixXcd well_conditioned_random(int n, std::uint64_t seed) {
  detail::Rng rng(seed);
  Eigen::MatrixXcd S(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      S(i, j) = cplx(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3));
  S += 2.0 * Eigen::MatrixXcd::Identity(n, n);
  return S;
}

double pth_power_norm(const Eigen::VectorXcd& v, double p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v(i)), p);
  return s;
}

}  // namespace

TEST_CASE("frame_bounds on a diagonal matrix hits the closed forms") {
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(2, 2);
  S(0, 0) = 2.0;
  S(1, 1) = 3.0;

  const FrameBounds f2 = frame_bounds(S, 2.0);
  CHECK(f2.m == Approx(4.0).epsilon(1e-12));
  CHECK(f2.M == Approx(9.0).epsilon(1e-12));

  // diagonal: column and row sums coincide with the diagonal entries, so the
  // interpolated caps are tight here
  const FrameBounds f1 = frame_bounds(S, 1.0);
  CHECK(f1.m == Approx(2.0).epsilon(1e-12));
  CHECK(f1.M == Approx(3.0).epsilon(1e-12));

  const FrameBounds f3 = frame_bounds(S, 3.0);
  CHECK(f3.m == Approx(8.0).epsilon(1e-12));
  CHECK(f3.M == Approx(27.0).epsilon(1e-12));
}

TEST_CASE("frame_bounds p=2 matches an independent SVD") {
  const Eigen::MatrixXcd S = well_conditioned_random(16, 5);
  const FrameBounds fb = frame_bounds(S, 2.0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(S);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(15);
  CHECK(fb.M == Approx(smax * smax).epsilon(1e-10));
  CHECK(fb.m == Approx(smin * smin).epsilon(1e-10));
}

TEST_CASE("frame_bounds enclose the coordinate equivalence on random vectors") {
  const Eigen::MatrixXcd S = well_conditioned_random(20, 11);
  for (double p : {1.0, 2.0, 3.0, 4.5}) {
    const FrameBounds fb = frame_bounds(S, p);
    REQUIRE(fb.m > 0.0);
    REQUIRE(fb.M >= fb.m);
    detail::Rng rng(77);
    for (int trial = 0; trial < 25; ++trial) {
      Eigen::VectorXcd c(20);
      for (int i = 0; i < 20; ++i) c(i) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
      const double cp = pth_power_norm(c, p);
      const double scp = pth_power_norm(S * c, p);
      REQUIRE(scp >= fb.m * cp * (1.0 - 1e-12));
      REQUIRE(scp <= fb.M * cp * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("frame_bounds refuses near-singular and malformed input") {
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(3, 3);
  bad(2, 2) = 1e-13;
  CHECK_THROWS_AS(frame_bounds(bad, 2.0), std::invalid_argument);

  CHECK_THROWS_AS(frame_bounds(Eigen::MatrixXcd::Zero(3, 3), 2.0), std::invalid_argument);
  CHECK_THROWS_AS(frame_bounds(Eigen::MatrixXcd(), 2.0), std::invalid_argument);
  CHECK_THROWS_AS(frame_bounds(Eigen::MatrixXcd::Identity(2, 3), 2.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(frame_bounds(Eigen::MatrixXcd::Identity(3, 3), 0.5),
                  std::invalid_argument);
}

TEST_CASE("BasisModel factories carry the advertised data") {
  const BasisModel ortho = BasisModel::orthonormal();
  CHECK(ortho.kind() == BasisModel::Kind::Orthonormal);
  CHECK(ortho.m() == 1.0);
  CHECK(ortho.M() == 1.0);
  CHECK(ortho.kind_name() == "orthonormal");
  CHECK_THROWS_AS(ortho.S(), std::logic_error);

  const Eigen::MatrixXcd S = well_conditioned_random(8, 21);
  const BasisModel riesz = BasisModel::riesz(S);
  CHECK(riesz.kind() == BasisModel::Kind::RieszMatrix);
  CHECK(riesz.kind_name() == "riesz-matrix");
  const FrameBounds fb = frame_bounds(S, 2.0);
  CHECK(riesz.m() == Approx(fb.m).epsilon(1e-12));
  CHECK(riesz.M() == Approx(fb.M).epsilon(1e-12));
  CHECK(riesz.S() == S);

  const BasisModel eq = BasisModel::equivalence(0.5, 2.0);
  CHECK(eq.kind_name() == "equivalence-constants");
  CHECK(eq.m() == 0.5);
  CHECK(eq.M() == 2.0);
  CHECK_THROWS_AS(eq.S(), std::logic_error);

  CHECK_THROWS_AS(BasisModel::equivalence(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(BasisModel::equivalence(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(BasisModel::equivalence(1.0, std::numeric_limits<double>::infinity()),
                  std::invalid_argument);

  Eigen::MatrixXcd sing = Eigen::MatrixXcd::Identity(4, 4);
  sing(0, 0) = 0.0;
  CHECK_THROWS_AS(BasisModel::riesz(sing), std::invalid_argument);
}

TEST_CASE("apply_basis is the identity or the matrix, with dimension checks") {
  const CoefficientSeq c{{cplx(1, 2), cplx(3, -1), cplx(0, 5)}};
  const CoefficientSeq same = apply_basis(BasisModel::orthonormal(), c);
  CHECK(same.entries == c.entries);
  const CoefficientSeq same2 = apply_basis(BasisModel::equivalence(0.9, 1.1), c);
  CHECK(same2.entries == c.entries);

  const Eigen::MatrixXcd S = well_conditioned_random(3, 33);
  const CoefficientSeq mapped = apply_basis(BasisModel::riesz(S), c);
  Eigen::VectorXcd v(3);
  v << c.entries[0], c.entries[1], c.entries[2];
  const Eigen::VectorXcd w = S * v;
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(mapped.entries[static_cast<std::size_t>(i)] - w(i)) <= 1e-14);

  const CoefficientSeq wrong = CoefficientSeq::zeros(5);
  CHECK_THROWS_AS(apply_basis(BasisModel::riesz(S), wrong), std::invalid_argument);
}
