#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "diffseq/detail/rng.hpp"
#include "diffseq/group.hpp"
#include "diffseq/nonbasis.hpp"

using Catch::Approx;
using namespace diffseq;

namespace {

using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

RowMat dense_of(const OperatorSection& sec) {
  const std::int64_t n = sec.dim();
  return Eigen::Map<const RowMat>(sec.entries().data(), n, n);
}

std::vector<cplx> random_complex(std::size_t n, std::uint64_t seed) {
  detail::Rng rng(seed);
  std::vector<cplx> v(n);
  for (auto& z : v) z = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return v;
}

}  // namespace

TEST_CASE("3x3 section entries match the hand-computed product") {
  // Delta diag(lambda) Sigma with lambda_n = exp(i t ln n):
  // column j holds lambda_j on the diagonal and lambda_i - lambda_{i-1} below.
  const double t = 1.0;
  const OperatorSection sec = OperatorSection::group(SpectralFn::log_fn(), t, 1, 3);
  const RowMat M = dense_of(sec);
  const auto lam = [&](std::int64_t n) {
    return std::exp(cplx(0.0, t * std::log(static_cast<double>(n))));
  };
  for (std::int64_t i = 1; i <= 3; ++i) {
    for (std::int64_t j = 1; j <= 3; ++j) {
      cplx expect(0.0, 0.0);
      if (i == j) expect = lam(i);
      else if (i > j) expect = lam(i) - lam(i - 1);
      REQUIRE(std::abs(M(i - 1, j - 1) - expect) <= 1e-15);
    }
  }
}

TEST_CASE("t = 0 gives the identity section exactly") {
  const OperatorSection sec = OperatorSection::group(SpectralFn::sqrt_fn(), 0.0, 2, 20);
  const RowMat M = dense_of(sec);
  for (std::int64_t i = 0; i < 20; ++i)
    for (std::int64_t j = 0; j < 20; ++j)
      REQUIRE(M(i, j) == (i == j ? cplx(1, 0) : cplx(0, 0)));
}

TEST_CASE("k = 0 sections are diagonal and unitary") {
  const OperatorSection sec = OperatorSection::group(SpectralFn::log_fn(), 1.7, 0, 64);
  const auto x = random_complex(64, 9);
  const auto y = sec.apply(x);
  CHECK(lp_norm(y, 2.0) == Approx(lp_norm(x, 2.0)).epsilon(1e-14));
  const NormBounds nb = section_norm(sec, 2.0);
  CHECK(nb.lower == Approx(1.0).epsilon(1e-9));
  CHECK(nb.upper == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("streaming apply agrees with the dense entries") {
  const OperatorSection sec = OperatorSection::group(SpectralFn::sqrt_fn(), 0.9, 2, 80);
  const RowMat M = dense_of(sec);
  const auto x = random_complex(80, 17);
  const auto y = sec.apply(x);
  Eigen::VectorXcd xe(80);
  for (int i = 0; i < 80; ++i) xe(i) = x[static_cast<std::size_t>(i)];
  const Eigen::VectorXcd ye = M * xe;
  for (int i = 0; i < 80; ++i)
    REQUIRE(std::abs(y[static_cast<std::size_t>(i)] - ye(i)) <= 1e-12);
}

TEST_CASE("apply_adjoint is the true adjoint of apply") {
  const OperatorSection sec = OperatorSection::group(SpectralFn::log_fn(), 1.3, 3, 60);
  const auto x = random_complex(60, 23);
  const auto y = random_complex(60, 29);
  const auto Ax = sec.apply(x);
  const auto Ahy = sec.apply_adjoint(y);
  cplx lhs(0, 0), rhs(0, 0);
  for (std::size_t i = 0; i < 60; ++i) {
    lhs += Ax[i] * std::conj(y[i]);
    rhs += x[i] * std::conj(Ahy[i]);
  }
  CHECK(std::abs(lhs - rhs) <= 1e-11);
}

TEST_CASE("group law holds on sections: M_s M_t = M_{s+t}") {
  const double s = 0.7, t = 0.3;
  const auto A = dense_of(OperatorSection::group(SpectralFn::log_fn(), s, 1, 16));
  const auto B = dense_of(OperatorSection::group(SpectralFn::log_fn(), t, 1, 16));
  const auto C = dense_of(OperatorSection::group(SpectralFn::log_fn(), s + t, 1, 16));
  CHECK(((A * B) - C).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("difference coordinates of e_n are eigenvectors of the section") {
  const int k = 1;
  const std::int64_t N = 64, n = 10;
  const double t = 0.8;
  const OperatorSection sec = OperatorSection::group(SpectralFn::sqrt_fn(), t, k, N);
  const CoefficientSeq ph = phi(n, k, N);
  const auto y = sec.apply(ph.entries);
  const cplx lambda =
      std::exp(cplx(0.0, t * std::sqrt(static_cast<double>(n))));
  for (std::size_t i = 0; i < ph.entries.size(); ++i)
    REQUIRE(std::abs(y[i] - lambda * ph.entries[i]) <= 1e-12);
}

TEST_CASE("p = 2 section norm matches a dense SVD") {
  const OperatorSection sec = OperatorSection::group(SpectralFn::log_fn(), 1.0, 1, 200);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(dense_of(sec));
  const double oracle = svd.singularValues()(0);
  const NormBounds nb = section_norm(sec, 2.0);
  CHECK(nb.converged);
  CHECK(nb.lower == Approx(oracle).epsilon(1e-8));
}

TEST_CASE("frozen points of the norm curves") {
  const DiffSpaceSpec spec(2.0, 1);
  const auto lg = group_norm_curve(SpectralFn::log_fn(), spec, {128, 1024}, {1.0});
  CHECK(lg.rows[0].upper == Approx(2.06430676591).epsilon(1e-7));
  CHECK(lg.rows[1].upper == Approx(2.171176655).epsilon(1e-7));
  const auto sq = group_norm_curve(SpectralFn::sqrt_fn(), spec, {128, 1024}, {1.0});
  CHECK(sq.rows[0].upper == Approx(4.906396411).epsilon(1e-7));
  CHECK(sq.rows[1].upper == Approx(13.380888831).epsilon(1e-7));
  CHECK(sq.f == "sqrt");
  // the two regimes separate already at this size
  CHECK(sq.rows[1].upper / sq.rows[0].upper > 2.0);
  CHECK(lg.rows[1].upper / lg.rows[0].upper < 1.1);
}

TEST_CASE("group_norm_curve validates its grids") {
  const DiffSpaceSpec spec(2.0, 1);
  const SpectralFn f = SpectralFn::log_fn();
  CHECK_THROWS_AS(group_norm_curve(f, spec, {}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(group_norm_curve(f, spec, {64}, {}), std::invalid_argument);
  CHECK_THROWS_AS(group_norm_curve(f, spec, {64, 64}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(group_norm_curve(f, spec, {128, 64}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(
      group_norm_curve(f, spec, {64}, {std::numeric_limits<double>::infinity()}),
      std::invalid_argument);
}

TEST_CASE("strong continuity probe: || M_t x - x || falls with t") {
  std::vector<cplx> impulse(4096, cplx(0, 0));
  impulse[0] = 1.0;
  const CoefficientSeq x{std::move(impulse)};
  const std::vector<double> ts{1.0, 1.0 / 32, 1.0 / 1024, 1.0 / 1048576};
  const auto devs =
      strong_continuity_probe(x, SpectralFn::log_fn(), DiffSpaceSpec(2.0, 1), ts);
  REQUIRE(devs.size() == 4);
  CHECK(devs[0] == Approx(0.9771280673392910).epsilon(1e-9));
  CHECK(devs[3] == Approx(9.426167515e-07).epsilon(1e-6));
  for (std::size_t i = 1; i < devs.size(); ++i) REQUIRE(devs[i] < devs[i - 1]);
}

TEST_CASE("growth grid and estimate plumbing") {
  const auto g = default_growth_grid();
  REQUIRE(g.size() == 80);
  CHECK(g.front() == Approx(10.0).epsilon(1e-12));
  CHECK(g.back() == 100.0);  // exact endpoint
  for (std::size_t i = 1; i < g.size(); ++i) REQUIRE(g[i] > g[i - 1]);

  const DiffSpaceSpec spec(2.0, 1);
  const SpectralFn f = SpectralFn::log_fn();
  CHECK_THROWS_AS(growth_bound_estimate(f, spec, 64, {60.0, 80.0}), std::invalid_argument);
  CHECK_THROWS_AS(growth_bound_estimate(f, spec, 64, {1.0, 2.0, 3.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(growth_bound_estimate(f, spec, 64, {60.0, 55.0, 80.0}),
                  std::invalid_argument);
}

TEST_CASE("all-ones section: closed-form 2-norm and exact 1-norm") {
  const OperatorSection sec = OperatorSection::all_ones(100);
  const NormBounds nb2 = section_norm(sec, 2.0);
  // largest singular value of the N x N lower-triangular all-ones matrix
  const double closed = 1.0 / (2.0 * std::sin(std::numbers::pi / (2.0 * (2 * 100 + 1))));
  CHECK(nb2.lower == Approx(closed).epsilon(1e-9));
  const NormBounds nb1 = section_norm(sec, 1.0);
  CHECK(nb1.lower == 100.0);  // max column mass, computed exactly
  CHECK(nb1.upper == 100.0);
}

TEST_CASE("cesaro sections: frozen 2-norms and a dense SVD oracle") {
  const NormBounds n64 = section_norm(cesaro_rate_section(2.0, 64), 2.0);
  CHECK(n64.lower == Approx(6.67916481422).epsilon(1e-8));

  const OperatorSection sec = cesaro_rate_section(2.0, 256);
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(256, 256);
  for (int i = 0; i < 256; ++i)
    for (int j = 0; j <= i; ++j) A(i, j) = std::pow(static_cast<double>(i + 1), -0.5);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  const NormBounds nb = section_norm(sec, 2.0);
  CHECK(nb.lower == Approx(svd.singularValues()(0)).epsilon(1e-8));
}

TEST_CASE("p = 3 enclosures are ordered and capped by interpolation") {
  const OperatorSection sec = OperatorSection::all_ones(100);
  const NormBounds nb = section_norm(sec, 3.0);
  REQUIRE(nb.lower <= nb.upper);
  // column and row mass are both 100, so interpolation caps the norm at 100
  CHECK(nb.upper <= 100.0 * (1.0 + 1e-12));
  CHECK(nb.lower >= 60.0);
  CHECK(nb.converged);

  // the constant probe is a genuine lower witness: ||A 1||_3 / ||1||_3
  std::vector<cplx> ones(100, cplx(1, 0));
  const auto y = sec.apply(ones);
  const double probe = lp_norm(y, 3.0) / lp_norm(ones, 3.0);
  REQUIRE(nb.lower >= probe - 1e-12);
}

TEST_CASE("section construction rejects bad arguments") {
  const SpectralFn f = SpectralFn::log_fn();
  CHECK_THROWS_AS(OperatorSection::group(f, std::nan(""), 1, 8), std::invalid_argument);
  CHECK_THROWS_AS(OperatorSection::group(f, 1.0, -1, 8), std::invalid_argument);
  CHECK_THROWS_AS(OperatorSection::group(f, 1.0, 63, 8), std::invalid_argument);
  CHECK_THROWS_AS(OperatorSection::group(f, 1.0, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(OperatorSection::group(f, 1.0, 1, 16385), std::invalid_argument);
  CHECK_THROWS_AS(OperatorSection::dense({cplx(1, 0)}, 2), std::invalid_argument);
  CHECK_THROWS_AS(section_norm(OperatorSection::all_ones(4), 0.5), std::invalid_argument);

  const OperatorSection sec = OperatorSection::all_ones(4);
  CHECK_THROWS_AS(sec.apply(std::vector<cplx>(3)), std::invalid_argument);
  CHECK(sec.describe().find("partial-sum") != std::string::npos);
  CHECK(OperatorSection::group(f, 1.0, 1, 8).describe().find("log") != std::string::npos);
}
