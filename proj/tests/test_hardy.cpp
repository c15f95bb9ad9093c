#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "diffseq/detail/rng.hpp"
#include "diffseq/hardy.hpp"

using Catch::Approx;
using namespace diffseq;

TEST_CASE("hardy_sides on tiny sequences matches hand arithmetic") {
  // a = (1): lhs = 1, rhs = (p/(p-1))^p
  const auto r1 = hardy_sides({1.0}, 2.0);
  CHECK(r1.lhs == Approx(1.0).epsilon(1e-15));
  CHECK(r1.rhs == Approx(4.0).epsilon(1e-15));
  CHECK(r1.ratio == Approx(0.25).epsilon(1e-15));

  // a = (1, 1): means are (1, 1), lhs = 2, rhs = 4 * 2
  const auto r2 = hardy_sides({1.0, 1.0}, 2.0);
  CHECK(r2.lhs == Approx(2.0).epsilon(1e-15));
  CHECK(r2.rhs == Approx(8.0).epsilon(1e-15));

  // a = (2, 0): means are (2, 1), lhs = 5, rhs = 4 * 4
  const auto r3 = hardy_sides({2.0, 0.0}, 2.0);
  CHECK(r3.lhs == Approx(5.0).epsilon(1e-15));
  CHECK(r3.rhs == Approx(16.0).epsilon(1e-15));
  CHECK(r3.N == 2);

  // p = 3, a = (1): rhs = (3/2)^3
  const auto r4 = hardy_sides({1.0}, 3.0);
  CHECK(r4.rhs == Approx(27.0 / 8.0).epsilon(1e-15));

  const auto rz = hardy_sides({0.0, 0.0}, 2.0);
  CHECK(rz.ratio == 0.0);
}

TEST_CASE("truncated ratio never exceeds 1 on random data") {
  for (double p : {1.5, 2.0, 3.0}) {
    for (int trial = 0; trial < 30; ++trial) {
      detail::Rng rng(1000 + static_cast<std::uint64_t>(trial));
      std::vector<double> a(2000);
      for (auto& x : a) x = rng.uniform();
      const auto r = hardy_sides(a, p);
      REQUIRE(r.ratio <= 1.0);
      REQUIRE(r.ratio >= 0.0);
    }
  }
}

TEST_CASE("near-extremal family is the expected power sequence") {
  const auto a = near_extremal_family(1.0, 5, 2.0);
  REQUIRE(a.size() == 5);
  CHECK(a[0] == Approx(1.0).epsilon(1e-15));
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(a[i] == Approx(std::pow(static_cast<double>(i + 1), -1.0)).epsilon(1e-15));
  const auto b = near_extremal_family(0.5, 4, 3.0);
  CHECK(b[3] == Approx(std::pow(4.0, -0.5)).epsilon(1e-15));
}

TEST_CASE("sharpness sweep reproduces frozen ratios at N = 1e5") {
  const auto reports = hardy_sharpness_sweep(2.0, {1.0, 0.3}, 100000);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].ratio == Approx(0.69883928452).epsilon(1e-10));
  CHECK(reports[1].ratio == Approx(0.836359400849).epsilon(1e-10));
  // within this eps range the ratio rises as eps falls
  CHECK(reports[1].ratio > reports[0].ratio);
}

TEST_CASE("sweep is deterministic across repeated parallel runs") {
  const std::vector<double> grid{1.0, 0.5, 0.25, 0.125, 0.0625};
  const auto a = hardy_sharpness_sweep(2.0, grid, 20000);
  const auto b = hardy_sharpness_sweep(2.0, grid, 20000);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].lhs == b[i].lhs);   // bitwise equal, not approximately
    REQUIRE(a[i].rhs == b[i].rhs);
    REQUIRE(a[i].ratio == b[i].ratio);
  }
}

TEST_CASE("hardy validation rejects bad inputs") {
  CHECK_THROWS_AS(hardy_sides({1.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(hardy_sides({1.0}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(hardy_sides({}, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(hardy_sides({-1.0}, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(hardy_sides({std::nan("")}, 2.0), std::invalid_argument);

  CHECK_THROWS_AS(near_extremal_family(0.0, 10, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(near_extremal_family(1.0, 0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(near_extremal_family(1.0, 10, 1.0), std::invalid_argument);

  CHECK_THROWS_AS(hardy_sharpness_sweep(2.0, {}, 100000), std::invalid_argument);
  CHECK_THROWS_AS(hardy_sharpness_sweep(2.0, {1.0}, 999), std::invalid_argument);
  CHECK_THROWS_AS(hardy_sharpness_sweep(2.0, {-1.0}, 100000), std::invalid_argument);
}
