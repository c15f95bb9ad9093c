#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "diffseq/detail/rng.hpp"
#include "diffseq/spectrum.hpp"

using Catch::Approx;
using namespace diffseq;

namespace {

std::vector<double> sorted_random(std::size_t n, std::uint64_t seed, double span) {
  detail::Rng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(0.0, span);
  std::sort(v.begin(), v.end());
  return v;
}

double brute_min_pairwise_gap(const std::vector<double>& v) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      g = std::min(g, std::abs(v[j] - v[i]));
  return g;
}

}  // namespace

TEST_CASE("uniform_gap equals the brute-force minimum pairwise distance") {
  for (int trial = 0; trial < 20; ++trial) {
    detail::Rng rng(500 + static_cast<std::uint64_t>(trial));
    std::vector<double> v(200);
    for (auto& x : v) x = rng.uniform(0.0, 50.0);  // deliberately unsorted
    const double expect = brute_min_pairwise_gap(v);
    REQUIRE(uniform_gap(v, static_cast<std::int64_t>(v.size())) ==
            Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("uniform_gap closed forms: lattice, log, sqrt") {
  std::vector<double> lattice(100);
  for (std::size_t i = 0; i < lattice.size(); ++i) lattice[i] = static_cast<double>(i + 1);
  CHECK(uniform_gap(SpectralFn::table(lattice), 100) == Approx(1.0).epsilon(1e-15));

  // ln has vanishing tail gaps: min over n <= N is ln(N) - ln(N-1)
  CHECK(uniform_gap(SpectralFn::log_fn(), 100000) ==
        Approx(std::log(100000.0) - std::log(99999.0)).epsilon(1e-10));
  CHECK(uniform_gap(SpectralFn::log_fn(), 100000) == Approx(1.00000500005e-05).epsilon(1e-9));

  CHECK(uniform_gap(SpectralFn::sqrt_fn(), 10000) ==
        Approx(100.0 - std::sqrt(9999.0)).epsilon(1e-12));

  CHECK_THROWS_AS(uniform_gap(SpectralFn::log_fn(), 1), std::invalid_argument);
  CHECK_THROWS_AS(uniform_gap(std::vector<double>{1.0, 2.0}, 3), std::invalid_argument);
}

TEST_CASE("k_decompose feasibility matches the window oracle") {
  // Feasibility of splitting into K delta-separated classes is equivalent to
  // every window of K+1 consecutive sorted values spanning at least delta.
  for (int trial = 0; trial < 200; ++trial) {
    detail::Rng rng(900 + static_cast<std::uint64_t>(trial));
    const int K = static_cast<int>(rng.uniform_int(1, 6));
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(K + 1, 60));
    const auto lam = sorted_random(n, 333 + static_cast<std::uint64_t>(trial), 4.0);
    const double delta = rng.uniform(0.01, 0.8);
    const auto rep = k_decompose(lam, K, delta, static_cast<std::int64_t>(n));

    double window = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j + static_cast<std::size_t>(K) < n; ++j)
      window = std::min(window, lam[j + static_cast<std::size_t>(K)] - lam[j]);
    REQUIRE(rep.window_inf == Approx(window).epsilon(1e-14));
    REQUIRE(rep.feasible == (window >= delta));

    // round-robin class gaps recomputed independently
    REQUIRE(rep.per_class_gaps.size() == static_cast<std::size_t>(K));
    for (int c = 0; c < K; ++c) {
      double gap = std::numeric_limits<double>::infinity();
      for (std::size_t j = static_cast<std::size_t>(c) + static_cast<std::size_t>(K);
           j < n; j += static_cast<std::size_t>(K))
        gap = std::min(gap, lam[j] - lam[j - static_cast<std::size_t>(K)]);
      if (std::isfinite(gap))
        REQUIRE(rep.per_class_gaps[static_cast<std::size_t>(c)] ==
                Approx(gap).epsilon(1e-14));
    }
    if (rep.feasible)
      for (double g : rep.per_class_gaps) REQUIRE(g >= delta);
  }
}

TEST_CASE("k_decompose: interleaved pairs split cleanly into two classes") {
  std::vector<double> lam;
  for (int i = 0; i < 6; ++i) {
    lam.push_back(static_cast<double>(i));
    lam.push_back(static_cast<double>(i) + 0.001);
  }
  const auto rep = k_decompose(lam, 2, 0.9, static_cast<std::int64_t>(lam.size()));
  CHECK(rep.feasible);
  for (double g : rep.per_class_gaps) CHECK(g >= 0.999);

  const auto tight = k_decompose(lam, 1, 0.9, static_cast<std::int64_t>(lam.size()));
  CHECK_FALSE(tight.feasible);
  CHECK(tight.inf_gap == Approx(0.001).epsilon(1e-10));
}

TEST_CASE("k_decompose on ln: no fixed K ever suffices") {
  const auto rep = k_decompose(SpectralFn::log_fn(), 5, 0.01, 10000);
  CHECK_FALSE(rep.feasible);
  CHECK(rep.window_inf == Approx(0.000500125).epsilon(1e-4));
}

TEST_CASE("k_decompose validation") {
  const std::vector<double> unsorted{3.0, 1.0, 2.0};
  CHECK_THROWS_WITH(k_decompose(unsorted, 1, 0.1, 3),
                    Catch::Matchers::ContainsSubstring("sorted ascending"));
  const std::vector<double> ok{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(k_decompose(ok, 0, 0.1, 3), std::invalid_argument);
  CHECK_THROWS_AS(k_decompose(ok, 1, 0.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(k_decompose(ok, 3, 0.1, 3), std::invalid_argument);  // need N >= K+1
  CHECK_THROWS_AS(k_decompose(ok, 1, 0.1, 4), std::invalid_argument);  // N > size
}

TEST_CASE("membership scan: verdicts and the sampled beta values") {
  const auto lg1 = sk_membership(SpectralFn::log_fn(), 1, 100000);
  CHECK(lg1.verdict == "consistent-with-membership");
  CHECK(lg1.tail_sup[0] == Approx(1.0000499983334166).epsilon(1e-12));
  // every sampled beta is reproduced by direct evaluation
  REQUIRE(lg1.j_values == std::vector<int>{1});
  for (const auto& [n, beta] : lg1.beta_table[0]) {
    const double expect = static_cast<double>(n) *
                          (std::log(static_cast<double>(n - 1)) -
                           std::log(static_cast<double>(n)));
    REQUIRE(beta == Approx(expect).epsilon(1e-12));
  }

  const auto lg2 = sk_membership(SpectralFn::log_fn(), 2, 100000);
  CHECK(lg2.verdict == "inconsistent");
  REQUIRE(lg2.j_values == std::vector<int>{1, 2});
  CHECK(lg2.tail_sup[0] / lg2.prev_sup[0] == Approx(10.0).epsilon(1e-3));

  const auto sq = sk_membership(SpectralFn::sqrt_fn(), 1, 100000);
  CHECK(sq.verdict == "inconsistent");
  CHECK(sq.tail_sup[0] ==
        Approx(100000.0 * (std::sqrt(100000.0) - std::sqrt(99999.0))).epsilon(1e-12));

  const auto ll = sk_membership(SpectralFn::loglog(), 1, 100000);
  CHECK(ll.verdict == "consistent-with-membership");

  CHECK_THROWS_AS(sk_membership(SpectralFn::log_fn(), 0, 100000), std::invalid_argument);
  CHECK_THROWS_AS(sk_membership(SpectralFn::log_fn(), 63, 100000), std::invalid_argument);
  CHECK_THROWS_AS(sk_membership(SpectralFn::log_fn(), 1, 999), std::invalid_argument);
}

TEST_CASE("geometric condition separates the model functions") {
  const auto lg = geometric_condition(SpectralFn::log_fn(), 10000);
  CHECK(lg.tends_up);
  CHECK(lg.steps_vanish);
  CHECK(lg.max_step == Approx(std::log(1001.0 / 1000.0)).epsilon(1e-10));

  // sqrt at 1e6: last-decade steps still exceed 1e-3 near n = 1e5
  const auto sq6 = geometric_condition(SpectralFn::sqrt_fn(), 1000000);
  CHECK(sq6.tends_up);
  CHECK_FALSE(sq6.steps_vanish);
  CHECK(sq6.max_step == Approx(0.00158113487726).epsilon(1e-6));
  // by 1e7 the increments have fallen under the threshold
  const auto sq7 = geometric_condition(SpectralFn::sqrt_fn(), 10000000);
  CHECK(sq7.tends_up);
  CHECK(sq7.steps_vanish);

  std::vector<double> flat(2000, 5.0);
  const auto fl = geometric_condition(SpectralFn::table(flat), 2000);
  CHECK_FALSE(fl.tends_up);
  CHECK(fl.steps_vanish);

  CHECK_THROWS_AS(geometric_condition(SpectralFn::log_fn(), 999), std::invalid_argument);
}

TEST_CASE("rate check: tail infimum of n^{-1/p} |f(n)|") {
  CHECK(rate_check(SpectralFn::log_fn(), 2.0, 1000000) ==
        Approx(0.013815510558).epsilon(1e-9));
  // sqrt against p = 2 sits exactly at the threshold
  CHECK(rate_check(SpectralFn::sqrt_fn(), 2.0, 10000) == Approx(1.0).epsilon(1e-12));
  CHECK(rate_check(SpectralFn::power(1.0), 1.0, 10000) == Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(rate_check(SpectralFn::log_fn(), 0.5, 10000), std::invalid_argument);
  CHECK_THROWS_AS(rate_check(SpectralFn::log_fn(), 2.0, 999), std::invalid_argument);
}

TEST_CASE("table-backed spectral functions refuse extrapolation") {
  const SpectralFn f = SpectralFn::table({1.0, 4.0, 9.0});
  CHECK(f(2) == 4.0);
  CHECK(f.name() == "table[3]");
  CHECK_THROWS_AS(f(4), std::invalid_argument);
  CHECK_THROWS_AS(f(0), std::invalid_argument);
  CHECK_THROWS_AS(uniform_gap(f, 5), std::invalid_argument);
  CHECK_THROWS_AS(SpectralFn::power(0.0), std::invalid_argument);
}
