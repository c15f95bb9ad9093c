#pragma once

// The acceptance gate: twelve self-contained criteria, each checking library
// output against an independent oracle (closed forms, brute-force sums, dense
// linear algebra) at fixed tolerances. Every check reports the measured value
// next to its target so a failure is diagnosable from the log alone. Two
// criteria are currently red by measurement, not by bug; their check rows
// carry notes with the measured structure (see README for the analysis).

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "diffseq/basis_model.hpp"
#include "diffseq/detail/rng.hpp"
#include "diffseq/group.hpp"
#include "diffseq/hardy.hpp"
#include "diffseq/nonbasis.hpp"
#include "diffseq/operator_section.hpp"
#include "diffseq/sequences.hpp"
#include "diffseq/spectrum.hpp"

namespace diffseq::acceptance {

struct CheckRow {
  std::string name;
  double measured = 0.0;
  std::string target;
  bool ok = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::vector<CheckRow> checks;
  std::vector<std::string> notes;
  double seconds = 0.0;
};

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

inline CheckRow le(const std::string& name, double measured, double bound) {
  return {name, measured, "<= " + fmt(bound), measured <= bound};
}
inline CheckRow ge(const std::string& name, double measured, double bound) {
  return {name, measured, ">= " + fmt(bound), measured >= bound};
}
inline CheckRow eq0(const std::string& name, double measured) {
  return {name, measured, "== 0", measured == 0.0};
}
inline CheckRow flag(const std::string& name, bool okv, const std::string& target) {
  return {name, okv ? 1.0 : 0.0, target, okv};
}

inline void finish(CriterionResult& r) {
  r.pass = !r.checks.empty();
  for (const CheckRow& c : r.checks) r.pass = r.pass && c.ok;
}

using RowMat =
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline RowMat to_matrix(const OperatorSection& sec) {
  const std::int64_t N = sec.dim();
  return Eigen::Map<const RowMat>(sec.entries().data(), N, N);
}

}  // namespace detail

inline CriterionResult criterion_01() {
  CriterionResult r;
  r.id = 1;
  r.title = "Hardy averaging inequality: random sweep and near-extremal family";
  const std::vector<double> ps = {1.5, 2.0, 3.0, 10.0};
  for (std::size_t pi = 0; pi < ps.size(); ++pi) {
    const double p = ps[pi];
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      diffseq::detail::Rng rng(42 + static_cast<std::uint64_t>(pi) * 10000 +
                               static_cast<std::uint64_t>(i));
      std::vector<double> a(1000);
      for (double& v : a) v = rng.uniform();
      worst = std::max(worst, hardy_sides(a, p).ratio);
    }
    r.checks.push_back(detail::le("max ratio over 1e4 random sequences, p=" + detail::fmt(p),
                                  worst, 1.0));
  }
  const std::vector<double> fam = near_extremal_family(0.01, 1000000, 2.0);
  const double ratio = hardy_sides(fam, 2.0).ratio;
  r.checks.push_back(detail::ge("near-extremal ratio, p=2, eps=0.01, N=1e6", ratio, 0.87));
  r.notes.push_back(
      "the near-extremal family needs eps*ln(N) >> 1 before its ratio approaches the sharp "
      "constant; at eps=0.01, N=1e6 the product is only 0.138 and the measured ratio is " +
      detail::fmt(ratio) +
      ". The supremum over every eps at N=1e6 is ~0.8667 (near eps~0.15), still below the "
      "0.87 level, which this family first reaches around N~1e8 (ratio 0.8711). The check is "
      "reported red rather than moving the goalpost.");
  detail::finish(r);
  return r;
}

inline CriterionResult criterion_02() {
  CriterionResult r;
  r.id = 2;
  r.title = "difference / partial-sum calculus exactness";
  diffseq::detail::Rng rng(42);
  std::int64_t bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t len = (i < 20) ? 10000 : rng.uniform_int(1, 2000);
    const int k = static_cast<int>(rng.uniform_int(1, 4));
    std::vector<std::int64_t> x(static_cast<std::size_t>(len));
    for (std::int64_t& v : x) v = rng.uniform_int(-9, 9);
    if (diffseq::detail::sigma(diffseq::detail::delta(x, k), k) != x) ++bad;
    if (diffseq::detail::delta(diffseq::detail::sigma(x, k), k) != x) ++bad;
  }
  r.checks.push_back(detail::eq0("failed integer round trips (2000 checks, k <= 4, N <= 1e4)",
                                 static_cast<double>(bad)));

  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::int64_t len = rng.uniform_int(10, 2000);
    const int k = static_cast<int>(rng.uniform_int(1, 4));
    std::vector<cplx> c(static_cast<std::size_t>(len));
    for (cplx& z : c) z = rng.box();
    const std::vector<cplx> it = diffseq::detail::delta(c, k);
    const std::vector<cplx> bn = diffseq::detail::delta_binomial(c, k);
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      num += std::norm(it[j] - bn[j]);
      den += std::norm(it[j]);
    }
    worst = std::max(worst, std::sqrt(num / den));
  }
  r.checks.push_back(
      detail::le("binomial formula vs iterated differences, max relative l2 gap", worst, 1e-12));
  detail::finish(r);
  return r;
}

inline CriterionResult criterion_03() {
  CriterionResult r;
  r.id = 3;
  r.title = "coordinate projection norms: k=1 closed form, k=2 dominance";
  const BasisModel model = BasisModel::orthonormal();
  double dev = 0.0, min_excess = std::numeric_limits<double>::infinity();
  for (std::int64_t np : {3, 10, 99, 999}) {
    const double v1 = projection_norm(np, DiffSpaceSpec(2.0, 1), model, np + 1);
    const double v2 = projection_norm(np, DiffSpaceSpec(2.0, 2), model, np + 2);
    dev = std::max(dev, std::abs(v1 - std::sqrt(static_cast<double>(np) + 1.0)));
    min_excess = std::min(min_excess, v2 - v1);
  }
  r.checks.push_back(detail::le("k=1: max |norm - sqrt(Nproj+1)| over {3,10,99,999}", dev, 1e-8));
  r.checks.push_back(
      detail::flag("k=2 norm strictly above k=1 at every point (min excess " +
                       detail::fmt(min_excess) + ")",
                   min_excess > 0.0, "> 0"));
  detail::finish(r);
  return r;
}

inline CriterionResult criterion_04() {
  CriterionResult r;
  r.id = 4;
  r.title = "biorthogonality Gram identities";
  const std::int64_t N = 300;
  double worst = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const std::int64_t top = N - k;
    std::vector<CoefficientSeq> phis, dchis;
    phis.reserve(static_cast<std::size_t>(top));
    dchis.reserve(static_cast<std::size_t>(top));
    for (std::int64_t n = 1; n <= top; ++n) {
      phis.push_back(phi(n, k, N));
      dchis.push_back(delta(chi(n, k, N), k));
    }
    for (std::int64_t i = 1; i <= top; ++i) {
      const CoefficientSeq ps = psi(i, k, N);
      const CoefficientSeq ph = phi(i, k, N);
      for (std::int64_t j = 1; j <= top; ++j) {
        cplx g1{}, g2{};
        const CoefficientSeq& pj = phis[static_cast<std::size_t>(j - 1)];
        const CoefficientSeq& cj = dchis[static_cast<std::size_t>(j - 1)];
        for (std::size_t m = 0; m < ps.entries.size(); ++m) {
          g1 += std::conj(ps.entries[m]) * pj.entries[m];
          g2 += std::conj(ph.entries[m]) * cj.entries[m];
        }
        const double want = (i == j) ? 1.0 : 0.0;
        worst = std::max({worst, std::abs(g1 - want), std::abs(g2 - want)});
      }
    }
  }
  r.checks.push_back(detail::le(
      "max |Gram - identity| over both pairings, k <= 3, N = 300", worst, 1e-10));
  detail::finish(r);
  return r;
}

inline CriterionResult criterion_05() {
  CriterionResult r;
  r.id = 5;
  r.title = "minimality asymmetry: norms and unbounded products";
  const double sqrt2 = std::sqrt(2.0);
  double dev_phi = 0.0, dev_psi = 0.0;
  double prod_first = 0.0, prod_last = 0.0;
  for (std::int64_t n = 1; n <= 10000; ++n) {
    const double np = lp_norm(phi(n, 1, n + 1).entries, 2.0);
    const double ns = lp_norm(psi(n, 1, n).entries, 2.0);
    dev_phi = std::max(dev_phi, std::abs(np - sqrt2));
    dev_psi = std::max(dev_psi, std::abs(ns - std::sqrt(static_cast<double>(n))));
    if (n == 1) prod_first = np * ns;
    if (n == 10000) prod_last = np * ns;
  }
  r.checks.push_back(detail::le("max | ||phi_n|| - sqrt(2) |, n <= 1e4", dev_phi, 1e-10));
  r.checks.push_back(detail::le("max | ||psi_n|| - sqrt(n) |, n <= 1e4", dev_psi, 1e-10));
  r.checks.push_back(detail::ge("product at n=1e4 over 100x product at n=1",
                                prod_last, 100.0 * prod_first));
  detail::finish(r);
  return r;
}

inline CriterionResult criterion_06() {
  CriterionResult r;
  r.id = 6;
  r.title = "divergent expansion coefficients";
  const std::vector<double> h = expansion_divergence(1, 1000000);
  double dev = 0.0;
  diffseq::detail::Kahan direct;
  const std::vector<std::int64_t> marks = {1, 10, 100, 1000, 100000, 1000000};
  std::size_t mi = 0;
  for (std::int64_t n = 1; n <= 1000000 && mi < marks.size(); ++n) {
    direct.add(1.0 / static_cast<double>(n));
    if (n == marks[mi]) {
      dev = std::max(dev, std::abs(h[static_cast<std::size_t>(n - 1)] - direct.value()));
      ++mi;
    }
  }
  r.checks.push_back(detail::le("max |coefficient - direct harmonic sum| at 6 checkpoints",
                                dev, 1e-10));
  r.checks.push_back(detail::ge("coefficient at n = 1e6", h.back(), 14.0));
  detail::finish(r);
  return r;
}

inline CriterionResult criterion_07() {
  CriterionResult r;
  r.id = 7;
  r.title = "generation dichotomy: log plateau vs sqrt divergence";
  const std::vector<std::int64_t> Ns = {128, 256, 512, 1024, 2048, 4096, 8192};
  const DiffSpaceSpec spec(2.0, 1);
  const GroupNormCurve lg = group_norm_curve(SpectralFn::log_fn(), spec, Ns, {1.0});
  double lg_max = 0.0;
  for (const CurveRow& row : lg.rows) lg_max = std::max(lg_max, row.upper);
  const double lg_last =
      lg.rows[6].upper / lg.rows[5].upper - 1.0;
  r.checks.push_back(detail::le("log curve: max norm over N <= 8192", lg_max, 5.0));
  r.checks.push_back(detail::le("log curve: relative increase over last doubling", lg_last, 0.02));

  const GroupNormCurve sq = group_norm_curve(SpectralFn::sqrt_fn(), spec, Ns, {1.0});
  const double ratio = sq.rows[6].upper / sq.rows[2].upper;
  double min_growth = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sq.rows.size(); ++i)
    min_growth = std::min(min_growth, sq.rows[i].upper / sq.rows[i - 1].upper - 1.0);
  r.checks.push_back(detail::ge("sqrt curve: norm(8192) / norm(512)", ratio, 2.0));
  r.checks.push_back(detail::ge("sqrt curve: min growth per doubling", min_growth, 0.10));
  detail::finish(r);
  return r;
}

inline CriterionResult criterion_08() {
  CriterionResult r;
  r.id = 8;
  r.title = "order-2 plateau under the analytic cap";
  const std::vector<std::int64_t> Ns = {128, 256, 512, 1024, 2048, 4096};
  const GroupNormCurve c =
      group_norm_curve(SpectralFn::log_fn(), DiffSpaceSpec(2.0, 2), Ns, {1.0});
  double cmax = 0.0;
  for (const CurveRow& row : c.rows) cmax = std::max(cmax, row.upper);
  const double last = c.rows[5].upper / c.rows[4].upper - 1.0;
  r.checks.push_back(detail::le("k=2 log curve: max norm over N <= 4096 (cap 1 + 16|t|)",
                                cmax, 17.0));
  r.checks.push_back(detail::le("k=2 log curve: relative increase over last doubling",
                                last, 0.03));
  detail::finish(r);
  return r;
}

inline CriterionResult criterion_09() {
  CriterionResult r;
  r.id = 9;
  r.title = "growth-bound estimates at N = 4096, t <= 100";
  const std::vector<double> grid = default_growth_grid();
  const GrowthBoundReport g1 =
      growth_bound_estimate(SpectralFn::log_fn(), DiffSpaceSpec(2.0, 1), 4096, grid);
  const GrowthBoundReport g2 =
      growth_bound_estimate(SpectralFn::log_fn(), DiffSpaceSpec(2.0, 2), 4096, grid);
  r.checks.push_back(detail::le("k=1 estimate: max ln(norm)/t over grid tail", g1.estimate, 0.05));
  r.checks.push_back(detail::le("k=2 estimate: max ln(norm)/t over grid tail", g2.estimate, 0.10));
  std::ostringstream note;
  note.precision(9);
  note << "k=1 tail samples (t, norm, ln(norm)/t):";
  for (const CurveRow& row : g1.samples)
    note << " (" << row.t << ", " << row.upper << ", " << std::log(row.upper) / row.t << ")";
  note << "; the t=100 point alone gives " << std::log(g1.samples.back().upper) / 100.0
       << ", so no admissible grid with max t = 100 brings the k=1 estimator under 0.05 at "
          "this section size. The quantity decays to 0 in t like ln(t ln N)/t; the target "
          "is missed by the fixed t-range, not by the operator. Reported red as measured.";
  r.notes.push_back(note.str());
  detail::finish(r);
  return r;
}

inline CriterionResult criterion_10() {
  CriterionResult r;
  r.id = 10;
  r.title = "weighted averaging sections unbounded in N";
  for (std::int64_t N : {4, 64, 1024}) {
    const NormBounds nb = section_norm(cesaro_rate_section(2.0, N), 2.0);
    const double bound = std::sqrt((static_cast<double>(N) + 1.0) / 2.0);
    r.checks.push_back(detail::ge("p=2 norm at N=" + std::to_string(N) +
                                      " vs constant-vector bound",
                                  nb.lower, bound));
  }
  double prev = 0.0;
  bool increasing = true;
  for (std::int64_t N : {4, 64, 1024}) {
    const OperatorSection sec = cesaro_rate_section(3.0, N);
    std::vector<cplx> ones(static_cast<std::size_t>(N), cplx{1.0, 0.0});
    const double lb = lp_norm(sec.apply(ones), 3.0) / lp_norm(ones, 3.0);
    if (lb <= prev) increasing = false;
    prev = lb;
  }
  r.checks.push_back(detail::flag("p=3 constant-vector lower bounds strictly increase "
                                  "across {4, 64, 1024} (last " + detail::fmt(prev) + ")",
                                  increasing, "strictly increasing"));
  detail::finish(r);
  return r;
}

inline CriterionResult criterion_11() {
  CriterionResult r;
  r.id = 11;
  r.title = "spectrum hypotheses: gap, decomposability, membership";
  const double gap = uniform_gap(SpectralFn::log_fn(), 100000);
  r.checks.push_back(detail::le("uniform gap for ln at N=1e5, |gap/1e-5 - 1|",
                                std::abs(gap / 1e-5 - 1.0), 0.01));
  const DecomposeReport dec = k_decompose(SpectralFn::log_fn(), 5, 0.01, 10000);
  r.checks.push_back(detail::flag("K=5, delta=0.01 decomposition of ln at N=1e4 infeasible "
                                  "(window inf " + detail::fmt(dec.window_inf) + ")",
                                  !dec.feasible, "infeasible"));
  const struct {
    SpectralFn f;
    int k;
    const char* want;
    const char* label;
  } cases[] = {
      {SpectralFn::log_fn(), 1, "consistent-with-membership", "log, k=1"},
      {SpectralFn::log_fn(), 2, "inconsistent", "log, k=2"},
      {SpectralFn::sqrt_fn(), 1, "inconsistent", "sqrt, k=1"},
      {SpectralFn::loglog(), 1, "consistent-with-membership", "loglog, k=1"},
  };
  for (const auto& c : cases) {
    const SkReport rep = sk_membership(c.f, c.k, 1000000);
    r.checks.push_back(detail::flag(std::string("membership verdict for ") + c.label + " is '" +
                                        rep.verdict + "'",
                                    rep.verdict == c.want, c.want));
  }
  detail::finish(r);
  return r;
}

inline CriterionResult criterion_12() {
  CriterionResult r;
  r.id = 12;
  r.title = "group axioms on sections";
  diffseq::detail::Rng rng(42);
  const std::vector<std::int64_t> Ns = {64, 128, 256, 512};
  double law = 0.0, inv = 0.0, eig = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int k = 1 + i % 3;
    const std::int64_t N = Ns[static_cast<std::size_t>(i) % Ns.size()];
    const double s = rng.uniform(-2.0, 2.0);
    const double t = rng.uniform(-2.0, 2.0);
    const SpectralFn f = SpectralFn::log_fn();
    const detail::RowMat A = detail::to_matrix(OperatorSection::group(f, s, k, N));
    const detail::RowMat B = detail::to_matrix(OperatorSection::group(f, t, k, N));
    const detail::RowMat C = detail::to_matrix(OperatorSection::group(f, s + t, k, N));
    law = std::max(law, ((A * B) - C).cwiseAbs().maxCoeff());

    const detail::RowMat Bm = detail::to_matrix(OperatorSection::group(f, -t, k, N));
    const Eigen::MatrixXcd X = Eigen::MatrixXcd(B).partialPivLu().solve(
        Eigen::MatrixXcd::Identity(N, N));
    inv = std::max(inv, (X - Eigen::MatrixXcd(Bm)).cwiseAbs().maxCoeff());

    const OperatorSection sec = OperatorSection::group(f, t, k, N);
    for (std::int64_t n : {std::int64_t{1}, N / 2, N - k}) {
      const CoefficientSeq ph = phi(n, k, N);
      const std::vector<cplx> y = sec.apply(ph.entries);
      const double ang = t * f(n);
      const cplx lam(std::cos(ang), std::sin(ang));
      for (std::size_t m = 0; m < y.size(); ++m)
        eig = std::max(eig, std::abs(y[m] - lam * ph.entries[m]));
    }
  }
  r.checks.push_back(detail::le("group law: max entrywise |M_s M_t - M_{s+t}|", law, 1e-10));
  r.checks.push_back(detail::le("inverse: max entrywise |solve(M_t, I) - M_{-t}|", inv, 1e-8));
  r.checks.push_back(detail::le("eigenvector action: max |M_t phi_n - e^{itf(n)} phi_n|",
                                eig, 1e-12));
  detail::finish(r);
  return r;
}

inline CriterionResult run_criterion(int id) {
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  switch (id) {
    case 1: r = criterion_01(); break;
    case 2: r = criterion_02(); break;
    case 3: r = criterion_03(); break;
    case 4: r = criterion_04(); break;
    case 5: r = criterion_05(); break;
    case 6: r = criterion_06(); break;
    case 7: r = criterion_07(); break;
    case 8: r = criterion_08(); break;
    case 9: r = criterion_09(); break;
    case 10: r = criterion_10(); break;
    case 11: r = criterion_11(); break;
    case 12: r = criterion_12(); break;
    default: throw std::invalid_argument("acceptance: criterion id must be 1..12");
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline std::vector<CriterionResult> run_all() {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 12; ++id) out.push_back(run_criterion(id));
  return out;
}

}  // namespace diffseq::acceptance
