#pragma once

// Coordinate calculus for the right shift T, the k-th difference
// Delta^k = (I - T)^k and its inverse Sigma^k (iterated prefix sums), plus
// the l_p and l_p(Delta^k) norms.
//
// Everything here is lower triangular in the coordinate basis, and that is
// load-bearing: row n of a lower-triangular operator only reads coordinates
// m <= n, so the leading N x N block is the exact compression of the infinite
// operator, sections of products equal products of sections, and delta/sigma
// are exact mutual inverses on every truncation. No truncation-error analysis
// appears anywhere downstream because none is needed; see README for the
// argument spelled out once.
//
// Index convention: sequences are c_1..c_N and any index <= 0 reads as zero.

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "diffseq/detail/kahan.hpp"

namespace diffseq {

using cplx = std::complex<double>;

// C(62,31) ~ 4.5e17 still fits uint64 comfortably; larger orders are refused
// rather than silently overflowing.
inline constexpr int kMaxOrder = 62;

inline std::uint64_t binom(int k, int j) {
  if (k < 0 || j < 0 || j > k)
    throw std::invalid_argument("binom: need 0 <= j <= k");
  if (k > kMaxOrder)
    throw std::invalid_argument("binom: k > 62 would overflow exact arithmetic");
  if (j > k - j) j = k - j;
  std::uint64_t r = 1;
  for (int i = 1; i <= j; ++i) {
    // r * (k - j + i) is divisible by i at every step; widen the product so
    // the largest intermediates (~2.9e19 at k=62) cannot wrap.
    const unsigned __int128 t = static_cast<unsigned __int128>(r) * static_cast<unsigned>(k - j + i);
    r = static_cast<std::uint64_t>(t / static_cast<unsigned>(i));
  }
  return r;
}

struct CoefficientSeq {
  std::vector<cplx> entries;  // c_1..c_N

  explicit CoefficientSeq(std::vector<cplx> e) : entries(std::move(e)) {
    if (entries.empty())
      throw std::invalid_argument("CoefficientSeq: length must be >= 1");
    for (const cplx& z : entries)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument("CoefficientSeq: entries must be finite");
  }

  static CoefficientSeq zeros(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("CoefficientSeq: length must be >= 1");
    return CoefficientSeq(std::vector<cplx>(static_cast<std::size_t>(n)));
  }

  std::int64_t length() const { return static_cast<std::int64_t>(entries.size()); }

  // 1-based; anything outside [1, N] reads as zero
  cplx at(std::int64_t n) const {
    if (n < 1 || n > length()) return {0.0, 0.0};
    return entries[static_cast<std::size_t>(n - 1)];
  }
};

struct DiffSpaceSpec {
  double p = 2.0;
  int k = 0;  // k = 0 is the ambient l_p itself

  DiffSpaceSpec(double p_, int k_) : p(p_), k(k_) {
    if (!(p >= 1.0) || !std::isfinite(p))
      throw std::invalid_argument("DiffSpaceSpec: need finite p >= 1");
    if (k < 0 || k > kMaxOrder)
      throw std::invalid_argument("DiffSpaceSpec: need 0 <= k <= 62");
  }
};

namespace detail {

template <class T>
void delta_once_inplace(std::vector<T>& c) {
  // (I - T): c_n -> c_n - c_{n-1}, right-to-left so each pass is in place
  for (std::size_t n = c.size(); n-- > 1;) c[n] -= c[n - 1];
}

template <class T>
void sigma_once_inplace(std::vector<T>& c) {
  for (std::size_t n = 1; n < c.size(); ++n) c[n] += c[n - 1];
}

template <class T>
std::vector<T> delta(std::vector<T> c, int k) {
  for (int i = 0; i < k; ++i) delta_once_inplace(c);
  return c;
}

template <class T>
std::vector<T> sigma(std::vector<T> c, int k) {
  for (int i = 0; i < k; ++i) sigma_once_inplace(c);
  return c;
}

// One-shot binomial form (Delta^k c)_n = sum_j (-1)^j C(k,j) c_{n-j}.
// The streaming passes above are the production path; this exists so tests
// can cross-check them. Floating-point element types only.
template <class T>
std::vector<T> delta_binomial(const std::vector<T>& c, int k) {
  std::vector<T> out(c.size(), T{});
  for (std::size_t n = 0; n < c.size(); ++n) {
    T acc{};
    const int jmax = std::min<std::int64_t>(k, static_cast<std::int64_t>(n));
    for (int j = 0; j <= jmax; ++j) {
      const double coef = (j % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(binom(k, j));
      acc += coef * c[n - static_cast<std::size_t>(j)];
    }
    out[n] = acc;
  }
  return out;
}

}  // namespace detail

inline CoefficientSeq delta(const CoefficientSeq& c, int k) {
  if (k < 0 || k > kMaxOrder)
    throw std::invalid_argument("delta: need 0 <= k <= 62");
  return CoefficientSeq(detail::delta(c.entries, k));
}

inline CoefficientSeq sigma(const CoefficientSeq& y, int k) {
  if (k < 0 || k > kMaxOrder)
    throw std::invalid_argument("sigma: need 0 <= k <= 62");
  return CoefficientSeq(detail::sigma(y.entries, k));
}

// j >= 0: coordinate action of T^j (prepend zeros, drop the tail at N).
// j < 0: the adjoint's action on truncations (drop the head, pad the end).
inline CoefficientSeq shift(const CoefficientSeq& c, std::int64_t j) {
  const std::int64_t n = c.length();
  if (j >= n || -j >= n)
    throw std::invalid_argument("shift: need |j| < length");
  std::vector<cplx> out(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t src = i - j;
    if (src >= 0 && src < n) out[static_cast<std::size_t>(i)] = c.entries[static_cast<std::size_t>(src)];
  }
  return CoefficientSeq(std::move(out));
}

inline double lp_norm(const std::vector<cplx>& v, double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw std::invalid_argument("lp_norm: need finite p >= 1");
  detail::Kahan acc;
  if (p == 2.0) {
    for (const cplx& z : v) acc.add(std::norm(z));
    return std::sqrt(acc.value());
  }
  if (p == 1.0) {
    for (const cplx& z : v) acc.add(std::abs(z));
    return acc.value();
  }
  for (const cplx& z : v) acc.add(std::pow(std::abs(z), p));
  return std::pow(acc.value(), 1.0 / p);
}

// ||x||_{p,k} = ||Delta^k c||_p in coordinates (canonical model; basis models
// with non-orthonormal frames go through basis_model.hpp).
inline double space_norm(const CoefficientSeq& c, const DiffSpaceSpec& spec) {
  return lp_norm(detail::delta(c.entries, spec.k), spec.p);
}

}  // namespace diffseq
