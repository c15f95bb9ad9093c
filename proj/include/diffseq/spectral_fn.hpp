#pragma once

// Eigenvalue profiles lambda_n = i * f(n). The catalogue matches the families
// the experiments exercise: f = ln n (diagonal generator of a bounded group
// on the difference spaces), f = sqrt(n) (vanishing spectral gap of the same
// geometric nature, yet no generation), powers n^alpha, the very slowly
// growing ln ln sqrt(n+1), and tabulated data. Tabulated profiles never
// extrapolate: evaluation past the table is an error.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace diffseq {

class SpectralFn {
 public:
  enum class Kind { Log, Sqrt, PowerAlpha, LogLog, Table };

  static SpectralFn log_fn() { return SpectralFn(Kind::Log, 0.0, {}); }
  static SpectralFn sqrt_fn() { return SpectralFn(Kind::Sqrt, 0.0, {}); }
  static SpectralFn power(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
      throw std::invalid_argument("SpectralFn::power: need alpha > 0");
    return SpectralFn(Kind::PowerAlpha, alpha, {});
  }
  // f(n) = ln ln sqrt(n+1) = ln( ln(n+1)/2 ); defined for all n >= 1
  static SpectralFn loglog() { return SpectralFn(Kind::LogLog, 0.0, {}); }
  static SpectralFn table(std::vector<double> values) {
    if (values.empty())
      throw std::invalid_argument("SpectralFn::table: empty table");
    for (double v : values)
      if (!std::isfinite(v))
        throw std::invalid_argument("SpectralFn::table: values must be finite");
    return SpectralFn(Kind::Table, 0.0, std::move(values));
  }

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  std::int64_t table_size() const { return static_cast<std::int64_t>(values_.size()); }

  double operator()(std::int64_t n) const {
    if (n < 1) throw std::invalid_argument("SpectralFn: need n >= 1");
    switch (kind_) {
      case Kind::Log:
        return std::log(static_cast<double>(n));
      case Kind::Sqrt:
        return std::sqrt(static_cast<double>(n));
      case Kind::PowerAlpha:
        return std::pow(static_cast<double>(n), alpha_);
      case Kind::LogLog:
        return std::log(0.5 * std::log1p(static_cast<double>(n)));
      case Kind::Table:
        if (n > table_size())
          throw std::invalid_argument("SpectralFn: table has no value at n=" +
                                      std::to_string(n) + " (no extrapolation)");
        return values_[static_cast<std::size_t>(n - 1)];
    }
    throw std::logic_error("SpectralFn: bad kind");
  }

  std::string name() const {
    switch (kind_) {
      case Kind::Log: return "log";
      case Kind::Sqrt: return "sqrt";
      case Kind::PowerAlpha: return "power(" + std::to_string(alpha_) + ")";
      case Kind::LogLog: return "loglog";
      case Kind::Table: return "table[" + std::to_string(values_.size()) + "]";
    }
    return "?";
  }

 private:
  SpectralFn(Kind k, double a, std::vector<double> v)
      : kind_(k), alpha_(a), values_(std::move(v)) {}

  Kind kind_;
  double alpha_;
  std::vector<double> values_;
};

}  // namespace diffseq
