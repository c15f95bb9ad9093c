#pragma once

// Small shared helpers for the CLI: RFC-4180 CSV quoting, canonical number
// formatting (so reruns produce byte-identical tables), FNV-1a row ids, and
// the two grid syntaxes "a,b,c" and "start..stop..step".

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace cliutil {

inline std::string csv_escape(const std::string& s) {
  bool needs = false;
  for (char c : s)
    if (c == ',' || c == '"' || c == '\n' || c == '\r') needs = true;
  if (!needs) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string fmt(std::int64_t v) { return std::to_string(v); }

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string run_id(const std::string& canonical) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical)));
  return buf;
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t from = 0;
  while (true) {
    const std::size_t at = s.find(sep, from);
    if (at == std::string::npos) {
      parts.push_back(s.substr(from));
      return parts;
    }
    parts.push_back(s.substr(from, at - from));
    from = at + 1;
  }
}

inline std::vector<std::string> split_range(const std::string& s) {
  // "start..stop..step" -> 3 parts, or empty if s is not range syntax
  std::vector<std::string> parts;
  std::size_t from = 0;
  while (parts.size() < 3) {
    const std::size_t at = s.find("..", from);
    if (at == std::string::npos) {
      parts.push_back(s.substr(from));
      break;
    }
    parts.push_back(s.substr(from, at - from));
    from = at + 2;
  }
  return parts.size() == 3 ? parts : std::vector<std::string>{};
}

inline double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("grid: cannot parse number '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("grid: trailing junk in '" + s + "'");
  return v;
}

inline std::int64_t to_int(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("grid: cannot parse integer '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("grid: trailing junk in '" + s + "'");
  return v;
}

}  // namespace detail

inline std::vector<double> parse_double_grid(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("grid: empty specification");
  const auto range = detail::split_range(s);
  std::vector<double> out;
  if (!range.empty()) {
    const double start = detail::to_double(range[0]);
    const double stop = detail::to_double(range[1]);
    const double step = detail::to_double(range[2]);
    if (!(step > 0.0)) throw std::invalid_argument("grid: step must be positive");
    if (stop < start) throw std::invalid_argument("grid: stop below start");
    for (double v = start; v <= stop + step * 1e-9; v += step) out.push_back(v);
    return out;
  }
  for (const std::string& part : detail::split(s, ','))
    out.push_back(detail::to_double(part));
  return out;
}

inline std::vector<std::int64_t> parse_int_grid(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("grid: empty specification");
  const auto range = detail::split_range(s);
  std::vector<std::int64_t> out;
  if (!range.empty()) {
    const std::int64_t start = detail::to_int(range[0]);
    const std::int64_t stop = detail::to_int(range[1]);
    const std::int64_t step = detail::to_int(range[2]);
    if (step < 1) throw std::invalid_argument("grid: step must be >= 1");
    if (stop < start) throw std::invalid_argument("grid: stop below start");
    for (std::int64_t v = start; v <= stop; v += step) out.push_back(v);
    return out;
  }
  for (const std::string& part : detail::split(s, ','))
    out.push_back(detail::to_int(part));
  return out;
}

// CSV table accumulated in memory, then flushed whole — keeps partial writes
// off disk and makes the byte-determinism contract easy to honor.
class CsvTable {
 public:
  void header(const std::vector<std::string>& cols) { append(cols); }
  void row(const std::vector<std::string>& cells) { append(cells); }
  const std::string& text() const { return buf_; }
  std::size_t rows() const { return rows_ == 0 ? 0 : rows_ - 1; }  // minus header

 private:
  void append(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) buf_ += ',';
      buf_ += csv_escape(cells[i]);
    }
    buf_ += '\n';
    ++rows_;
  }
  std::string buf_;
  std::size_t rows_ = 0;
};

}  // namespace cliutil
