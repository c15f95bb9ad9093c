// diffseq-lab: command-line front end for the difference-space laboratory.
//
// Subcommands: hardy, norms, nonbasis, group, spectrum, report-all.
// Every run writes one CSV table (stdout, or <out>/<command>.csv) plus a JSON
// summary echoing the fully resolved configuration.  Outputs carry no
// timestamps or environment data, so a repeated run with the same arguments
// is byte-identical.
//
// Exit codes: 0 success, 2 invalid arguments/config, 3 a requested bound did
// not converge (the enclosure is still written).  report-all: 1 when at least
// one acceptance criterion fails.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cli_util.hpp"
#include "diffseq/acceptance.hpp"
#include "diffseq/group.hpp"
#include "diffseq/hardy.hpp"
#include "diffseq/nonbasis.hpp"
#include "diffseq/spectrum.hpp"

namespace {

using cliutil::CsvTable;
using cliutil::fmt;
using nlohmann::json;

struct Common {
  std::string out;
  std::string config_path;
  int workers = 0;
};

// All subcommand parameters live in one string-valued map: flag defaults,
// command-line values, and config-file values share a single representation,
// which keeps the merge rule ("config fills in whatever flags left alone")
// and the summary echo trivial.
struct ParamSet {
  CLI::App* cmd = nullptr;
  std::vector<std::string> order;
  std::map<std::string, std::string> values;

  void add(const std::string& key, const std::string& def, const std::string& desc) {
    order.push_back(key);
    auto it = values.emplace(key, def).first;
    cmd->add_option("--" + key, it->second, desc + " [" + def + "]");
  }
  bool given(const std::string& key) const { return cmd->count("--" + key) > 0; }

  std::string str(const std::string& key) const { return values.at(key); }
  double num(const std::string& key) const {
    return cliutil::detail::to_double(values.at(key));
  }
  std::int64_t integer(const std::string& key) const {
    return cliutil::detail::to_int(values.at(key));
  }
  std::vector<double> dgrid(const std::string& key) const {
    return cliutil::parse_double_grid(values.at(key));
  }
  std::vector<std::int64_t> igrid(const std::string& key) const {
    return cliutil::parse_int_grid(values.at(key));
  }
};

std::string json_scalar_to_string(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number()) return fmt(v.get<double>());
  throw std::invalid_argument("config: parameter values must be scalars");
}

// Merge a config file under the explicitly given flags.  Strict: unknown
// parameter names and unknown top-level keys are rejected outright.
void merge_config(const std::string& path, ParamSet& ps) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  json root;
  try {
    in >> root;
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config: parse error: ") + e.what());
  }
  if (!root.is_object()) throw std::invalid_argument("config: root must be an object");
  for (const auto& item : root.items()) {
    const std::string& key = item.key();
    if (key != "schema_version" && key != "command" && key != "params")
      throw std::invalid_argument("config: unknown top-level key '" + key + "'");
  }
  if (!root.contains("schema_version") || root["schema_version"] != 1)
    throw std::invalid_argument("config: schema_version must be present and equal to 1");
  if (root.contains("command") && root["command"] != ps.cmd->get_name())
    throw std::invalid_argument("config: command '" + root["command"].get<std::string>() +
                                "' does not match invoked subcommand '" +
                                ps.cmd->get_name() + "'");
  if (!root.contains("params")) return;
  const json& params = root["params"];
  if (!params.is_object()) throw std::invalid_argument("config: params must be an object");
  for (const auto& item : params.items()) {
    const std::string& key = item.key();
    if (!ps.values.count(key))
      throw std::invalid_argument("config: unknown parameter '" + key + "' for command '" +
                                  ps.cmd->get_name() + "'");
    if (!ps.given(key)) ps.values[key] = json_scalar_to_string(item.value());
  }
}

json echo_config(const ParamSet& ps, const Common& common) {
  json cfg;
  for (const std::string& key : ps.order) cfg[key] = ps.values.at(key);
  cfg["out"] = common.out;
  cfg["workers"] = common.workers;
  return cfg;
}

// Write the table and summary.  With --out both become files in the
// directory; without it the table goes to stdout and the summary to stderr
// so the data stream stays clean.
void deliver(const Common& common, const std::string& command, const CsvTable& table,
             const json& summary) {
  if (common.out.empty()) {
    std::fputs(table.text().c_str(), stdout);
    std::fputs((summary.dump(2) + "\n").c_str(), stderr);
    return;
  }
  std::error_code ec;
  std::filesystem::create_directories(common.out, ec);
  if (ec)
    throw std::invalid_argument("out: cannot create directory '" + common.out + "': " +
                                ec.message());
  const auto csv_path = std::filesystem::path(common.out) / (command + ".csv");
  const auto json_path = std::filesystem::path(common.out) / "summary.json";
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw std::invalid_argument("out: cannot write '" + csv_path.string() + "'");
  csv << table.text();
  std::ofstream js(json_path, std::ios::binary);
  if (!js) throw std::invalid_argument("out: cannot write '" + json_path.string() + "'");
  js << summary.dump(2) << "\n";
  std::fprintf(stderr, "wrote %s and %s\n", csv_path.string().c_str(),
               json_path.string().c_str());
}

diffseq::SpectralFn make_fn(const std::string& name, double alpha) {
  if (name == "log") return diffseq::SpectralFn::log_fn();
  if (name == "sqrt") return diffseq::SpectralFn::sqrt_fn();
  if (name == "loglog") return diffseq::SpectralFn::loglog();
  if (name == "power") return diffseq::SpectralFn::power(alpha);
  throw std::invalid_argument("unknown spectral function '" + name +
                              "' (expected log, sqrt, loglog, power)");
}

std::string rid(std::initializer_list<std::string> parts) {
  std::string canon;
  for (const std::string& p : parts) {
    if (!canon.empty()) canon += '|';
    canon += p;
  }
  return cliutil::run_id(canon);
}

// ---------------------------------------------------------------- hardy ----

int run_hardy(const ParamSet& ps, const Common& common) {
  const double p = ps.num("p");
  const std::string family = ps.str("family");
  const std::int64_t N = ps.integer("N");
  CsvTable table;
  table.header({"run_id", "family", "p", "eps", "N", "index", "lhs", "rhs", "ratio"});
  double max_ratio = 0.0, min_ratio = 1.0;

  if (family == "near-extremal") {
    const std::vector<double> eps_grid = ps.dgrid("eps");
    const auto reports = diffseq::hardy_sharpness_sweep(p, eps_grid, N);
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      table.row({rid({"hardy", "near-extremal", "p=" + fmt(p), "eps=" + fmt(eps_grid[i]),
                      "N=" + fmt(N)}),
                 family, fmt(p), fmt(eps_grid[i]), fmt(N), std::to_string(i), fmt(r.lhs),
                 fmt(r.rhs), fmt(r.ratio)});
      max_ratio = std::max(max_ratio, r.ratio);
      min_ratio = std::min(min_ratio, r.ratio);
    }
  } else if (family == "random") {
    const std::int64_t count = ps.integer("count");
    const std::uint64_t seed = static_cast<std::uint64_t>(ps.integer("seed"));
    if (count < 1) throw std::invalid_argument("hardy: count must be >= 1");
    if (N < 1) throw std::invalid_argument("hardy: N must be >= 1");
    std::vector<std::int64_t> indices(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) indices[static_cast<std::size_t>(i)] = i;
    const auto reports = diffseq::detail::parallel_map(
        indices, [&](std::int64_t i) {
          diffseq::detail::Rng rng(seed + static_cast<std::uint64_t>(i));
          std::vector<double> a(static_cast<std::size_t>(N));
          for (auto& v : a) v = rng.uniform();
          return diffseq::hardy_sides(a, p);
        });
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      table.row({rid({"hardy", "random", "p=" + fmt(p), "N=" + fmt(N),
                      "seed=" + fmt(static_cast<std::int64_t>(seed)),
                      "index=" + std::to_string(i)}),
                 family, fmt(p), "", fmt(N), std::to_string(i), fmt(r.lhs), fmt(r.rhs),
                 fmt(r.ratio)});
      max_ratio = std::max(max_ratio, r.ratio);
      min_ratio = std::min(min_ratio, r.ratio);
    }
  } else {
    throw std::invalid_argument("hardy: family must be 'random' or 'near-extremal'");
  }

  json summary;
  summary["schema_version"] = 1;
  summary["command"] = "hardy";
  summary["config"] = echo_config(ps, common);
  summary["rows"] = table.rows();
  summary["max_ratio"] = max_ratio;
  summary["min_ratio"] = min_ratio;
  summary["all_ratios_below_one"] = max_ratio <= 1.0;
  deliver(common, "hardy", table, summary);
  return 0;
}

// ---------------------------------------------------------------- norms ----

int run_norms(const ParamSet& ps, const Common& common) {
  const std::string op = ps.str("op");
  const double p = ps.num("p");
  const std::vector<std::int64_t> N_grid = ps.igrid("N");
  CsvTable table;
  table.header({"run_id", "op", "f", "k", "p", "N", "t", "lower", "upper", "converged"});
  bool all_converged = true;
  double max_upper = 0.0;

  auto push = [&](const std::string& fname, const std::string& kcol, std::int64_t N,
                  const std::string& tcol, const diffseq::NormBounds& nb) {
    table.row({rid({"norms", "op=" + op, "f=" + fname, "k=" + kcol, "p=" + fmt(p),
                    "N=" + fmt(N), "t=" + tcol}),
               op, fname, kcol, fmt(p), fmt(N), tcol, fmt(nb.lower), fmt(nb.upper),
               nb.converged ? "true" : "false"});
    all_converged = all_converged && nb.converged;
    max_upper = std::max(max_upper, nb.upper);
  };

  if (op == "group") {
    const int k = static_cast<int>(ps.integer("k"));
    const auto f = make_fn(ps.str("f"), ps.num("alpha"));
    const auto curve = diffseq::group_norm_curve(f, diffseq::DiffSpaceSpec(p, k), N_grid,
                                                 ps.dgrid("t"));
    for (const auto& r : curve.rows)
      push(curve.f, std::to_string(k), r.N, fmt(r.t),
           diffseq::NormBounds{r.lower, r.upper, r.converged});
  } else if (op == "cesaro") {
    for (std::int64_t N : N_grid)
      push("", "", N, "", diffseq::section_norm(diffseq::cesaro_rate_section(p, N), p));
  } else if (op == "all-ones") {
    for (std::int64_t N : N_grid)
      push("", "", N, "", diffseq::section_norm(diffseq::OperatorSection::all_ones(N), p));
  } else {
    throw std::invalid_argument("norms: op must be 'group', 'cesaro' or 'all-ones'");
  }

  json summary;
  summary["schema_version"] = 1;
  summary["command"] = "norms";
  summary["config"] = echo_config(ps, common);
  summary["rows"] = table.rows();
  summary["all_converged"] = all_converged;
  summary["max_upper"] = max_upper;
  deliver(common, "norms", table, summary);
  return all_converged ? 0 : 3;
}

// -------------------------------------------------------------- nonbasis ----

int run_nonbasis(const ParamSet& ps, const Common& common) {
  const std::string what = ps.str("what");
  const int k = static_cast<int>(ps.integer("k"));
  const double p = ps.num("p");
  const auto model = diffseq::BasisModel::orthonormal();
  CsvTable table;
  json summary;
  summary["schema_version"] = 1;
  summary["command"] = "nonbasis";

  if (what == "projection") {
    const std::vector<std::int64_t> Nproj_grid = ps.igrid("Nproj");
    const std::int64_t Nsec_opt = ps.integer("Nsec");
    table.header({"run_id", "what", "k", "p", "Nproj", "Nsec", "value"});
    double max_value = 0.0;
    const auto rows = diffseq::detail::parallel_map(Nproj_grid, [&](std::int64_t Nproj) {
      const std::int64_t Nsec = Nsec_opt > 0 ? Nsec_opt : Nproj + k;
      return std::pair<std::int64_t, double>(
          Nsec, diffseq::projection_norm(Nproj, diffseq::DiffSpaceSpec(p, k), model, Nsec));
    });
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::int64_t Nproj = Nproj_grid[i];
      table.row({rid({"nonbasis", "projection", "k=" + std::to_string(k), "p=" + fmt(p),
                      "Nproj=" + fmt(Nproj), "Nsec=" + fmt(rows[i].first)}),
                 what, std::to_string(k), fmt(p), fmt(Nproj), fmt(rows[i].first),
                 fmt(rows[i].second)});
      max_value = std::max(max_value, rows[i].second);
    }
    summary["max_value"] = max_value;
    summary["unbounded_trend"] = rows.size() >= 2 && rows.back().second > rows.front().second;
  } else if (what == "minimality") {
    const std::int64_t N = ps.integer("N");
    const auto rep = diffseq::uniform_minimality(k, model, N);
    table.header({"run_id", "what", "k", "n", "phi_norm", "psi_norm", "product"});
    double max_product = 0.0;
    for (std::size_t i = 0; i < rep.n_grid.size(); ++i) {
      table.row({rid({"nonbasis", "minimality", "k=" + std::to_string(k),
                      "N=" + fmt(N), "n=" + fmt(rep.n_grid[i])}),
                 what, std::to_string(k), fmt(rep.n_grid[i]), fmt(rep.phi_norms[i]),
                 fmt(rep.psi_norms[i]), fmt(rep.products[i])});
      max_product = std::max(max_product, rep.products[i]);
    }
    summary["model_kind"] = rep.model_kind;
    summary["max_product"] = max_product;
  } else if (what == "expansion") {
    const std::int64_t N = ps.integer("N");
    const auto h = diffseq::expansion_divergence(k, N);
    table.header({"run_id", "what", "k", "n", "coefficient"});
    // log-spaced subsample plus the endpoint; the full array would be huge
    std::vector<std::int64_t> marks;
    for (double x = 1.0; x < static_cast<double>(N); x *= 1.12) {
      const auto n = static_cast<std::int64_t>(x);
      if (marks.empty() || n > marks.back()) marks.push_back(n);
    }
    if (marks.empty() || marks.back() != N) marks.push_back(N);
    for (std::int64_t n : marks)
      table.row({rid({"nonbasis", "expansion", "k=" + std::to_string(k), "N=" + fmt(N),
                      "n=" + fmt(n)}),
                 what, std::to_string(k), fmt(n), fmt(h[static_cast<std::size_t>(n - 1)])});
    summary["final_coefficient"] = h.back();
  } else if (what == "closure") {
    const auto gaps = diffseq::closure_gap_demo(k, ps.igrid("m"));
    table.header({"run_id", "what", "k", "m", "gap"});
    for (const auto& [m, gap] : gaps)
      table.row({rid({"nonbasis", "closure", "k=" + std::to_string(k), "m=" + fmt(m)}),
                 what, std::to_string(k), fmt(m), fmt(gap)});
    summary["min_gap"] = gaps.back().second;
  } else {
    throw std::invalid_argument(
        "nonbasis: what must be 'projection', 'minimality', 'expansion' or 'closure'");
  }

  summary["config"] = echo_config(ps, common);
  summary["rows"] = table.rows();
  deliver(common, "nonbasis", table, summary);
  return 0;
}

// ---------------------------------------------------------------- group ----

int run_group(const ParamSet& ps, const Common& common) {
  const int k = static_cast<int>(ps.integer("k"));
  const double p = ps.num("p");
  const auto f = make_fn(ps.str("f"), ps.num("alpha"));
  const std::vector<std::int64_t> N_grid = ps.igrid("N");
  const std::vector<double> t_grid = ps.dgrid("t");
  const auto curve =
      diffseq::group_norm_curve(f, diffseq::DiffSpaceSpec(p, k), N_grid, t_grid);

  CsvTable table;
  table.header({"run_id", "f", "k", "p", "N", "t", "lower", "upper", "converged"});
  bool all_converged = true;
  for (const auto& r : curve.rows) {
    table.row({rid({"group", "f=" + curve.f, "k=" + std::to_string(k), "p=" + fmt(p),
                    "N=" + fmt(r.N), "t=" + fmt(r.t)}),
               curve.f, std::to_string(k), fmt(p), fmt(r.N), fmt(r.t), fmt(r.lower),
               fmt(r.upper), r.converged ? "true" : "false"});
    all_converged = all_converged && r.converged;
  }

  // Classify each t-column of the curve: does the norm settle as the section
  // grows, or does every enlargement still add at least 10%?
  json verdicts = json::object();
  for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
    std::vector<double> uppers;
    for (std::size_t ni = 0; ni < N_grid.size(); ++ni)
      uppers.push_back(curve.rows[ni * t_grid.size() + ti].upper);
    std::string verdict;
    if (uppers.size() < 2) {
      verdict = "insufficient-data";
    } else {
      bool all_big = true;
      for (std::size_t i = 1; i < uppers.size(); ++i)
        if (!(uppers[i] >= 1.10 * uppers[i - 1])) all_big = false;
      const double last_step = uppers.back() / uppers[uppers.size() - 2] - 1.0;
      if (last_step < 0.02) verdict = "plateau-consistent";
      else if (all_big) verdict = "growing";
      else verdict = "inconclusive";
    }
    verdicts[fmt(t_grid[ti])] = verdict;
  }

  json summary;
  summary["schema_version"] = 1;
  summary["command"] = "group";
  summary["config"] = echo_config(ps, common);
  summary["rows"] = table.rows();
  summary["all_converged"] = all_converged;
  summary["verdict_per_t"] = verdicts;

  if (ps.str("growth") == "estimate") {
    const std::int64_t maxN = *std::max_element(N_grid.begin(), N_grid.end());
    const auto rep = diffseq::growth_bound_estimate(f, diffseq::DiffSpaceSpec(p, k), maxN,
                                                    diffseq::default_growth_grid());
    summary["growth_estimate"] = rep.estimate;
    json samples = json::array();
    for (const auto& s : rep.samples)
      samples.push_back({{"t", s.t}, {"upper", s.upper}});
    summary["growth_samples"] = samples;
  } else if (ps.str("growth") != "none") {
    throw std::invalid_argument("group: growth must be 'none' or 'estimate'");
  }

  deliver(common, "group", table, summary);
  return all_converged ? 0 : 3;
}

// -------------------------------------------------------------- spectrum ----

int run_spectrum(const ParamSet& ps, const Common& common) {
  const std::string what = ps.str("what");
  const std::string fname = ps.str("f");
  const auto f = make_fn(fname, ps.num("alpha"));
  const std::int64_t n_max = ps.integer("n-max");
  CsvTable table;
  json summary;
  summary["schema_version"] = 1;
  summary["command"] = "spectrum";

  if (what == "gap") {
    const double g = diffseq::uniform_gap(f, n_max);
    table.header({"run_id", "what", "f", "n_max", "value"});
    table.row({rid({"spectrum", "gap", "f=" + fname, "n_max=" + fmt(n_max)}), what, fname,
               fmt(n_max), fmt(g)});
    summary["gap"] = g;
    summary["separated"] = g > 0.0;
  } else if (what == "decompose") {
    const int K = static_cast<int>(ps.integer("K"));
    const double delta = ps.num("delta");
    const auto rep = diffseq::k_decompose(f, K, delta, n_max);
    table.header(
        {"run_id", "what", "f", "n_max", "K", "delta", "class", "class_gap", "feasible"});
    for (std::size_t c = 0; c < rep.per_class_gaps.size(); ++c)
      table.row({rid({"spectrum", "decompose", "f=" + fname, "n_max=" + fmt(n_max),
                      "K=" + std::to_string(K), "delta=" + fmt(delta),
                      "class=" + std::to_string(c)}),
                 what, fname, fmt(n_max), std::to_string(K), fmt(delta), std::to_string(c),
                 fmt(rep.per_class_gaps[c]), rep.feasible ? "true" : "false"});
    summary["inf_gap"] = rep.inf_gap;
    summary["window_inf"] = rep.window_inf;
    summary["feasible"] = rep.feasible;
  } else if (what == "membership") {
    const int k = static_cast<int>(ps.integer("k"));
    const auto rep = diffseq::sk_membership(f, k, n_max);
    table.header({"run_id", "what", "f", "k", "j", "n", "beta"});
    for (std::size_t ji = 0; ji < rep.j_values.size(); ++ji)
      for (const auto& [n, beta] : rep.beta_table[ji])
        table.row({rid({"spectrum", "membership", "f=" + fname, "k=" + std::to_string(k),
                        "n_max=" + fmt(n_max), "j=" + std::to_string(rep.j_values[ji]),
                        "n=" + fmt(n)}),
                   what, fname, std::to_string(k), std::to_string(rep.j_values[ji]), fmt(n),
                   fmt(beta)});
    summary["verdict"] = rep.verdict;
    summary["tail_sup"] = rep.tail_sup;
    summary["prev_sup"] = rep.prev_sup;
  } else if (what == "geometry") {
    const auto rep = diffseq::geometric_condition(f, n_max);
    table.header({"run_id", "what", "f", "n_max", "tends_up", "steps_vanish", "max_step"});
    table.row({rid({"spectrum", "geometry", "f=" + fname, "n_max=" + fmt(n_max)}), what,
               fname, fmt(n_max), rep.tends_up ? "true" : "false",
               rep.steps_vanish ? "true" : "false", fmt(rep.max_step)});
    summary["tends_up"] = rep.tends_up;
    summary["steps_vanish"] = rep.steps_vanish;
    summary["max_step"] = rep.max_step;
  } else if (what == "rate") {
    const double p = ps.num("p");
    const double v = diffseq::rate_check(f, p, n_max);
    table.header({"run_id", "what", "f", "p", "n_max", "value"});
    table.row({rid({"spectrum", "rate", "f=" + fname, "p=" + fmt(p), "n_max=" + fmt(n_max)}),
               what, fname, fmt(p), fmt(n_max), fmt(v)});
    summary["tail_inf"] = v;
  } else {
    throw std::invalid_argument(
        "spectrum: what must be 'gap', 'decompose', 'membership', 'geometry' or 'rate'");
  }

  summary["config"] = echo_config(ps, common);
  summary["rows"] = table.rows();
  deliver(common, "spectrum", table, summary);
  return 0;
}

// ------------------------------------------------------------- report-all ----

int run_report_all(const ParamSet& ps, const Common& common) {
  (void)ps;
  if (common.out.empty())
    throw std::invalid_argument("report-all: --out DIR is required and must be non-empty");
  const auto results = diffseq::acceptance::run_all();

  CsvTable table;
  table.header({"run_id", "criterion", "check", "measured", "target", "ok"});
  json criteria = json::array();
  std::vector<int> failed;
  for (const auto& r : results) {
    json checks = json::array();
    for (const auto& c : r.checks) {
      table.row({rid({"report-all", "criterion=" + std::to_string(r.id), "check=" + c.name}),
                 std::to_string(r.id), c.name, fmt(c.measured), c.target,
                 c.ok ? "true" : "false"});
      checks.push_back(
          {{"name", c.name}, {"measured", c.measured}, {"target", c.target}, {"ok", c.ok}});
    }
    criteria.push_back({{"id", r.id},
                        {"title", r.title},
                        {"pass", r.pass},
                        {"checks", checks},
                        {"notes", r.notes}});
    if (!r.pass) failed.push_back(r.id);
  }

  json manifest;
  manifest["schema_version"] = 1;
  manifest["command"] = "report-all";
  manifest["config"] = echo_config(ps, common);
  manifest["criteria"] = criteria;
  manifest["pass_count"] = results.size() - failed.size();
  manifest["fail_count"] = failed.size();
  manifest["failed"] = failed;

  std::error_code ec;
  std::filesystem::create_directories(common.out, ec);
  if (ec)
    throw std::invalid_argument("out: cannot create directory '" + common.out + "': " +
                                ec.message());
  const auto csv_path = std::filesystem::path(common.out) / "report-all.csv";
  const auto json_path = std::filesystem::path(common.out) / "manifest.json";
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw std::invalid_argument("out: cannot write '" + csv_path.string() + "'");
  csv << table.text();
  std::ofstream js(json_path, std::ios::binary);
  if (!js) throw std::invalid_argument("out: cannot write '" + json_path.string() + "'");
  js << manifest.dump(2) << "\n";
  std::fprintf(stderr, "%zu of %zu criteria passed\n", results.size() - failed.size(),
               results.size());
  return failed.empty() ? 0 : 1;
}

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--out", common.out,
                  "output directory (<command>.csv + summary.json); stdout if omitted");
  cmd->add_option("--config", common.config_path,
                  "JSON config file merged under explicitly given flags");
  cmd->add_option("--workers", common.workers, "worker thread count (0 = automatic)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diffseq-lab: finite-section experiments in difference sequence spaces"};
  app.require_subcommand(1);

  Common common;
  std::map<std::string, ParamSet> params;
  std::map<std::string, int (*)(const ParamSet&, const Common&)> handlers;

  auto make_cmd = [&](const std::string& name, const std::string& desc,
                      int (*handler)(const ParamSet&, const Common&)) -> ParamSet& {
    CLI::App* cmd = app.add_subcommand(name, desc);
    add_common(cmd, common);
    ParamSet& ps = params[name];
    ps.cmd = cmd;
    handlers[name] = handler;
    return ps;
  };

  {
    ParamSet& ps = make_cmd("hardy", "averaging-operator inequality experiments", run_hardy);
    ps.add("p", "2", "exponent p > 1");
    ps.add("family", "near-extremal", "test family: random | near-extremal");
    ps.add("eps", "0.01", "epsilon grid for the near-extremal family");
    ps.add("N", "1000000", "truncation length");
    ps.add("count", "100", "number of random samples");
    ps.add("seed", "42", "base seed for the random family");
  }
  {
    ParamSet& ps = make_cmd("norms", "operator section norm enclosures", run_norms);
    ps.add("op", "group", "operator: group | cesaro | all-ones");
    ps.add("f", "log", "spectral function for op=group");
    ps.add("alpha", "0.5", "exponent for f=power");
    ps.add("k", "1", "difference order");
    ps.add("p", "2", "space exponent");
    ps.add("N", "128,256,512", "section size grid");
    ps.add("t", "1", "time grid for op=group");
  }
  {
    ParamSet& ps = make_cmd("nonbasis", "coordinate-system pathology measurements",
                            run_nonbasis);
    ps.add("what", "projection", "projection | minimality | expansion | closure");
    ps.add("k", "1", "difference order");
    ps.add("p", "2", "space exponent");
    ps.add("Nproj", "3,10,99,999", "projection cutoff grid");
    ps.add("Nsec", "0", "ambient section size (0 = cutoff + k)");
    ps.add("N", "10000", "length for minimality/expansion scans");
    ps.add("m", "2,4,8,16,32,64", "ramp start grid for closure");
  }
  {
    ParamSet& ps = make_cmd("group", "diagonal-group norm curves and growth", run_group);
    ps.add("f", "log", "spectral function: log | sqrt | loglog | power");
    ps.add("alpha", "0.5", "exponent for f=power");
    ps.add("k", "1", "difference order");
    ps.add("p", "2", "space exponent");
    ps.add("N", "128,256,512,1024", "section size grid");
    ps.add("t", "1", "time grid");
    ps.add("growth", "none", "growth bound sampling: none | estimate");
  }
  {
    ParamSet& ps = make_cmd("spectrum", "eigenvalue sequence diagnostics", run_spectrum);
    ps.add("what", "gap", "gap | decompose | membership | geometry | rate");
    ps.add("f", "log", "spectral function: log | sqrt | loglog | power");
    ps.add("alpha", "0.5", "exponent for f=power");
    ps.add("k", "1", "difference/membership order");
    ps.add("K", "5", "number of classes for decompose");
    ps.add("delta", "0.01", "required per-class gap");
    ps.add("n-max", "10000", "scan length");
    ps.add("p", "2", "exponent for rate");
  }
  {
    ParamSet& ps = make_cmd("report-all", "run the full acceptance battery", run_report_all);
    (void)ps;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  try {
    for (auto& [name, ps] : params) {
      if (!ps.cmd->parsed()) continue;
      if (!common.config_path.empty()) merge_config(common.config_path, ps);
      if (common.workers < 0) throw std::invalid_argument("workers must be >= 0");
      if (common.workers > 0) {
        const std::string w = std::to_string(common.workers);
        setenv("DIFFSEQ_WORKERS", w.c_str(), 1);
      }
      return handlers[name](ps, common);
    }
    std::fprintf(stderr, "error: no subcommand given\n");
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::logic_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
