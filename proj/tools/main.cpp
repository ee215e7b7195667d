// Command-line front end: every analysis as a reproducible batch run with a
// machine-readable report. Exit codes: 0 success, 2 usage/domain error,
// 3 internal numeric failure.

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "infostab/analysis.hpp"
#include "infostab/defect.hpp"
#include "infostab/domain.hpp"
#include "infostab/measures.hpp"
#include "infostab/recursive.hpp"
#include "infostab/version.hpp"

using json = nlohmann::ordered_json;
using namespace infostab;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 42;
  std::string json_path;
  std::string csv_path;
  bool quiet = false;
};

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json make_manifest(const std::string& command, json config, std::uint64_t seed) {
  return json{{"command", command},
              {"config", std::move(config)},
              {"seed", seed},
              {"tool_version", kVersion},
              {"timestamp", iso8601_utc_now()}};
}

void emit_report(const GlobalOpts& global, const std::string& command, json config,
                 json result) {
  if (global.json_path.empty()) return;
  json report{{"manifest", make_manifest(command, std::move(config), global.seed)},
              {"result", std::move(result)}};
  std::ofstream out(global.json_path);
  if (!out) throw DomainViolation("cannot open JSON output path: " + global.json_path);
  out << report.dump(2) << "\n";
}

void emit_csv(const GlobalOpts& global, const std::string& contents) {
  if (global.csv_path.empty()) return;
  std::ofstream out(global.csv_path);
  if (!out) throw DomainViolation("cannot open CSV output path: " + global.csv_path);
  out << contents;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      values.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DomainViolation(std::string(what) + ": cannot parse number '" + item + "'");
    }
  }
  if (values.empty()) throw DomainViolation(std::string(what) + ": empty list");
  return values;
}

EvaluableFunction load_sampled(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainViolation("sampled: cannot open file " + path);
  std::string line;
  if (!std::getline(in, line)) throw DomainViolation("sampled: empty file " + path);
  // First line is the "x,value" header.
  std::vector<double> xs, ys;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw DomainViolation("sampled: malformed row '" + line + "'");
    try {
      xs.push_back(std::stod(line.substr(0, comma)));
      ys.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw DomainViolation("sampled: malformed row '" + line + "'");
    }
  }
  return EvaluableFunction::sampled(std::move(xs), std::move(ys));
}

// Function spec mini-grammar:
//   family:c,d
//   family:c,d:+<amp>sin          (shorthand for one first-coefficient term)
//   perturbed:c,d:t1,t2,...
//   sampled:<path>
EvaluableFunction parse_function_spec(const std::string& spec, Alpha alpha) {
  const auto first = spec.find(':');
  const std::string kind = spec.substr(0, first);
  if (kind == "sampled") {
    if (first == std::string::npos) throw DomainViolation("sampled: missing path");
    return load_sampled(spec.substr(first + 1));
  }
  if (kind != "family" && kind != "perturbed")
    throw DomainViolation("unknown function spec '" + spec + "'");
  if (first == std::string::npos)
    throw DomainViolation("function spec '" + spec + "' is missing parameters");
  const std::string rest = spec.substr(first + 1);
  const auto second = rest.find(':');
  const std::vector<double> cd = parse_double_list(rest.substr(0, second), "function spec");
  if (cd.size() != 2) throw DomainViolation("function spec: expected exactly c,d");
  const SolutionParams params{cd[0], cd[1]};
  if (second == std::string::npos) {
    if (kind == "perturbed") throw DomainViolation("perturbed: missing coefficient list");
    return EvaluableFunction::family(params, alpha);
  }
  const std::string tail = rest.substr(second + 1);
  if (kind == "perturbed")
    return EvaluableFunction::perturbed(params, alpha, parse_double_list(tail, "perturbed"));
  // family with "+<amp>sin" suffix
  if (tail.size() > 4 && tail.front() == '+' && tail.ends_with("sin")) {
    const std::string amp = tail.substr(1, tail.size() - 4);
    return EvaluableFunction::perturbed(params, alpha,
                                        {parse_double_list(amp, "perturbation amplitude")[0]});
  }
  throw DomainViolation("function spec: unrecognized perturbation suffix '" + tail + "'");
}

int run_entropy(const GlobalOpts& global, double alpha_value, const std::string& p_list,
                int uniform_n, std::optional<double> a, std::optional<double> b) {
  const Alpha alpha(alpha_value);
  std::vector<double> coords;
  if (uniform_n > 0) {
    coords.assign(static_cast<std::size_t>(uniform_n), 1.0 / uniform_n);
  } else if (!p_list.empty()) {
    coords = parse_double_list(p_list, "--p");
  } else {
    throw DomainViolation("entropy: provide --p or --uniform");
  }
  const SimplexPoint p(coords);
  const double h = entropy_alpha(alpha, p);

  json result{{"n", p.size()}, {"alpha", alpha_value}, {"entropy", h}};
  std::optional<double> jval;
  if (a && b) {
    jval = eval_J(JParams{*a, *b}, alpha, p);
    result["a"] = *a;
    result["b"] = *b;
    result["j_value"] = *jval;
  }
  if (!global.quiet) {
    std::cout << fmt17(h) << "\n";
    if (jval) std::cout << fmt17(*jval) << "\n";
  }
  json config{{"alpha", alpha_value}, {"p", p.coords()}, {"uniform", uniform_n}};
  emit_report(global, "entropy", std::move(config), std::move(result));
  return 0;
}

int run_defect(const GlobalOpts& global, double alpha_value, const std::string& fn_spec,
               int m, double h, bool per_point) {
  const Alpha alpha(alpha_value);
  const EvaluableFunction f = parse_function_spec(fn_spec, alpha);
  const GridSpec spec(m, h);
  const DefectReport report = fe_defect_sup(f, alpha, spec, per_point || !global.csv_path.empty());

  json result{{"sup_defect", report.sup_defect},
              {"mean_defect", report.mean_defect},
              {"sup_rel_defect", report.sup_rel_defect},
              {"argmax", {{"x", report.argmax.x()}, {"y", report.argmax.y()}}},
              {"n_points", report.n_points},
              {"m", spec.resolution},
              {"h", spec.margin},
              {"extrapolated", report.extrapolated}};
  if (!global.quiet) {
    std::cout << "sup_defect " << fmt17(report.sup_defect) << "\n"
              << "mean_defect " << fmt17(report.mean_defect) << "\n"
              << "argmax " << fmt17(report.argmax.x()) << "," << fmt17(report.argmax.y())
              << "\n";
  }
  if (!global.csv_path.empty() && report.per_point) {
    std::ostringstream csv;
    csv << "x,y,defect,local_scale\n";
    for (const PerPointRecord& rec : *report.per_point)
      csv << fmt17(rec.point.x()) << "," << fmt17(rec.point.y()) << "," << fmt17(rec.defect)
          << "," << fmt17(rec.local_scale) << "\n";
    emit_csv(global, csv.str());
  }
  json config{{"alpha", alpha_value}, {"fn", fn_spec}, {"m", m}, {"h", h}};
  emit_report(global, "defect", std::move(config), std::move(result));
  return 0;
}

int run_probe(const GlobalOpts& global, double alpha_value, double delta,
              const std::string& base_list, const std::string& margins_list,
              const std::string& g_coeffs, int m) {
  const Alpha alpha(alpha_value);
  const std::vector<double> cd = parse_double_list(base_list, "--base");
  if (cd.size() != 2) throw DomainViolation("--base: expected c,d");
  const std::vector<double> margins = parse_double_list(margins_list, "--margins");
  const std::vector<double> coeffs = parse_double_list(g_coeffs, "--g-coeffs");
  const EvaluableFunction g =
      EvaluableFunction::perturbed(SolutionParams{0.0, 0.0}, alpha, coeffs);
  const ScalingTable table =
      scaling_exponent(SolutionParams{cd[0], cd[1]}, g, delta, alpha, margins, m);

  json rows = json::array();
  std::ostringstream csv;
  csv << "h,sup_defect\n";
  for (const auto& [h, sup] : table.table) {
    rows.push_back({{"h", h}, {"sup_defect", sup}});
    csv << fmt17(h) << "," << fmt17(sup) << "\n";
  }
  csv << "slope," << fmt17(table.slope) << "\n";
  if (!global.quiet) std::cout << csv.str();
  emit_csv(global, csv.str());

  json config{{"alpha", alpha_value}, {"delta", delta},      {"base", cd},
              {"margins", margins},   {"g_coeffs", coeffs},  {"m", m}};
  emit_report(global, "probe", std::move(config),
              json{{"slope", table.slope}, {"table", std::move(rows)}});
  return 0;
}

int run_search(const GlobalOpts& global, double alpha_value, double eps, int m, double h,
               int basis_size, int max_iters, double penalty_weight, int restarts,
               const std::string& optimizer) {
  OptimizerKind kind = OptimizerKind::NelderMead;
  if (optimizer == "coordinate")
    kind = OptimizerKind::CoordinateSearch;
  else if (optimizer != "nelder-mead")
    throw DomainViolation("--optimizer: expected nelder-mead or coordinate");

  const SearchConfig cfg{Alpha(alpha_value), eps,  GridSpec(m, h), basis_size,
                         kind,               max_iters, global.seed, penalty_weight,
                         restarts};
  const SearchReport report = counterexample_search(cfg);

  json history = json::array();
  for (const SearchHistoryEntry& e : report.history)
    history.push_back({{"iter", e.iter}, {"distance", e.distance}, {"defect", e.defect}});
  json result{{"best_distance", report.best_distance},
              {"best_defect", report.best_defect},
              {"best_coefficients", report.best_coefficients},
              {"iterations", report.iterations},
              {"converged", report.converged},
              {"history", std::move(history)}};
  if (!global.quiet) {
    std::cout << "best_distance " << fmt17(report.best_distance) << "\n"
              << "best_defect " << fmt17(report.best_defect) << "\n"
              << "iterations " << report.iterations << "\n";
  }
  json config{{"alpha", alpha_value},
              {"eps", eps},
              {"m", m},
              {"h", h},
              {"basis_size", basis_size},
              {"optimizer", optimizer},
              {"max_iters", max_iters},
              {"penalty_weight", penalty_weight},
              {"restarts", restarts}};
  emit_report(global, "search", std::move(config), std::move(result));
  return 0;
}

int run_recursion(const GlobalOpts& global, double alpha_value, const std::string& kernel_spec,
                  int n_max, int m, const std::string& budgets_list, bool perturb,
                  std::optional<double> a, std::optional<double> b) {
  const Alpha alpha(alpha_value);
  const EvaluableFunction kernel = parse_function_spec(kernel_spec, alpha);

  JParams jparams;
  if (a && b) {
    jparams = JParams{*a, *b};
  } else if (const auto* fam = kernel.as_family()) {
    jparams = params_from_fit(fam->params.c, fam->params.d, alpha);
  } else {
    throw DomainViolation(
        "recursion: non-family kernels need explicit --a and --b comparison parameters");
  }

  MeasureSequence seq{kernel, alpha};
  if (!budgets_list.empty())
    seq.budget = EpsilonBudget(parse_double_list(budgets_list, "--budgets"));
  if (perturb) {
    for (int n = 3; n <= n_max; ++n) {
      const double amp = seq.budget.at(n - 1);
      if (amp > 0.0) seq.perturbations[n] = sine_product_perturbation(amp);
    }
  }

  const std::vector<GapTableRow> rows = measure_gap_table(seq, jparams, n_max, m);
  json jrows = json::array();
  std::ostringstream csv;
  csv << "n,max_gap,bound,ok\n";
  for (const GapTableRow& row : rows) {
    jrows.push_back({{"n", row.n},
                     {"max_gap", row.max_gap},
                     {"bound", row.bound},
                     {"scale", row.scale},
                     {"ok", row.ok}});
    csv << row.n << "," << fmt17(row.max_gap) << "," << fmt17(row.bound) << ","
        << (row.ok ? "1" : "0") << "\n";
  }
  if (!global.quiet) std::cout << csv.str();
  emit_csv(global, csv.str());

  json config{{"alpha", alpha_value}, {"kernel", kernel_spec}, {"n_max", n_max},
              {"m", m},               {"budgets", budgets_list}, {"perturb", perturb},
              {"a", jparams.a},       {"b", jparams.b}};
  emit_report(global, "recursion", std::move(config), json{{"rows", std::move(jrows)}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for the two-variable information functional equation: "
               "defect sweeps, entropy measures, stability probes, counterexample search, "
               "and recursive-measure checks"};
  app.require_subcommand(1);
  // --h is a domain flag (grid margin); keep help on --help only.
  app.set_help_flag("--help", "Print help");
  app.set_version_flag("--version", kVersion);

  GlobalOpts global;
  app.add_option("--seed", global.seed, "Seed for all randomized components");
  app.add_option("--json", global.json_path, "Write the JSON report to this path");
  app.add_option("--csv", global.csv_path, "Write the CSV projection to this path");
  app.add_flag("--quiet", global.quiet, "Suppress human-readable stdout");

  // entropy
  auto* entropy_cmd = app.add_subcommand("entropy", "Degree-alpha entropy of a distribution");
  entropy_cmd->set_help_flag("--help", "Print help");
  double e_alpha = -1.0;
  std::string e_p;
  int e_uniform = 0;
  double e_a = 0.0, e_b = 0.0;
  bool e_has_a = false, e_has_b = false;
  entropy_cmd->add_option("--alpha", e_alpha, "Exponent (must differ from 1)")->required();
  entropy_cmd->add_option("--p", e_p, "Comma-separated probabilities");
  entropy_cmd->add_option("--uniform", e_uniform, "Use the uniform distribution on n points");
  entropy_cmd->add_option("--a", e_a, "Also evaluate the (a,b) measure family")
      ->each([&](const std::string&) { e_has_a = true; });
  entropy_cmd->add_option("--b", e_b, "Also evaluate the (a,b) measure family")
      ->each([&](const std::string&) { e_has_b = true; });

  // defect
  auto* defect_cmd = app.add_subcommand("defect", "Sup/mean defect sweep over a triangle grid");
  defect_cmd->set_help_flag("--help", "Print help");
  double d_alpha = -1.0, d_h = 1e-3;
  std::string d_fn;
  int d_m = 100;
  bool d_per_point = false;
  defect_cmd->add_option("--alpha", d_alpha, "Exponent")->required();
  defect_cmd->add_option("--fn", d_fn, "family:c,d | family:c,d:+<amp>sin | perturbed:c,d:t1,... | sampled:path")
      ->required();
  defect_cmd->add_option("--m", d_m, "Grid resolution");
  defect_cmd->add_option("--h", d_h, "Boundary margin");
  defect_cmd->add_flag("--per-point", d_per_point, "Keep per-point records in memory");

  // probe
  auto* probe_cmd = app.add_subcommand("probe", "Margin-scaling probe: sup defect vs h, fitted slope");
  probe_cmd->set_help_flag("--help", "Print help");
  double p_alpha = -1.0, p_delta = 1e-3;
  std::string p_base = "1,0", p_margins = "1e-2,1e-3,1e-4,1e-5", p_g = "1";
  int p_m = 100;
  probe_cmd->add_option("--alpha", p_alpha, "Exponent")->required();
  probe_cmd->add_option("--delta", p_delta, "Perturbation amplitude");
  probe_cmd->add_option("--base", p_base, "Base family parameters c,d");
  probe_cmd->add_option("--margins", p_margins, "Strictly decreasing margins");
  probe_cmd->add_option("--g-coeffs", p_g, "Sine-basis coefficients of the perturbation g");
  probe_cmd->add_option("--m", p_m, "Grid resolution");

  // search
  auto* search_cmd = app.add_subcommand("search", "Constrained counterexample search");
  search_cmd->set_help_flag("--help", "Print help");
  double s_alpha = -1.0, s_eps = 1e-3, s_h = 1e-3, s_penalty = 1e3;
  int s_m = 150, s_basis = 6, s_iters = 200, s_restarts = 8;
  std::string s_optimizer = "nelder-mead";
  search_cmd->add_option("--alpha", s_alpha, "Exponent")->required();
  search_cmd->add_option("--eps", s_eps, "Defect budget");
  search_cmd->add_option("--m", s_m, "Grid resolution");
  search_cmd->add_option("--h", s_h, "Boundary margin");
  search_cmd->add_option("--basis", s_basis, "Number of sine basis functions");
  search_cmd->add_option("--max-iters", s_iters, "Iterations per restart");
  search_cmd->add_option("--penalty-weight", s_penalty, "Infeasibility penalty weight");
  search_cmd->add_option("--restarts", s_restarts, "Number of seeded restarts");
  search_cmd->add_option("--optimizer", s_optimizer, "nelder-mead or coordinate");

  // recursion
  auto* rec_cmd = app.add_subcommand("recursion", "Recursive-measure gap table against the cumulative budget");
  rec_cmd->set_help_flag("--help", "Print help");
  double r_alpha = -1.0, r_a = 0.0, r_b = 0.0;
  std::string r_kernel, r_budgets;
  int r_nmax = 8, r_m = 24;
  bool r_perturb = false, r_has_a = false, r_has_b = false;
  rec_cmd->add_option("--alpha", r_alpha, "Exponent")->required();
  rec_cmd->add_option("--kernel", r_kernel, "Kernel function spec")->required();
  rec_cmd->add_option("--n-max", r_nmax, "Largest level to check");
  rec_cmd->add_option("--m", r_m, "Simplex lattice denominator");
  rec_cmd->add_option("--budgets", r_budgets, "Budget list eps_1,eps_2,...");
  rec_cmd->add_flag("--perturb", r_perturb, "Inject budget-sized sine-product perturbations");
  rec_cmd->add_option("--a", r_a, "Comparison family parameter a")
      ->each([&](const std::string&) { r_has_a = true; });
  rec_cmd->add_option("--b", r_b, "Comparison family parameter b")
      ->each([&](const std::string&) { r_has_b = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (entropy_cmd->parsed())
      return run_entropy(global, e_alpha, e_p, e_uniform,
                         e_has_a ? std::optional<double>(e_a) : std::nullopt,
                         e_has_b ? std::optional<double>(e_b) : std::nullopt);
    if (defect_cmd->parsed())
      return run_defect(global, d_alpha, d_fn, d_m, d_h, d_per_point);
    if (probe_cmd->parsed())
      return run_probe(global, p_alpha, p_delta, p_base, p_margins, p_g, p_m);
    if (search_cmd->parsed())
      return run_search(global, s_alpha, s_eps, s_m, s_h, s_basis, s_iters, s_penalty,
                        s_restarts, s_optimizer);
    if (rec_cmd->parsed())
      return run_recursion(global, r_alpha, r_kernel, r_nmax, r_m, r_budgets, r_perturb,
                           r_has_a ? std::optional<double>(r_a) : std::nullopt,
                           r_has_b ? std::optional<double>(r_b) : std::nullopt);
    std::cerr << "no subcommand given\n";
    return 2;
  } catch (const DomainViolation& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const EmptyGrid& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetViolation& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
}
