// Command line front end: pmf/cdf evaluation, root location, mode tables,
// plot-ready sweeps, verification suites, and Monte Carlo validation.
//
// Exit codes: 0 all requested checks pass, 1 a mathematical violation was
// found, 2 invalid input.

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyaurn/functions.hpp"
#include "polyaurn/inequalities.hpp"
#include "polyaurn/operators.hpp"
#include "polyaurn/report.hpp"
#include "polyaurn/sampler.hpp"
#include "polyaurn/scalar.hpp"
#include "polyaurn/shape.hpp"
#include "polyaurn/suites.hpp"
#include "polyaurn/urn.hpp"

namespace {

using nlohmann::json;
using namespace polyaurn;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInvalid = 2;

struct OutputTarget {
  std::string path;  // empty = stdout

  std::ostream& open() {
    if (path.empty()) return std::cout;
    file = std::make_unique<std::ofstream>(path);
    if (!*file) throw std::invalid_argument("cannot open output file '" + path + "'");
    return *file;
  }

  std::unique_ptr<std::ofstream> file;
};

// Fraction syntax in any value flag selects rational mode unless --mode
// says otherwise.
bool use_rational(const std::string& mode_flag, std::initializer_list<const std::string*> values) {
  if (mode_flag == "rational") return true;
  if (mode_flag == "double") return false;
  if (!mode_flag.empty()) throw std::invalid_argument("unknown mode '" + mode_flag + "'");
  for (const auto* v : values) {
    if (v != nullptr && is_fraction_literal(*v)) return true;
  }
  return false;
}

void emit_table(std::ostream& os, const std::string& format, const std::string& command,
                const json& params, const std::vector<std::string>& columns,
                const std::vector<std::vector<std::string>>& rows) {
  if (format == "csv") {
    for (size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
    os << "\n";
    for (const auto& row : rows) {
      for (size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
      os << "\n";
    }
    return;
  }
  if (format != "json") throw std::invalid_argument("unknown format '" + format + "'");
  json out{{"command", command}, {"params", params}};
  json jrows = json::array();
  for (const auto& row : rows) {
    json jrow;
    for (size_t c = 0; c < row.size(); ++c) jrow[columns[c]] = row[c];
    jrows.push_back(std::move(jrow));
  }
  out["rows"] = std::move(jrows);
  os << out.dump(2) << "\n";
}

struct PmfArgs {
  int n = 0;
  std::string x, a, b, c;
  int k = -1;
  bool have_k = false;
  std::string mode, format = "csv";
  OutputTarget out;
};

template <Scalar T>
int run_pmf_mode(PmfArgs& args) {
  std::vector<T> probs;
  json params{{"n", args.n}, {"mode", mode_name<T>()}};
  if (!args.x.empty()) {
    const T x = parse_scalar<T>(args.x);
    probs = pmf_vector(args.n, x).probs;
    params["x"] = to_string(x);
  } else {
    const UrnParams<T> urn(args.n, parse_scalar<T>(args.a), parse_scalar<T>(args.b),
                           parse_scalar<T>(args.c));
    probs = pmf_general_vector(urn).probs;
    params["a"] = to_string(urn.a);
    params["b"] = to_string(urn.b);
    params["c"] = to_string(urn.c);
  }

  std::vector<std::vector<std::string>> rows;
  for (int k = 0; k <= args.n; ++k) {
    if (args.have_k && k != args.k) continue;
    rows.push_back({std::to_string(k), to_string(probs[static_cast<size_t>(k)])});
  }
  if (args.have_k && rows.empty()) throw std::invalid_argument("k outside 0..n");
  emit_table(args.out.open(), args.format, "pmf", params, {"k", "p"}, rows);
  return kExitPass;
}

int run_pmf(PmfArgs& args) {
  const bool have_x = !args.x.empty();
  const bool have_abc = !args.a.empty() || !args.b.empty() || !args.c.empty();
  if (have_x == have_abc) {
    throw std::invalid_argument("pmf needs either --x or all of --a/--b/--c");
  }
  if (have_abc && (args.a.empty() || args.b.empty() || args.c.empty())) {
    throw std::invalid_argument("pmf needs all of --a/--b/--c");
  }
  if (use_rational(args.mode, {&args.x, &args.a, &args.b, &args.c})) {
    return run_pmf_mode<Rational>(args);
  }
  return run_pmf_mode<double>(args);
}

struct RootArgs {
  int n = 0;
  int k = -1;
  bool have_k = false;
  double tol = 1e-13;
  std::string format = "csv";
  OutputTarget out;
};

int run_root(RootArgs& args) {
  std::vector<std::vector<std::string>> rows;
  const int k_lo = args.have_k ? args.k : 0;
  const int k_hi = args.have_k ? args.k : args.n - 1;
  for (int k = k_lo; k <= k_hi; ++k) {
    const RootResult r = locate_root(args.n, k, args.tol);
    rows.push_back({std::to_string(k), to_string(r.x_root), to_string(r.bracket_lo),
                    to_string(r.bracket_hi), to_string(r.residual)});
  }
  emit_table(args.out.open(), args.format, "root",
             {{"n", args.n}, {"tol", args.tol}},
             {"k", "x_root", "bracket_lo", "bracket_hi", "residual"}, rows);
  return kExitPass;
}

struct XStarArgs {
  int n = 0;
  int k = -1;
  bool have_k = false;
  double tol = 1e-13;
  std::string format = "csv";
  OutputTarget out;
};

int run_xstar(XStarArgs& args) {
  std::vector<std::vector<std::string>> rows;
  const int k_lo = args.have_k ? args.k : 0;
  const int k_hi = args.have_k ? args.k : args.n;
  for (int k = k_lo; k <= k_hi; ++k) {
    rows.push_back({std::to_string(k), to_string(x_star(args.n, k, args.tol))});
  }
  emit_table(args.out.open(), args.format, "xstar", {{"n", args.n}, {"tol", args.tol}},
             {"k", "x_star"}, rows);
  return kExitPass;
}

struct SweepArgs {
  int n = 0;
  int k = -1;
  bool have_k = false;
  std::string fn;
  bool phi_sweep = false;
  int points = 101;
  std::string mode, format = "csv";
  OutputTarget out;
};

template <Scalar T>
int run_sweep_mode(SweepArgs& args) {
  if (args.points < 2) throw std::invalid_argument("sweep needs at least 2 points");
  std::vector<std::vector<std::string>> rows;
  json params{{"n", args.n}, {"points", args.points}, {"mode", mode_name<T>()}};

  if (args.have_k && args.phi_sweep) {
    // phi is singular at (n-1)/(2n-k-2); the grid stays strictly below it.
    params["k"] = args.k;
    params["quantity"] = "phi";
    const T sup = make_phi_spec<T>(args.n, args.k).domain_sup;
    for (int i = 0; i < args.points; ++i) {
      const T x = T(sup * ratio<T>(i, args.points));
      rows.push_back({to_string(x), to_string(phi(args.n, args.k, x))});
    }
  } else if (args.have_k) {
    params["k"] = args.k;
    params["quantity"] = "pmf";
    for (int i = 0; i < args.points; ++i) {
      const T x = ratio<T>(i, args.points - 1);
      rows.push_back({to_string(x), to_string(pmf_special(args.n, x, args.k))});
    }
  } else {
    const SampledFunction<T> f = make_builtin_function<T>(args.fn, args.n);
    params["fn"] = f.name;
    params["quantity"] = "operator";
    for (int i = 0; i < args.points; ++i) {
      const T x = ratio<T>(i, args.points - 1);
      rows.push_back({to_string(x), to_string(rn_eval(args.n, f, x))});
    }
  }
  emit_table(args.out.open(), args.format, "sweep", params, {"x", "value"}, rows);
  return kExitPass;
}

int run_sweep(SweepArgs& args) {
  if (args.have_k == !args.fn.empty()) {
    throw std::invalid_argument("sweep needs exactly one of --k or --fn");
  }
  if (args.phi_sweep && !args.have_k) {
    throw std::invalid_argument("--phi needs --k");
  }
  if (use_rational(args.mode, {})) return run_sweep_mode<Rational>(args);
  return run_sweep_mode<double>(args);
}

struct VerifyArgs {
  std::string suite;
  int n_max = -1;
  int grid = -1;
  long trials = 10000;
  std::uint64_t seed = kDefaultSeed;
  double tol = 1e-12;
  std::string mode;
  OutputTarget out;
};

int run_verify(VerifyArgs& args) {
  const bool rational = use_rational(args.mode, {});
  const auto started = std::chrono::steady_clock::now();

  VerificationReport report;
  if (args.suite == "theorem1") {
    if (args.n_max < 0) args.n_max = 25;
    if (args.grid < 0) args.grid = 2001;
    if (rational) throw std::invalid_argument("theorem1 grid check runs in double mode");
    report = suite_theorem1(args.n_max, args.grid, args.tol);
  } else if (args.suite == "theorem2") {
    if (args.n_max < 0) args.n_max = 25;
    if (args.grid < 0) args.grid = 201;
    report = rational ? suite_theorem2<Rational>(args.n_max, args.grid, args.tol)
                      : suite_theorem2<double>(args.n_max, args.grid, args.tol);
  } else if (args.suite == "theorem3") {
    if (args.n_max < 0) args.n_max = 25;
    if (args.grid < 0) args.grid = 1001;
    report = rational ? suite_theorem3<Rational>(args.n_max, args.grid, args.tol)
                      : suite_theorem3<double>(args.n_max, args.grid, args.tol);
  } else if (args.suite == "lemma1") {
    report = suite_lemma1(args.trials, args.seed);
  } else if (args.suite == "lemma2") {
    if (args.n_max < 0) args.n_max = 200;
    report = suite_lemma2(args.n_max, args.tol);
  } else {
    throw std::invalid_argument("unknown suite '" + args.suite + "'");
  }

  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - started)
                          .count();
  args.out.open() << report.to_json().dump(2) << "\n";
  std::cerr << report.suite() << ": " << (report.pass() ? "PASS" : "FAIL") << " ("
            << report.checks() << " checks, worst margin " << to_string(report.worst_margin())
            << ", " << report.elapsed_ms << " ms)\n";
  return report.pass() ? kExitPass : kExitViolation;
}

struct SampleArgs {
  int n = 0;
  std::string x;
  std::uint64_t trials = 1000000;
  std::uint64_t seed = kDefaultSeed;
  double level = 0.999;
  OutputTarget out;
};

int run_sample(SampleArgs& args) {
  const double x = parse_scalar<double>(args.x);
  const SampleConfig config{special_params<double>(args.n, x), args.trials, args.seed};
  const EmpiricalPmf emp = empirical_pmf(config);
  const Pmf<double> exact = pmf_vector<double>(args.n, x);
  const GofResult gof = gof_chi_square(emp, exact, args.level);

  double max_abs_diff = 0.0;
  json empirical = json::array();
  json exact_json = json::array();
  for (int k = 0; k <= args.n; ++k) {
    const double freq = static_cast<double>(emp.counts[static_cast<size_t>(k)]) /
                        static_cast<double>(emp.trials);
    max_abs_diff = std::max(max_abs_diff, std::abs(freq - exact.probs[static_cast<size_t>(k)]));
    empirical.push_back(emp.counts[static_cast<size_t>(k)]);
    exact_json.push_back(exact.probs[static_cast<size_t>(k)]);
  }

  const json out{{"command", "sample"},
                 {"params", {{"n", args.n}, {"x", to_string(x)}, {"trials", args.trials},
                             {"seed", args.seed}, {"level", args.level}}},
                 {"empirical", empirical},
                 {"exact", exact_json},
                 {"chi_square", {{"statistic", gof.statistic}, {"dof", gof.dof},
                                 {"pass", gof.pass}}},
                 {"max_abs_diff", max_abs_diff},
                 {"pass", gof.pass}};
  args.out.open() << out.dump(2) << "\n";
  std::cerr << "sample: " << (gof.pass ? "PASS" : "FAIL") << " (chi-square "
            << to_string(gof.statistic) << ", dof " << gof.dof << ", max |emp-exact| "
            << to_string(max_abs_diff) << ")\n";
  return gof.pass ? kExitPass : kExitViolation;
}

void add_output_flags(CLI::App* cmd, std::string& format, OutputTarget& out) {
  cmd->add_option("--format", format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", out.path, "Write output to a file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "polyaurn: Pólya urn distribution with negative replacement, the operator "
      "R_n(f,x) = E f(X_n/n) built on it, and verification suites for its shape "
      "and ordering properties"};
  app.require_subcommand(1);

  PmfArgs pmf_args;
  auto* pmf_cmd = app.add_subcommand("pmf", "Evaluate the urn pmf");
  pmf_cmd->add_option("--n", pmf_args.n, "Number of draws")->required();
  pmf_cmd->add_option("--x", pmf_args.x, "Initial white mass x (a=x, b=1-x, minimal c)");
  auto* pmf_k = pmf_cmd->add_option("--k", pmf_args.k, "Single outcome k instead of the full law");
  pmf_cmd->add_option("--a", pmf_args.a, "Explicit initial white mass");
  pmf_cmd->add_option("--b", pmf_args.b, "Explicit initial black mass");
  pmf_cmd->add_option("--c", pmf_args.c, "Explicit replacement increment");
  pmf_cmd->add_option("--mode", pmf_args.mode, "Numeric mode: rational or double")
      ->check(CLI::IsMember({"rational", "double"}));
  add_output_flags(pmf_cmd, pmf_args.format, pmf_args.out);

  RootArgs root_args;
  auto* root_cmd = app.add_subcommand("root", "Locate the sign-change root x_{n,k} of phi");
  root_cmd->add_option("--n", root_args.n, "Number of draws")->required();
  auto* root_k = root_cmd->add_option("--k", root_args.k, "Single k instead of 0..n-1");
  root_cmd->add_option("--tol", root_args.tol, "Bracket width tolerance (default 1e-13)");
  add_output_flags(root_cmd, root_args.format, root_args.out);

  XStarArgs xstar_args;
  auto* xstar_cmd = app.add_subcommand("xstar", "Mode x*_{n,k} of x -> p_{n,k}(x)");
  xstar_cmd->add_option("--n", xstar_args.n, "Number of draws")->required();
  auto* xstar_k = xstar_cmd->add_option("--k", xstar_args.k, "Single k instead of 0..n");
  xstar_cmd->add_option("--tol", xstar_args.tol, "Root tolerance (default 1e-13)");
  add_output_flags(xstar_cmd, xstar_args.format, xstar_args.out);

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "CSV sweep of p_{n,k}(x), phi_{n,k}(x) or R_n(f,x)");
  sweep_cmd->add_option("--n", sweep_args.n, "Number of draws")->required();
  auto* sweep_k = sweep_cmd->add_option("--k", sweep_args.k, "Sweep p_{n,k}(x) over x in [0,1]");
  sweep_cmd->add_option("--fn", sweep_args.fn,
                        "Sweep R_n(f,x) for a builtin f (one, identity, square, exp[:a], "
                        "recip[:q], step:j, affine:c0,c1)");
  sweep_cmd->add_flag("--phi", sweep_args.phi_sweep, "With --k: sweep phi_{n,k} over its domain");
  sweep_cmd->add_option("--points", sweep_args.points, "Grid points (default 101)");
  sweep_cmd->add_option("--mode", sweep_args.mode, "Numeric mode: rational or double")
      ->check(CLI::IsMember({"rational", "double"}));
  add_output_flags(sweep_cmd, sweep_args.format, sweep_args.out);

  SweepArgs op_args;
  auto* op_cmd = app.add_subcommand("operator", "Sweep R_n(f,x) (alias of sweep --fn)");
  op_cmd->add_option("--n", op_args.n, "Number of draws")->required();
  op_cmd->add_option("--fn", op_args.fn, "Builtin function name")->required();
  op_cmd->add_option("--points", op_args.points, "Grid points (default 101)");
  op_cmd->add_option("--mode", op_args.mode, "Numeric mode: rational or double")
      ->check(CLI::IsMember({"rational", "double"}));
  add_output_flags(op_cmd, op_args.format, op_args.out);

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand(
      "verify", "Run a verification suite: theorem1 (unimodality of p_{n,k}), theorem2 "
                "(stochastic ordering in x), theorem3 (R_n preserves monotonicity), lemma1 "
                "(refined reversed CBS inequality), lemma2 (trapezoid bounds)");
  verify_cmd
      ->add_option("suite", verify_args.suite, "theorem1|theorem2|theorem3|lemma1|lemma2")
      ->required();
  verify_cmd->add_option("--n-max", verify_args.n_max, "Largest n (theorems) or N (lemma2)");
  verify_cmd->add_option("--grid", verify_args.grid, "Grid points per sweep");
  verify_cmd->add_option("--trials", verify_args.trials, "Random instances (lemma1)");
  verify_cmd->add_option("--seed", verify_args.seed, "Seed for random instances");
  verify_cmd->add_option("--tol", verify_args.tol, "Violation tolerance (default 1e-12)");
  verify_cmd->add_option("--mode", verify_args.mode, "Numeric mode: rational or double")
      ->check(CLI::IsMember({"rational", "double"}));
  verify_cmd->add_option("--out", verify_args.out.path, "Write the JSON report to a file");

  SampleArgs sample_args;
  auto* sample_cmd = app.add_subcommand("sample", "Monte Carlo simulation with chi-square check");
  sample_cmd->add_option("--n", sample_args.n, "Number of draws")->required();
  sample_cmd->add_option("--x", sample_args.x, "Initial white mass x")->required();
  sample_cmd->add_option("--trials", sample_args.trials, "Number of simulated paths");
  sample_cmd->add_option("--seed", sample_args.seed, "RNG seed (default 1)");
  sample_cmd->add_option("--level", sample_args.level, "Chi-square level (default 0.999)");
  sample_cmd->add_option("--out", sample_args.out.path, "Write the JSON result to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    pmf_args.have_k = pmf_k->count() > 0;
    root_args.have_k = root_k->count() > 0;
    xstar_args.have_k = xstar_k->count() > 0;
    sweep_args.have_k = sweep_k->count() > 0;
    if (pmf_cmd->parsed()) return run_pmf(pmf_args);
    if (root_cmd->parsed()) return run_root(root_args);
    if (xstar_cmd->parsed()) return run_xstar(xstar_args);
    if (sweep_cmd->parsed()) return run_sweep(sweep_args);
    if (op_cmd->parsed()) {
      op_args.have_k = false;
      return run_sweep(op_args);
    }
    if (verify_cmd->parsed()) return run_verify(verify_args);
    if (sample_cmd->parsed()) return run_sample(sample_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
