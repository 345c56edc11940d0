// Command-line front end: solve composite problems, run rho/tol benchmark
// sweeps against the PGM baseline, fit convergence orders from traces, and
// scan the residual bounds on the bundled known-solution problems.
//
// Exit codes: 0 success, 1 solver failure, 2 usage error.
#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "pnt/data_io.hpp"
#include "pnt/diagnostics.hpp"
#include "pnt/pgm.hpp"
#include "pnt/rng.hpp"
#include "pnt/solver.hpp"

using namespace pnt;

namespace {

struct SyntheticSpec {
  std::size_t n_samples = 200;
  std::size_t n_features = 50;
  double sparsity = 1.0;
  std::uint64_t seed = 7;
};

SyntheticSpec parse_synthetic(const std::string& spec) {
  SyntheticSpec s;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--synthetic expects K=V pairs, got " + item);
    std::string key = item.substr(0, eq);
    std::string val = item.substr(eq + 1);
    if (key == "N")
      s.n_samples = std::stoull(val);
    else if (key == "n")
      s.n_features = std::stoull(val);
    else if (key == "sparsity")
      s.sparsity = std::stod(val);
    else if (key == "seed")
      s.seed = std::stoull(val);
    else
      throw CLI::ValidationError("--synthetic: unknown key " + key);
  }
  return s;
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  if (out.empty()) throw CLI::ValidationError("empty list");
  return out;
}

struct ProblemOptions {
  std::string data_path;
  std::string synthetic_spec;
  double lambda = 1e-4;
  bool normalize = true;
  std::size_t n_override = 0;
  std::string x0_path;
};

struct BuiltProblem {
  std::shared_ptr<CompositeProblem> problem;
  Vector x0;
};

BuiltProblem build_problem(const ProblemOptions& opt) {
  if (opt.data_path.empty() && opt.synthetic_spec.empty())
    throw CLI::ValidationError("pass exactly one of --data or --synthetic");
  Dataset d = [&] {
    if (!opt.data_path.empty()) {
      if (!std::ifstream(opt.data_path))
        throw CLI::ValidationError("cannot open " + opt.data_path);
      auto n = opt.n_override
                   ? std::optional<std::size_t>(opt.n_override)
                   : std::nullopt;
      Dataset raw = parse_libsvm_file(opt.data_path, n);
      return opt.normalize ? normalize_rows(raw) : raw;
    }
    SyntheticSpec s = parse_synthetic(opt.synthetic_spec);
    return generate_synthetic_logistic(s.n_samples, s.n_features, s.sparsity,
                                       s.seed);
  }();
  auto problem = std::make_shared<CompositeProblem>(
      std::make_shared<LogisticLoss>(d.features, d.labels),
      std::make_shared<L1>(opt.lambda));
  Vector x0(problem->dim(), 0.0);
  if (!opt.x0_path.empty()) {
    std::ifstream f(opt.x0_path);
    if (!f) throw CLI::ValidationError("cannot open " + opt.x0_path);
    x0.clear();
    double v;
    while (f >> v) x0.push_back(v);
    if (x0.size() != problem->dim())
      throw CLI::ValidationError("--x0-file has wrong length");
  }
  return {problem, std::move(x0)};
}

void add_problem_flags(CLI::App* cmd, ProblemOptions& opt) {
  auto* data = cmd->add_option("--data", opt.data_path,
                               "LIBSVM dataset file (l1 logistic regression)");
  auto* synth = cmd->add_option("--synthetic", opt.synthetic_spec,
                                "synthetic instance, e.g. N=200,n=50,seed=7");
  data->excludes(synth);
  cmd->add_option("--lambda", opt.lambda, "l1 penalty weight")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--normalize,!--no-normalize", opt.normalize,
                "scale dataset rows to unit norm (default on)");
  cmd->add_option("--features", opt.n_override,
                  "override the inferred feature count");
  cmd->add_option("--x0-file", opt.x0_path,
                  "whitespace-separated initial point (default zero)");
}

void add_solver_flags(CLI::App* cmd, SolverConfig& cfg, std::string& rho_list,
                      std::string& tol_list) {
  cmd->add_option("--rho", rho_list, "ridge exponent(s), comma separated");
  cmd->add_option("--tol", tol_list, "residual tolerance(s)");
  cmd->add_option("--theta", cfg.theta, "line-search decrease fraction");
  cmd->add_option("--sigma", cfg.sigma, "unit-step contraction ratio");
  cmd->add_option("--gamma", cfg.gamma, "backtracking factor");
  cmd->add_option("--alpha-bar", cfg.alpha_bar, "ridge cap");
  cmd->add_option("--c", cfg.c_alpha, "ridge coefficient");
  cmd->add_option("--nu", cfg.nu, "inexactness level");
  auto* vr = cmd->add_option("--varrho", "inexactness exponent (default rho)");
  vr->each([&cfg](const std::string& s) { cfg.varrho = std::stod(s); });
  auto* cb = cmd->add_option("--cost-bound", "objective cap C (default 2 F(x0))");
  cb->each([&cfg](const std::string& s) { cfg.cost_bound = std::stod(s); });
  cmd->add_option("--max-outer", cfg.max_outer, "outer iteration cap");
  cmd->add_option("--max-inner", cfg.max_inner, "inner sweep cap");
  cmd->add_option("--max-backtracks", cfg.max_backtracks, "backtracking cap");
}

int cmd_solve(const ProblemOptions& popt, SolverConfig cfg,
              const std::string& rho_list, const std::string& tol_list,
              const std::string& out_path) {
  cfg.rho = parse_list(rho_list).front();
  cfg.tol = parse_list(tol_list).front();
  BuiltProblem built = build_problem(popt);
  SolveReport rep = solve(*built.problem, built.x0, cfg);
  if (!out_path.empty()) write_trace_csv_file(out_path, rep.trace);
  std::cout << "status: " << to_string(rep.status)
            << "  outer: " << rep.outer_iterations()
            << "  inner: " << rep.total_inner_iterations()
            << "  F: " << format_double(rep.final_objective)
            << "  g_norm: " << format_double(rep.final_g_norm)
            << "  time_s: " << rep.wall_time_s << '\n';
  return rep.status == SolveStatus::kConverged ? 0 : 1;
}

int cmd_bench(const ProblemOptions& popt, const SolverConfig& base,
              const std::string& rho_list, const std::string& tol_list,
              const std::string& out_path) {
  std::vector<double> rhos = parse_list(rho_list);
  std::vector<double> tols = parse_list(tol_list);
  BuiltProblem built = build_problem(popt);

  struct Row {
    std::string solver;
    double rho, tol;
    std::size_t outer;
    long inner;
    double time_s;
    bool converged;
  };
  std::vector<Row> rows;
  for (double rho : rhos)
    for (double tol : tols) {
      SolverConfig cfg = base;
      cfg.rho = rho;
      cfg.varrho = base.varrho;  // default tracks rho unless overridden
      cfg.tol = tol;
      SolveReport rep = solve(*built.problem, built.x0, cfg);
      rows.push_back({"pnt", rho, tol, rep.outer_iterations(),
                      rep.total_inner_iterations(), rep.wall_time_s,
                      rep.status == SolveStatus::kConverged});
    }
  for (double tol : tols) {
    PgmConfig cfg;
    cfg.tol = tol;
    SolveReport rep = pgm_solve(*built.problem, built.x0, cfg);
    rows.push_back({"pgm", 0.0, tol, rep.outer_iterations(), 0,
                    rep.wall_time_s,
                    rep.status == SolveStatus::kConverged});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.solver != b.solver) return a.solver < b.solver;
    if (a.rho != b.rho) return a.rho < b.rho;
    return a.tol < b.tol;
  });

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "cannot open " << out_path << '\n';
      return 2;
    }
    os = &file;
  }
  *os << "solver,rho,tol,outer,inner_total,time_s\n";
  bool all_ok = true;
  for (const Row& r : rows) {
    *os << r.solver << ',' << format_double(r.rho) << ','
        << format_double(r.tol) << ',' << r.outer << ',' << r.inner << ','
        << r.time_s << '\n';
    all_ok = all_ok && r.converged;
  }
  return all_ok ? 0 : 1;
}

std::vector<double> residuals_from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("cannot open " + path);
  std::string first;
  if (!std::getline(f, first)) throw CLI::ValidationError(path + " is empty");
  std::vector<double> residuals;
  if (first.rfind("k,F,g_norm", 0) == 0) {
    f.seekg(0);
    for (const auto& rec : read_trace_csv(f)) residuals.push_back(rec.g_norm);
  } else {
    // plain list: one residual per line
    std::stringstream ss(first);
    double v;
    if (ss >> v) residuals.push_back(v);
    while (f >> v) residuals.push_back(v);
  }
  return residuals;
}

int cmd_rates(const std::string& trace_path, const std::string& out_path) {
  std::vector<double> residuals = residuals_from_file(trace_path);
  RateFit fit = fit_convergence_order(residuals);
  std::cout << "p=" << format_double(fit.order)
            << " r_squared=" << format_double(fit.r_squared)
            << " window=[" << fit.window_begin << ',' << fit.window_end
            << ") decades=" << format_double(fit.decades) << '\n';
  if (!out_path.empty()) {
    std::ofstream os(out_path);
    if (!os) {
      std::cerr << "cannot open " << out_path << '\n';
      return 2;
    }
    write_diagnostics_csv(
        os, {{trace_path, "rate_fit", std::nan(""), std::nan(""), fit.order,
              fit.r_squared}});
  }
  return 0;
}

int cmd_check_props(std::size_t samples, std::uint64_t seed,
                    const std::string& out_path) {
  std::vector<DiagnosticRow> rows;
  bool violated = false;
  auto record = [&](const std::string& id, const BoundScan& scan) {
    rows.push_back({id, "prox_map_lipschitz", scan.lipschitz_ratio_max,
                    scan.fitted_kappa, std::nan(""), std::nan("")});
    rows.push_back({id, "residual_vs_distance", scan.residual_ratio_max,
                    scan.fitted_kappa, std::nan(""), std::nan("")});
    violated = violated || scan.lipschitz_ratio_max > 1.0 + 1e-8 ||
               scan.residual_ratio_max > 1.0 + 1e-8;
  };

  {
    CompositeProblem ls(
        std::make_shared<LeastSquaresLoss>(
            SparseMatrix::from_dense(1, 2, {1.0, 1.0}), Vector{2.0}),
        std::make_shared<ZeroReg>());
    double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    record("rank_deficient_ls",
           scan_proposition_bounds(
               ls,
               SolutionSetDescription::affine({1.0, 1.0},
                                              {Vector{inv_sqrt2, -inv_sqrt2}}),
               samples, seed));
  }
  {
    Rng rng(31);
    Vector c(5);
    for (double& v : c) v = rng.normal();
    double cn = norm(c);
    for (double& v : c) v /= cn;
    CompositeProblem cone(std::make_shared<LinearLoss>(c),
                          std::make_shared<EuclideanNorm>(1.0));
    auto ray = SolutionSetDescription::ray(c);
    record("linear_plus_norm", scan_proposition_bounds(cone, ray, samples,
                                                       seed + 1));
    auto ratios = luo_tseng_ratio_sequence(cone, ray, 20);
    rows.push_back({"linear_plus_norm", "luo_tseng_final_ratio",
                    ratios.back(), std::nan(""), std::nan(""), std::nan("")});
  }
  {
    Vector z{0.5, -1.5};
    CompositeProblem singleton(
        std::make_shared<LeastSquaresLoss>(SparseMatrix::identity(2), z),
        std::make_shared<ZeroReg>());
    record("singleton_quadratic",
           scan_proposition_bounds(
               singleton, SolutionSetDescription::singleton(z), samples,
               seed + 2));
  }

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "cannot open " << out_path << '\n';
      return 2;
    }
    os = &file;
  }
  write_diagnostics_csv(*os, rows);
  if (violated) std::cerr << "hard bound violation detected\n";
  return violated ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proximal Newton-type solver toolkit"};
  app.require_subcommand(1);

  ProblemOptions popt;
  SolverConfig cfg;
  std::string rho_list = "1";
  std::string tol_list = "1e-8";
  std::string out_path;
  std::string trace_path;
  std::size_t samples = 500;
  std::uint64_t scan_seed = 2024;

  auto* solve_cmd = app.add_subcommand("solve", "run the solver once");
  add_problem_flags(solve_cmd, popt);
  add_solver_flags(solve_cmd, cfg, rho_list, tol_list);
  solve_cmd->add_option("--out", out_path, "trace CSV path");

  auto* bench_cmd =
      app.add_subcommand("bench", "rho/tol sweep plus the PGM baseline");
  add_problem_flags(bench_cmd, popt);
  add_solver_flags(bench_cmd, cfg, rho_list, tol_list);
  bench_cmd->add_option("--out", out_path, "comparison table CSV path");

  auto* rates_cmd =
      app.add_subcommand("rates", "fit the convergence order of a trace");
  rates_cmd->add_option("--trace", trace_path, "trace CSV or residual list")
      ->required();
  rates_cmd->add_option("--out", out_path, "rate report CSV path");

  auto* props_cmd = app.add_subcommand(
      "check-props", "scan residual bounds on the bundled problems");
  props_cmd->add_option("--samples", samples, "sample count per problem");
  props_cmd->add_option("--seed", scan_seed, "sampling seed");
  props_cmd->add_option("--out", out_path, "violation report CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit with 2, --help with 0
  }

  try {
    if (solve_cmd->parsed())
      return cmd_solve(popt, cfg, rho_list, tol_list, out_path);
    if (bench_cmd->parsed())
      return cmd_bench(popt, cfg, rho_list, tol_list, out_path);
    if (rates_cmd->parsed()) return cmd_rates(trace_path, out_path);
    if (props_cmd->parsed())
      return cmd_check_props(samples, scan_seed, out_path);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
