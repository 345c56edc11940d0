#include "pnt/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pnt {

void SolverConfig::validate() const {
  auto in_open_01 = [](double v) { return v > 0.0 && v < 1.0; };
  if (!in_open_01(theta)) throw std::invalid_argument("theta must be in (0,1)");
  if (!in_open_01(sigma)) throw std::invalid_argument("sigma must be in (0,1)");
  if (!in_open_01(gamma)) throw std::invalid_argument("gamma must be in (0,1)");
  if (!(alpha_bar > 0.0)) throw std::invalid_argument("alpha_bar must be > 0");
  if (!(c_alpha > 0.0)) throw std::invalid_argument("c must be > 0");
  if (!(rho > 0.0 && rho <= 1.0))
    throw std::invalid_argument("rho must be in (0,1]");
  if (!(nu >= 0.0 && nu < 1.0))
    throw std::invalid_argument("nu must be in [0,1)");
  if (!(resolved_varrho() > 0.0))
    throw std::invalid_argument("varrho must be > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (max_outer < 1) throw std::invalid_argument("max_outer must be >= 1");
  if (max_inner < 1) throw std::invalid_argument("max_inner must be >= 1");
  if (max_backtracks < 1)
    throw std::invalid_argument("max_backtracks must be >= 1");
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kConverged: return "Converged";
    case SolveStatus::kMaxOuterReached: return "MaxOuterReached";
    case SolveStatus::kInnerFailure: return "InnerFailure";
    case SolveStatus::kLineSearchFailure: return "LineSearchFailure";
  }
  return "?";
}

const char* to_string(StepBranch b) {
  switch (b) {
    case StepBranch::kUnitStep: return "unit_step";
    case StepBranch::kLineSearch: return "line_search";
    case StepBranch::kPgm: return "pgm";
  }
  return "?";
}

long SolveReport::total_inner_iterations() const {
  long total = 0;
  for (const auto& r : trace) total += r.inner_iters;
  return total;
}

std::vector<double> SolveReport::residual_history() const {
  std::vector<double> h;
  h.reserve(trace.size() + 1);
  for (const auto& r : trace) h.push_back(r.g_norm);
  h.push_back(final_g_norm);
  return h;
}

double choose_alpha(double g_norm, const SolverConfig& cfg) {
  if (g_norm < 0.0) throw std::invalid_argument("choose_alpha: g_norm < 0");
  return std::min(cfg.alpha_bar, cfg.c_alpha * std::pow(g_norm, cfg.rho));
}

double choose_eta(double g_norm, const SolverConfig& cfg) {
  if (g_norm < 0.0) throw std::invalid_argument("choose_eta: g_norm < 0");
  return cfg.nu * std::min(1.0, std::pow(g_norm, cfg.resolved_varrho()));
}

LineSearchResult line_search(const CompositeProblem& problem, const Vector& x,
                             double f_x, const Vector& d, double alpha,
                             const SolverConfig& cfg) {
  const double d_sq = dot(d, d);
  Vector trial(x.size());
  double t = 1.0;
  for (int m = 0; m <= cfg.max_backtracks; ++m) {
    for (std::size_t j = 0; j < x.size(); ++j) trial[j] = x[j] + t * d[j];
    double f_trial = problem.objective(trial);
    if (f_trial <= f_x - cfg.theta * alpha * t * d_sq)
      return {t, m, f_trial, true};
    t *= cfg.gamma;
  }
  return {t, cfg.max_backtracks, kInfValue, false};
}

SolverState init_state(const CompositeProblem& problem, Vector x0,
                       const SolverConfig& cfg) {
  cfg.validate();
  SolverState s;
  s.objective = problem.objective(x0);
  if (!std::isfinite(s.objective))
    throw std::invalid_argument("solve: F(x0) must be finite");
  s.cost_bound = cfg.cost_bound
                     ? *cfg.cost_bound
                     : (s.objective > 0.0 ? 2.0 * s.objective
                                          : s.objective + 1.0);
  if (!(s.cost_bound > s.objective))
    throw std::invalid_argument("solve: cost bound C must exceed F(x0)");
  s.g_norm = norm(problem.prox_gradient_map(x0));
  s.theta_gauge = s.g_norm;
  s.x = std::move(x0);
  s.k = 0;
  return s;
}

StepOutcome step(const CompositeProblem& problem, SolverState& state,
                 const SolverConfig& cfg, std::vector<TraceRecord>& trace) {
  const double alpha = choose_alpha(state.g_norm, cfg);
  const double eta = choose_eta(state.g_norm, cfg);

  SubproblemModel model(problem, state.x, alpha);
  InnerResult inner =
      solve_subproblem(model, state.g_norm, eta, cfg.max_inner);
  // Inner cap exhausted: keep the point as long as the model decreased
  // (the line search below stays well-posed); abort only on q increase.
  if (!inner.converged && inner.q_drop < 0.0)
    return {false, SolveStatus::kInnerFailure};

  Vector d(state.x.size());
  for (std::size_t j = 0; j < d.size(); ++j)
    d[j] = inner.x_hat[j] - state.x[j];
  const double d_norm = norm(d);
  if (d_norm == 0.0) return {false, SolveStatus::kInnerFailure};

  TraceRecord rec;
  rec.k = state.k;
  rec.objective = state.objective;
  rec.g_norm = state.g_norm;
  rec.alpha = alpha;
  rec.eta = eta;
  rec.inner_iters = inner.inner_iters;
  rec.theta = state.theta_gauge;
  rec.inner_converged = inner.converged;
  rec.residual_norm = inner.residual_norm;
  rec.q_drop = inner.q_drop;
  rec.d_norm = d_norm;

  double theta_next = state.theta_gauge;
  bool take_unit = false;
  double g_norm_hat = 0.0;
  double f_hat = 0.0;
  if (state.k == 0) {
    theta_next = state.g_norm;  // the gauge starts at ||G(x^0)||
  } else {
    g_norm_hat = norm(problem.prox_gradient_map(inner.x_hat));
    f_hat = problem.objective(inner.x_hat);
    if (g_norm_hat <= cfg.sigma * state.theta_gauge &&
        f_hat <= state.cost_bound) {
      take_unit = true;
      theta_next = g_norm_hat;
    }
  }

  if (take_unit) {
    rec.branch = StepBranch::kUnitStep;
    rec.t = 1.0;
    rec.m = 0;
    state.x = std::move(inner.x_hat);
    state.objective = f_hat;
    state.g_norm = g_norm_hat;
  } else {
    LineSearchResult ls =
        line_search(problem, state.x, state.objective, d, alpha, cfg);
    if (!ls.ok) return {false, SolveStatus::kLineSearchFailure};
    rec.branch = StepBranch::kLineSearch;
    rec.t = ls.t;
    rec.m = ls.m;
    for (std::size_t j = 0; j < d.size(); ++j) state.x[j] += ls.t * d[j];
    state.objective = ls.f_new;
    state.g_norm = norm(problem.prox_gradient_map(state.x));
  }
  trace.push_back(rec);
  state.theta_gauge = theta_next;
  ++state.k;
  return {};
}

SolveReport solve(const CompositeProblem& problem, Vector x0,
                  const SolverConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  SolverState state = init_state(problem, std::move(x0), cfg);

  SolveReport report;
  report.status = SolveStatus::kMaxOuterReached;
  while (true) {
    if (state.g_norm <= cfg.tol) {
      report.status = SolveStatus::kConverged;
      break;
    }
    if (state.k >= cfg.max_outer) {
      report.status = SolveStatus::kMaxOuterReached;
      break;
    }
    StepOutcome out = step(problem, state, cfg, report.trace);
    if (!out.ok) {
      report.status = out.failure;
      break;
    }
  }
  report.x = std::move(state.x);
  report.final_objective = state.objective;
  report.final_g_norm = state.g_norm;
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRecord>& trace) {
  os << "k,F,g_norm,alpha,eta,inner_iters,branch,t,m,theta\n";
  for (const auto& r : trace) {
    os << r.k << ',' << format_double(r.objective) << ','
       << format_double(r.g_norm) << ',' << format_double(r.alpha) << ','
       << format_double(r.eta) << ',' << r.inner_iters << ','
       << to_string(r.branch) << ',' << format_double(r.t) << ',' << r.m
       << ',' << format_double(r.theta) << '\n';
  }
}

void write_trace_csv_file(const std::string& path,
                          const std::vector<TraceRecord>& trace) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_trace_csv(os, trace);
}

std::vector<TraceRecord> read_trace_csv(std::istream& is) {
  std::vector<TraceRecord> trace;
  std::string line;
  if (!std::getline(is, line))
    throw std::runtime_error("trace CSV: empty input");
  if (line.rfind("k,F,g_norm", 0) != 0)
    throw std::runtime_error("trace CSV: unexpected header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 10)
      throw std::runtime_error("trace CSV: malformed row: " + line);
    TraceRecord r;
    r.k = std::stoi(fields[0]);
    r.objective = std::stod(fields[1]);
    r.g_norm = std::stod(fields[2]);
    r.alpha = std::stod(fields[3]);
    r.eta = std::stod(fields[4]);
    r.inner_iters = std::stol(fields[5]);
    if (fields[6] == "unit_step")
      r.branch = StepBranch::kUnitStep;
    else if (fields[6] == "pgm")
      r.branch = StepBranch::kPgm;
    else
      r.branch = StepBranch::kLineSearch;
    r.t = std::stod(fields[7]);
    r.m = std::stoi(fields[8]);
    r.theta = std::stod(fields[9]);
    trace.push_back(r);
  }
  return trace;
}

}  // namespace pnt
