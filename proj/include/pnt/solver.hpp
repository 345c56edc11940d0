#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pnt/residuals.hpp"
#include "pnt/subsolver.hpp"

namespace pnt {

/// Parameters of the outer proximal Newton-type iteration. Defaults follow
/// the reference experimental setup: theta 0.1, sigma 0.5, gamma 0.5,
/// alpha_bar 1e-4, c 1e-8, nu 0.9, varrho = rho, tol 1e-8.
struct SolverConfig {
  double theta = 0.1;   // sufficient-decrease fraction, in (0,1)
  double sigma = 0.5;   // unit-step contraction ratio, in (0,1)
  double gamma = 0.5;   // backtracking factor, in (0,1)
  std::optional<double> cost_bound;  // C > F(x0); default 2 F(x0) (F(x0)+1 if F(x0) <= 0)
  double alpha_bar = 1e-4;  // cap on the ridge alpha_k
  double c_alpha = 1e-8;    // ridge coefficient c
  double rho = 1.0;         // ridge exponent, in (0,1]
  double nu = 0.9;          // inexactness level, in [0,1)
  std::optional<double> varrho;  // inexactness exponent, > 0; default rho
  double tol = 1e-8;
  int max_outer = 500;
  long max_inner = 10000;
  int max_backtracks = 60;

  double resolved_varrho() const { return varrho ? *varrho : rho; }
  void validate() const;  // throws std::invalid_argument on range violations
};

enum class SolveStatus {
  kConverged,
  kMaxOuterReached,
  kInnerFailure,
  kLineSearchFailure,
};
const char* to_string(SolveStatus s);

enum class StepBranch { kUnitStep, kLineSearch, kPgm };
const char* to_string(StepBranch b);

struct TraceRecord {
  int k = 0;
  double objective = 0.0;  // F(x_k)
  double g_norm = 0.0;     // ||G(x_k)||
  double alpha = 0.0;
  double eta = 0.0;
  long inner_iters = 0;
  StepBranch branch = StepBranch::kLineSearch;
  double t = 1.0;
  int m = 0;
  double theta = 0.0;  // gauge in effect when iteration k started
  // In-memory certificate fields, not part of the CSV schema.
  bool inner_converged = true;
  double residual_norm = 0.0;  // ||r(x_hat)|| reported by the inner solve
  double q_drop = 0.0;         // model decrease reported by the inner solve
  double d_norm = 0.0;         // ||x_hat - x_k||
};

struct SolveReport {
  SolveStatus status = SolveStatus::kMaxOuterReached;
  Vector x;
  std::vector<TraceRecord> trace;
  double final_objective = 0.0;
  double final_g_norm = 0.0;
  double wall_time_s = 0.0;

  std::size_t outer_iterations() const { return trace.size(); }
  long total_inner_iterations() const;
  // g_norm per iteration plus the final residual.
  std::vector<double> residual_history() const;
};

// alpha_k = min(alpha_bar, c ||G||^rho); zero only when ||G|| = 0.
double choose_alpha(double g_norm, const SolverConfig& cfg);

// eta_k = nu * min(1, ||G||^varrho)
double choose_eta(double g_norm, const SolverConfig& cfg);

struct LineSearchResult {
  double t = 1.0;
  int m = 0;
  double f_new = 0.0;
  bool ok = true;
};

/// Backtracking along d: smallest m >= 0 with
///   F(x + gamma^m d) <= f_x - theta * alpha * gamma^m ||d||^2.
/// Infinite objective values always reject a trial point.
LineSearchResult line_search(const CompositeProblem& problem, const Vector& x,
                             double f_x, const Vector& d, double alpha,
                             const SolverConfig& cfg);

struct SolverState {
  Vector x;
  double objective = 0.0;
  double g_norm = 0.0;
  double theta_gauge = 0.0;
  double cost_bound = 0.0;
  int k = 0;
};

SolverState init_state(const CompositeProblem& problem, Vector x0,
                       const SolverConfig& cfg);

struct StepOutcome {
  bool ok = true;
  SolveStatus failure = SolveStatus::kConverged;
};

/// One outer iteration: Hessian model, ridge, inexact subproblem solve,
/// unit-step test (skipped at k = 0), and backtracking otherwise. Appends
/// one trace record and advances the state.
StepOutcome step(const CompositeProblem& problem, SolverState& state,
                 const SolverConfig& cfg, std::vector<TraceRecord>& trace);

SolveReport solve(const CompositeProblem& problem, Vector x0,
                  const SolverConfig& cfg = {});

// Trace CSV, header row included; floats carry 17 significant digits.
void write_trace_csv(std::ostream& os, const std::vector<TraceRecord>& trace);
void write_trace_csv_file(const std::string& path,
                          const std::vector<TraceRecord>& trace);
std::vector<TraceRecord> read_trace_csv(std::istream& is);

std::string format_double(double v);  // %.17g

}  // namespace pnt
