#include "pnt/pgm.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace pnt {

SolveReport pgm_solve(const CompositeProblem& problem, Vector x0,
                      const PgmConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("pgm_solve: tol <= 0");
  if (cfg.max_iter < 1) throw std::invalid_argument("pgm_solve: max_iter < 1");
  double step;
  if (cfg.step) {
    step = *cfg.step;
  } else {
    double l1 = problem.lipschitz().value;
    if (!(l1 > 0.0))
      throw std::invalid_argument(
          "pgm_solve: L1 estimate is zero, pass an explicit step");
    step = 1.0 / l1;
  }
  if (!(step > 0.0) || !std::isfinite(step))
    throw std::invalid_argument("pgm_solve: step must be positive and finite");

  SolveReport report;
  Vector x = std::move(x0);
  for (int k = 0;; ++k) {
    double g_norm = norm(problem.prox_gradient_map(x));
    double f = problem.objective(x);
    if (g_norm <= cfg.tol) {
      report.status = SolveStatus::kConverged;
      report.final_g_norm = g_norm;
      report.final_objective = f;
      break;
    }
    if (k >= cfg.max_iter) {
      report.status = SolveStatus::kMaxOuterReached;
      report.final_g_norm = g_norm;
      report.final_objective = f;
      break;
    }
    TraceRecord rec;
    rec.k = k;
    rec.objective = f;
    rec.g_norm = g_norm;
    rec.branch = StepBranch::kPgm;
    rec.t = step;
    report.trace.push_back(rec);

    Vector grad = problem.loss().gradient(x);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] -= step * grad[j];
    x = problem.regularizer().prox(x, step);
  }
  report.x = std::move(x);
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

}  // namespace pnt
