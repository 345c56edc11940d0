#pragma once

#include "pnt/solver.hpp"

namespace pnt {

struct PgmConfig {
  std::optional<double> step;  // default 1/L1
  double tol = 1e-8;
  int max_iter = 200000;
};

/// Proximal gradient baseline: x <- prox_{t g}(x - t grad f(x)). Termination
/// uses the same unit-scale residual ||G(x)|| as the Newton-type solver so
/// iteration counts are comparable; trace rows carry branch "pgm" and the
/// step in the t column.
SolveReport pgm_solve(const CompositeProblem& problem, Vector x0,
                      const PgmConfig& cfg = {});

}  // namespace pnt
