#pragma once

#include "pnt/residuals.hpp"

namespace pnt {

struct InnerResult {
  Vector x_hat;
  long inner_iters = 0;      // full coordinate sweeps or prox-gradient steps
  double residual_norm = 0.0;  // ||r(x_hat)|| of the model residual
  double q_drop = 0.0;         // q(anchor) - q(x_hat)
  bool converged = false;
};

/// Inexact minimization of the quadratic model. Separable regularizers are
/// handled by cyclic coordinate descent with incrementally maintained
/// products (O(nnz(col j)) per coordinate update); anything else falls back
/// to monotone proximal-gradient steps with step 1/(||B|| + alpha).
/// Starting from the anchor, the stopping test
///   ||r(x)|| <= eta * g_norm  and  q(x) <= q(anchor)
/// is evaluated after every full sweep; the first iterate passing both is
/// returned. If max_inner is exhausted the best iterate is returned with
/// converged = false and the caller decides whether to abort.
InnerResult solve_subproblem(const SubproblemModel& model, double g_norm,
                             double eta, long max_inner);

/// High-accuracy solve to an absolute residual: returns x with ||r(x)|| <= tol.
/// Throws on nonconvergence.
Vector exact_subproblem_oracle(const SubproblemModel& model, double tol,
                               long max_inner = 2000000);

}  // namespace pnt
