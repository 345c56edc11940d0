#include "pnt/subsolver.hpp"

#include <cmath>
#include <stdexcept>

namespace pnt {

namespace {

struct CheckResult {
  double residual_norm;
  double q_value;
};

// Residual and model value at the current inner iterate, computed from a
// fresh Hessian application so that cached products cannot drift into the
// stopping test.
CheckResult evaluate(const SubproblemModel& model, const Vector& x,
                     const Vector& diff) {
  const Regularizer& reg = model.problem->regularizer();
  Vector hx = model.hess.apply(diff);
  Vector u(x.size());
  for (std::size_t j = 0; j < x.size(); ++j)
    u[j] = x[j] - model.grad[j] - hx[j];
  Vector p = reg.prox(u, 1.0);
  double rsq = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double rj = x[j] - p[j];
    rsq += rj * rj;
  }
  double q = model.f_anchor + dot(model.grad, diff) + 0.5 * dot(diff, hx) +
             reg.value(x);
  return {std::sqrt(rsq), q};
}

InnerResult run_inner(const SubproblemModel& model, double resid_threshold,
                      long max_inner, bool check_anchor) {
  const std::size_t n = model.dim();
  const Regularizer& reg = model.problem->regularizer();
  const double alpha = model.hess.alpha();
  const double q_anchor = model.anchor_value();
  // q(anchor) <= q(anchor) holds with equality; the tolerance only absorbs
  // roundoff in the recomputed model value.
  const double q_slack = 1e-12;

  InnerResult result;
  result.x_hat = model.anchor;
  Vector diff(n, 0.0);

  if (check_anchor) {
    CheckResult c = evaluate(model, result.x_hat, diff);
    result.residual_norm = c.residual_norm;
    result.q_drop = q_anchor - c.q_value;
    if (c.residual_norm <= resid_threshold) {
      result.converged = true;
      return result;
    }
  }

  if (reg.separable()) {
    const Vector diag = model.hess.diagonal();
    const bool structured = model.hess.is_structured();
    Vector cache;  // structured: A*diff (length m); dense: B*diff (length n)
    const SparseMatrix* a = nullptr;
    const Vector* d = nullptr;
    double scale = 1.0;
    const DenseMatrix* b = nullptr;
    if (structured) {
      const auto& s = model.hess.structured_rep();
      a = s.a;
      d = &s.d;
      scale = s.scale;
      cache.assign(a->rows(), 0.0);
    } else {
      b = &model.hess.dense_rep().b;
      cache.assign(n, 0.0);
    }

    for (long sweep = 1; sweep <= max_inner; ++sweep) {
      for (std::size_t j = 0; j < n; ++j) {
        double hjj = diag[j];
        if (hjj <= 0.0) continue;  // flat coordinate, nothing to minimize
        double partial = model.grad[j] + alpha * diff[j];
        if (structured) {
          auto rows = a->col_rows(j);
          auto vals = a->col_values(j);
          double s = 0.0;
          for (std::size_t p = 0; p < rows.size(); ++p)
            s += vals[p] * (*d)[rows[p]] * cache[rows[p]];
          partial += scale * s;
        } else {
          partial += cache[j];
        }
        double xj = result.x_hat[j];
        double xj_new = reg.prox_coordinate(j, xj - partial / hjj, 1.0 / hjj);
        double delta = xj_new - xj;
        if (delta == 0.0) continue;
        result.x_hat[j] = xj_new;
        diff[j] += delta;
        if (structured) {
          auto rows = a->col_rows(j);
          auto vals = a->col_values(j);
          for (std::size_t p = 0; p < rows.size(); ++p)
            cache[rows[p]] += delta * vals[p];
        } else {
          for (std::size_t i = 0; i < n; ++i)
            cache[i] += delta * (*b)(i, j);
        }
      }
      result.inner_iters = sweep;
      CheckResult c = evaluate(model, result.x_hat, diff);
      result.residual_norm = c.residual_norm;
      result.q_drop = q_anchor - c.q_value;
      if (c.residual_norm <= resid_threshold && result.q_drop >= -q_slack) {
        result.converged = true;
        return result;
      }
    }
  } else {
    // Proximal-gradient fallback on the model.
    double b_norm = estimate_operator_norm(model.hess).value;
    double denom = b_norm + alpha;
    double step = denom > 0.0 ? 1.0 / denom : 1.0;
    for (long it = 1; it <= max_inner; ++it) {
      Vector hx = model.hess.apply(diff);
      Vector u(n);
      for (std::size_t j = 0; j < n; ++j)
        u[j] = result.x_hat[j] - step * (model.grad[j] + hx[j]);
      result.x_hat = reg.prox(u, step);
      for (std::size_t j = 0; j < n; ++j)
        diff[j] = result.x_hat[j] - model.anchor[j];
      result.inner_iters = it;
      CheckResult c = evaluate(model, result.x_hat, diff);
      result.residual_norm = c.residual_norm;
      result.q_drop = q_anchor - c.q_value;
      if (c.residual_norm <= resid_threshold && result.q_drop >= -q_slack) {
        result.converged = true;
        return result;
      }
    }
  }
  return result;
}

}  // namespace

InnerResult solve_subproblem(const SubproblemModel& model, double g_norm,
                             double eta, long max_inner) {
  if (eta < 0.0 || eta >= 1.0)
    throw std::invalid_argument("solve_subproblem: eta must be in [0,1)");
  if (max_inner < 1)
    throw std::invalid_argument("solve_subproblem: max_inner < 1");
  return run_inner(model, eta * g_norm, max_inner, false);
}

Vector exact_subproblem_oracle(const SubproblemModel& model, double tol,
                               long max_inner) {
  if (tol <= 0.0)
    throw std::invalid_argument("exact_subproblem_oracle: tol <= 0");
  InnerResult r = run_inner(model, tol, max_inner, true);
  if (!r.converged)
    throw std::runtime_error("exact_subproblem_oracle: no convergence");
  return r.x_hat;
}

}  // namespace pnt
