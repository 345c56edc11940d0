#include "pnt/residuals.hpp"

#include <cmath>
#include <stdexcept>

namespace pnt {

CompositeProblem::CompositeProblem(std::shared_ptr<const SmoothLoss> loss,
                                   std::shared_ptr<const Regularizer> reg)
    : loss_(std::move(loss)), reg_(std::move(reg)) {
  if (!loss_ || !reg_)
    throw std::invalid_argument("CompositeProblem: null component");
}

const SpectralEstimate& CompositeProblem::lipschitz() const {
  if (!lipschitz_) lipschitz_ = loss_->lipschitz_gradient();
  return *lipschitz_;
}

double CompositeProblem::objective(const Vector& x) const {
  double g = reg_->value(x);
  if (g == kInfValue) return kInfValue;
  return loss_->value(x) + g;
}

Vector CompositeProblem::prox_gradient_map(const Vector& x) const {
  Vector u = loss_->gradient(x);
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = x[j] - u[j];
  Vector p = reg_->prox(u, 1.0);
  for (std::size_t j = 0; j < p.size(); ++j) p[j] = x[j] - p[j];
  return p;
}

SubproblemModel::SubproblemModel(const CompositeProblem& prob,
                                 Vector anchor_point, double alpha)
    : problem(&prob),
      anchor(std::move(anchor_point)),
      grad(prob.loss().gradient(anchor)),
      hess(prob.loss().hessian(anchor)),
      f_anchor(prob.loss().value(anchor)) {
  hess.set_alpha(alpha);
}

SubproblemModel::SubproblemModel(const CompositeProblem& prob,
                                 Vector anchor_point, Vector gradient,
                                 HessianRep h, double f_at_anchor)
    : problem(&prob),
      anchor(std::move(anchor_point)),
      grad(std::move(gradient)),
      hess(std::move(h)),
      f_anchor(f_at_anchor) {
  if (grad.size() != anchor.size() || hess.dim() != anchor.size())
    throw std::invalid_argument("SubproblemModel: dimension mismatch");
}

double SubproblemModel::anchor_value() const {
  return f_anchor + problem->regularizer().value(anchor);
}

double SubproblemModel::value(const Vector& x) const {
  if (x.size() != anchor.size())
    throw std::invalid_argument("SubproblemModel::value: dimension mismatch");
  double g = problem->regularizer().value(x);
  if (g == kInfValue) return kInfValue;
  Vector step(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) step[j] = x[j] - anchor[j];
  Vector hs = hess.apply(step);
  return f_anchor + dot(grad, step) + 0.5 * dot(step, hs) + g;
}

Vector SubproblemModel::residual(const Vector& x) const {
  if (x.size() != anchor.size())
    throw std::invalid_argument(
        "SubproblemModel::residual: dimension mismatch");
  Vector step(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) step[j] = x[j] - anchor[j];
  Vector hs = hess.apply(step);
  Vector u(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) u[j] = x[j] - grad[j] - hs[j];
  Vector p = problem->regularizer().prox(u, 1.0);
  for (std::size_t j = 0; j < x.size(); ++j) p[j] = x[j] - p[j];
  return p;
}

std::optional<double> subgradient_distance(const CompositeProblem& p,
                                           const Vector& x) {
  Vector grad = p.loss().gradient(x);
  if (dynamic_cast<const ZeroReg*>(&p.regularizer()) != nullptr)
    return norm(grad);
  const auto* l1 = dynamic_cast<const L1*>(&p.regularizer());
  if (l1 == nullptr) return std::nullopt;
  const double lambda = l1->lambda();
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double c;
    if (x[j] > 0.0)
      c = grad[j] + lambda;
    else if (x[j] < 0.0)
      c = grad[j] - lambda;
    else
      c = std::max(std::abs(grad[j]) - lambda, 0.0);
    s += c * c;
  }
  return std::sqrt(s);
}

}  // namespace pnt
