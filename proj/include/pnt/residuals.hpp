#pragma once

#include <memory>
#include <optional>

#include "pnt/losses.hpp"
#include "pnt/regularizers.hpp"

namespace pnt {

/// Pairing of a smooth loss and a regularizer: min F(x) = f(x) + g(x).
/// Owns the dimension and caches the Lipschitz estimate of the gradient.
class CompositeProblem {
 public:
  CompositeProblem(std::shared_ptr<const SmoothLoss> loss,
                   std::shared_ptr<const Regularizer> reg);

  std::size_t dim() const { return loss_->dim(); }
  const SmoothLoss& loss() const { return *loss_; }
  const Regularizer& regularizer() const { return *reg_; }
  std::shared_ptr<const SmoothLoss> loss_ptr() const { return loss_; }
  std::shared_ptr<const Regularizer> regularizer_ptr() const { return reg_; }

  // Cached gradient-Lipschitz estimate L1.
  const SpectralEstimate& lipschitz() const;

  // F(x) = f(x) + g(x); +inf propagates from indicator regularizers.
  double objective(const Vector& x) const;

  // Prox-gradient mapping G(x) = x - prox_g(x - grad f(x)) with unit scale;
  // vanishes exactly on the solution set.
  Vector prox_gradient_map(const Vector& x) const;

 private:
  std::shared_ptr<const SmoothLoss> loss_;
  std::shared_ptr<const Regularizer> reg_;
  mutable std::optional<SpectralEstimate> lipschitz_;
};

inline double objective(const CompositeProblem& p, const Vector& x) {
  return p.objective(x);
}
inline Vector prox_gradient_map(const CompositeProblem& p, const Vector& x) {
  return p.prox_gradient_map(x);
}

/// Quadratic model of F at an anchor iterate:
///   q(x) = f_anchor + grad^T (x - anchor)
///          + 0.5 (x - anchor)^T H (x - anchor) + g(x).
struct SubproblemModel {
  const CompositeProblem* problem = nullptr;
  Vector anchor;
  Vector grad;     // gradient of f at the anchor
  HessianRep hess;
  double f_anchor = 0.0;

  SubproblemModel(const CompositeProblem& prob, Vector anchor_point,
                  double alpha);
  SubproblemModel(const CompositeProblem& prob, Vector anchor_point,
                  Vector gradient, HessianRep h, double f_at_anchor);

  std::size_t dim() const { return anchor.size(); }
  double anchor_value() const;               // q(anchor) = f_anchor + g(anchor)
  double value(const Vector& x) const;       // q(x)
  Vector residual(const Vector& x) const;    // x - prox_g(x - grad - H (x-anchor))
};

inline double subproblem_value(const SubproblemModel& m, const Vector& x) {
  return m.value(x);
}
inline Vector subproblem_residual(const SubproblemModel& m, const Vector& x) {
  return m.residual(x);
}

/// dist(0; grad f(x) + dg(x)), available in closed form for the L1 and Zero
/// regularizers; nullopt for regularizers without a subdifferential formula.
std::optional<double> subgradient_distance(const CompositeProblem& p,
                                           const Vector& x);

}  // namespace pnt
