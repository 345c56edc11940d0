#pragma once

#include "pnt/linalg.hpp"

namespace pnt {

/// Smooth convex loss f with value, gradient, and a Hessian representation
/// (returned with alpha = 0). lipschitz_gradient() returns the closed-form
/// bound on the gradient's Lipschitz constant, carrying the convergence flag
/// of the underlying spectral estimate.
class SmoothLoss {
 public:
  virtual ~SmoothLoss() = default;

  virtual std::size_t dim() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  virtual HessianRep hessian(const Vector& x) const = 0;
  virtual SpectralEstimate lipschitz_gradient() const = 0;
};

/// f(x) = (1/N) sum_i log(1 + exp(-b_i a_i^T x)) with labels b_i in {-1,+1}.
/// Evaluation uses the overflow-safe split log1p(exp(-|z|)) + max(0, -z),
/// so the value stays finite on separable data where |z| exceeds 700.
class LogisticLoss final : public SmoothLoss {
 public:
  LogisticLoss(SparseMatrix features, Vector labels);

  std::size_t dim() const override { return features_.cols(); }
  std::size_t sample_count() const { return features_.rows(); }
  const SparseMatrix& features() const { return features_; }
  const Vector& labels() const { return labels_; }

  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  // Structured representation (1/N) A^T diag(d) A with d_i = s_i (1 - s_i).
  HessianRep hessian(const Vector& x) const override;
  // ||A||^2 / (4N)
  SpectralEstimate lipschitz_gradient() const override;

 private:
  SparseMatrix features_;
  Vector labels_;

  Vector margins(const Vector& x) const;  // z_i = b_i a_i^T x
};

/// f(x) = 0.5 ||A x - rhs||^2
class LeastSquaresLoss final : public SmoothLoss {
 public:
  LeastSquaresLoss(SparseMatrix a, Vector rhs);

  std::size_t dim() const override { return a_.cols(); }
  const SparseMatrix& matrix() const { return a_; }
  const Vector& rhs() const { return rhs_; }

  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  HessianRep hessian(const Vector& x) const override;
  // ||A||^2
  SpectralEstimate lipschitz_gradient() const override;

 private:
  SparseMatrix a_;
  Vector rhs_;
  Vector ones_;
};

/// f(x) = c^T x; the gradient is constant, so its Lipschitz constant is 0.
class LinearLoss final : public SmoothLoss {
 public:
  explicit LinearLoss(Vector c);

  std::size_t dim() const override { return c_.size(); }
  const Vector& cost() const { return c_; }

  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  HessianRep hessian(const Vector& x) const override;
  SpectralEstimate lipschitz_gradient() const override;

 private:
  Vector c_;
  SparseMatrix empty_;  // 0 x n, backs the (zero) structured Hessian
};

double sigmoid(double t);

}  // namespace pnt
