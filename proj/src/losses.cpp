#include "pnt/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace pnt {

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  double e = std::exp(t);
  return e / (1.0 + e);
}

LogisticLoss::LogisticLoss(SparseMatrix features, Vector labels)
    : features_(std::move(features)), labels_(std::move(labels)) {
  if (labels_.size() != features_.rows())
    throw std::invalid_argument("LogisticLoss: label count != rows");
  if (features_.rows() == 0)
    throw std::invalid_argument("LogisticLoss: empty dataset");
  for (double b : labels_)
    if (b != 1.0 && b != -1.0)
      throw std::invalid_argument("LogisticLoss: labels must be +-1");
}

Vector LogisticLoss::margins(const Vector& x) const {
  Vector z = features_.multiply(x);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] *= labels_[i];
  return z;
}

double LogisticLoss::value(const Vector& x) const {
  Vector z = margins(x);
  double s = 0.0;
  for (double zi : z)
    s += std::log1p(std::exp(-std::abs(zi))) + std::max(0.0, -zi);
  return s / static_cast<double>(z.size());
}

Vector LogisticLoss::gradient(const Vector& x) const {
  Vector z = margins(x);
  const double inv_n = 1.0 / static_cast<double>(z.size());
  Vector w(z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    w[i] = -labels_[i] * sigmoid(-z[i]) * inv_n;
  return features_.multiply_transpose(w);
}

HessianRep LogisticLoss::hessian(const Vector& x) const {
  Vector z = margins(x);
  Vector d(z.size());
  // d_i = s_i (1 - s_i) evaluated as sigmoid(z) sigmoid(-z): the product
  // form keeps d_i > 0 on saturated margins where 1 - s would cancel.
  for (std::size_t i = 0; i < z.size(); ++i)
    d[i] = sigmoid(z[i]) * sigmoid(-z[i]);
  return HessianRep::structured(features_, std::move(d),
                                1.0 / static_cast<double>(z.size()));
}

SpectralEstimate LogisticLoss::lipschitz_gradient() const {
  SpectralEstimate est = estimate_spectral_norm(features_);
  est.value = est.value * est.value / (4.0 * static_cast<double>(sample_count()));
  return est;
}

LeastSquaresLoss::LeastSquaresLoss(SparseMatrix a, Vector rhs)
    : a_(std::move(a)), rhs_(std::move(rhs)), ones_(a_.rows(), 1.0) {
  if (rhs_.size() != a_.rows())
    throw std::invalid_argument("LeastSquaresLoss: rhs length != rows");
}

double LeastSquaresLoss::value(const Vector& x) const {
  Vector r = a_.multiply(x);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    double d = r[i] - rhs_[i];
    s += d * d;
  }
  return 0.5 * s;
}

Vector LeastSquaresLoss::gradient(const Vector& x) const {
  Vector r = a_.multiply(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= rhs_[i];
  return a_.multiply_transpose(r);
}

HessianRep LeastSquaresLoss::hessian(const Vector&) const {
  return HessianRep::structured(a_, ones_, 1.0);
}

SpectralEstimate LeastSquaresLoss::lipschitz_gradient() const {
  SpectralEstimate est = estimate_spectral_norm(a_);
  est.value = est.value * est.value;
  return est;
}

LinearLoss::LinearLoss(Vector c)
    : c_(std::move(c)), empty_(0, c_.size(), {0}, {}, {}) {
  if (c_.empty()) throw std::invalid_argument("LinearLoss: empty cost");
}

double LinearLoss::value(const Vector& x) const { return dot(c_, x); }

Vector LinearLoss::gradient(const Vector& x) const {
  if (x.size() != c_.size())
    throw std::invalid_argument("LinearLoss: dimension mismatch");
  return c_;
}

HessianRep LinearLoss::hessian(const Vector&) const {
  return HessianRep::structured(empty_, {}, 1.0);
}

SpectralEstimate LinearLoss::lipschitz_gradient() const {
  return {0.0, true, 0};
}

}  // namespace pnt
