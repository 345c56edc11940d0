#include "pnt/regularizers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pnt {

double Regularizer::prox_coordinate(std::size_t, double, double) const {
  throw std::logic_error("prox_coordinate: regularizer is not separable");
}

double soft_threshold(double u, double threshold) {
  if (u > threshold) return u - threshold;
  if (u < -threshold) return u + threshold;
  return 0.0;
}

L1::L1(double lambda) : lambda_(lambda) {
  if (lambda < 0.0) throw std::invalid_argument("L1: lambda < 0");
}

double L1::value(const Vector& x) const {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return lambda_ * s;
}

Vector L1::prox(const Vector& u, double t) const {
  if (t <= 0.0) throw std::invalid_argument("L1::prox: t <= 0");
  Vector p(u.size());
  double thr = lambda_ * t;
  for (std::size_t j = 0; j < u.size(); ++j) p[j] = soft_threshold(u[j], thr);
  return p;
}

double L1::prox_coordinate(std::size_t, double u_j, double t) const {
  return soft_threshold(u_j, lambda_ * t);
}

Box::Box(Vector lower, Vector upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size())
    throw std::invalid_argument("Box: bound length mismatch");
  for (std::size_t j = 0; j < lower_.size(); ++j)
    if (lower_[j] > upper_[j])
      throw std::invalid_argument("Box: lower > upper");
}

double Box::value(const Vector& x) const {
  if (x.size() != lower_.size())
    throw std::invalid_argument("Box::value: dimension mismatch");
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j] < lower_[j] || x[j] > upper_[j]) return kInfValue;
  return 0.0;
}

Vector Box::prox(const Vector& u, double) const {
  if (u.size() != lower_.size())
    throw std::invalid_argument("Box::prox: dimension mismatch");
  Vector p(u.size());
  for (std::size_t j = 0; j < u.size(); ++j)
    p[j] = std::clamp(u[j], lower_[j], upper_[j]);
  return p;
}

double Box::prox_coordinate(std::size_t j, double u_j, double) const {
  return std::clamp(u_j, lower_[j], upper_[j]);
}

double ZeroReg::value(const Vector&) const { return 0.0; }

Vector ZeroReg::prox(const Vector& u, double) const { return u; }

double ZeroReg::prox_coordinate(std::size_t, double u_j, double) const {
  return u_j;
}

EuclideanNorm::EuclideanNorm(double weight) : weight_(weight) {
  if (weight < 0.0) throw std::invalid_argument("EuclideanNorm: weight < 0");
}

double EuclideanNorm::value(const Vector& x) const {
  return weight_ * norm(x);
}

Vector EuclideanNorm::prox(const Vector& u, double t) const {
  if (t <= 0.0) throw std::invalid_argument("EuclideanNorm::prox: t <= 0");
  double un = norm(u);
  double thr = weight_ * t;
  if (un <= thr) return Vector(u.size(), 0.0);
  double shrink = 1.0 - thr / un;
  Vector p(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) p[j] = shrink * u[j];
  return p;
}

}  // namespace pnt
