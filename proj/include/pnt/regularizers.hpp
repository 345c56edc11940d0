#pragma once

#include <limits>

#include "pnt/linalg.hpp"

namespace pnt {

// Sentinel for values outside dom g; every finite double compares below it.
inline constexpr double kInfValue = std::numeric_limits<double>::infinity();

/// Convex regularizer g with value and scaled proximal operator.
/// prox(u, t) minimizes g(x) + (1/(2t)) ||x - u||^2. Separable members
/// additionally expose the coordinatewise prox used by coordinate descent.
class Regularizer {
 public:
  virtual ~Regularizer() = default;

  virtual double value(const Vector& x) const = 0;
  virtual Vector prox(const Vector& u, double t) const = 0;
  virtual bool separable() const { return false; }
  virtual double prox_coordinate(std::size_t j, double u_j, double t) const;
};

double soft_threshold(double u, double threshold);

/// g(x) = lambda * ||x||_1
class L1 final : public Regularizer {
 public:
  explicit L1(double lambda);
  double lambda() const { return lambda_; }

  double value(const Vector& x) const override;
  Vector prox(const Vector& u, double t) const override;
  bool separable() const override { return true; }
  double prox_coordinate(std::size_t j, double u_j, double t) const override;

 private:
  double lambda_;
};

/// Indicator of the box [lower, upper]; prox is the clamp, independent of t.
class Box final : public Regularizer {
 public:
  Box(Vector lower, Vector upper);
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }

  double value(const Vector& x) const override;
  Vector prox(const Vector& u, double t) const override;
  bool separable() const override { return true; }
  double prox_coordinate(std::size_t j, double u_j, double t) const override;

 private:
  Vector lower_;
  Vector upper_;
};

/// g == 0
class ZeroReg final : public Regularizer {
 public:
  double value(const Vector& x) const override;
  Vector prox(const Vector& u, double t) const override;
  bool separable() const override { return true; }
  double prox_coordinate(std::size_t j, double u_j, double t) const override;
};

/// g(x) = weight * ||x||_2 (the non-separable group norm; prox is the
/// block soft threshold). Exercises the proximal-gradient inner fallback.
class EuclideanNorm final : public Regularizer {
 public:
  explicit EuclideanNorm(double weight = 1.0);
  double weight() const { return weight_; }

  double value(const Vector& x) const override;
  Vector prox(const Vector& u, double t) const override;

 private:
  double weight_;
};

inline Vector l1_prox(double lambda, const Vector& u, double t) {
  return L1(lambda).prox(u, t);
}
inline Vector box_prox(const Vector& lower, const Vector& upper,
                       const Vector& u, double t) {
  return Box(lower, upper).prox(u, t);
}
inline double reg_value(const Regularizer& g, const Vector& x) {
  return g.value(x);
}

}  // namespace pnt
