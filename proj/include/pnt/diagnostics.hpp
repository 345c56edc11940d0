#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "pnt/residuals.hpp"

namespace pnt {

class DiagnosticsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Known solution sets for the bundled test problems: a single point, an
/// affine set (particular solution plus orthonormal null-space basis), or
/// the ray {-gamma u : gamma >= 0}.
class SolutionSetDescription {
 public:
  enum class Kind { kSingleton, kAffine, kRay };

  static SolutionSetDescription singleton(Vector x_star);
  static SolutionSetDescription affine(Vector particular,
                                       std::vector<Vector> null_basis);
  static SolutionSetDescription ray(Vector direction);

  Kind kind() const { return kind_; }
  const Vector& point() const { return point_; }
  const std::vector<Vector>& null_basis() const { return null_basis_; }
  const Vector& ray_direction() const { return point_; }

 private:
  Kind kind_;
  Vector point_;  // singleton x*, affine particular solution, or ray direction
  std::vector<Vector> null_basis_;

  SolutionSetDescription(Kind k, Vector p, std::vector<Vector> z);
};

double distance_to_solution_set(const Vector& x,
                                const SolutionSetDescription& desc);

struct RateFit {
  double order = 0.0;         // fitted exponent p in r_{k+1} ~ exp(c) r_k^p
  double log_constant = 0.0;  // c
  double r_squared = 0.0;
  std::size_t window_begin = 0;  // [begin, end) into the residual sequence
  std::size_t window_end = 0;
  double decades = 0.0;  // log10(r_begin / r_last) over the window
};

/// Least-squares fit of log r_{k+1} = p log r_k + c over the tail window
/// (the longest strictly decreasing suffix with r <= 1e-2, skipping the
/// pre-asymptotic phase). Throws DiagnosticsError when the window is too
/// short or spans fewer than 3 decades.
RateFit fit_convergence_order(const std::vector<double>& residuals);

struct BoundScan {
  // ||G(x) - G(y)|| / ((2 + L1) ||x - y||), over sampled pairs; <= 1 required
  double lipschitz_ratio_max = 0.0;
  // ||G(x)|| / ((2 + L1) dist(x; X*)), over samples; <= 1 required
  double residual_ratio_max = 0.0;
  // empirical subregularity modulus: max dist(x; X*) / ||G(x)||
  double fitted_kappa = 0.0;
  std::size_t samples = 0;
};

/// Samples points around the known solution set and evaluates the hard
/// residual bounds plus the empirical modulus for q = 1.
BoundScan scan_proposition_bounds(const CompositeProblem& problem,
                                  const SolutionSetDescription& desc,
                                  std::size_t sample_count,
                                  std::uint64_t seed);

/// dist(x_k; X*) / ||G(x_k)|| along the diverging sequence x_k built from
/// unit rotations toward the ray direction; unbounded growth here witnesses
/// the failure of the global error bound while subregularity still holds.
std::vector<double> luo_tseng_ratio_sequence(const CompositeProblem& problem,
                                             const SolutionSetDescription& ray,
                                             int count);

struct DiagnosticRow {
  std::string problem_id;
  std::string bound_name;
  double max_ratio;
  double fitted_kappa;
  double fitted_p;
  double r_squared;
};

void write_diagnostics_csv(std::ostream& os,
                           const std::vector<DiagnosticRow>& rows);

}  // namespace pnt
