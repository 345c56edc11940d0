#include "pnt/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "pnt/rng.hpp"
#include "pnt/solver.hpp"

namespace pnt {

SolutionSetDescription::SolutionSetDescription(Kind k, Vector p,
                                               std::vector<Vector> z)
    : kind_(k), point_(std::move(p)), null_basis_(std::move(z)) {}

SolutionSetDescription SolutionSetDescription::singleton(Vector x_star) {
  return {Kind::kSingleton, std::move(x_star), {}};
}

SolutionSetDescription SolutionSetDescription::affine(
    Vector particular, std::vector<Vector> null_basis) {
  for (std::size_t a = 0; a < null_basis.size(); ++a) {
    if (null_basis[a].size() != particular.size())
      throw DiagnosticsError("affine set: basis dimension mismatch");
    for (std::size_t b = 0; b <= a; ++b) {
      double ip = dot(null_basis[a], null_basis[b]);
      double want = (a == b) ? 1.0 : 0.0;
      if (std::abs(ip - want) > 1e-10)
        throw DiagnosticsError("affine set: basis not orthonormal");
    }
  }
  return {Kind::kAffine, std::move(particular), std::move(null_basis)};
}

SolutionSetDescription SolutionSetDescription::ray(Vector direction) {
  if (std::abs(norm(direction) - 1.0) > 1e-10)
    throw DiagnosticsError("ray: direction must have unit norm");
  return {Kind::kRay, std::move(direction), {}};
}

double distance_to_solution_set(const Vector& x,
                                const SolutionSetDescription& desc) {
  switch (desc.kind()) {
    case SolutionSetDescription::Kind::kSingleton:
      return norm_diff(x, desc.point());
    case SolutionSetDescription::Kind::kAffine: {
      Vector r(x.size());
      for (std::size_t j = 0; j < x.size(); ++j)
        r[j] = x[j] - desc.point()[j];
      Vector proj(x.size(), 0.0);
      for (const Vector& z : desc.null_basis()) axpy(dot(z, r), z, proj);
      return norm_diff(r, proj);
    }
    case SolutionSetDescription::Kind::kRay: {
      // X* = {-gamma u : gamma >= 0}
      const Vector& u = desc.ray_direction();
      double along = -dot(x, u);  // <x, -u>
      if (along <= 0.0) return norm(x);
      Vector p(x.size());
      for (std::size_t j = 0; j < x.size(); ++j) p[j] = x[j] + along * u[j];
      return norm(p);
    }
  }
  return 0.0;
}

RateFit fit_convergence_order(const std::vector<double>& residuals) {
  if (residuals.size() < 4)
    throw DiagnosticsError("rate fit: need at least 4 residuals");
  for (double r : residuals)
    if (!(r > 0.0)) throw DiagnosticsError("rate fit: residuals must be > 0");

  // Longest strictly decreasing suffix with r <= 1e-2.
  std::size_t end = residuals.size();
  std::size_t begin = end - 1;
  if (residuals[begin] > 1e-2)
    throw DiagnosticsError("rate fit: tail residual above 1e-2");
  while (begin > 0 && residuals[begin - 1] <= 1e-2 &&
         residuals[begin - 1] > residuals[begin])
    --begin;

  const std::size_t len = end - begin;
  if (len < 3) throw DiagnosticsError("rate fit: window too short");
  // The decade requirement is measured over the whole strictly decreasing
  // tail; the 1e-2 cap only trims the pre-asymptotic phase from the fit.
  std::size_t tail = begin;
  while (tail > 0 && residuals[tail - 1] > residuals[tail]) --tail;
  if (std::log10(residuals[tail] / residuals[end - 1]) < 3.0)
    throw DiagnosticsError("rate fit: residuals span fewer than 3 decades");

  // Pairs (log r_k, log r_{k+1}) within the window.
  std::vector<double> xs, ys;
  for (std::size_t i = begin; i + 1 < end; ++i) {
    xs.push_back(std::log(residuals[i]));
    ys.push_back(std::log(residuals[i + 1]));
  }
  const double np = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= np;
  my /= np;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  RateFit fit;
  fit.order = sxy / sxx;
  fit.log_constant = my - fit.order * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double e = ys[i] - (fit.order * xs[i] + fit.log_constant);
    ss_res += e * e;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.window_begin = begin;
  fit.window_end = end;
  fit.decades = std::log10(residuals[begin] / residuals[end - 1]);
  return fit;
}

BoundScan scan_proposition_bounds(const CompositeProblem& problem,
                                  const SolutionSetDescription& desc,
                                  std::size_t sample_count,
                                  std::uint64_t seed) {
  const std::size_t n = problem.dim();
  const double l1 = problem.lipschitz().value;
  const double lip_const = 2.0 + l1;
  Rng rng(seed);

  auto sample_base = [&]() -> Vector {
    switch (desc.kind()) {
      case SolutionSetDescription::Kind::kSingleton:
        return desc.point();
      case SolutionSetDescription::Kind::kAffine: {
        Vector x = desc.point();
        for (const Vector& z : desc.null_basis())
          axpy(2.0 * rng.normal(), z, x);
        return x;
      }
      case SolutionSetDescription::Kind::kRay: {
        Vector x(n);
        double gamma = 2.0 * std::abs(rng.normal());
        for (std::size_t j = 0; j < n; ++j)
          x[j] = -gamma * desc.ray_direction()[j];
        return x;
      }
    }
    return Vector(n, 0.0);
  };

  BoundScan scan;
  Vector prev_x;
  Vector prev_g;
  for (std::size_t s = 0; s < sample_count; ++s) {
    Vector x = sample_base();
    double radius = rng.uniform();
    for (std::size_t j = 0; j < n; ++j) x[j] += radius * rng.normal();
    Vector g = problem.prox_gradient_map(x);
    double gn = norm(g);
    double dist = distance_to_solution_set(x, desc);

    if (dist > 1e-12)
      scan.residual_ratio_max =
          std::max(scan.residual_ratio_max, gn / (lip_const * dist));
    if (gn > 1e-12)
      scan.fitted_kappa = std::max(scan.fitted_kappa, dist / gn);
    if (s > 0) {
      double dx = norm_diff(x, prev_x);
      if (dx > 1e-12)
        scan.lipschitz_ratio_max = std::max(
            scan.lipschitz_ratio_max, norm_diff(g, prev_g) / (lip_const * dx));
    }
    prev_x = std::move(x);
    prev_g = std::move(g);
    ++scan.samples;
  }
  return scan;
}

std::vector<double> luo_tseng_ratio_sequence(const CompositeProblem& problem,
                                             const SolutionSetDescription& ray,
                                             int count) {
  if (ray.kind() != SolutionSetDescription::Kind::kRay)
    throw DiagnosticsError("luo_tseng_ratio_sequence: needs a ray");
  const Vector& u = ray.ray_direction();
  const std::size_t n = u.size();
  if (n < 2)
    throw DiagnosticsError("luo_tseng_ratio_sequence: dimension >= 2 needed");

  // Unit vector orthogonal to u: orthogonalize the least-aligned axis.
  std::size_t pivot = 0;
  for (std::size_t j = 1; j < n; ++j)
    if (std::abs(u[j]) < std::abs(u[pivot])) pivot = j;
  Vector e(n, 0.0);
  e[pivot] = 1.0;
  axpy(-u[pivot], u, e);
  double en = norm(e);
  for (double& v : e) v /= en;

  std::vector<double> ratios;
  ratios.reserve(count);
  double phi = 0.78539816339744831;  // pi/4, halved at every step
  for (int k = 0; k < count; ++k) {
    double cphi = std::cos(phi);
    double sphi = std::sin(phi);
    double gamma = 1.0 / (std::sqrt(2.0) * std::sin(0.5 * phi));
    Vector x(n);
    for (std::size_t j = 0; j < n; ++j)
      x[j] = -gamma * (cphi * u[j] + sphi * e[j]);
    double gn = norm(problem.prox_gradient_map(x));
    double dist = distance_to_solution_set(x, ray);
    ratios.push_back(gn > 0.0 ? dist / gn : kInfValue);
    phi *= 0.5;
  }
  return ratios;
}

void write_diagnostics_csv(std::ostream& os,
                           const std::vector<DiagnosticRow>& rows) {
  os << "problem_id,bound_name,max_ratio,fitted_kappa,fitted_p,r_squared\n";
  for (const auto& r : rows) {
    os << r.problem_id << ',' << r.bound_name << ','
       << format_double(r.max_ratio) << ',' << format_double(r.fitted_kappa)
       << ',' << format_double(r.fitted_p) << ','
       << format_double(r.r_squared) << '\n';
  }
}

}  // namespace pnt
