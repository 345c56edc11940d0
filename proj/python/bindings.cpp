#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>

#include "pnt/data_io.hpp"
#include "pnt/diagnostics.hpp"
#include "pnt/pgm.hpp"
#include "pnt/solver.hpp"

namespace py = pybind11;
using namespace pnt;

namespace {

std::shared_ptr<CompositeProblem> make_logistic_l1(const Dataset& d,
                                                   double lambda) {
  return std::make_shared<CompositeProblem>(
      std::make_shared<LogisticLoss>(d.features, d.labels),
      std::make_shared<L1>(lambda));
}

std::shared_ptr<CompositeProblem> make_least_squares(
    const std::vector<std::vector<double>>& a_rows, const Vector& rhs,
    double lambda) {
  if (a_rows.empty()) throw std::invalid_argument("empty matrix");
  std::size_t cols = a_rows.front().size();
  std::vector<double> flat;
  for (const auto& r : a_rows) {
    if (r.size() != cols) throw std::invalid_argument("ragged matrix");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  auto a = SparseMatrix::from_dense(a_rows.size(), cols, flat);
  std::shared_ptr<Regularizer> reg;
  if (lambda > 0.0)
    reg = std::make_shared<L1>(lambda);
  else
    reg = std::make_shared<ZeroReg>();
  return std::make_shared<CompositeProblem>(
      std::make_shared<LeastSquaresLoss>(std::move(a), rhs), reg);
}

std::shared_ptr<CompositeProblem> make_linear_plus_norm(const Vector& c) {
  return std::make_shared<CompositeProblem>(
      std::make_shared<LinearLoss>(c), std::make_shared<EuclideanNorm>(1.0));
}

}  // namespace

PYBIND11_MODULE(_pnt, m) {
  m.doc() = "Inexact proximal Newton-type solver for composite convex "
            "optimization, with a proximal-gradient baseline and "
            "convergence-rate diagnostics.";

  py::class_<Dataset>(m, "Dataset")
      .def_property_readonly(
          "shape",
          [](const Dataset& d) {
            return py::make_tuple(d.features.rows(), d.features.cols());
          })
      .def_property_readonly(
          "nnz", [](const Dataset& d) { return d.features.nnz(); })
      .def_readonly("name", &Dataset::name)
      .def_property_readonly("labels",
                             [](const Dataset& d) { return d.labels; })
      .def("to_dense",
           [](const Dataset& d) {
             std::vector<std::vector<double>> rows(d.features.rows());
             auto flat = d.features.to_dense();
             for (std::size_t i = 0; i < d.features.rows(); ++i)
               rows[i].assign(flat.begin() + i * d.features.cols(),
                              flat.begin() + (i + 1) * d.features.cols());
             return rows;
           })
      .def("to_libsvm", [](const Dataset& d) {
        std::ostringstream os;
        serialize_libsvm(os, d);
        return os.str();
      });

  m.def("generate_synthetic_logistic", &generate_synthetic_logistic,
        py::arg("n_samples"), py::arg("n_features"), py::arg("sparsity") = 1.0,
        py::arg("seed") = 7);
  m.def(
      "parse_libsvm",
      [](const std::string& text, std::optional<std::size_t> n_features) {
        std::istringstream is(text);
        return parse_libsvm(is, n_features);
      },
      py::arg("text"), py::arg("n_features") = std::nullopt);
  m.def("load_libsvm", &parse_libsvm_file, py::arg("path"),
        py::arg("n_features") = std::nullopt);
  m.def("normalize_rows", &normalize_rows);

  py::class_<CompositeProblem, std::shared_ptr<CompositeProblem>>(
      m, "CompositeProblem")
      .def_property_readonly("dim", &CompositeProblem::dim)
      .def("objective", &CompositeProblem::objective)
      .def("prox_gradient_map", &CompositeProblem::prox_gradient_map)
      .def("gradient",
           [](const CompositeProblem& p, const Vector& x) {
             return p.loss().gradient(x);
           })
      .def_property_readonly("lipschitz", [](const CompositeProblem& p) {
        return p.lipschitz().value;
      });

  m.def("logistic_l1_problem", &make_logistic_l1, py::arg("dataset"),
        py::arg("lam"));
  m.def("least_squares_problem", &make_least_squares, py::arg("a"),
        py::arg("rhs"), py::arg("lam") = 0.0);
  m.def("linear_plus_norm_problem", &make_linear_plus_norm, py::arg("cost"));

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("theta", &SolverConfig::theta)
      .def_readwrite("sigma", &SolverConfig::sigma)
      .def_readwrite("gamma", &SolverConfig::gamma)
      .def_readwrite("cost_bound", &SolverConfig::cost_bound)
      .def_readwrite("alpha_bar", &SolverConfig::alpha_bar)
      .def_readwrite("c", &SolverConfig::c_alpha)
      .def_readwrite("rho", &SolverConfig::rho)
      .def_readwrite("nu", &SolverConfig::nu)
      .def_readwrite("varrho", &SolverConfig::varrho)
      .def_readwrite("tol", &SolverConfig::tol)
      .def_readwrite("max_outer", &SolverConfig::max_outer)
      .def_readwrite("max_inner", &SolverConfig::max_inner)
      .def_readwrite("max_backtracks", &SolverConfig::max_backtracks);

  py::class_<TraceRecord>(m, "TraceRecord")
      .def_readonly("k", &TraceRecord::k)
      .def_readonly("objective", &TraceRecord::objective)
      .def_readonly("g_norm", &TraceRecord::g_norm)
      .def_readonly("alpha", &TraceRecord::alpha)
      .def_readonly("eta", &TraceRecord::eta)
      .def_readonly("inner_iters", &TraceRecord::inner_iters)
      .def_property_readonly(
          "branch", [](const TraceRecord& r) { return to_string(r.branch); })
      .def_readonly("t", &TraceRecord::t)
      .def_readonly("m", &TraceRecord::m)
      .def_readonly("theta", &TraceRecord::theta);

  py::class_<SolveReport>(m, "SolveReport")
      .def_property_readonly(
          "status", [](const SolveReport& r) { return to_string(r.status); })
      .def_property_readonly(
          "converged",
          [](const SolveReport& r) {
            return r.status == SolveStatus::kConverged;
          })
      .def_readonly("x", &SolveReport::x)
      .def_readonly("trace", &SolveReport::trace)
      .def_readonly("final_objective", &SolveReport::final_objective)
      .def_readonly("final_g_norm", &SolveReport::final_g_norm)
      .def_readonly("wall_time_s", &SolveReport::wall_time_s)
      .def_property_readonly("outer_iterations",
                             &SolveReport::outer_iterations)
      .def_property_readonly("total_inner_iterations",
                             &SolveReport::total_inner_iterations)
      .def("residual_history", &SolveReport::residual_history)
      .def("trace_csv", [](const SolveReport& r) {
        std::ostringstream os;
        write_trace_csv(os, r.trace);
        return os.str();
      });

  m.def(
      "solve",
      [](std::shared_ptr<CompositeProblem> problem,
         std::optional<Vector> x0, const SolverConfig& cfg) {
        Vector start = x0 ? *x0 : Vector(problem->dim(), 0.0);
        return solve(*problem, std::move(start), cfg);
      },
      py::arg("problem"), py::arg("x0") = std::nullopt,
      py::arg("config") = SolverConfig{});
  m.def(
      "pgm_solve",
      [](std::shared_ptr<CompositeProblem> problem,
         std::optional<Vector> x0, std::optional<double> step, double tol,
         int max_iter) {
        Vector start = x0 ? *x0 : Vector(problem->dim(), 0.0);
        PgmConfig cfg;
        cfg.step = step;
        cfg.tol = tol;
        cfg.max_iter = max_iter;
        return pgm_solve(*problem, std::move(start), cfg);
      },
      py::arg("problem"), py::arg("x0") = std::nullopt,
      py::arg("step") = std::nullopt, py::arg("tol") = 1e-8,
      py::arg("max_iter") = 200000);

  py::class_<RateFit>(m, "RateFit")
      .def_readonly("order", &RateFit::order)
      .def_readonly("log_constant", &RateFit::log_constant)
      .def_readonly("r_squared", &RateFit::r_squared)
      .def_readonly("window_begin", &RateFit::window_begin)
      .def_readonly("window_end", &RateFit::window_end)
      .def_readonly("decades", &RateFit::decades);
  m.def("fit_convergence_order", &fit_convergence_order,
        py::arg("residuals"));

  py::class_<SolutionSetDescription>(m, "SolutionSet")
      .def_static("singleton", &SolutionSetDescription::singleton,
                  py::arg("x_star"))
      .def_static("affine", &SolutionSetDescription::affine,
                  py::arg("particular"), py::arg("null_basis"))
      .def_static("ray", &SolutionSetDescription::ray, py::arg("direction"));
  m.def("distance_to_solution_set", &distance_to_solution_set, py::arg("x"),
        py::arg("solution_set"));

  py::class_<BoundScan>(m, "BoundScan")
      .def_readonly("lipschitz_ratio_max", &BoundScan::lipschitz_ratio_max)
      .def_readonly("residual_ratio_max", &BoundScan::residual_ratio_max)
      .def_readonly("fitted_kappa", &BoundScan::fitted_kappa)
      .def_readonly("samples", &BoundScan::samples);
  m.def(
      "scan_proposition_bounds",
      [](std::shared_ptr<CompositeProblem> problem,
         const SolutionSetDescription& desc, std::size_t samples,
         std::uint64_t seed) {
        return scan_proposition_bounds(*problem, desc, samples, seed);
      },
      py::arg("problem"), py::arg("solution_set"), py::arg("samples") = 500,
      py::arg("seed") = 2024);
  m.def(
      "luo_tseng_ratio_sequence",
      [](std::shared_ptr<CompositeProblem> problem,
         const SolutionSetDescription& ray, int count) {
        return luo_tseng_ratio_sequence(*problem, ray, count);
      },
      py::arg("problem"), py::arg("ray"), py::arg("count") = 20);

  m.def("soft_threshold", &soft_threshold, py::arg("u"), py::arg("threshold"));
  m.def(
      "l1_prox",
      [](double lambda, const Vector& u, double t) {
        return l1_prox(lambda, u, t);
      },
      py::arg("lam"), py::arg("u"), py::arg("t") = 1.0);

  py::register_exception<ParseError>(m, "LibsvmParseError");
  py::register_exception<DiagnosticsError>(m, "DiagnosticsError");
}
