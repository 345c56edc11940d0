import math

import pytest

try:
    import pnt
except ImportError:  # in-tree runs import the extension module directly
    import _pnt as pnt


@pytest.fixture(scope="module")
def seed7():
    return pnt.generate_synthetic_logistic(200, 50, 1.0, 7)


def test_dataset_roundtrip(seed7):
    assert seed7.shape == (200, 50)
    text = seed7.to_libsvm()
    again = pnt.parse_libsvm(text, 50)
    assert again.labels == seed7.labels
    assert again.nnz == seed7.nnz


def test_generator_is_deterministic():
    a = pnt.generate_synthetic_logistic(10, 6, 0.5, 3)
    b = pnt.generate_synthetic_logistic(10, 6, 0.5, 3)
    assert a.to_libsvm() == b.to_libsvm()


def test_prox_operators():
    assert pnt.soft_threshold(3.0, 1.0) == 2.0
    assert pnt.l1_prox(1.0, [3.0, -0.5, 1.0], 1.0) == [2.0, 0.0, 0.0]


def test_solver_converges(seed7):
    problem = pnt.logistic_l1_problem(seed7, 1e-3)
    cfg = pnt.SolverConfig()
    cfg.tol = 1e-10
    report = pnt.solve(problem, config=cfg)
    assert report.converged
    assert report.final_g_norm <= 1e-10
    assert report.outer_iterations <= 30

    thetas = [row.theta for row in report.trace]
    assert all(b <= a for a, b in zip(thetas, thetas[1:]))
    assert report.trace_csv().startswith(
        "k,F,g_norm,alpha,eta,inner_iters,branch,t,m,theta\n"
    )


def test_rate_fit_matches_quadratic_tail(seed7):
    problem = pnt.logistic_l1_problem(seed7, 1e-3)
    cfg = pnt.SolverConfig()
    cfg.tol = 1e-12
    report = pnt.solve(problem, config=cfg)
    fit = pnt.fit_convergence_order(report.residual_history())
    assert fit.order >= 1.7
    assert fit.r_squared >= 0.95


def test_pgm_baseline_needs_more_iterations(seed7):
    problem = pnt.logistic_l1_problem(seed7, 1e-3)
    cfg = pnt.SolverConfig()
    cfg.tol = 1e-6
    newton = pnt.solve(problem, config=cfg)
    pgm = pnt.pgm_solve(problem, tol=1e-6)
    assert pgm.converged
    assert pgm.outer_iterations > newton.outer_iterations
    assert all(row.branch == "pgm" for row in pgm.trace)


def test_least_squares_problem():
    problem = pnt.least_squares_problem([[2.0, 1.0], [1.0, 3.0]], [1.0, 2.0])
    report = pnt.solve(problem)
    assert report.converged
    assert math.isclose(report.x[0], 0.2, abs_tol=1e-6)
    assert math.isclose(report.x[1], 0.6, abs_tol=1e-6)


def test_linear_plus_norm_problem():
    c = [0.6, 0.8]
    problem = pnt.linear_plus_norm_problem(c)
    report = pnt.solve(problem, x0=[1.0, -1.0])
    assert report.converged
    assert report.final_objective <= 1e-8


def test_parse_error_carries_line_info():
    with pytest.raises(pnt.LibsvmParseError):
        pnt.parse_libsvm("+1 5:abc\n")


def test_rate_fit_rejects_short_sequences():
    with pytest.raises(pnt.DiagnosticsError):
        pnt.fit_convergence_order([1e-3, 1e-4, 1e-5])


def test_bound_scan_and_ratio_witness():
    c = [3.0, 4.0]
    c = [v / 5.0 for v in c]
    problem = pnt.linear_plus_norm_problem(c)
    ray = pnt.SolutionSet.ray(c)
    assert pnt.distance_to_solution_set([-2.0 * c[0], -2.0 * c[1]], ray) < 1e-12
    scan = pnt.scan_proposition_bounds(problem, ray, samples=200, seed=5)
    assert scan.lipschitz_ratio_max <= 1.0 + 1e-8
    assert scan.residual_ratio_max <= 1.0 + 1e-8
    ratios = pnt.luo_tseng_ratio_sequence(problem, ray, 20)
    assert ratios[-1] > 100.0
