#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pnt/linalg.hpp"
#include "pnt/rng.hpp"

#ifdef PNT_HAVE_EIGEN
#include <Eigen/Dense>
#include <Eigen/SVD>
#endif

using namespace pnt;

namespace {

// Brute-force dense matvec oracle, independent of the CSR path.
Vector dense_matvec_oracle(const std::vector<double>& dense, std::size_t rows,
                           std::size_t cols, const Vector& x) {
  Vector y(rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      y[i] += dense[i * cols + j] * x[j];
  return y;
}

SparseMatrix random_sparse(std::size_t rows, std::size_t cols, Rng& rng,
                           double density = 0.7) {
  std::vector<std::vector<std::pair<std::size_t, double>>> r(rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (rng.uniform() < density) r[i].emplace_back(j, rng.normal());
  return SparseMatrix::from_rows(cols, r);
}

Vector random_vector(std::size_t n, Rng& rng) {
  Vector v(n);
  for (double& x : v) x = rng.normal();
  return v;
}

// Dense materialization of B = scale * A^T diag(d) A + alpha I.
std::vector<double> materialize(const HessianRep& h) {
  std::size_t n = h.dim();
  std::vector<double> m(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    Vector e(n, 0.0);
    e[j] = 1.0;
    Vector col = h.apply(e);
    for (std::size_t i = 0; i < n; ++i) m[i * n + j] = col[i];
  }
  return m;
}

}  // namespace

TEST_CASE("matvec examples") {
  auto id2 = SparseMatrix::identity(2);
  CHECK(matvec(id2, {3.0, -1.0}) == Vector{3.0, -1.0});

  auto zero23 = SparseMatrix::from_rows(3, {{}, {}});
  CHECK(matvec(zero23, {1.0, 1.0, 1.0}) == Vector{0.0, 0.0});

  std::vector<double> dense = {1, 2, 0, 3};
  auto a = SparseMatrix::from_dense(2, 2, dense);
  Vector x = {1.0, 1.0};
  Vector expect = dense_matvec_oracle(dense, 2, 2, x);
  CHECK(matvec(a, x) == expect);
  CHECK(expect == Vector{3.0, 3.0});
}

TEST_CASE("matvec dimension mismatch") {
  auto id2 = SparseMatrix::identity(2);
  CHECK_THROWS_AS(matvec(id2, {1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("matvec agrees with dense oracle on random instances") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    std::size_t rows = 1 + rng.index(8), cols = 1 + rng.index(8);
    SparseMatrix a = random_sparse(rows, cols, rng);
    Vector x = random_vector(cols, rng);
    Vector got = matvec(a, x);
    Vector want = dense_matvec_oracle(a.to_dense(), rows, cols, x);
    for (std::size_t i = 0; i < rows; ++i)
      CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
  }
}

TEST_CASE("sparse matrix validates invariants") {
  CHECK_THROWS_AS(SparseMatrix(1, 3, {0, 2}, {1, 1}, {1.0, 2.0}),
                  std::invalid_argument);  // non-increasing columns
  CHECK_THROWS_AS(SparseMatrix(1, 2, {0, 1}, {5}, {1.0}),
                  std::invalid_argument);  // column out of range
  CHECK_THROWS_AS(SparseMatrix(1, 2, {0, 1}, {0}, {0.0}),
                  std::invalid_argument);  // explicit zero
}

TEST_CASE("hessian_apply examples") {
  auto h_id = HessianRep::dense(DenseMatrix::identity(2), 0.0);
  CHECK(h_id.apply({1.0, 2.0}) == Vector{1.0, 2.0});

  auto h_ridge = HessianRep::dense(DenseMatrix::zero(2), 0.5);
  CHECK(h_ridge.apply({2.0, 2.0}) == Vector{1.0, 1.0});

  auto a = SparseMatrix::from_dense(2, 2, {1, 0, 0, 2});
  auto h = HessianRep::structured(a, {1.0, 1.0}, 1.0, 0.0);
  Vector got = h.apply({1.0, 1.0});
  // Oracle: materialize A^T D A densely and compare.
  auto m = materialize(h);
  CHECK(got[0] == doctest::Approx(m[0] * 1.0 + m[1] * 1.0));
  CHECK(got == Vector{1.0, 4.0});
}

TEST_CASE("hessian_diag examples") {
  auto hd = HessianRep::dense(DenseMatrix(2, {2, 1, 1, 3}), 0.0);
  CHECK(hd.diagonal() == Vector{2.0, 3.0});

  auto a = SparseMatrix::from_dense(1, 2, {1, 2});
  auto hs = HessianRep::structured(a, {4.0}, 1.0, 1.0);
  Vector diag = hs.diagonal();
  auto m = materialize(hs);
  CHECK(diag[0] == doctest::Approx(m[0]));
  CHECK(diag[1] == doctest::Approx(m[3]));
  CHECK(diag == Vector{5.0, 17.0});

  auto h7 = HessianRep::dense(DenseMatrix::zero(3), 7.0);
  CHECK(h7.diagonal() == Vector{7.0, 7.0, 7.0});
}

TEST_CASE("hessian invariants on random instances") {
  Rng rng(5);
  for (int rep = 0; rep < 100; ++rep) {
    std::size_t rows = 1 + rng.index(6), cols = 1 + rng.index(6);
    SparseMatrix a = random_sparse(rows, cols, rng);
    Vector d(rows);
    for (double& v : d) v = std::abs(rng.normal());
    double alpha = std::abs(rng.normal());
    auto h = HessianRep::structured(a, d, 0.5, alpha);

    Vector u = random_vector(cols, rng), v = random_vector(cols, rng);
    double ca = rng.normal(), cb = rng.normal();
    Vector mix(cols);
    for (std::size_t j = 0; j < cols; ++j) mix[j] = ca * u[j] + cb * v[j];
    Vector lhs = h.apply(mix);
    Vector hu = h.apply(u), hv = h.apply(v);
    double scale = norm(lhs) + 1.0;
    for (std::size_t j = 0; j < cols; ++j)
      CHECK(lhs[j] - (ca * hu[j] + cb * hv[j]) ==
            doctest::Approx(0.0).epsilon(1.0).scale(1e-10 * scale));

    // v^T H v >= alpha ||v||^2
    CHECK(dot(v, hv) >= alpha * dot(v, v) - 1e-10 * (1.0 + dot(v, v)));

    // diagonal matches unit-vector application
    Vector diag = h.diagonal();
    for (std::size_t j = 0; j < cols; ++j) {
      Vector e(cols, 0.0);
      e[j] = 1.0;
      CHECK(diag[j] == doctest::Approx(h.apply(e)[j]).epsilon(1e-12));
    }
  }
}

TEST_CASE("spectral norm examples") {
  auto diag21 = SparseMatrix::from_dense(2, 2, {2, 0, 0, 1});
  auto est = estimate_spectral_norm(diag21);
  CHECK(est.converged);
  CHECK(est.value == doctest::Approx(2.0).epsilon(2e-6));

  auto zero = SparseMatrix::from_rows(3, {{}, {}});
  auto z = estimate_spectral_norm(zero);
  CHECK(z.converged);
  CHECK(z.value == 0.0);
}

#ifdef PNT_HAVE_EIGEN
TEST_CASE("spectral norm matches SVD oracle") {
  Rng rng(17);
  SparseMatrix a = random_sparse(5, 3, rng, 1.0);
  auto dense = a.to_dense();
  Eigen::MatrixXd m(5, 3);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = dense[i * 3 + j];
  double sigma_max = m.jacobiSvd().singularValues()(0);
  auto est = estimate_spectral_norm(a, 1e-8, 5000);
  CHECK(est.converged);
  CHECK(est.value == doctest::Approx(sigma_max).epsilon(1e-6));
}
#endif

TEST_CASE("spectral norm monotone under row deletion") {
  Rng rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    SparseMatrix a = random_sparse(6, 4, rng, 0.9);
    double full = estimate_spectral_norm(a, 1e-8, 5000).value;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      double dropped = estimate_spectral_norm(a.drop_row(i), 1e-8, 5000).value;
      CHECK(dropped <= full * (1.0 + 1e-6) + 1e-12);
    }
  }
}

TEST_CASE("spectral norm flags exhaustion of the iteration cap") {
  // nearly equal top singular values converge too slowly for two iterations
  auto a = SparseMatrix::from_dense(2, 2, {1.0, 0.0, 0.0, 0.9999});
  auto est = estimate_spectral_norm(a, 1e-12, 2);
  CHECK_FALSE(est.converged);
  CHECK(est.iterations == 2);
  CHECK(est.value > 0.9);  // best estimate is still returned
}

TEST_CASE("spectral norm deterministic for fixed seed") {
  Rng rng(31);
  SparseMatrix a = random_sparse(6, 6, rng);
  auto e1 = estimate_spectral_norm(a, 1e-6, 500, 42);
  auto e2 = estimate_spectral_norm(a, 1e-6, 500, 42);
  CHECK(e1.value == e2.value);
  CHECK(e1.iterations == e2.iterations);
}

TEST_CASE("dense hessian rejects asymmetry") {
  DenseMatrix b(2, {1.0, 2.0, 3.0, 4.0});
  CHECK_THROWS_AS(HessianRep::dense(b, 0.0), std::invalid_argument);
}
