#include "pnt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pnt/rng.hpp"

namespace pnt {

double dot(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm(const Vector& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double norm_diff(const Vector& x, const Vector& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("norm_diff: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double d = x[i] - y[i];
    s += d * d;
  }
  return std::sqrt(s);
}

void axpy(double a, const Vector& x, Vector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: size mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols,
                           std::vector<std::size_t> row_ptr,
                           std::vector<std::size_t> col_idx,
                           std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      row_ptr_(std::move(row_ptr)),
      col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
  if (row_ptr_.size() != rows_ + 1 || row_ptr_.front() != 0 ||
      row_ptr_.back() != col_idx_.size() || col_idx_.size() != values_.size())
    throw std::invalid_argument("SparseMatrix: inconsistent CSR arrays");
  for (std::size_t i = 0; i < rows_; ++i) {
    if (row_ptr_[i] > row_ptr_[i + 1])
      throw std::invalid_argument("SparseMatrix: row_ptr not nondecreasing");
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
      if (col_idx_[p] >= cols_)
        throw std::invalid_argument("SparseMatrix: column index out of range");
      if (p > row_ptr_[i] && col_idx_[p] <= col_idx_[p - 1])
        throw std::invalid_argument(
            "SparseMatrix: column indices not strictly increasing in row " +
            std::to_string(i));
      if (values_[p] == 0.0)
        throw std::invalid_argument("SparseMatrix: explicit zero stored");
    }
  }
  build_column_index();
}

void SparseMatrix::build_column_index() {
  col_ptr_.assign(cols_ + 1, 0);
  for (std::size_t j : col_idx_) ++col_ptr_[j + 1];
  for (std::size_t j = 0; j < cols_; ++j) col_ptr_[j + 1] += col_ptr_[j];
  row_idx_.resize(values_.size());
  values_csc_.resize(values_.size());
  std::vector<std::size_t> fill(col_ptr_.begin(), col_ptr_.end() - 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
      std::size_t q = fill[col_idx_[p]]++;
      row_idx_[q] = i;
      values_csc_[q] = values_[p];
    }
  }
  col_sq_norms_.assign(cols_, 0.0);
  for (std::size_t p = 0; p < values_.size(); ++p)
    col_sq_norms_[col_idx_[p]] += values_[p] * values_[p];
}

SparseMatrix SparseMatrix::from_rows(
    std::size_t cols,
    const std::vector<std::vector<std::pair<std::size_t, double>>>& rows) {
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::size_t> col_idx;
  std::vector<double> values;
  for (const auto& r : rows) {
    for (const auto& [j, v] : r) {
      if (v == 0.0) continue;
      col_idx.push_back(j);
      values.push_back(v);
    }
    row_ptr.push_back(col_idx.size());
  }
  return SparseMatrix(rows.size(), cols, std::move(row_ptr),
                      std::move(col_idx), std::move(values));
}

SparseMatrix SparseMatrix::from_dense(std::size_t rows, std::size_t cols,
                                      const std::vector<double>& row_major) {
  if (row_major.size() != rows * cols)
    throw std::invalid_argument("from_dense: size mismatch");
  std::vector<std::vector<std::pair<std::size_t, double>>> r(rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (row_major[i * cols + j] != 0.0)
        r[i].emplace_back(j, row_major[i * cols + j]);
  return from_rows(cols, r);
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<std::vector<std::pair<std::size_t, double>>> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i].emplace_back(i, 1.0);
  return from_rows(n, r);
}

Vector SparseMatrix::multiply(const Vector& x) const {
  if (x.size() != cols_)
    throw std::invalid_argument("SparseMatrix::multiply: dimension mismatch");
  Vector y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
      s += values_[p] * x[col_idx_[p]];
    y[i] = s;
  }
  return y;
}

Vector SparseMatrix::multiply_transpose(const Vector& y) const {
  if (y.size() != rows_)
    throw std::invalid_argument(
        "SparseMatrix::multiply_transpose: dimension mismatch");
  Vector x(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double yi = y[i];
    if (yi == 0.0) continue;
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
      x[col_idx_[p]] += values_[p] * yi;
  }
  return x;
}

SparseMatrix SparseMatrix::drop_row(std::size_t i) const {
  if (i >= rows_) throw std::invalid_argument("drop_row: index out of range");
  std::vector<std::vector<std::pair<std::size_t, double>>> r;
  r.reserve(rows_ - 1);
  for (std::size_t k = 0; k < rows_; ++k) {
    if (k == i) continue;
    std::vector<std::pair<std::size_t, double>> row;
    for (std::size_t p = row_ptr_[k]; p < row_ptr_[k + 1]; ++p)
      row.emplace_back(col_idx_[p], values_[p]);
    r.push_back(std::move(row));
  }
  return from_rows(cols_, r);
}

std::vector<double> SparseMatrix::to_dense() const {
  std::vector<double> d(rows_ * cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
      d[i * cols_ + col_idx_[p]] = values_[p];
  return d;
}

Vector matvec(const SparseMatrix& a, const Vector& x) {
  return a.multiply(x);
}

DenseMatrix::DenseMatrix(std::size_t n_, std::vector<double> d)
    : n(n_), data(std::move(d)) {
  if (data.size() != n * n)
    throw std::invalid_argument("DenseMatrix: size mismatch");
}

DenseMatrix DenseMatrix::zero(std::size_t n) {
  return DenseMatrix(n, std::vector<double>(n * n, 0.0));
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m = zero(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

Vector matvec(const DenseMatrix& a, const Vector& x) {
  if (x.size() != a.n)
    throw std::invalid_argument("DenseMatrix matvec: dimension mismatch");
  Vector y(a.n, 0.0);
  for (std::size_t i = 0; i < a.n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.n; ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

namespace {

void check_symmetric(const DenseMatrix& b) {
  double scale = 0.0;
  for (double v : b.data) scale = std::max(scale, std::abs(v));
  double tol = 1e-12 * std::max(scale, 1.0);
  for (std::size_t i = 0; i < b.n; ++i)
    for (std::size_t j = i + 1; j < b.n; ++j)
      if (std::abs(b(i, j) - b(j, i)) > tol)
        throw std::invalid_argument("HessianRep: dense matrix not symmetric");
}

}  // namespace

HessianRep::HessianRep(Dense dense, double alpha)
    : rep_(std::move(dense)), alpha_(alpha) {
  if (alpha_ < 0.0) throw std::invalid_argument("HessianRep: alpha < 0");
  check_symmetric(std::get<Dense>(rep_).b);
}

HessianRep::HessianRep(Structured structured, double alpha)
    : rep_(std::move(structured)), alpha_(alpha) {
  if (alpha_ < 0.0) throw std::invalid_argument("HessianRep: alpha < 0");
  const auto& s = std::get<Structured>(rep_);
  if (s.a == nullptr) throw std::invalid_argument("HessianRep: null matrix");
  if (s.d.size() != s.a->rows())
    throw std::invalid_argument("HessianRep: weight length != rows");
  for (double w : s.d)
    if (w < 0.0) throw std::invalid_argument("HessianRep: negative weight");
}

HessianRep HessianRep::dense(DenseMatrix b, double alpha) {
  return HessianRep(Dense{std::move(b)}, alpha);
}

HessianRep HessianRep::structured(const SparseMatrix& a, Vector d,
                                  double scale, double alpha) {
  return HessianRep(Structured{&a, std::move(d), scale}, alpha);
}

std::size_t HessianRep::dim() const {
  if (is_structured()) return structured_rep().a->cols();
  return dense_rep().b.n;
}

void HessianRep::set_alpha(double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("HessianRep: alpha < 0");
  alpha_ = alpha;
}

Vector HessianRep::apply_b(const Vector& v) const {
  if (v.size() != dim())
    throw std::invalid_argument("HessianRep::apply: dimension mismatch");
  if (is_structured()) {
    const auto& s = structured_rep();
    Vector t = s.a->multiply(v);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] *= s.d[i];
    Vector r = s.a->multiply_transpose(t);
    for (double& x : r) x *= s.scale;
    return r;
  }
  return matvec(dense_rep().b, v);
}

Vector HessianRep::apply(const Vector& v) const {
  Vector r = apply_b(v);
  if (alpha_ != 0.0) axpy(alpha_, v, r);
  return r;
}

Vector HessianRep::diagonal() const {
  Vector diag(dim(), alpha_);
  if (is_structured()) {
    const auto& s = structured_rep();
    const SparseMatrix& a = *s.a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      auto cols = a.row_cols(i);
      auto vals = a.row_values(i);
      for (std::size_t p = 0; p < cols.size(); ++p)
        diag[cols[p]] += s.scale * s.d[i] * vals[p] * vals[p];
    }
  } else {
    const DenseMatrix& b = dense_rep().b;
    for (std::size_t j = 0; j < b.n; ++j) diag[j] += b(j, j);
  }
  return diag;
}

namespace {

// Power iteration for a symmetric PSD operator given by `apply`.
template <typename Apply>
SpectralEstimate power_iteration(std::size_t n, Apply&& apply, double tol,
                                 int max_iter, std::uint64_t seed) {
  SpectralEstimate est;
  if (n == 0) return est;
  Rng rng(seed);
  Vector v(n);
  for (double& x : v) x = rng.normal();
  double vn = norm(v);
  if (vn == 0.0) v[0] = 1.0, vn = 1.0;
  for (double& x : v) x /= vn;

  double lambda = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    Vector w = apply(v);
    lambda = dot(v, w);
    est.iterations = it;
    // Residual test: ||Op v - lambda v|| <= tol * lambda.
    double res_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double r = w[i] - lambda * v[i];
      res_sq += r * r;
    }
    double wn = norm(w);
    if (wn == 0.0) {
      est.value = 0.0;
      est.converged = true;
      return est;
    }
    if (std::sqrt(res_sq) <= tol * std::max(lambda, 0.0)) {
      est.value = lambda;
      est.converged = true;
      return est;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / wn;
  }
  est.value = lambda;
  est.converged = false;
  return est;
}

}  // namespace

SpectralEstimate estimate_spectral_norm(const SparseMatrix& a, double tol,
                                        int max_iter, std::uint64_t seed) {
  if (tol <= 0.0) throw std::invalid_argument("estimate_spectral_norm: tol");
  if (a.rows() == 0 || a.cols() == 0 || a.nnz() == 0) return {};
  SpectralEstimate est = power_iteration(
      a.cols(),
      [&a](const Vector& v) { return a.multiply_transpose(a.multiply(v)); },
      tol, max_iter, seed);
  est.value = std::sqrt(std::max(est.value, 0.0));
  return est;
}

SpectralEstimate estimate_operator_norm(const HessianRep& h, double tol,
                                        int max_iter, std::uint64_t seed) {
  if (tol <= 0.0) throw std::invalid_argument("estimate_operator_norm: tol");
  if (h.is_structured() && h.structured_rep().a->nnz() == 0) return {};
  return power_iteration(
      h.dim(), [&h](const Vector& v) { return h.apply_b(v); }, tol, max_iter,
      seed);
}

}  // namespace pnt
