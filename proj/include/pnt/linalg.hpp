#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace pnt {

using Vector = std::vector<double>;

double dot(const Vector& x, const Vector& y);
double norm(const Vector& x);
double norm_diff(const Vector& x, const Vector& y);

// y += a * x
void axpy(double a, const Vector& x, Vector& y);

/// Sparse matrix in compressed-row storage. Column indices are strictly
/// increasing within each row and no explicit zeros are stored; the
/// constructor rejects inputs violating either. A compressed-column copy
/// and per-column squared norms are built once at construction for the
/// coordinate-descent inner loops.
class SparseMatrix {
 public:
  SparseMatrix(std::size_t rows, std::size_t cols,
               std::vector<std::size_t> row_ptr,
               std::vector<std::size_t> col_idx, std::vector<double> values);

  // Row-major list of (col, value) pairs per row.
  static SparseMatrix from_rows(
      std::size_t cols,
      const std::vector<std::vector<std::pair<std::size_t, double>>>& rows);

  // Dense row-major input; zero entries are dropped.
  static SparseMatrix from_dense(std::size_t rows, std::size_t cols,
                                 const std::vector<double>& row_major);

  static SparseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  std::span<const std::size_t> row_cols(std::size_t i) const {
    return {col_idx_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::span<const double> row_values(std::size_t i) const {
    return {values_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::span<const std::size_t> col_rows(std::size_t j) const {
    return {row_idx_.data() + col_ptr_[j], col_ptr_[j + 1] - col_ptr_[j]};
  }
  std::span<const double> col_values(std::size_t j) const {
    return {values_csc_.data() + col_ptr_[j], col_ptr_[j + 1] - col_ptr_[j]};
  }

  // Unweighted per-column squared norms, cached at construction.
  const Vector& column_squared_norms() const { return col_sq_norms_; }

  // result_i = sum_j A_ij x_j accumulated in storage order within each row.
  Vector multiply(const Vector& x) const;
  // result_j = sum_i A_ij y_i
  Vector multiply_transpose(const Vector& y) const;

  SparseMatrix drop_row(std::size_t i) const;
  std::vector<double> to_dense() const;  // row-major, for small instances

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
  // CSC mirror
  std::vector<std::size_t> col_ptr_;
  std::vector<std::size_t> row_idx_;
  std::vector<double> values_csc_;
  Vector col_sq_norms_;

  void build_column_index();
};

Vector matvec(const SparseMatrix& a, const Vector& x);

/// Dense symmetric matrix, row-major. Only used for small problems and
/// test instances; the structured path never materializes it.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> data;  // n*n row-major

  DenseMatrix() = default;
  DenseMatrix(std::size_t n_, std::vector<double> d);
  static DenseMatrix zero(std::size_t n);
  static DenseMatrix identity(std::size_t n);

  double operator()(std::size_t i, std::size_t j) const {
    return data[i * n + j];
  }
  double& at(std::size_t i, std::size_t j) { return data[i * n + j]; }
};

Vector matvec(const DenseMatrix& a, const Vector& x);

/// Curvature model H = B + alpha*I where B is either an explicit dense
/// symmetric matrix or the structured form scale * A^T diag(d) A. The
/// structured variant applies B through A without forming it.
class HessianRep {
 public:
  struct Dense {
    DenseMatrix b;
  };
  struct Structured {
    const SparseMatrix* a = nullptr;
    Vector d;      // per-row weights, >= 0
    double scale;  // typically 1/N
  };

  HessianRep(Dense dense, double alpha);
  HessianRep(Structured structured, double alpha);

  static HessianRep dense(DenseMatrix b, double alpha = 0.0);
  static HessianRep structured(const SparseMatrix& a, Vector d, double scale,
                               double alpha = 0.0);

  std::size_t dim() const;
  double alpha() const { return alpha_; }
  void set_alpha(double alpha);
  bool is_structured() const {
    return std::holds_alternative<Structured>(rep_);
  }
  const Dense& dense_rep() const { return std::get<Dense>(rep_); }
  const Structured& structured_rep() const {
    return std::get<Structured>(rep_);
  }

  // (B + alpha*I) v
  Vector apply(const Vector& v) const;
  // B v without the ridge
  Vector apply_b(const Vector& v) const;
  // exact diagonal of B + alpha*I
  Vector diagonal() const;

 private:
  std::variant<Dense, Structured> rep_;
  double alpha_ = 0.0;
};

inline Vector hessian_apply(const HessianRep& h, const Vector& v) {
  return h.apply(v);
}
inline Vector hessian_diag(const HessianRep& h) { return h.diagonal(); }

struct SpectralEstimate {
  double value = 0.0;
  bool converged = true;
  int iterations = 0;
};

/// sigma_max(A) by power iteration on A^T A from a seeded random start.
SpectralEstimate estimate_spectral_norm(const SparseMatrix& a,
                                        double tol = 1e-6, int max_iter = 500,
                                        std::uint64_t seed = 42);

/// lambda_max of the B part of a HessianRep (ridge excluded).
SpectralEstimate estimate_operator_norm(const HessianRep& h, double tol = 1e-6,
                                        int max_iter = 500,
                                        std::uint64_t seed = 42);

}  // namespace pnt
