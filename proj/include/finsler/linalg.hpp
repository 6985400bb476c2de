#pragma once

// Small dense linear algebra (dimension <= 16).

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace finsler::num {

inline constexpr std::size_t kMaxDim = 16;

/// General dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const double> data() const noexcept { return data_; }

  double max_abs() const noexcept;
  Matrix transposed() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Square symmetric matrix; every write updates both triangles.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t dim);

  static SymMatrix identity(std::size_t dim);
  static SymMatrix diagonal(std::span<const double> d);
  /// Symmetric part (A + A^T)/2 of a square matrix.
  static SymMatrix symmetrize(const Matrix& a);

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  void set(std::size_t i, std::size_t j, double v);

  std::vector<double> apply(std::span<const double> v) const;
  double quadratic_form(std::span<const double> u, std::span<const double> v) const;
  double max_abs() const noexcept;
  Matrix to_matrix() const;

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

/// max |a(i,j) - b(i,j)|; dimensions must agree.
double max_abs_diff(const SymMatrix& a, const SymMatrix& b);

/// Solves A x = b by Gaussian elimination with partial pivoting.
/// Throws SingularMatrix when a pivot falls below 1e-12 * max|A|.
std::vector<double> sym_solve(const SymMatrix& a, std::span<const double> b);
SymMatrix sym_inverse(const SymMatrix& a);

/// All eigenvalues in ascending order (cyclic Jacobi).
std::vector<double> eigenvalues(const SymMatrix& a);
double min_eigenvalue(const SymMatrix& a);

/// Lower-triangular L with A = L L^T, or empty if A is not positive-definite.
std::optional<Matrix> cholesky(const SymMatrix& a);

}  // namespace finsler::num
