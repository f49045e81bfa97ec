#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pmopi {

using Complex = std::complex<double>;

/// Dense row-major complex matrix with fixed, non-zero dimensions.
///
/// Holds channels (2x4), precoders (4x2) and rotations (4x4). Every entry is
/// finite; constructors reject NaN/Inf so downstream math never has to check.
class ComplexMatrix {
 public:
  /// Zero matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::initializer_list<Complex> entries);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const Complex> entries() const noexcept { return entries_; }

  Complex operator()(std::size_t r, std::size_t c) const noexcept { return entries_[r * cols_ + c]; }
  Complex& operator()(std::size_t r, std::size_t c) noexcept { return entries_[r * cols_ + c]; }

  /// Bounds-checked access.
  Complex at(std::size_t r, std::size_t c) const;

  /// Conjugate transpose.
  ComplexMatrix adjoint() const;

  /// Columns [first, first + count) as a new matrix.
  ComplexMatrix columns(std::size_t first, std::size_t count) const;
  ComplexMatrix columns(std::span<const std::size_t> indices) const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale) noexcept;

  bool is_finite() const noexcept;

  /// max_{i,j} |a_ij - b_ij|; dimensions must agree.
  double max_abs_diff(const ComplexMatrix& other) const;

  /// Frobenius norm squared.
  double squared_norm() const noexcept;

  bool operator==(const ComplexMatrix& other) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> entries_;
};

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);

/// ||A^H A - I||_max, the deviation of A's columns from orthonormality.
double orthonormality_error(const ComplexMatrix& a);

}  // namespace pmopi
