// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace nsinv {

/// Dense, row-major matrix of finite doubles.
class Matrix {
 public:
  /// Zero-filled rows x cols matrix. Both dimensions must be positive.
  Matrix(std::size_t rows, std::size_t cols);

  /// Takes ownership of `entries` (row-major). Throws InvalidArgument when the
  /// length does not match or an entry is NaN/Inf.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  /// Nested-list construction, mostly for tests: Matrix{{1, 2}, {3, 4}}.
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i * cols_ + j];
  }

  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  Matrix transpose() const;

  /// "rows x cols", for error messages.
  std::string shape() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

/// Symmetric square matrix. Positive definiteness is not checked here.
class SpdMatrix {
 public:
  /// Asymmetry tolerance applied by the converting constructor, relative to
  /// max(1, |a_ij|, |a_ji|).
  static constexpr double kSymmetryTolerance = 1e-12;

  /// Symmetrizes `m` by averaging mirrored entries. Throws InvalidArgument if
  /// `m` is not square or any pair differs by more than kSymmetryTolerance.
  explicit SpdMatrix(Matrix m);

  std::size_t order() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }
  std::span<const double> data() const noexcept { return m_.data(); }

  double trace() const noexcept;

  friend bool operator==(const SpdMatrix&, const SpdMatrix&) = default;

 private:
  Matrix m_;
};

/// True when every mirrored pair of `m` agrees within `tol` (scaled as in
/// SpdMatrix). Non-square matrices are never symmetric.
bool is_symmetric(const Matrix& m, double tol = SpdMatrix::kSymmetryTolerance);

}  // namespace nsinv
