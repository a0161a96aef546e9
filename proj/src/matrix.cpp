// SPDX-License-Identifier: Apache-2.0
#include "nsinv/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "nsinv/error.hpp"

namespace nsinv {
namespace {

void check_dims(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0)
    throw InvalidArgument("matrix dimensions must be positive, got " +
                          std::to_string(rows) + "x" + std::to_string(cols));
}

bool mirrored_close(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
  check_dims(rows, cols);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  check_dims(rows, cols);
  if (data_.size() != rows * cols)
    throw InvalidArgument("matrix " + shape() + " needs " +
                          std::to_string(rows * cols) + " entries, got " +
                          std::to_string(data_.size()));
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (!std::isfinite(data_[i]))
      throw InvalidArgument("non-finite matrix entry at index " + std::to_string(i));
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  check_dims(rows_, cols_);
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidArgument("ragged matrix literal");
    for (double v : r) {
      if (!std::isfinite(v)) throw InvalidArgument("non-finite matrix entry");
      data_.push_back(v);
    }
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::string Matrix::shape() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

bool is_symmetric(const Matrix& m, double tol) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (!mirrored_close(m(i, j), m(j, i), tol)) return false;
  return true;
}

SpdMatrix::SpdMatrix(Matrix m) : m_(std::move(m)) {
  if (!m_.is_square())
    throw InvalidArgument("symmetric matrix must be square, got " + m_.shape());
  const std::size_t n = m_.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = m_(i, j);
      const double b = m_(j, i);
      if (!mirrored_close(a, b, kSymmetryTolerance))
        throw InvalidArgument("matrix is not symmetric at (" + std::to_string(i) +
                              "," + std::to_string(j) + ")");
      const double avg = (a + b) / 2.0;
      m_(i, j) = avg;
      m_(j, i) = avg;
    }
  }
}

double SpdMatrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < order(); ++i) t += m_(i, i);
  return t;
}

}  // namespace nsinv
