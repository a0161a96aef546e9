// SPDX-License-Identifier: Apache-2.0
#include "nsinv/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "nsinv/error.hpp"
#include "nsinv/kernels.hpp"

namespace nsinv {

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("multiply: cannot multiply " + a.shape() + " by " +
                            b.shape());
  Matrix c(a.rows(), b.cols());
  kernels::active().gemm(a.data().data(), b.data().data(), c.data().data(),
                         a.rows(), a.cols(), b.cols());
  return c;
}

SpdMatrix gram(const Matrix& x) {
  const std::size_t n = x.cols();
  Matrix z(n, n);
  kernels::active().gemm_tn(x.data().data(), x.data().data(), z.data().data(),
                            x.rows(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double avg = (z(i, j) + z(j, i)) / 2.0;
      z(i, j) = avg;
      z(j, i) = avg;
    }
  return SpdMatrix(std::move(z));
}

Matrix transpose_multiply(const Matrix& x, const Matrix& m) {
  if (x.rows() != m.rows())
    throw DimensionMismatch("transpose_multiply: row counts differ, " + x.shape() +
                            " vs " + m.shape());
  Matrix c(x.cols(), m.cols());
  kernels::active().gemm_tn(x.data().data(), m.data().data(), c.data().data(),
                            x.rows(), x.cols(), m.cols());
  return c;
}

double entrywise_max_abs(const Matrix& a) {
  return kernels::active().max_abs(a.data().data(), a.size());
}

double infinity_norm(const SpdMatrix& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.order(); ++i) {
    double s = 0.0;
    for (double v : a.matrix().row(i)) s += std::fabs(v);
    best = std::max(best, s);
  }
  return best;
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("frobenius_distance: shapes differ, " + a.shape() +
                            " vs " + b.shape());
  return std::sqrt(
      kernels::active().sum_sq_diff(a.data().data(), b.data().data(), a.size()));
}

double frobenius_norm(const Matrix& a) {
  double acc = 0.0;
  for (double v : a.data()) acc += v * v;
  return std::sqrt(acc);
}

Matrix subtract(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("subtract: shapes differ, " + a.shape() + " vs " +
                            b.shape());
  Matrix c(a.rows(), a.cols());
  auto out = c.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.data()[i] - b.data()[i];
  return c;
}

Matrix scaled(const Matrix& a, double alpha) {
  Matrix c(a.rows(), a.cols());
  kernels::active().scale(a.data().data(), alpha, c.data().data(), a.size());
  return c;
}

double spectral_norm(const Matrix& a) {
  if (!a.is_square())
    throw InvalidArgument("spectral_norm: matrix must be square, got " + a.shape());
  if (!is_symmetric(a))
    throw InvalidArgument("spectral_norm: matrix is not symmetric");
  const auto eig = symmetric_eigen(SpdMatrix(a));
  return std::max(std::fabs(eig.min()), std::fabs(eig.max()));
}

}  // namespace nsinv
