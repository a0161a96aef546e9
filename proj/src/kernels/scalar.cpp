// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <cstring>

#include "kernels_internal.hpp"

namespace nsinv::kernels::detail {
namespace {

// i-k-j order: c(i, j) accumulates a(i, k) * b(k, j) for k = 0, 1, ...
void gemm(const double* a, const double* b, double* c, std::size_t m,
          std::size_t k, std::size_t n) {
  std::memset(c, 0, m * n * sizeof(double));
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = a[i * k + p];
      const double* brow = b + p * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aip * brow[j];
    }
  }
}

void gemm_tn(const double* a, const double* b, double* c, std::size_t r,
             std::size_t m, std::size_t n) {
  std::memset(c, 0, m * n * sizeof(double));
  for (std::size_t p = 0; p < r; ++p) {
    const double* arow = a + p * m;
    const double* brow = b + p * n;
    for (std::size_t i = 0; i < m; ++i) {
      const double api = arow[i];
      double* crow = c + i * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += api * brow[j];
    }
  }
}

void scale(const double* x, double alpha, double* y, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) y[i] = alpha * x[i];
}

double max_abs(const double* x, std::size_t len) {
  double best = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double v = std::fabs(x[i]);
    if (v > best) best = v;
  }
  return best;
}

double sum_sq_diff(const double* x, const double* y, std::size_t len) {
  double acc = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double d = x[i] - y[i];
    acc += d * d;
  }
  return acc;
}

constexpr KernelTable kTable{Isa::Scalar, gemm, gemm_tn, scale, max_abs, sum_sq_diff};

}  // namespace

const KernelTable& scalar_table() noexcept { return kTable; }

}  // namespace nsinv::kernels::detail
