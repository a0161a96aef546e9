// SPDX-License-Identifier: Apache-2.0
//
// AArch64 NEON variants. Uses vmulq/vaddq rather than vfmaq so results match
// the scalar kernels bit for bit.

#include <arm_neon.h>

#include <cmath>
#include <cstring>

#include "kernels_internal.hpp"

namespace nsinv::kernels::detail {
namespace {

inline void axpy_row(double s, const double* brow, double* crow, std::size_t n) {
  const float64x2_t vs = vdupq_n_f64(s);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    float64x2_t c0 = vld1q_f64(crow + j);
    float64x2_t c1 = vld1q_f64(crow + j + 2);
    c0 = vaddq_f64(c0, vmulq_f64(vs, vld1q_f64(brow + j)));
    c1 = vaddq_f64(c1, vmulq_f64(vs, vld1q_f64(brow + j + 2)));
    vst1q_f64(crow + j, c0);
    vst1q_f64(crow + j + 2, c1);
  }
  for (; j + 2 <= n; j += 2)
    vst1q_f64(crow + j, vaddq_f64(vld1q_f64(crow + j), vmulq_f64(vs, vld1q_f64(brow + j))));
  for (; j < n; ++j) crow[j] += s * brow[j];
}

void gemm(const double* a, const double* b, double* c, std::size_t m,
          std::size_t k, std::size_t n) {
  std::memset(c, 0, m * n * sizeof(double));
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) axpy_row(a[i * k + p], b + p * n, crow, n);
  }
}

void gemm_tn(const double* a, const double* b, double* c, std::size_t r,
             std::size_t m, std::size_t n) {
  std::memset(c, 0, m * n * sizeof(double));
  for (std::size_t p = 0; p < r; ++p) {
    const double* arow = a + p * m;
    const double* brow = b + p * n;
    for (std::size_t i = 0; i < m; ++i) axpy_row(arow[i], brow, c + i * n, n);
  }
}

void scale(const double* x, double alpha, double* y, std::size_t len) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) vst1q_f64(y + i, vmulq_f64(va, vld1q_f64(x + i)));
  for (; i < len; ++i) y[i] = alpha * x[i];
}

double max_abs(const double* x, std::size_t len) {
  float64x2_t best = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) best = vmaxq_f64(best, vabsq_f64(vld1q_f64(x + i)));
  double out = vmaxvq_f64(best);
  for (; i < len; ++i) {
    const double v = std::fabs(x[i]);
    if (v > out) out = v;
  }
  return out;
}

double sum_sq_diff(const double* x, const double* y, std::size_t len) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(x + i), vld1q_f64(y + i));
    acc = vaddq_f64(acc, vmulq_f64(d, d));
  }
  double out = vaddvq_f64(acc);
  for (; i < len; ++i) {
    const double d = x[i] - y[i];
    out += d * d;
  }
  return out;
}

constexpr KernelTable kTable{Isa::Neon, gemm, gemm_tn, scale, max_abs, sum_sq_diff};

}  // namespace

const KernelTable& neon_table() noexcept { return kTable; }

}  // namespace nsinv::kernels::detail
