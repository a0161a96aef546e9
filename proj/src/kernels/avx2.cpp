// SPDX-License-Identifier: Apache-2.0
//
// Built with -mavx2 -mfma but deliberately uses separate mul/add so each
// output element sees exactly the scalar kernel's rounding sequence.

#include <immintrin.h>

#include <cmath>
#include <cstring>

#include "kernels_internal.hpp"

namespace nsinv::kernels::detail {
namespace {

// crow[0..n) += s * brow[0..n)
inline void axpy_row(double s, const double* brow, double* crow, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t j = 0;
  for (; j + 16 <= n; j += 16) {
    __m256d c0 = _mm256_loadu_pd(crow + j);
    __m256d c1 = _mm256_loadu_pd(crow + j + 4);
    __m256d c2 = _mm256_loadu_pd(crow + j + 8);
    __m256d c3 = _mm256_loadu_pd(crow + j + 12);
    c0 = _mm256_add_pd(c0, _mm256_mul_pd(vs, _mm256_loadu_pd(brow + j)));
    c1 = _mm256_add_pd(c1, _mm256_mul_pd(vs, _mm256_loadu_pd(brow + j + 4)));
    c2 = _mm256_add_pd(c2, _mm256_mul_pd(vs, _mm256_loadu_pd(brow + j + 8)));
    c3 = _mm256_add_pd(c3, _mm256_mul_pd(vs, _mm256_loadu_pd(brow + j + 12)));
    _mm256_storeu_pd(crow + j, c0);
    _mm256_storeu_pd(crow + j + 4, c1);
    _mm256_storeu_pd(crow + j + 8, c2);
    _mm256_storeu_pd(crow + j + 12, c3);
  }
  for (; j + 4 <= n; j += 4) {
    __m256d c0 = _mm256_loadu_pd(crow + j);
    c0 = _mm256_add_pd(c0, _mm256_mul_pd(vs, _mm256_loadu_pd(brow + j)));
    _mm256_storeu_pd(crow + j, c0);
  }
  for (; j < n; ++j) crow[j] += s * brow[j];
}

// Rows of c are processed in blocks of four so each loaded b row feeds four
// accumulating rows while it is hot.
void gemm(const double* a, const double* b, double* c, std::size_t m,
          std::size_t k, std::size_t n) {
  std::memset(c, 0, m * n * sizeof(double));
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    double* c0 = c + i * n;
    double* c1 = c0 + n;
    double* c2 = c1 + n;
    double* c3 = c2 + n;
    for (std::size_t p = 0; p < k; ++p) {
      const double* brow = b + p * n;
      const __m256d a0 = _mm256_set1_pd(a[i * k + p]);
      const __m256d a1 = _mm256_set1_pd(a[(i + 1) * k + p]);
      const __m256d a2 = _mm256_set1_pd(a[(i + 2) * k + p]);
      const __m256d a3 = _mm256_set1_pd(a[(i + 3) * k + p]);
      std::size_t j = 0;
      for (; j + 4 <= n; j += 4) {
        const __m256d bv = _mm256_loadu_pd(brow + j);
        _mm256_storeu_pd(c0 + j, _mm256_add_pd(_mm256_loadu_pd(c0 + j), _mm256_mul_pd(a0, bv)));
        _mm256_storeu_pd(c1 + j, _mm256_add_pd(_mm256_loadu_pd(c1 + j), _mm256_mul_pd(a1, bv)));
        _mm256_storeu_pd(c2 + j, _mm256_add_pd(_mm256_loadu_pd(c2 + j), _mm256_mul_pd(a2, bv)));
        _mm256_storeu_pd(c3 + j, _mm256_add_pd(_mm256_loadu_pd(c3 + j), _mm256_mul_pd(a3, bv)));
      }
      for (; j < n; ++j) {
        const double bj = brow[j];
        c0[j] += a[i * k + p] * bj;
        c1[j] += a[(i + 1) * k + p] * bj;
        c2[j] += a[(i + 2) * k + p] * bj;
        c3[j] += a[(i + 3) * k + p] * bj;
      }
    }
  }
  for (; i < m; ++i) {
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
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4)
    _mm256_storeu_pd(y + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < len; ++i) y[i] = alpha * x[i];
}

double max_abs(const double* x, std::size_t len) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d best0 = _mm256_setzero_pd();
  __m256d best1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    best0 = _mm256_max_pd(best0, _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i)));
    best1 = _mm256_max_pd(best1, _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i + 4)));
  }
  best0 = _mm256_max_pd(best0, best1);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best0);
  double best = lanes[0];
  for (int l = 1; l < 4; ++l)
    if (lanes[l] > best) best = lanes[l];
  for (; i < len; ++i) {
    const double v = std::fabs(x[i]);
    if (v > best) best = v;
  }
  return best;
}

double sum_sq_diff(const double* x, const double* y, std::size_t len) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4));
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(d0, d0));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(d1, d1));
  }
  acc0 = _mm256_add_pd(acc0, acc1);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc0);
  double acc = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < len; ++i) {
    const double d = x[i] - y[i];
    acc += d * d;
  }
  return acc;
}

constexpr KernelTable kTable{Isa::Avx2, gemm, gemm_tn, scale, max_abs, sum_sq_diff};

}  // namespace

const KernelTable& avx2_table() noexcept { return kTable; }

}  // namespace nsinv::kernels::detail
