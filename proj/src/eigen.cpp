// SPDX-License-Identifier: Apache-2.0
//
// Cyclic Jacobi eigensolver for symmetric matrices.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "nsinv/error.hpp"
#include "nsinv/linalg.hpp"

namespace nsinv {
namespace {

double max_off_diagonal(const std::vector<double>& a, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) best = std::max(best, std::fabs(a[i * n + j]));
  return best;
}

// Annihilates a(p, q) with a plane rotation applied on both sides, and
// accumulates the rotation into the eigenvector matrix v.
void rotate(std::vector<double>& a, std::vector<double>& v, std::size_t n,
            std::size_t p, std::size_t q) {
  const double apq = a[p * n + q];
  const double app = a[p * n + p];
  const double aqq = a[q * n + q];

  // t = tan(theta), the smaller root of t^2 + 2 t theta - 1 = 0.
  const double theta = (aqq - app) / (2.0 * apq);
  double t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  for (std::size_t k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = a[k * n + p];
    const double akq = a[k * n + q];
    const double nkp = c * akp - s * akq;
    const double nkq = s * akp + c * akq;
    a[k * n + p] = a[p * n + k] = nkp;
    a[k * n + q] = a[q * n + k] = nkq;
  }
  a[p * n + p] = app - t * apq;
  a[q * n + q] = aqq + t * apq;
  a[p * n + q] = a[q * n + p] = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = v[k * n + p];
    const double vkq = v[k * n + q];
    v[k * n + p] = c * vkp - s * vkq;
    v[k * n + q] = s * vkp + c * vkq;
  }
}

}  // namespace

EigenDecomposition symmetric_eigen(const SpdMatrix& in, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("symmetric_eigen: tol must be positive");
  const std::size_t n = in.order();
  std::vector<double> a(in.data().begin(), in.data().end());
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  const double threshold = tol * std::max(1.0, frobenius_norm(in.matrix()));

  double off = max_off_diagonal(a, n);
  int sweeps = 0;
  while (off >= threshold) {
    if (sweeps == kEigenMaxSweeps) {
      std::ostringstream msg;
      msg << "symmetric_eigen: no convergence after " << kEigenMaxSweeps
          << " sweeps, max off-diagonal " << off;
      throw EigenNonConvergence(msg.str(), off);
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        // Negligible next to both diagonal entries: drop it.
        const double g = 100.0 * std::fabs(apq);
        if (std::fabs(a[p * n + p]) + g == std::fabs(a[p * n + p]) &&
            std::fabs(a[q * n + q]) + g == std::fabs(a[q * n + q])) {
          a[p * n + q] = a[q * n + p] = 0.0;
          continue;
        }
        rotate(a, v, n, p, q);
      }
    }
    ++sweeps;
    off = max_off_diagonal(a, n);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a[x * n + x] < a[y * n + y];
  });

  EigenDecomposition out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.eigenvalues[k] = a[src * n + src];
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v[i * n + src];
  }
  return out;
}

}  // namespace nsinv
