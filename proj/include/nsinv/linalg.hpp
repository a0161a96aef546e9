// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "nsinv/matrix.hpp"

namespace nsinv {

/// Standard product a * b. Throws DimensionMismatch naming both shapes.
Matrix multiply(const Matrix& a, const Matrix& b);

/// X'X, exactly symmetric.
SpdMatrix gram(const Matrix& x);

/// X'M without forming X'. Requires x.rows() == m.rows().
Matrix transpose_multiply(const Matrix& x, const Matrix& m);

/// Largest absolute entry; 0 for a zero matrix.
double entrywise_max_abs(const Matrix& a);

/// Largest absolute row sum (the infinity norm).
double infinity_norm(const SpdMatrix& a);

/// Frobenius norm of a - b. Shapes must match.
double frobenius_distance(const Matrix& a, const Matrix& b);

double frobenius_norm(const Matrix& a);

/// Entrywise a - b.
Matrix subtract(const Matrix& a, const Matrix& b);

/// alpha * a
Matrix scaled(const Matrix& a, double alpha);

struct EigenDecomposition {
  /// Ascending.
  std::vector<double> eigenvalues;
  /// Orthogonal; column k belongs to eigenvalues[k].
  Matrix eigenvectors;

  double min() const { return eigenvalues.front(); }
  double max() const { return eigenvalues.back(); }
};

inline constexpr double kEigenTolerance = 1e-12;
inline constexpr int kEigenMaxSweeps = 100;

/// Cyclic Jacobi diagonalization. Sweeps until the largest off-diagonal
/// magnitude drops below tol * max(1, ||a||_F). Throws EigenNonConvergence
/// after kEigenMaxSweeps sweeps and InvalidArgument for tol <= 0.
EigenDecomposition symmetric_eigen(const SpdMatrix& a, double tol = kEigenTolerance);

/// Largest absolute eigenvalue of a symmetric matrix. Throws InvalidArgument
/// when `a` is not square or not symmetric within 1e-12.
double spectral_norm(const Matrix& a);

}  // namespace nsinv
