// SPDX-License-Identifier: Apache-2.0
#pragma once

// Recurrent inversion of a symmetric matrix A whose spectrum lies in (0, 2):
//
//   V_0     = I
//   U_{t+1} = 2I - V_t A
//   V_{t+1} = U_{t+1} V_t
//
// V_t equals the truncated Neumann series sum_{i < 2^t} (I - A)^i, so the
// residual I - V_t A = (I - A)^{2^t} squares at every step.

#include <vector>

#include "nsinv/matrix.hpp"

namespace nsinv {

struct InversionConfig {
  /// Stop once every entry of I - V_t A is below this in absolute value.
  double epsilon = 1e-6;
  int max_iterations = 200;

  /// Throws InvalidArgument unless 0 < epsilon < 1 and max_iterations >= 1.
  void validate() const;
};

struct InversionReport {
  Matrix inverse;
  /// Number of (U, V) updates performed.
  int iterations = 0;
  /// max |I - V_t A| for t = 0..iterations.
  std::vector<double> residual_history;
  bool converged = false;
  double final_residual = 0.0;
};

/// Runs the process until the entrywise residual is below cfg.epsilon, the
/// iteration cap is hit, or the residual grows for 3 consecutive steps while
/// above 1 (a misscaled input). The last two end with converged == false.
/// Throws Divergence naming the iteration if an iterate becomes non-finite.
InversionReport invert(const SpdMatrix& a, const InversionConfig& cfg = {});

/// V_0 .. V_steps of the process, without a stopping test.
std::vector<Matrix> process_iterates(const SpdMatrix& a, int steps);

inline constexpr int kNeumannMaxDoublings = 20;

/// sum_{i=0}^{2^t - 1} (I - A)^i by explicit term accumulation. Independent of
/// the kernel layer. Throws InvalidArgument for t < 0 or t > 20.
Matrix neumann_partial_sum(const SpdMatrix& a, int t);

/// log2(ln eps / ln contraction): any t at or above this gives
/// ||I - V_t A||_2 <= eps. Clamped at 0, which also covers contraction == 0.
double theorem1_bound(double contraction, double epsilon);

/// Asymptotic iteration count with alpha0: log2|ln eps| + log2(kappa + 1) - 1.
double theorem2_predicted_iterations(double kappa, double epsilon);

/// Asymptotic upper bound with alpha1: log2|ln eps| + log2 kappa + log2 n - 1.
double theorem3_predicted_upper(double kappa, int n, double epsilon);

}  // namespace nsinv
