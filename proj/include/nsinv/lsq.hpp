// SPDX-License-Identifier: Apache-2.0
#pragma once

// Linear-transform-invariant matching. For an input pattern X (m x n, m >= n)
// and a model M (m x k), T = (X'X)^-1 X'M minimizes ||XT - M||_F; the
// residual distance is zero whenever M is a linear transform of X.

#include "nsinv/inverter.hpp"
#include "nsinv/matrix.hpp"
#include "nsinv/scaling.hpp"

namespace nsinv {

/// Sequential operations outside the inversion loop: X'X (with X'M), alpha,
/// rescaling, the two products forming T, XT, and the distance.
inline constexpr int kPipelineOps = 7;
inline constexpr int kOpsPerIteration = 2;
inline constexpr double kDefaultMsPerOp = 5.0;

struct PipelineConfig {
  ScaleFactorKind scale_kind = ScaleFactorKind::GershgorinDiag;
  InversionConfig inversion{};
  double ms_per_op = kDefaultMsPerOp;
};

struct MatchResult {
  Matrix transform;
  double distance;
  InversionReport inversion;
  double alpha;
  int op_count;
  double est_time_ms;
};

/// 2 * iterations + 7. Throws InvalidArgument for negative iterations.
int op_count(int iterations);

/// ops * ms_per_op. Both must be positive.
double estimate_time_ms(int ops, double ms_per_op);

/// Throws DimensionMismatch on shape errors or m < n, SingularSystem when X'X
/// is not usable (nonpositive scale quantities or no convergence).
MatchResult solve_transform(const Matrix& x, const Matrix& m,
                            const PipelineConfig& cfg = {});

}  // namespace nsinv
