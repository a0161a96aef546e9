// SPDX-License-Identifier: Apache-2.0
#include "nsinv/lsq.hpp"

#include <cmath>
#include <string>

#include "nsinv/error.hpp"
#include "nsinv/linalg.hpp"

namespace nsinv {

int op_count(int iterations) {
  if (iterations < 0) throw InvalidArgument("op_count: iterations must be nonnegative");
  return kOpsPerIteration * iterations + kPipelineOps;
}

double estimate_time_ms(int ops, double ms_per_op) {
  if (ops <= 0 || !(ms_per_op > 0.0))
    throw InvalidArgument("estimate_time_ms: ops and ms_per_op must be positive");
  return static_cast<double>(ops) * ms_per_op;
}

MatchResult solve_transform(const Matrix& x, const Matrix& m, const PipelineConfig& cfg) {
  if (x.rows() != m.rows())
    throw DimensionMismatch("solve_transform: X is " + x.shape() + " but M is " +
                            m.shape());
  if (x.rows() < x.cols())
    throw DimensionMismatch("solve_transform: X must have at least as many rows as "
                            "columns, got " + x.shape());
  if (!(cfg.ms_per_op > 0.0)) throw InvalidArgument("ms_per_op must be positive");
  cfg.inversion.validate();

  const SpdMatrix z = gram(x);
  const Matrix xtm = transpose_multiply(x, m);

  double alpha = 0.0;
  try {
    alpha = scale_factor(cfg.scale_kind, z);
  } catch (const NotPositiveDefinite& e) {
    throw SingularSystem(std::string("solve_transform: singular system (") + e.what() + ")");
  }

  InversionReport inv = [&] {
    try {
      return invert(rescale(z, alpha), cfg.inversion);
    } catch (const Divergence& e) {
      throw SingularSystem(std::string("solve_transform: singular system (") + e.what() + ")");
    }
  }();
  if (!inv.converged)
    throw SingularSystem("solve_transform: singular system (no convergence after " +
                         std::to_string(inv.iterations) + " iterations, residual " +
                         std::to_string(inv.final_residual) + ")");

  // (X'X)^-1 = alpha V
  Matrix t = multiply(scaled(inv.inverse, alpha), xtm);
  const double distance = frobenius_distance(multiply(x, t), m);
  const int ops = op_count(inv.iterations);
  return MatchResult{std::move(t), distance,   std::move(inv),
                     alpha,        ops,        estimate_time_ms(ops, cfg.ms_per_op)};
}

}  // namespace nsinv
