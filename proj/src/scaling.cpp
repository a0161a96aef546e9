// SPDX-License-Identifier: Apache-2.0
#include "nsinv/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nsinv/error.hpp"

namespace nsinv {

std::string_view to_token(ScaleFactorKind kind) noexcept {
  switch (kind) {
    case ScaleFactorKind::Optimal:
      return "alpha0";
    case ScaleFactorKind::Trace:
      return "alpha1";
    case ScaleFactorKind::GershgorinDiag:
      return "alpha2";
  }
  return "alpha?";
}

std::optional<ScaleFactorKind> parse_scale_kind(std::string_view token) noexcept {
  for (ScaleFactorKind k : kAllScaleKinds)
    if (token == to_token(k)) return k;
  return std::nullopt;
}

ScaleDiagnostics diagnostics_for(double alpha, ScaleFactorKind kind,
                                 double lambda_min, double lambda_max) {
  const double lo = alpha * lambda_min;
  const double hi = alpha * lambda_max;
  // Ties go to the smaller eigenvalue.
  const double omega = std::fabs(1.0 - hi) > std::fabs(1.0 - lo) ? hi : lo;
  return {alpha, kind, omega, std::fabs(1.0 - omega)};
}

ScaleDiagnostics alpha_optimal(double lambda_min, double lambda_max) {
  if (!(lambda_min > 0.0))
    throw NotPositiveDefinite("alpha0: smallest eigenvalue " +
                              std::to_string(lambda_min) + " is not positive");
  const double denom = lambda_max + lambda_min;
  const double omega = 2.0 * lambda_min / denom;
  return {2.0 / denom, ScaleFactorKind::Optimal, omega, std::fabs(1.0 - omega)};
}

ScaleDiagnostics alpha_optimal(const EigenDecomposition& eig) {
  return alpha_optimal(eig.min(), eig.max());
}

double trace_alpha(const SpdMatrix& z) {
  const double tr = z.trace();
  if (!(tr > 0.0))
    throw NotPositiveDefinite("alpha1: trace " + std::to_string(tr) +
                              " is not positive");
  return 2.0 / tr;
}

double gershgorin_alpha(const SpdMatrix& z) {
  double min_diag = z(0, 0);
  for (std::size_t i = 1; i < z.order(); ++i) min_diag = std::min(min_diag, z(i, i));
  const double denom = min_diag + infinity_norm(z);
  if (!(min_diag > 0.0) || !(denom > 0.0))
    throw NotPositiveDefinite("alpha2: min diagonal " + std::to_string(min_diag) +
                              " leaves a nonpositive denominator");
  return 2.0 / denom;
}

ScaleDiagnostics alpha_trace(const SpdMatrix& z) {
  const double alpha = trace_alpha(z);
  const auto eig = symmetric_eigen(z);
  return diagnostics_for(alpha, ScaleFactorKind::Trace, eig.min(), eig.max());
}

ScaleDiagnostics alpha_gershgorin(const SpdMatrix& z) {
  const double alpha = gershgorin_alpha(z);
  const auto eig = symmetric_eigen(z);
  return diagnostics_for(alpha, ScaleFactorKind::GershgorinDiag, eig.min(), eig.max());
}

double scale_factor(ScaleFactorKind kind, const SpdMatrix& z) {
  switch (kind) {
    case ScaleFactorKind::Optimal:
      return alpha_optimal(symmetric_eigen(z)).alpha;
    case ScaleFactorKind::Trace:
      return trace_alpha(z);
    case ScaleFactorKind::GershgorinDiag:
      return gershgorin_alpha(z);
  }
  throw InvalidArgument("unknown scale factor kind");
}

ScaleDiagnostics diagnose(ScaleFactorKind kind, const SpdMatrix& z,
                          const EigenDecomposition& eig) {
  switch (kind) {
    case ScaleFactorKind::Optimal:
      return alpha_optimal(eig);
    case ScaleFactorKind::Trace:
      return diagnostics_for(trace_alpha(z), kind, eig.min(), eig.max());
    case ScaleFactorKind::GershgorinDiag:
      return diagnostics_for(gershgorin_alpha(z), kind, eig.min(), eig.max());
  }
  throw InvalidArgument("unknown scale factor kind");
}

SpdMatrix rescale(const SpdMatrix& z, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw InvalidArgument("rescale: alpha must be positive and finite");
  return SpdMatrix(scaled(z.matrix(), alpha));
}

}  // namespace nsinv
