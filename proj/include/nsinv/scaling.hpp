// SPDX-License-Identifier: Apache-2.0
#pragma once

// Scale factors that place the spectrum of alpha * Z inside (0, 2), where the
// Newton-Schulz process converges.
//
//   Optimal         alpha0 = 2 / (lambda_min + lambda_max)
//   Trace           alpha1 = 2 / trace(Z)
//   GershgorinDiag  alpha2 = 2 / (min_i z_ii + ||Z||_inf)
//
// alpha1 <= alpha0 and alpha2 <= alpha0 for any positive definite Z, with
// alpha1 == alpha0 when n == 2.

#include <optional>
#include <string_view>

#include "nsinv/linalg.hpp"
#include "nsinv/matrix.hpp"

namespace nsinv {

enum class ScaleFactorKind { Optimal, Trace, GershgorinDiag };

/// "alpha0", "alpha1", "alpha2"
std::string_view to_token(ScaleFactorKind kind) noexcept;
std::optional<ScaleFactorKind> parse_scale_kind(std::string_view token) noexcept;

inline constexpr ScaleFactorKind kAllScaleKinds[] = {
    ScaleFactorKind::Optimal, ScaleFactorKind::Trace,
    ScaleFactorKind::GershgorinDiag};

struct ScaleDiagnostics {
  double alpha;
  ScaleFactorKind kind;
  /// Eigenvalue of alpha * Z farthest from 1 (the smaller one on ties).
  double omega;
  /// |1 - omega|; the spectral norm of I - alpha * Z.
  double contraction;
};

/// alpha0 from a full decomposition. Throws NotPositiveDefinite if the
/// smallest eigenvalue is not positive.
ScaleDiagnostics alpha_optimal(const EigenDecomposition& eig);

/// alpha0 from the extreme eigenvalues alone.
ScaleDiagnostics alpha_optimal(double lambda_min, double lambda_max);

/// alpha1 with omega/contraction taken from an eigendecomposition of Z.
ScaleDiagnostics alpha_trace(const SpdMatrix& z);

/// alpha2 with omega/contraction taken from an eigendecomposition of Z.
ScaleDiagnostics alpha_gershgorin(const SpdMatrix& z);

// Diagnostics-free variants: touch only the diagonal / row sums.
double trace_alpha(const SpdMatrix& z);
double gershgorin_alpha(const SpdMatrix& z);

/// Alpha of `kind` for `z`. Optimal needs an eigensolve; the others do not.
double scale_factor(ScaleFactorKind kind, const SpdMatrix& z);

/// Full diagnostics for `kind`, reusing `eig` (the decomposition of z).
ScaleDiagnostics diagnose(ScaleFactorKind kind, const SpdMatrix& z,
                          const EigenDecomposition& eig);

/// Omega and contraction of alpha * Z given Z's extreme eigenvalues.
ScaleDiagnostics diagnostics_for(double alpha, ScaleFactorKind kind,
                                 double lambda_min, double lambda_max);

/// alpha * z. Throws InvalidArgument unless alpha > 0.
SpdMatrix rescale(const SpdMatrix& z, double alpha);

}  // namespace nsinv
