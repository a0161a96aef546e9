// SPDX-License-Identifier: Apache-2.0
#include "nsinv/inverter.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nsinv/error.hpp"
#include "nsinv/kernels.hpp"

namespace nsinv {
namespace {

constexpr int kDivergenceStreak = 3;

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// u = 2I - w, where w = V_t A.
void two_identity_minus(const std::vector<double>& w, std::vector<double>& u,
                        std::size_t n) {
  for (std::size_t e = 0; e < w.size(); ++e) u[e] = -w[e];
  for (std::size_t i = 0; i < n; ++i) u[i * n + i] += 2.0;
}

// r = u - I, which equals I - V_t A.
void minus_identity(const std::vector<double>& u, std::vector<double>& r, std::size_t n) {
  r = u;
  for (std::size_t i = 0; i < n; ++i) r[i * n + i] -= 1.0;
}

}  // namespace

void InversionConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw InvalidArgument("epsilon must lie in (0, 1)");
  if (max_iterations < 1) throw InvalidArgument("max_iterations must be at least 1");
}

InversionReport invert(const SpdMatrix& a, const InversionConfig& cfg) {
  cfg.validate();
  const auto& k = kernels::active();
  const std::size_t n = a.order();
  const double* pa = a.data().data();

  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  // w = V_t A; with V_0 = I that is A itself.
  std::vector<double> w(a.data().begin(), a.data().end());
  std::vector<double> u(n * n);
  std::vector<double> r(n * n);
  std::vector<double> next(n * n);

  InversionReport rep{Matrix(n, n), 0, {}, false, 0.0};
  int growth = 0;
  for (int t = 0;; ++t) {
    // U_{t+1} = 2I - V_t A; the residual I - V_t A is U_{t+1} - I.
    two_identity_minus(w, u, n);
    minus_identity(u, r, n);
    const double res = k.max_abs(r.data(), r.size());
    if (!std::isfinite(res) || !all_finite(r))
      throw Divergence("invert: non-finite residual at iteration " + std::to_string(t), t);
    if (!rep.residual_history.empty() && res > rep.residual_history.back() && res > 1.0)
      ++growth;
    else
      growth = 0;
    rep.residual_history.push_back(res);
    rep.iterations = t;
    rep.final_residual = res;

    if (res < cfg.epsilon) {
      rep.converged = true;
      break;
    }
    if (t == cfg.max_iterations || growth >= kDivergenceStreak) break;

    // V_{t+1} = U_{t+1} V_t
    k.gemm(u.data(), v.data(), next.data(), n, n, n);
    v.swap(next);
    if (!all_finite(v))
      throw Divergence("invert: non-finite iterate at iteration " + std::to_string(t + 1),
                       t + 1);
    k.gemm(v.data(), pa, w.data(), n, n, n);
  }
  rep.inverse = Matrix(n, n, std::move(v));
  return rep;
}

std::vector<Matrix> process_iterates(const SpdMatrix& a, int steps) {
  if (steps < 0) throw InvalidArgument("process_iterates: steps must be nonnegative");
  const auto& k = kernels::active();
  const std::size_t n = a.order();
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  std::vector<double> w(n * n);
  std::vector<double> u(n * n);
  std::vector<double> next(n * n);

  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.emplace_back(n, n, v);
  for (int t = 0; t < steps; ++t) {
    k.gemm(v.data(), a.data().data(), w.data(), n, n, n);
    two_identity_minus(w, u, n);
    k.gemm(u.data(), v.data(), next.data(), n, n, n);
    v.swap(next);
    if (!all_finite(v))
      throw Divergence("process_iterates: non-finite iterate at iteration " +
                           std::to_string(t + 1),
                       t + 1);
    out.emplace_back(n, n, v);
  }
  return out;
}

Matrix neumann_partial_sum(const SpdMatrix& a, int t) {
  if (t < 0 || t > kNeumannMaxDoublings)
    throw InvalidArgument("neumann_partial_sum: t must lie in [0, " +
                          std::to_string(kNeumannMaxDoublings) + "]");
  const std::size_t n = a.order();
  // b = I - A
  std::vector<double> b(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      b[i * n + j] = (i == j ? 1.0 : 0.0) - a(i, j);

  std::vector<double> term(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) term[i * n + i] = 1.0;
  std::vector<double> sum = term;
  std::vector<double> next(n * n);

  const long long terms = 1LL << t;
  for (long long i = 1; i < terms; ++i) {
    // term <- term * b, naive triple loop
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        double acc = 0.0;
        for (std::size_t p = 0; p < n; ++p) acc += term[r * n + p] * b[p * n + c];
        next[r * n + c] = acc;
      }
    term.swap(next);
    for (std::size_t e = 0; e < sum.size(); ++e) sum[e] += term[e];
  }
  return Matrix(n, n, std::move(sum));
}

double theorem1_bound(double contraction, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw InvalidArgument("theorem1_bound: epsilon must lie in (0, 1)");
  if (!(contraction >= 0.0 && contraction < 1.0))
    throw InvalidArgument("theorem1_bound: contraction must lie in [0, 1)");
  if (contraction == 0.0) return 0.0;
  return std::max(0.0, std::log2(std::log(epsilon) / std::log(contraction)));
}

double theorem2_predicted_iterations(double kappa, double epsilon) {
  if (!(kappa >= 1.0)) throw InvalidArgument("kappa must be at least 1");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw InvalidArgument("epsilon must lie in (0, 1)");
  return std::log2(std::fabs(std::log(epsilon))) + std::log2(kappa + 1.0) - 1.0;
}

double theorem3_predicted_upper(double kappa, int n, double epsilon) {
  if (!(kappa >= 1.0)) throw InvalidArgument("kappa must be at least 1");
  if (n < 2) throw InvalidArgument("n must be at least 2");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw InvalidArgument("epsilon must lie in (0, 1)");
  return std::log2(std::fabs(std::log(epsilon))) + std::log2(kappa) +
         std::log2(static_cast<double>(n)) - 1.0;
}

}  // namespace nsinv
