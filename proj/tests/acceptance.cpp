// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one PASS/FAIL line per criterion; exits non-zero if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "nsinv/bench.hpp"
#include "nsinv/error.hpp"
#include "nsinv/inverter.hpp"
#include "nsinv/linalg.hpp"
#include "nsinv/lsq.hpp"
#include "nsinv/scaling.hpp"
#include "nsinv/testgen.hpp"
#include "oracles.hpp"

using namespace nsinv;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Shared conditioned-matrix run: {16, 64} x {2^6, 2^10, 2^20}, 10 trials.
struct MtRun {
  std::vector<bench::TrialRecord> records;
  double seconds;
};

const MtRun& mt_run() {
  static const MtRun run = [] {
    const auto start = std::chrono::steady_clock::now();
    bench::RunOptions opts;
    opts.seed = 42;
    auto recs = bench::run_mt_suite(
        bench::small_mt_grid(), 10,
        {std::begin(kAllScaleKinds), std::end(kAllScaleKinds)}, opts);
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    return MtRun{std::move(recs), dt.count()};
  }();
  return run;
}

// Per-trial |dev| <= 1 and per-cell |mean dev| <= 0.2 against `kind`'s law.
Outcome exact_law(ScaleFactorKind kind) {
  std::map<std::pair<int, double>, std::pair<double, int>> cells;
  double worst_trial = 0.0;
  int non_converged = 0;
  for (const auto& r : mt_run().records) {
    if (r.scale_kind != kind) continue;
    if (!r.converged) {
      ++non_converged;
      continue;
    }
    const double dev = r.iterations - bench::law_prediction(kind, r.kappa, r.n);
    worst_trial = std::max(worst_trial, std::fabs(dev));
    auto& c = cells[{r.n, r.kappa}];
    c.first += dev;
    ++c.second;
  }
  bool pass = non_converged == 0 && worst_trial <= 1.0;
  std::ostringstream os;
  os << "max|trial dev|=" << worst_trial << " cell mean devs:";
  for (const auto& [key, c] : cells) {
    const double mean = c.first / c.second;
    os << " (n=" << key.first << ",log2k=" << std::log2(key.second) << ")=" << mean;
    if (std::fabs(mean) > 0.2) pass = false;
  }
  if (non_converged) os << " non_converged=" << non_converged;
  return {pass, os.str()};
}

Outcome ac1() {
  auto o = exact_law(ScaleFactorKind::Optimal);
  o.detail += " runtime=" + fmt("%.2fs", mt_run().seconds);
  o.pass = o.pass && mt_run().seconds < 60.0;
  return o;
}

Outcome ac2() { return exact_law(ScaleFactorKind::Trace); }

Outcome ac3() {
  double sum = 0.0;
  int count = 0;
  int non_converged = 0;
  for (const auto& r : mt_run().records) {
    if (r.scale_kind != ScaleFactorKind::GershgorinDiag) continue;
    if (!r.converged) {
      ++non_converged;
      continue;
    }
    sum += r.iterations - std::log2(r.kappa) - std::log2(static_cast<double>(r.n)) / 3.0;
    ++count;
  }
  const double offset = sum / count;
  return {non_converged == 0 && std::fabs(offset - bench::kN2Offset) <= 0.7,
          "mean offset=" + fmt("%.4f", offset) + " (target 2.433 +/- 0.7)"};
}

Outcome ac4() {
  bench::RunOptions opts;
  opts.seed = 42;
  const auto recs = bench::run_table1_suite({{16, 8}, {8, 64}, {4, 1}}, 10, opts);
  const auto cells = bench::summarize(recs);
  struct Spot {
    int n, m;
    ScaleFactorKind kind;
    double target, tol;
  };
  const Spot spots[] = {{16, 128, ScaleFactorKind::Trace, 8.0, 1.0},
                        {16, 128, ScaleFactorKind::GershgorinDiag, 5.8, 1.0},
                        {8, 512, ScaleFactorKind::GershgorinDiag, 4.0, 1.0},
                        {4, 4, ScaleFactorKind::GershgorinDiag, 10.9, 3.5}};
  bool pass = true;
  std::ostringstream os;
  for (const auto& s : spots) {
    bool found = false;
    for (const auto& c : cells) {
      if (c.n != s.n || c.m != s.m || c.scale_kind != s.kind) continue;
      found = true;
      const bool ok = c.non_converged == 0 && std::fabs(c.mean - s.target) <= s.tol;
      pass = pass && ok;
      os << " (m=" << s.m << ",n=" << s.n << "," << to_token(s.kind) << ") mean=" << c.mean
         << " sd=" << fmt("%.2f", c.stddev) << (ok ? "" : " OUT");
    }
    pass = pass && found;
  }
  return {pass, os.str()};
}

Outcome ac5() {
  const auto mt = more_toraldo({2, 2.0}, 42);
  const auto res = solve_transform(mt.x, uniform_pattern(2, 2, 43),
                                   {ScaleFactorKind::Optimal, {}, kDefaultMsPerOp});
  const bool pass = res.inversion.converged && res.inversion.iterations == 4 &&
                    res.op_count == 15 && res.est_time_ms == 75.0 &&
                    op_count(4) == 15 && estimate_time_ms(15, 5.0) == 75.0;
  std::ostringstream os;
  os << "iterations=" << res.inversion.iterations << " ops=" << res.op_count
     << " est_ms=" << res.est_time_ms;
  return {pass, os.str()};
}

// 20 rescaled SPD matrices, n in [2, 8], spectrum checked inside (0, 2).
std::vector<SpdMatrix> oracle_matrices() {
  std::vector<SpdMatrix> out;
  for (int i = 0; i < 20; ++i) {
    const int n = 2 + i % 7;
    const SpdMatrix z = gram(uniform_pattern(4 * n, n, derive_seed(2024, i)));
    const SpdMatrix a = rescale(z, i % 2 ? gershgorin_alpha(z) : trace_alpha(z));
    const auto eig = symmetric_eigen(a);
    if (!(eig.min() > 0.0 && eig.max() < 2.0)) throw Error("spectrum outside (0, 2)");
    out.push_back(a);
  }
  return out;
}

Outcome ac6() {
  double worst = 0.0;
  for (const auto& a : oracle_matrices()) {
    const auto it = process_iterates(a, 5);
    for (int t = 1; t <= 5; ++t)
      worst = std::max(worst, oracle::max_abs_diff(it[t], neumann_partial_sum(a, t)));
  }
  return {worst <= 1e-10, "max entrywise |V_t - Neumann_t|=" + fmt("%.3g", worst)};
}

Outcome ac7() {
  double worst_rel = 0.0;
  int bound_violations = 0;
  int checked = 0;
  for (const auto& a : oracle_matrices()) {
    const auto eig = symmetric_eigen(a);
    const double c = std::max(std::fabs(1 - eig.min()), std::fabs(1 - eig.max()));
    const auto rep = invert(a);
    if (!rep.converged) return {false, "an inversion failed to converge"};
    if (rep.iterations > static_cast<int>(std::ceil(theorem1_bound(c, 1e-6)))) ++bound_violations;
    const auto it = process_iterates(a, rep.iterations);
    const Matrix id = Matrix::identity(a.order());
    for (int t = 0; t < rep.iterations; ++t) {
      const double s = spectral_norm(subtract(id, multiply(it[t], a.matrix())));
      const double predicted = std::pow(c, std::ldexp(1.0, t));
      worst_rel = std::max(worst_rel, std::fabs(s - predicted) / predicted);
      ++checked;
    }
  }
  std::ostringstream os;
  os << "max rel err=" << fmt("%.3g", worst_rel) << " over " << checked
     << " iterates; stop-index bound violations=" << bound_violations;
  return {worst_rel <= 1e-8 && bound_violations == 0, os.str()};
}

Outcome ac8() {
  double worst2 = 0.0, worst1 = 0.0, worst_eq = 0.0;
  int count = 0;
  const int sizes[] = {2, 8, 32};
  for (int i = 0; i < 100; ++i) {
    const int n = sizes[i % 3];
    const std::uint64_t seed = derive_seed(8, i);
    const SpdMatrix z = (i / 3) % 2
                            ? more_toraldo({n, std::ldexp(1.0, 1 + i % 20)}, seed).z
                            : gram(uniform_pattern(2 * n, n, seed));
    const double a0 = alpha_optimal(symmetric_eigen(z)).alpha;
    const double a1 = trace_alpha(z);
    const double a2 = gershgorin_alpha(z);
    worst2 = std::max(worst2, (a2 - a0) / a0);
    worst1 = std::max(worst1, (a1 - a0) / a0);
    if (n == 2) worst_eq = std::max(worst_eq, std::fabs(a1 - a0) / a0);
    ++count;
  }
  std::ostringstream os;
  os << count << " matrices; max (a2-a0)/a0=" << fmt("%.3g", worst2)
     << " max (a1-a0)/a0=" << fmt("%.3g", worst1) << " n=2 |a1-a0|/a0=" << fmt("%.3g", worst_eq);
  return {worst2 <= 1e-12 && worst1 <= 1e-12 && worst_eq <= 1e-12, os.str()};
}

Outcome ac9() {
  double worst_t = 0.0, worst_dist = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int n = i % 2 ? 8 : 4;
    const int m = (i / 2) % 2 ? 8 * n : 2 * n;
    const Matrix x = uniform_pattern(m, n, derive_seed(9, 2 * i));
    const Matrix mm = uniform_pattern(m, 3, derive_seed(9, 2 * i + 1));
    const auto res = solve_transform(x, mm);
    const Matrix direct = oracle::gauss_solve(oracle::naive_multiply(x.transpose(), x),
                                              oracle::naive_multiply(x.transpose(), mm));
    worst_t = std::max(worst_t, oracle::max_abs_diff(res.transform, direct));

    Matrix t0 = uniform_pattern(n, n, derive_seed(10, i));
    for (int d = 0; d < n; ++d) t0(d, d) += 2.0;
    const Matrix target = multiply(x, t0);
    const auto exact = solve_transform(x, target);
    worst_dist = std::max(worst_dist, exact.distance / frobenius_norm(target));
  }
  std::ostringstream os;
  os << "max |T - T_gauss|=" << fmt("%.3g", worst_t)
     << " max distance/||M||_F=" << fmt("%.3g", worst_dist);
  return {worst_t <= 1e-6 && worst_dist < 1e-4, os.str()};
}

Outcome ac10() {
  auto once = [] {
    std::ostringstream out, err;
    const int code = cli::run({"bench", "mt", "--seed", "42"}, out, err);
    return std::make_pair(code, out.str());
  };
  const auto a = once();
  const auto b = once();
  std::ostringstream os;
  os << "exit codes " << a.first << "," << b.first << "; " << a.second.size() << " bytes";
  return {a.first == 0 && b.first == 0 && !a.second.empty() && a.second == b.second, os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 exact law N0 (alpha0)", ac1},
      {"AC2 exact law N1 (alpha1)", ac2},
      {"AC3 cube-root law N2 (alpha2)", ac3},
      {"AC4 uniform-pattern table spot cells", ac4},
      {"AC5 operation/time model", ac5},
      {"AC6 process iterates equal truncated Neumann sums", ac6},
      {"AC7 spectral residual law and stop bound", ac7},
      {"AC8 scale factor ordering", ac8},
      {"AC9 least-squares solver correctness", ac9},
      {"AC10 bench mt determinism", ac10},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
