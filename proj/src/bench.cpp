// SPDX-License-Identifier: Apache-2.0
#include "nsinv/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "nsinv/error.hpp"
#include "nsinv/linalg.hpp"
#include "nsinv/matrix_io.hpp"
#include "nsinv/testgen.hpp"

namespace nsinv::bench {
namespace {

// Runs body(i) for i in [0, count) on up to `threads` workers. The first
// exception thrown by any worker is rethrown on the caller.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
            next.store(count);
          }
        }
      });
  }
  if (failure) std::rethrow_exception(failure);
}

struct InversionOutcome {
  int iterations;
  bool converged;
};

InversionOutcome run_inversion(const SpdMatrix& z, double alpha, const InversionConfig& cfg) {
  try {
    const auto rep = invert(rescale(z, alpha), cfg);
    return {rep.iterations, rep.converged};
  } catch (const Divergence& e) {
    return {e.iteration(), false};
  }
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

long long parse_integer(std::string_view token, const char* what) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty())
    throw InvalidArgument(std::string("bad ") + what + " '" + std::string(token) + "'");
  return v;
}

}  // namespace

std::string_view to_token(Family f) noexcept {
  return f == Family::MoreToraldo ? "mt" : "uniform";
}

std::string_view to_token(Law law) noexcept {
  switch (law) {
    case Law::N0:
      return "N0";
    case Law::N1:
      return "N1";
    case Law::N2:
      return "N2";
  }
  return "N?";
}

std::vector<GridCell> default_mt_grid() {
  std::vector<GridCell> grid;
  for (int n : {16, 64, 256})
    for (int e : {6, 10, 14, 20}) grid.push_back({n, std::ldexp(1.0, e)});
  return grid;
}

std::vector<GridCell> small_mt_grid() {
  std::vector<GridCell> grid;
  for (int n : {16, 64})
    for (int e : {6, 10, 20}) grid.push_back({n, std::ldexp(1.0, e)});
  return grid;
}

std::vector<GridCell> parse_grid(std::string_view text) {
  if (text == "default") return default_mt_grid();
  if (text == "small") return small_mt_grid();
  std::vector<GridCell> grid;
  for (std::string_view cell : split(text, ',')) {
    const auto parts = split(cell, 'x');
    if (parts.size() != 2) throw InvalidArgument("bad grid cell '" + std::string(cell) + "'");
    GridCell g{static_cast<int>(parse_integer(parts[0], "grid n")), parse_double(parts[1])};
    MoreToraldoSpec{g.n, g.kappa}.validate();
    grid.push_back(g);
  }
  return grid;
}

std::vector<TrialRecord> run_mt_suite(const std::vector<GridCell>& grid,
                                      int trials_per_cell,
                                      const std::vector<ScaleFactorKind>& kinds,
                                      const RunOptions& opts) {
  if (grid.empty()) throw InvalidArgument("run_mt_suite: empty grid");
  if (trials_per_cell < 1) throw InvalidArgument("run_mt_suite: trials must be >= 1");
  if (kinds.empty()) throw InvalidArgument("run_mt_suite: no scale kinds");
  opts.inversion.validate();
  for (const auto& c : grid) MoreToraldoSpec{c.n, c.kappa}.validate();

  const std::size_t trials = static_cast<std::size_t>(trials_per_cell);
  const std::size_t matrices = grid.size() * trials;
  std::vector<TrialRecord> out(matrices * kinds.size());

  parallel_for(matrices, opts.threads, [&](std::size_t idx) {
    const GridCell& cell = grid[idx / trials];
    const std::uint64_t seed = derive_seed(opts.seed, idx);
    const auto mt = more_toraldo({cell.n, cell.kappa}, seed);
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      const ScaleFactorKind kind = kinds[k];
      // The spectrum is known by construction: lambda_min = 1, lambda_max = kappa.
      const double alpha = kind == ScaleFactorKind::Optimal
                               ? alpha_optimal(1.0, cell.kappa).alpha
                               : scale_factor(kind, mt.z);
      const auto res = run_inversion(mt.z, alpha, opts.inversion);
      out[idx * kinds.size() + k] = TrialRecord{Family::MoreToraldo, cell.n, cell.n,
                                                cell.kappa, kind, res.iterations,
                                                res.converged, seed};
    }
  });
  return out;
}

std::vector<Table1Cell> full_table1_grid() {
  std::vector<Table1Cell> cells;
  for (int ratio : kTable1Ratio)
    for (int n : kTable1N) cells.push_back({n, ratio});
  return cells;
}

std::vector<TrialRecord> run_table1_suite(const std::vector<Table1Cell>& cells,
                                          int trials_per_cell,
                                          const RunOptions& opts) {
  if (cells.empty()) throw InvalidArgument("run_table1_suite: no cells");
  if (trials_per_cell < 1) throw InvalidArgument("run_table1_suite: trials must be >= 1");
  opts.inversion.validate();
  for (const auto& c : cells)
    if (c.n < 1 || c.ratio < 1) throw InvalidArgument("run_table1_suite: bad cell");

  constexpr ScaleFactorKind kKinds[] = {ScaleFactorKind::Trace,
                                        ScaleFactorKind::GershgorinDiag};
  const std::size_t trials = static_cast<std::size_t>(trials_per_cell);
  const std::size_t matrices = cells.size() * trials;
  std::vector<TrialRecord> out(matrices * 2);

  parallel_for(matrices, opts.threads, [&](std::size_t idx) {
    const Table1Cell& cell = cells[idx / trials];
    const int m = cell.n * cell.ratio;
    const std::uint64_t seed = derive_seed(opts.seed, idx);
    const SpdMatrix z = gram(uniform_pattern(m, cell.n, seed));

    double kappa = std::numeric_limits<double>::infinity();
    try {
      const auto eig = symmetric_eigen(z);
      if (eig.min() > 0.0) kappa = std::max(1.0, eig.max() / eig.min());
    } catch (const EigenNonConvergence&) {
    }

    for (std::size_t k = 0; k < 2; ++k) {
      InversionOutcome res{0, false};
      try {
        res = run_inversion(z, scale_factor(kKinds[k], z), opts.inversion);
      } catch (const NotPositiveDefinite&) {
      }
      out[idx * 2 + k] = TrialRecord{Family::Uniform, cell.n, m, kappa, kKinds[k],
                                     res.iterations, res.converged, seed};
    }
  });
  return out;
}

std::vector<CellSummary> summarize(const std::vector<TrialRecord>& records) {
  using Key = std::tuple<int, int, int, double, int>;  // family, n, m, kappa, kind
  std::map<Key, std::size_t> index;
  std::vector<CellSummary> cells;
  std::vector<std::vector<double>> samples;
  for (const auto& r : records) {
    const bool exact = r.family == Family::MoreToraldo;
    const Key key{static_cast<int>(r.family), r.n, r.m, exact ? r.kappa : 0.0,
                  static_cast<int>(r.scale_kind)};
    auto [it, inserted] = index.try_emplace(key, cells.size());
    if (inserted) {
      cells.push_back({r.family, r.n, r.m,
                       exact ? r.kappa : std::numeric_limits<double>::quiet_NaN(),
                       r.scale_kind, 0.0, 0.0, 0, 0});
      samples.emplace_back();
    }
    if (r.converged)
      samples[it->second].push_back(r.iterations);
    else
      ++cells[it->second].non_converged;
  }
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& s = samples[c];
    cells[c].trials = static_cast<int>(s.size());
    if (s.empty()) {
      cells[c].mean = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    double mean = 0.0;
    for (double v : s) mean += v;
    mean /= static_cast<double>(s.size());
    double ss = 0.0;
    for (double v : s) ss += (v - mean) * (v - mean);
    cells[c].mean = mean;
    cells[c].stddev = s.size() > 1 ? std::sqrt(ss / static_cast<double>(s.size() - 1)) : 0.0;
  }
  return cells;
}

double law_prediction(ScaleFactorKind kind, double kappa, int n) {
  const double lk = std::log2(kappa);
  const double ln = std::log2(static_cast<double>(n));
  switch (kind) {
    case ScaleFactorKind::Optimal:
      return lk + 3.0;
    case ScaleFactorKind::Trace:
      return lk + ln + 1.0;
    case ScaleFactorKind::GershgorinDiag:
      return lk + ln / 3.0 + kN2Offset;
  }
  throw InvalidArgument("unknown scale factor kind");
}

std::vector<LawFit> fit_laws(const std::vector<TrialRecord>& records) {
  std::vector<LawFit> fits;
  for (ScaleFactorKind kind : kAllScaleKinds) {
    LawFit fit{static_cast<Law>(static_cast<int>(kind)), 0.0, 0.0, 0, 0};
    bool present = false;
    double sum = 0.0;
    for (const auto& r : records) {
      if (r.scale_kind != kind) continue;
      present = true;
      if (!r.converged) {
        ++fit.excluded_non_converged;
        continue;
      }
      const double dev = r.iterations - law_prediction(kind, r.kappa, r.n);
      sum += dev;
      fit.max_abs_deviation = std::max(fit.max_abs_deviation, std::fabs(dev));
      ++fit.trials;
    }
    if (!present) continue;
    if (fit.trials == 0)
      throw InvalidArgument("fit_laws: every " + std::string(to_token(kind)) +
                            " trial failed to converge");
    fit.mean_deviation = sum / fit.trials;
    fits.push_back(fit);
  }
  if (fits.empty()) throw InvalidArgument("fit_laws: no records");
  return fits;
}

bool fits_pass(const std::vector<LawFit>& fits) {
  for (const auto& f : fits) {
    if (f.excluded_non_converged > 0) return false;
    if (f.law == Law::N2) {
      if (std::fabs(f.mean_deviation) > kN2MeanTolerance) return false;
    } else if (f.max_abs_deviation > kExactLawMaxAbs) {
      return false;
    }
  }
  return true;
}

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << kRecordHeader << '\n';
  for (const auto& r : records)
    out << to_token(r.family) << ',' << r.n << ',' << r.m << ',' << format_double(r.kappa)
        << ',' << to_token(r.scale_kind) << ',' << r.iterations << ','
        << (r.converged ? 1 : 0) << ',' << r.seed << '\n';
}

void write_fits_csv(std::ostream& out, const std::vector<LawFit>& fits) {
  out << kFitHeader << '\n';
  for (const auto& f : fits)
    out << to_token(f.law) << ',' << format_double(f.mean_deviation) << ','
        << format_double(f.max_abs_deviation) << ',' << f.trials << '\n';
}

void write_records_json(std::ostream& out, const std::vector<TrialRecord>& records) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : records)
    arr.push_back({{"family", to_token(r.family)},
                   {"n", r.n},
                   {"m", r.m},
                   {"kappa", r.kappa},
                   {"alpha", to_token(r.scale_kind)},
                   {"iterations", r.iterations},
                   {"converged", r.converged},
                   {"seed", r.seed}});
  out << arr.dump(2) << '\n';
}

void write_fits_json(std::ostream& out, const std::vector<LawFit>& fits) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& f : fits)
    arr.push_back({{"law", to_token(f.law)},
                   {"mean_dev", f.mean_deviation},
                   {"max_abs_dev", f.max_abs_deviation},
                   {"trials", f.trials}});
  out << arr.dump(2) << '\n';
}

std::vector<TrialRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRecordHeader)
    throw IoError("records csv: missing or unexpected header");
  std::vector<TrialRecord> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const auto f = split(line, ',');
      if (f.size() != 8) throw InvalidArgument("expected 8 fields");
      TrialRecord r{};
      if (f[0] == "mt")
        r.family = Family::MoreToraldo;
      else if (f[0] == "uniform")
        r.family = Family::Uniform;
      else
        throw InvalidArgument("unknown family '" + std::string(f[0]) + "'");
      r.n = static_cast<int>(parse_integer(f[1], "n"));
      r.m = static_cast<int>(parse_integer(f[2], "m"));
      r.kappa = parse_double(f[3]);
      const auto kind = parse_scale_kind(f[4]);
      if (!kind) throw InvalidArgument("unknown alpha '" + std::string(f[4]) + "'");
      r.scale_kind = *kind;
      r.iterations = static_cast<int>(parse_integer(f[5], "iterations"));
      const long long conv = parse_integer(f[6], "converged");
      if (conv != 0 && conv != 1) throw InvalidArgument("converged must be 0 or 1");
      r.converged = conv == 1;
      std::uint64_t seed = 0;
      auto [ptr, ec] = std::from_chars(f[7].data(), f[7].data() + f[7].size(), seed);
      if (ec != std::errc{} || ptr != f[7].data() + f[7].size() || f[7].empty())
        throw InvalidArgument("bad seed");
      r.seed = seed;
      out.push_back(r);
    } catch (const InvalidArgument& e) {
      throw IoError("records csv line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out.flush()) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace nsinv::bench
