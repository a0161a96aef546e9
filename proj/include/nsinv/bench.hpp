// SPDX-License-Identifier: Apache-2.0
#pragma once

// Iteration-count experiments: the alpha0/alpha1/alpha2 laws on conditioned
// matrices, the m x n uniform-pattern table, law fits and CSV/JSON output.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "nsinv/inverter.hpp"
#include "nsinv/scaling.hpp"

namespace nsinv::bench {

enum class Family { MoreToraldo, Uniform };

/// "mt" / "uniform"
std::string_view to_token(Family f) noexcept;

struct TrialRecord {
  Family family;
  int n;
  int m;
  /// Exact for MoreToraldo, measured with the eigensolver for Uniform.
  double kappa;
  ScaleFactorKind scale_kind;
  int iterations;
  bool converged;
  std::uint64_t seed;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct GridCell {
  int n;
  double kappa;
};

/// {16, 64, 256} x {2^6, 2^10, 2^14, 2^20}; 10 trials each makes 120 matrices.
std::vector<GridCell> default_mt_grid();

/// {16, 64} x {2^6, 2^10, 2^20}.
std::vector<GridCell> small_mt_grid();

/// "default", "small", or a comma list of NxKAPPA cells ("16x64,64x1024").
std::vector<GridCell> parse_grid(std::string_view text);

struct RunOptions {
  InversionConfig inversion{};
  std::uint64_t seed = 42;
  /// 0 means hardware concurrency.
  unsigned threads = 0;
};

/// Every (cell, trial, kind) in generation order. Alpha0 uses the known
/// spectrum (lambda_min = 1, lambda_max = kappa).
std::vector<TrialRecord> run_mt_suite(const std::vector<GridCell>& grid,
                                      int trials_per_cell,
                                      const std::vector<ScaleFactorKind>& kinds,
                                      const RunOptions& opts);

inline constexpr int kTable1N[] = {4, 8, 16, 32, 64};
inline constexpr int kTable1Ratio[] = {1, 2, 4, 8, 16, 32, 64};

struct Table1Cell {
  int n;
  int ratio;  // m / n
};

std::vector<Table1Cell> full_table1_grid();

/// Uniform patterns with alpha1 and alpha2 computed from Z alone. A singular
/// Z is recorded as non-converged.
std::vector<TrialRecord> run_table1_suite(const std::vector<Table1Cell>& cells,
                                          int trials_per_cell,
                                          const RunOptions& opts);

struct CellSummary {
  Family family;
  int n;
  int m;
  /// The cell's kappa for MoreToraldo; NaN for Uniform (kappa varies per trial).
  double kappa;
  ScaleFactorKind scale_kind;
  double mean;
  /// Sample standard deviation (n - 1), 0 for a single trial.
  double stddev;
  int trials;
  int non_converged;
};

/// Mean/stddev of converged iterations per cell and kind, in first-seen order.
/// Cells are (n, m, kappa) for MoreToraldo and (n, m) for Uniform.
std::vector<CellSummary> summarize(const std::vector<TrialRecord>& records);

enum class Law { N0, N1, N2 };
std::string_view to_token(Law law) noexcept;

inline constexpr double kN2Offset = 2.433;

/// Predicted count for `kind`'s law at (kappa, n).
double law_prediction(ScaleFactorKind kind, double kappa, int n);

struct LawFit {
  Law law;
  double mean_deviation;
  double max_abs_deviation;
  int trials;
  int excluded_non_converged;

  friend bool operator==(const LawFit&, const LawFit&) = default;
};

/// One fit per scale kind present, in N0, N1, N2 order. Non-converged records
/// are excluded and counted. Throws InvalidArgument if no records remain.
std::vector<LawFit> fit_laws(const std::vector<TrialRecord>& records);

/// Acceptance tolerances for fits on the conditioned family.
inline constexpr double kExactLawMaxAbs = 1.0;
inline constexpr double kN2MeanTolerance = 0.7;

/// True when every fit is within its tolerance and nothing was excluded.
bool fits_pass(const std::vector<LawFit>& fits);

inline constexpr std::string_view kRecordHeader =
    "family,n,m,kappa,alpha,iterations,converged,seed";
inline constexpr std::string_view kFitHeader = "law,mean_dev,max_abs_dev,trials";

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records);
void write_fits_csv(std::ostream& out, const std::vector<LawFit>& fits);
void write_records_json(std::ostream& out, const std::vector<TrialRecord>& records);
void write_fits_json(std::ostream& out, const std::vector<LawFit>& fits);

/// Throws IoError with the line number on malformed input.
std::vector<TrialRecord> read_records_csv(std::istream& in);

/// Writes `text` to `path`, throwing IoError naming the path on failure.
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace nsinv::bench
