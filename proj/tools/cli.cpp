// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "nsinv/bench.hpp"
#include "nsinv/error.hpp"
#include "nsinv/kernels.hpp"
#include "nsinv/lsq.hpp"
#include "nsinv/matrix_io.hpp"
#include "nsinv/testgen.hpp"

namespace nsinv::cli {
namespace {

struct CommonBench {
  double eps = 1e-6;
  int max_iter = 200;
  std::uint64_t seed = 42;
  int trials = 10;
  unsigned threads = 0;
  std::string out;
  std::string format = "csv";
  bool check = false;

  bench::RunOptions run_options() const {
    bench::RunOptions o;
    o.inversion.epsilon = eps;
    o.inversion.max_iterations = max_iter;
    o.seed = seed;
    o.threads = threads;
    return o;
  }
};

void add_common(CLI::App* app, CommonBench& c, bool with_run_options) {
  if (with_run_options) {
    app->add_option("--eps", c.eps, "Entrywise stopping threshold")->capture_default_str();
    app->add_option("--max-iter", c.max_iter, "Iteration cap")->capture_default_str();
    app->add_option("--seed", c.seed, "Base seed")->capture_default_str();
    app->add_option("--trials", c.trials, "Trials per cell")->capture_default_str();
    app->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
  }
  app->add_option("--out", c.out, "Output file (default: stdout)");
  app->add_option("--format", c.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app->add_flag("--check", c.check, "Exit with code 2 if acceptance checks fail");
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    bench::write_file(path, text);
}

std::string render_records(const std::vector<bench::TrialRecord>& recs,
                           const std::string& format) {
  std::ostringstream os;
  if (format == "json")
    bench::write_records_json(os, recs);
  else
    bench::write_records_csv(os, recs);
  return os.str();
}

std::string render_fits(const std::vector<bench::LawFit>& fits, const std::string& format) {
  std::ostringstream os;
  if (format == "json")
    bench::write_fits_json(os, fits);
  else
    bench::write_fits_csv(os, fits);
  return os.str();
}

void print_fits(const std::vector<bench::LawFit>& fits, std::ostream& err) {
  for (const auto& f : fits) {
    err << bench::to_token(f.law) << ": mean_dev=" << format_double(f.mean_deviation)
        << " max_abs_dev=" << format_double(f.max_abs_deviation) << " trials=" << f.trials;
    if (f.excluded_non_converged) err << " non_converged=" << f.excluded_non_converged;
    err << '\n';
  }
}

void print_summary(const std::vector<bench::CellSummary>& cells, std::ostream& err) {
  err << "n,m,kappa,alpha,mean,sd,trials,non_converged\n";
  for (const auto& c : cells) {
    std::ostringstream mean, sd;
    mean << std::fixed << std::setprecision(2) << c.mean;
    sd << std::fixed << std::setprecision(2) << c.stddev;
    err << c.n << ',' << c.m << ',' << (std::isnan(c.kappa) ? "-" : format_double(c.kappa))
        << ',' << to_token(c.scale_kind) << ',' << mean.str() << ','
        << sd.str() << ',' << c.trials << ',' << c.non_converged << '\n';
  }
}

std::vector<ScaleFactorKind> parse_kinds(const std::vector<std::string>& tokens) {
  std::vector<ScaleFactorKind> kinds;
  for (const auto& t : tokens) {
    const auto k = parse_scale_kind(t);
    if (!k) throw InvalidArgument("unknown scale factor '" + t + "'");
    kinds.push_back(*k);
  }
  return kinds;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Newton-Schulz inversion, least-squares matching and iteration-count benchmarks",
               "nsinv"};
  app.require_subcommand(1);
  std::string isa;
  app.add_option("--isa", isa, "Kernel set: scalar, avx2 or neon (default: best available)");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Iteration-count experiments");
  bench_cmd->require_subcommand(1);

  CommonBench mt;
  std::string grid = "default";
  std::vector<std::string> mt_alphas{"alpha0", "alpha1", "alpha2"};
  auto* mt_cmd = bench_cmd->add_subcommand("mt", "Conditioned SPD matrices, all scale factors");
  add_common(mt_cmd, mt, true);
  mt_cmd->add_option("--grid", grid, "default, small, or NxKAPPA[,NxKAPPA...]")
      ->capture_default_str();
  mt_cmd->add_option("--alpha", mt_alphas, "Scale factors to run")->delimiter(',');

  CommonBench t1;
  std::vector<int> t1_n(std::begin(bench::kTable1N), std::end(bench::kTable1N));
  std::vector<int> t1_ratio(std::begin(bench::kTable1Ratio), std::end(bench::kTable1Ratio));
  auto* t1_cmd = bench_cmd->add_subcommand("table1", "Uniform patterns over m x n");
  add_common(t1_cmd, t1, true);
  t1_cmd->add_option("--n", t1_n, "Column counts")->delimiter(',');
  t1_cmd->add_option("--ratio", t1_ratio, "Row/column ratios m/n")->delimiter(',');

  CommonBench fit;
  std::string fit_in;
  auto* fit_cmd = bench_cmd->add_subcommand("fit", "Fit iteration laws to mt records");
  add_common(fit_cmd, fit, false);
  fit_cmd->add_option("--in", fit_in, "Records CSV from 'bench mt'")->required();

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "Generate test matrices");
  gen_cmd->require_subcommand(1);
  int gen_n = 16;
  double gen_kappa = 64;
  int gen_m = 128;
  std::uint64_t gen_seed = 42;
  std::string gen_out;
  bool gen_x = false;
  auto* gen_mt = gen_cmd->add_subcommand("mt", "Conditioned SPD matrix Z = X'X");
  gen_mt->add_option("--n", gen_n)->capture_default_str();
  gen_mt->add_option("--kappa", gen_kappa)->capture_default_str();
  gen_mt->add_option("--seed", gen_seed)->capture_default_str();
  gen_mt->add_option("--out", gen_out, "Output file (default: stdout)");
  gen_mt->add_flag("--x", gen_x, "Write the factor X instead of Z");
  auto* gen_uni = gen_cmd->add_subcommand("uniform", "Uniform(-1,1) m x n pattern");
  gen_uni->add_option("--m", gen_m)->capture_default_str();
  gen_uni->add_option("--n", gen_n)->capture_default_str();
  gen_uni->add_option("--seed", gen_seed)->capture_default_str();
  gen_uni->add_option("--out", gen_out, "Output file (default: stdout)");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Least-squares transform T minimizing |XT - M|");
  std::string x_path, m_path, alpha_token = "alpha2";
  PipelineConfig pcfg;
  solve_cmd->add_option("--x", x_path, "Input pattern X")->required();
  solve_cmd->add_option("--m", m_path, "Model pattern M")->required();
  solve_cmd->add_option("--alpha", alpha_token, "alpha0, alpha1 or alpha2")
      ->check(CLI::IsMember({"alpha0", "alpha1", "alpha2"}))
      ->capture_default_str();
  solve_cmd->add_option("--eps", pcfg.inversion.epsilon)->capture_default_str();
  solve_cmd->add_option("--max-iter", pcfg.inversion.max_iterations)->capture_default_str();
  solve_cmd->add_option("--ms-per-op", pcfg.ms_per_op)->capture_default_str();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (!isa.empty()) {
      const auto parsed = kernels::parse_isa(isa);
      if (!parsed) throw InvalidArgument("unknown ISA '" + isa + "'");
      kernels::set_active(*parsed);
    }

    if (*mt_cmd) {
      const auto recs = bench::run_mt_suite(bench::parse_grid(grid), mt.trials,
                                            parse_kinds(mt_alphas), mt.run_options());
      emit(mt.out, render_records(recs, mt.format), out);
      print_summary(bench::summarize(recs), err);
      std::vector<bench::LawFit> fits;
      try {
        fits = bench::fit_laws(recs);
      } catch (const InvalidArgument& e) {
        err << "no law fit: " << e.what() << '\n';
        return mt.check ? kExitCheckFailed : kExitOk;
      }
      print_fits(fits, err);
      if (mt.check && !bench::fits_pass(fits)) {
        err << "check failed: law fit outside tolerance or non-converged trials\n";
        return kExitCheckFailed;
      }
      return kExitOk;
    }

    if (*t1_cmd) {
      std::vector<bench::Table1Cell> cells;
      for (int ratio : t1_ratio)
        for (int n : t1_n) cells.push_back({n, ratio});
      const auto recs = bench::run_table1_suite(cells, t1.trials, t1.run_options());
      emit(t1.out, render_records(recs, t1.format), out);
      const auto summary = bench::summarize(recs);
      print_summary(summary, err);
      if (t1.check) {
        for (const auto& c : summary)
          if (c.m > c.n && c.non_converged > 0) {
            err << "check failed: non-converged trials at n=" << c.n << " m=" << c.m << '\n';
            return kExitCheckFailed;
          }
      }
      return kExitOk;
    }

    if (*fit_cmd) {
      std::ifstream in(fit_in);
      if (!in) throw IoError("cannot open '" + fit_in + "' for reading");
      const auto fits = bench::fit_laws(bench::read_records_csv(in));
      emit(fit.out, render_fits(fits, fit.format), out);
      print_fits(fits, err);
      if (fit.check && !bench::fits_pass(fits)) {
        err << "check failed: law fit outside tolerance or non-converged trials\n";
        return kExitCheckFailed;
      }
      return kExitOk;
    }

    if (*gen_mt || *gen_uni) {
      const Matrix m = *gen_mt
                           ? [&] {
                               auto mt_pair = more_toraldo({gen_n, gen_kappa}, gen_seed);
                               return gen_x ? mt_pair.x : mt_pair.z.matrix();
                             }()
                           : uniform_pattern(gen_m, gen_n, gen_seed);
      if (gen_out.empty() || gen_out == "-")
        write_matrix(out, m);
      else
        save_matrix(gen_out, m);
      return kExitOk;
    }

    if (*solve_cmd) {
      pcfg.scale_kind = *parse_scale_kind(alpha_token);
      const auto res = solve_transform(load_matrix(x_path), load_matrix(m_path), pcfg);
      write_matrix(out, res.transform);
      err << "iterations=" << res.inversion.iterations << " ops=" << res.op_count
          << " est_ms=" << format_double(res.est_time_ms)
          << " distance=" << format_double(res.distance) << '\n';
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace nsinv::cli
