// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "nsinv/bench.hpp"
#include "nsinv/error.hpp"

using namespace nsinv;
using namespace nsinv::bench;

namespace {

RunOptions opts(std::uint64_t seed = 42, unsigned threads = 1) {
  RunOptions o;
  o.seed = seed;
  o.threads = threads;
  return o;
}

const std::vector<ScaleFactorKind> kAll(std::begin(kAllScaleKinds), std::end(kAllScaleKinds));

}  // namespace

TEST_CASE("grids") {
  CHECK(default_mt_grid().size() == 12);
  CHECK(small_mt_grid().size() == 6);
  const auto g = parse_grid("16x64,32x1024");
  REQUIRE(g.size() == 2);
  CHECK(g[1].n == 32);
  CHECK(g[1].kappa == 1024);
  CHECK(parse_grid("default").size() == 12);
  CHECK_THROWS_AS(parse_grid("16"), InvalidArgument);
  CHECK_THROWS_AS(parse_grid("1x64"), InvalidArgument);
  CHECK_THROWS_AS(parse_grid("axb"), InvalidArgument);
  CHECK(full_table1_grid().size() == 35);
}

TEST_CASE("mt suite: alpha0 and alpha1 laws at n=16, kappa=64") {
  const auto recs = run_mt_suite({{16, 64}}, 10, kAll, opts());
  REQUIRE(recs.size() == 30);
  double n2 = 0;
  for (const auto& r : recs) {
    CHECK(r.converged);
    CHECK(r.family == Family::MoreToraldo);
    CHECK(r.m == r.n);
    if (r.scale_kind == ScaleFactorKind::Optimal) CHECK(r.iterations == 9);
    if (r.scale_kind == ScaleFactorKind::Trace) CHECK(r.iterations == 11);
    if (r.scale_kind == ScaleFactorKind::GershgorinDiag) n2 += r.iterations;
  }
  CHECK(std::fabs(n2 / 10 - (6 + 4.0 / 3 + 2.433)) <= 0.7);
  // Each trial's three kinds share one matrix and seed, kinds in order.
  CHECK(recs[0].seed == recs[2].seed);
  CHECK(recs[0].seed != recs[3].seed);
  CHECK(recs[1].scale_kind == ScaleFactorKind::Trace);
}

TEST_CASE("mt suite is independent of thread count") {
  const auto grid = parse_grid("16x64,32x4096");
  CHECK(run_mt_suite(grid, 3, kAll, opts(7, 1)) == run_mt_suite(grid, 3, kAll, opts(7, 4)));
}

TEST_CASE("mt suite errors") {
  CHECK_THROWS_AS(run_mt_suite({}, 1, kAll, opts()), InvalidArgument);
  CHECK_THROWS_AS(run_mt_suite({{16, 64}}, 0, kAll, opts()), InvalidArgument);
  CHECK_THROWS_AS(run_mt_suite({{16, 64}}, 1, {}, opts()), InvalidArgument);
}

TEST_CASE("non-converged trials are recorded, not dropped") {
  RunOptions o = opts();
  o.inversion.max_iterations = 2;
  const auto recs = run_mt_suite({{16, 1024}}, 2, {ScaleFactorKind::Trace}, o);
  REQUIRE(recs.size() == 2);
  for (const auto& r : recs) CHECK_FALSE(r.converged);
  const auto fits = [&] {
    auto with_good = recs;
    with_good.push_back({Family::MoreToraldo, 16, 16, 1024, ScaleFactorKind::Trace, 15, true, 1});
    return fit_laws(with_good);
  }();
  REQUIRE(fits.size() == 1);
  CHECK(fits[0].excluded_non_converged == 2);
  CHECK(fits[0].trials == 1);
  CHECK_FALSE(fits_pass(fits));
  CHECK_THROWS_AS(fit_laws(recs), InvalidArgument);
}

TEST_CASE("monotone in kappa and alpha2 beats alpha1 at n >= 16") {
  const auto recs = run_mt_suite(parse_grid("16x64,16x1024,16x16384"), 4, kAll, opts(3));
  const auto cells = summarize(recs);
  REQUIRE(cells.size() == 9);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t c = 1; c < 3; ++c) CHECK(cells[c * 3 + k].mean >= cells[(c - 1) * 3 + k].mean);
  for (std::size_t c = 0; c < 3; ++c) CHECK(cells[c * 3 + 2].mean <= cells[c * 3 + 1].mean);
}

TEST_CASE("table1 suite spot cell and trend") {
  const auto recs = run_table1_suite({{16, 1}, {16, 2}, {16, 8}, {16, 64}}, 10, opts());
  REQUIRE(recs.size() == 80);
  for (const auto& r : recs) {
    CHECK(r.family == Family::Uniform);
    CHECK(r.kappa >= 1.0);
    CHECK(r.scale_kind != ScaleFactorKind::Optimal);
  }
  const auto cells = summarize(recs);
  REQUIRE(cells.size() == 8);
  // Row trend: means do not increase as m/n grows.
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t c = 1; c < 4; ++c)
      CHECK(cells[c * 2 + k].mean <= cells[(c - 1) * 2 + k].mean);
  CHECK(cells[4].m == 128);
  CHECK(std::fabs(cells[4].mean - 8.0) <= 1.0);
  CHECK(std::fabs(cells[5].mean - 5.8) <= 1.0);
}

TEST_CASE("summarize statistics") {
  std::vector<TrialRecord> recs;
  for (int it : {4, 6, 5})
    recs.push_back({Family::Uniform, 4, 8, 10, ScaleFactorKind::Trace, it, true, 0});
  recs.push_back({Family::Uniform, 4, 8, 10, ScaleFactorKind::Trace, 200, false, 0});
  const auto cells = summarize(recs);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].mean == 5.0);
  CHECK(cells[0].stddev == doctest::Approx(1.0));
  CHECK(cells[0].trials == 3);
  CHECK(cells[0].non_converged == 1);
}

TEST_CASE("law predictions and fits") {
  CHECK(law_prediction(ScaleFactorKind::Optimal, 64, 16) == 9.0);
  CHECK(law_prediction(ScaleFactorKind::Trace, 64, 16) == 11.0);
  CHECK(law_prediction(ScaleFactorKind::GershgorinDiag, 64, 16) ==
        doctest::Approx(6 + 4.0 / 3 + 2.433));
  std::vector<TrialRecord> recs{
      {Family::MoreToraldo, 16, 16, 64, ScaleFactorKind::Optimal, 9, true, 1},
      {Family::MoreToraldo, 16, 16, 64, ScaleFactorKind::Optimal, 10, true, 2},
      {Family::MoreToraldo, 16, 16, 64, ScaleFactorKind::GershgorinDiag, 10, true, 1}};
  const auto fits = fit_laws(recs);
  REQUIRE(fits.size() == 2);
  CHECK(fits[0].law == Law::N0);
  CHECK(fits[0].mean_deviation == 0.5);
  CHECK(fits[0].max_abs_deviation == 1.0);
  CHECK(fits[1].law == Law::N2);
  CHECK(fits[1].mean_deviation == doctest::Approx(10 - 9.766333333));
  CHECK(fits_pass(fits));
  CHECK_THROWS_AS(fit_laws({}), InvalidArgument);
}

TEST_CASE("records CSV") {
  SUBCASE("empty list is header only") {
    std::ostringstream os;
    write_records_csv(os, {});
    CHECK(os.str() == std::string(kRecordHeader) + "\n");
  }
  SUBCASE("one record is two lines") {
    std::ostringstream os;
    write_records_csv(os, {{Family::MoreToraldo, 16, 16, 64, ScaleFactorKind::Trace, 11, true,
                            18446744073709551615ULL}});
    CHECK(os.str() == std::string(kRecordHeader) + "\nmt,16,16,64,alpha1,11,1,18446744073709551615\n");
  }
  SUBCASE("round trip") {
    auto recs = run_mt_suite({{16, 64}}, 2, kAll, opts());
    const auto t1 = run_table1_suite({{4, 2}}, 2, opts());
    recs.insert(recs.end(), t1.begin(), t1.end());
    std::ostringstream os;
    write_records_csv(os, recs);
    std::istringstream is(os.str());
    CHECK(read_records_csv(is) == recs);
  }
  SUBCASE("malformed input names the line") {
    std::istringstream bad(std::string(kRecordHeader) + "\nmt,16,16,64,alpha9,11,1,1\n");
    try {
      read_records_csv(bad);
      FAIL("expected throw");
    } catch (const IoError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    std::istringstream no_header("x\n");
    CHECK_THROWS_AS(read_records_csv(no_header), IoError);
  }
}

TEST_CASE("fits CSV and JSON") {
  std::vector<LawFit> fits{{Law::N1, -0.5, 1, 20, 0}};
  std::ostringstream csv;
  write_fits_csv(csv, fits);
  CHECK(csv.str() == "law,mean_dev,max_abs_dev,trials\nN1,-0.5,1,20\n");
  std::ostringstream json;
  write_fits_json(json, fits);
  CHECK(json.str().find("\"law\": \"N1\"") != std::string::npos);
  std::ostringstream rj;
  write_records_json(rj, {{Family::Uniform, 4, 8, 3.5, ScaleFactorKind::GershgorinDiag, 7, false, 9}});
  CHECK(rj.str().find("\"alpha\": \"alpha2\"") != std::string::npos);
  CHECK(rj.str().find("\"converged\": false") != std::string::npos);
}

TEST_CASE("write_file reports the path") {
  try {
    write_file("/nonexistent-dir/out.csv", "x");
    FAIL("expected throw");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent-dir/out.csv") != std::string::npos);
  }
}
