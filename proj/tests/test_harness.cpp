#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rmt/harness.hpp"
#include "rmt/kernels.hpp"
#include "rmt/parallel.hpp"

using namespace rmt;

TEST(Harness, NListValidation) {
  EXPECT_THROW(check_n_list({}), std::invalid_argument);
  EXPECT_THROW(check_n_list({5, 3}), std::invalid_argument);
  EXPECT_THROW(check_n_list({0, 3}), std::invalid_argument);
  EXPECT_THROW(check_n_list({3, 3}), std::invalid_argument);
  EXPECT_NO_THROW(check_n_list({1, 2, 100}));
}

TEST(Harness, LimitCacheIsLazyAndSymmetric) {
  LimitCache c;
  EXPECT_EQ(c.size(), 0u);
  const double a = c.get(1, 0.2, -0.4);
  EXPECT_EQ(c.get(1, -0.4, 0.2), a);
  EXPECT_EQ(c.size(), 1u);
  EXPECT_NEAR(a, airy_kernel(0.2, -0.4), 1e-10);
}

TEST(CmdEdge, AiryConvergence) {
  LimitCache cache;
  const RunReport r = cmd_edge({1, 0, 0, 0, {125, 1000, 8000}}, cache);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_LT(r.rows[1].abs_err, r.rows[0].abs_err);
  EXPECT_LT(r.rows[2].abs_err, r.rows[1].abs_err);
  EXPECT_LE(r.rows[2].abs_err, 0.02);
  EXPECT_NEAR(r.rows[0].limit, 0.0669875, 1e-7);
  const double slope = r.diagnostics["loglog_slope"].get<double>();
  EXPECT_NEAR(slope, -1.0 / 3.0, 0.05);
  for (const ReportRow& row : r.rows) {
    EXPECT_TRUE(std::isfinite(row.scaled));
    EXPECT_EQ(row.abs_err, std::fabs(row.scaled - row.limit));
  }
}

TEST(CmdEdge, BKernelConvergence) {
  LimitCache cache;
  const RunReport r = cmd_edge({2, 0, 0, 1, {125, 1000, 8000}}, cache);
  EXPECT_NEAR(r.rows[0].limit, b_kernel(0, 1), 1e-9);
  EXPECT_LT(r.rows[1].abs_err, r.rows[0].abs_err);
  EXPECT_LT(r.rows[2].abs_err, r.rows[1].abs_err);
}

TEST(CmdEdge, SwapGivesIdenticalCsv) {
  LimitCache cache;
  RunReport a = cmd_edge({1, 0, 0.3, -0.8, {64, 512}}, cache);
  RunReport b = cmd_edge({1, 0, -0.8, 0.3, {64, 512}}, cache);
  a.params = b.params = {};
  EXPECT_EQ(to_csv(a), to_csv(b));
  EXPECT_THROW(cmd_edge({1, 0, 0, 0, {10, 5}}, cache), std::invalid_argument);
}

TEST(CmdCorr, Examples) {
  LimitCache cache;
  const RunReport a = cmd_corr({1, 0, 0, 1, {1024, 4096}}, cache);
  EXPECT_NEAR(a.rows[1].limit, airy_kernel(0, 1) / std::sqrt(airy_kernel(0, 0) * airy_kernel(1, 1)), 1e-9);
  EXPECT_LE(a.rows[1].abs_err, 0.1);
  const RunReport b = cmd_corr({2, 0, -1, 2, {4096}}, cache);
  EXPECT_LE(b.rows[0].abs_err, 0.15);
  const RunReport c = cmd_corr({1, 0, 0.4, 0.4, {100, 1000}}, cache);
  for (const ReportRow& row : c.rows) EXPECT_EQ(row.scaled, 1.0);
}

TEST(CmdBulk, Examples) {
  const RunReport s = cmd_bulk({1, 0, 0, 0, 0.5, {64, 128, 256}});
  EXPECT_NEAR(s.rows[0].limit, 2 / M_PI, 1e-15);
  const RunReport t = cmd_bulk({2, 0, 0, 0, 1, {64, 128, 256}});
  EXPECT_NEAR(t.rows[0].limit, 2.0, 1e-12);
  for (const RunReport* r : {&s, &t}) {
    EXPECT_FALSE(r->has_flags());
    EXPECT_LT(r->rows[1].abs_err, r->rows[0].abs_err);
    EXPECT_LT(r->rows[2].abs_err, r->rows[1].abs_err);
  }
  const RunReport p = cmd_bulk({1, 0, 1, 0, 0, {64}}), m = cmd_bulk({1, 0, -1, 0, 0, {64}});
  EXPECT_NEAR(p.rows[0].scaled, m.rows[0].scaled, 1e-10);
  EXPECT_THROW(cmd_bulk({3, 0, 0, 0, 0, {64}}), std::invalid_argument);
}

TEST(CmdMc, AgreesAndIsByteReproducible) {
  MCConfig cfg;
  cfg.n = 4;
  cfg.samples = 100000;
  cfg.seed = 7;
  cfg.points = {{0.5, -0.5}};
  const RunReport a = cmd_mc(cfg);
  ASSERT_EQ(a.rows.size(), 1u);
  const ReportRow& row = a.rows[0];
  EXPECT_LE(row.abs_err, 4 * row.extra[2]);
  EXPECT_EQ(to_csv(a), to_csv(cmd_mc(cfg)));
  EXPECT_EQ(to_json(a), to_json(cmd_mc(cfg)));
}

TEST(CmdMc, MatchedMomentsOverlap) {
  MCConfig g;
  g.n = 4;
  g.samples = 100000;
  g.ensemble = Ensemble::real_symmetric;
  g.dist = EntryDist::for_ensemble(DistKind::gaussian, g.ensemble);
  g.points = {{0.0, 1.0}};
  MCConfig t = g;
  t.dist = EntryDist::for_ensemble(DistKind::two_point, t.ensemble);
  t.seed = 8;
  const ReportRow a = cmd_mc(g).rows[0], b = cmd_mc(t).rows[0];
  EXPECT_LE(std::fabs(a.scaled - b.scaled), 4 * std::hypot(a.extra[2], b.extra[2]));
}

TEST(CmdOracle, MatchesExtraction) {
  OracleArgs a;
  a.ensemble = Ensemble::real_symmetric;
  a.dist = EntryDist::for_ensemble(DistKind::rademacher, a.ensemble);
  a.mu = 0.3;
  a.nu = 0.9;
  a.n_list = {1, 2, 3, 4, 5, 6};
  for (const ReportRow& row : cmd_oracle(a).rows) EXPECT_LE(row.abs_err, 1e-10 * std::max(1.0, std::fabs(row.limit)));
  a.n_list = {7};
  EXPECT_THROW(cmd_oracle(a), std::invalid_argument);
}

TEST(CmdKernel, ClosedFormsAndRefinement) {
  for (double alpha : {0.0, 1.0, 2.0, 0.5, 3.0}) {
    const RunReport r = cmd_kernel({alpha, 0.4, -1.1});
    EXPECT_LE(r.rows[0].abs_err, 1e-10) << alpha;
  }
}

TEST(Selftest, FastPasses) {
  std::ostringstream out;
  EXPECT_EQ(cmd_selftest(true, out), 0) << out.str();
  EXPECT_NE(out.str().find("PASS operator chain"), std::string::npos);
}
