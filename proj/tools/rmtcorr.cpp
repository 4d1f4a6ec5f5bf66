// rmtcorr: correlation functions of Wigner characteristic polynomials.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rmt/error.hpp"
#include "rmt/harness.hpp"
#include "rmt/parallel.hpp"

namespace {

struct Common {
  double alpha = 1.0;
  double bstar = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  std::optional<std::uint64_t> n;
  std::vector<std::uint64_t> n_list;
  std::string format = "csv";
  std::string out;
  bool deterministic = false;
};

struct McFlags {
  std::string ensemble = "hermitian";
  std::string dist = "gaussian";
  std::uint64_t samples = 100000;
  std::uint64_t seed = 7;
  double two_point_p = rmt::EntryDist::kGaussianMatchedP;
};

void add_common(CLI::App* app, Common& c, bool with_alpha = true) {
  if (with_alpha) {
    app->add_option("--alpha", c.alpha, "kernel index alpha")->capture_default_str();
    app->add_option("--bstar", c.bstar, "fourth-moment parameter b*")->capture_default_str();
  }
  app->add_option("--mu", c.mu, "first evaluation point")->capture_default_str();
  app->add_option("--nu", c.nu, "second evaluation point")->capture_default_str();
  auto* n = app->add_option("--n", c.n, "matrix size");
  app->add_option("--n-list", c.n_list, "ascending matrix sizes a,b,c")->delimiter(',')->excludes(n);
  app->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app->add_option("--out", c.out, "output file (default stdout)");
  app->add_flag("--deterministic", c.deterministic, "omit wall-clock fields");
}

void add_ensemble(CLI::App* app, McFlags& m) {
  app->add_option("--ensemble", m.ensemble, "hermitian|symmetric")
      ->check(CLI::IsMember({"hermitian", "symmetric"}))
      ->capture_default_str();
  app->add_option("--dist", m.dist, "gaussian|rademacher|uniform|two-point")
      ->check(CLI::IsMember({"gaussian", "rademacher", "uniform", "two-point"}))
      ->capture_default_str();
  app->add_option("--two-point-p", m.two_point_p, "mass of the positive atom for --dist two-point");
}

std::vector<std::uint64_t> sizes(const Common& c, std::vector<std::uint64_t> fallback) {
  if (c.n) return {*c.n};
  if (!c.n_list.empty()) return c.n_list;
  return fallback;
}

rmt::EntryDist make_dist(const McFlags& m, rmt::Ensemble e) {
  rmt::EntryDist d = rmt::EntryDist::for_ensemble(rmt::dist_from_string(m.dist), e);
  d.two_point_p = m.two_point_p;
  return d;
}

void emit(rmt::RunReport r, const Common& c, std::chrono::steady_clock::time_point t0) {
  if (!c.deterministic) r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string text = c.format == "json" ? rmt::to_json(r) : rmt::to_csv(r);
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file " + c.out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Second-order correlations of Wigner characteristic polynomials"};
  app.require_subcommand(1);

  Common edge_c, corr_c, bulk_c, mc_c, oracle_c, kernel_c;
  McFlags mc_f, oracle_f;
  double xi = 0.0;
  bool fast = false;

  auto* edge = app.add_subcommand("edge", "edge-scaled f_N against exp(b*) I^(alpha)");
  add_common(edge, edge_c);
  auto* corr = app.add_subcommand("corr", "correlation coefficient at edge points");
  add_common(corr, corr_c);
  auto* bulk = app.add_subcommand("bulk", "bulk-scaled f_N against the sine-type kernels");
  add_common(bulk, bulk_c);
  bulk->add_option("--xi", xi, "bulk location, |xi| <= 1.8")->capture_default_str();
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimates against the exact values");
  add_common(mc, mc_c, false);
  add_ensemble(mc, mc_f);
  mc->add_option("--samples", mc_f.samples, "number of sampled matrices")->capture_default_str();
  mc->add_option("--seed", mc_f.seed, "base seed")->capture_default_str();
  auto* oracle = app.add_subcommand("oracle", "exact small-N values against contour extraction");
  add_common(oracle, oracle_c, false);
  add_ensemble(oracle, oracle_f);
  auto* kernel = app.add_subcommand("kernel", "I^(alpha)(mu, nu) against closed forms");
  add_common(kernel, kernel_c);
  auto* selftest = app.add_subcommand("selftest", "run every invariant group");
  selftest->add_flag("--fast", fast, "skip rows with N >= 4096");
  for (CLI::App* sub : {edge, corr, bulk}) sub->add_flag("--fast", fast, "skip rows with N >= 4096");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    rmt::configure_workers_from_env();
    auto drop_large = [&](std::vector<std::uint64_t> ns) {
      if (!fast) return ns;
      std::erase_if(ns, [](std::uint64_t n) { return n >= 4096; });
      if (ns.empty()) throw std::invalid_argument("--fast left no N values");
      return ns;
    };
    rmt::LimitCache cache;
    if (*edge) {
      const rmt::EdgeArgs a{edge_c.alpha, edge_c.bstar, edge_c.mu, edge_c.nu, drop_large(sizes(edge_c, {125, 1000, 8000}))};
      emit(rmt::cmd_edge(a, cache), edge_c, t0);
    } else if (*corr) {
      const rmt::EdgeArgs a{corr_c.alpha, corr_c.bstar, corr_c.mu, corr_c.nu, drop_large(sizes(corr_c, {1024, 4096}))};
      emit(rmt::cmd_corr(a, cache), corr_c, t0);
    } else if (*bulk) {
      if (bulk_c.alpha != 1.0 && bulk_c.alpha != 2.0) throw std::invalid_argument("bulk: --alpha must be 1 or 2");
      const rmt::BulkArgs a{static_cast<int>(bulk_c.alpha), bulk_c.bstar, xi, bulk_c.mu, bulk_c.nu,
                            drop_large(sizes(bulk_c, {64, 128, 256}))};
      emit(rmt::cmd_bulk(a), bulk_c, t0);
    } else if (*mc) {
      rmt::MCConfig cfg;
      cfg.ensemble = rmt::ensemble_from_string(mc_f.ensemble);
      cfg.dist = make_dist(mc_f, cfg.ensemble);
      const std::vector<std::uint64_t> ns = sizes(mc_c, {4});
      if (ns.size() != 1) throw std::invalid_argument("mc: give a single --n");
      if (ns[0] > 256) throw std::invalid_argument("mc: n must be <= 256");
      cfg.n = static_cast<int>(ns[0]);
      cfg.samples = mc_f.samples;
      cfg.seed = mc_f.seed;
      cfg.points = {{mc_c.mu, mc_c.nu}};
      emit(rmt::cmd_mc(cfg), mc_c, t0);
    } else if (*oracle) {
      rmt::OracleArgs a;
      a.ensemble = rmt::ensemble_from_string(oracle_f.ensemble);
      a.dist = make_dist(oracle_f, a.ensemble);
      a.mu = oracle_c.mu;
      a.nu = oracle_c.nu;
      a.n_list = sizes(oracle_c, {1, 2, 3, 4, 5});
      emit(rmt::cmd_oracle(a), oracle_c, t0);
    } else if (*kernel) {
      emit(rmt::cmd_kernel({kernel_c.alpha, kernel_c.mu, kernel_c.nu}), kernel_c, t0);
    } else if (*selftest) {
      return rmt::cmd_selftest(fast, std::cout);
    }
  } catch (const rmt::ConsistencyError& e) {
    std::cerr << "numerical consistency failure: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad argument: " << e.what() << '\n';
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "bad argument: " << e.what() << '\n';
    return 3;
  } catch (const std::out_of_range& e) {
    std::cerr << "bad argument: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
