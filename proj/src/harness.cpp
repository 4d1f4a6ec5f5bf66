#include "rmt/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rmt/egf.hpp"
#include "rmt/error.hpp"
#include "rmt/kernels.hpp"
#include "rmt/special.hpp"

namespace rmt {
namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double rel_err(double got, double want, double floor = 0.0) {
  return std::fabs(got - want) / std::max(std::fabs(want), floor);
}

ordered_json quad_record(const QuadratureSpec& q) {
  return {{"kernel_halfwidth", q.truncation_halfwidth}, {"kernel_points", q.point_count}};
}

// Collects failures for one selftest group.
class Group {
 public:
  explicit Group(std::string name) : t0_(Clock::now()) { g_.name = std::move(name); }

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      g_.passed = false;
      g_.failures.push_back(what);
    }
  }

  void expect_close(double got, double want, double tol, const std::string& what) {
    if (!(std::fabs(got - want) <= tol)) {
      std::ostringstream s;
      s.precision(12);
      s << what << ": got " << got << " want " << want << " tol " << tol;
      expect(false, s.str());
    }
  }

  template <class F>
  void guard(F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      expect(false, std::string("exception: ") + e.what());
    }
  }

  CheckGroup finish() {
    g_.seconds = seconds_since(t0_);
    return g_;
  }

 private:
  CheckGroup g_;
  Clock::time_point t0_;
};

std::string at(double a, double b) {
  std::ostringstream s;
  s << "(" << a << ", " << b << ")";
  return s.str();
}

// (1/(x-y)) (d_y - d_x) step size for the operator chain.
constexpr double kChainStep = 1e-4;

CheckGroup group_special() {
  Group g("special functions");
  g.guard([&] {
    for (double x = -10.0; x <= 10.0; x += 0.5) {
      const AiryPair s = airy(x), c = airy_contour(x);
      g.expect_close(s.ai, c.ai, 1e-11 * std::max(1.0, std::fabs(s.ai)), "Ai series vs contour at " + std::to_string(x));
      g.expect_close(s.ai_prime, c.ai_prime, 1e-11 * std::max(1.0, std::fabs(s.ai_prime)),
                     "Ai' series vs contour at " + std::to_string(x));
    }
    for (double x = -6.0; x <= 6.0; x += 1.5) {
      const double second = central_diff([](double t) { return airy(t).ai_prime; }, x, 1e-4);
      g.expect_close(second, x * airy(x).ai, 1e-7, "Airy equation at " + std::to_string(x));
    }
    g.expect_close(airy(0.0).ai, 0.35502805388781723926, 1e-15, "Ai(0)");
    for (double x : {-1.3, 0.4, 2.2}) {
      g.expect_close(hermite_phys(3, x).to_real(), 8 * x * x * x - 12 * x, 1e-12, "H_3");
      g.expect_close(hermite_phys(7, -x).to_real(), -hermite_phys(7, x).to_real(), 1e-9, "H_7 parity");
    }
  });
  return g.finish();
}

CheckGroup group_kernels() {
  Group g("kernel identities");
  g.guard([&] {
    const double pts[][2] = {{0, 0}, {0.5, -0.5}, {-1, 1}, {-2.5, 0.7}, {1.5, 1.2}};
    for (const auto& p : pts) {
      g.expect_close(i_alpha(1, p[0], p[1]), airy_kernel(p[0], p[1]), 1e-9, "I1 = A at " + at(p[0], p[1]));
      g.expect_close(i_alpha(2, p[0], p[1]), b_kernel(p[0], p[1]), 1e-9, "I2 = B at " + at(p[0], p[1]));
      g.expect_close(airy_product(p[0], p[1]), airy(p[0]).ai * airy(p[1]).ai, 1e-9, "I0 = Ai Ai at " + at(p[0], p[1]));
      g.expect_close(i_alpha(1.5, p[0], p[1]), i_alpha(1.5, p[1], p[0]), 1e-12, "symmetry at " + at(p[0], p[1]));
    }
    g.expect_close(sine_kernel(0, 0.5), 2.0 / M_PI, 1e-14, "S(0, 1/2)");
    g.expect_close(t_kernel(0, 1), 2.0, 1e-12, "T(0, 1)");
  });
  return g.finish();
}

CheckGroup group_operator_chain() {
  Group g("operator chain");
  g.guard([&] {
    const double pts[][2] = {{0.0, 1.0}, {-1.0, 0.5}, {-2.0, -0.7}, {0.8, 2.1}, {-3.0, 0.0}};
    auto aiai = [](double x, double y) { return airy(x).ai * airy(y).ai; };
    auto a = [](double x, double y) { return airy_kernel(x, y); };
    for (const auto& p : pts) {
      const double mu = p[0], nu = p[1];
      g.expect_close(operator_step(aiai, mu, nu, kChainStep), airy_kernel(mu, nu), 1e-6, "Ai Ai -> A at " + at(mu, nu));
      g.expect_close(operator_step(aiai, mu, nu, kChainStep), i_alpha(1, mu, nu), 1e-6, "Ai Ai -> I1 at " + at(mu, nu));
      g.expect_close(operator_step(a, mu, nu, kChainStep), b_kernel(mu, nu), 1e-6, "A -> B at " + at(mu, nu));
      g.expect_close(operator_step(a, mu, nu, kChainStep), i_alpha(2, mu, nu), 1e-6, "A -> I2 at " + at(mu, nu));
    }
  });
  return g.finish();
}

CheckGroup group_positivity() {
  Group g("positivity and recursion");
  g.guard([&] {
    for (int alpha = 0; alpha <= 3; ++alpha) {
      for (double x = -6.0; x <= 6.0; x += 1.0) {
        g.expect(i_alpha(alpha, x, x) > 0.0, "I" + std::to_string(alpha) + "(x, x) > 0 at x = " + std::to_string(x));
      }
    }
    for (int alpha = 1; alpha <= 3; ++alpha) {
      for (double x : {-2.0, 0.0, 2.0}) {
        const DiagRecursion r = diag_recursion_check(alpha, x);
        g.expect_close(r.lhs, r.rhs, 1e-7, "recursion alpha=" + std::to_string(alpha) + " x=" + std::to_string(x));
      }
    }
  });
  return g.finish();
}

CheckGroup group_oracle() {
  Group g("oracle, egf and gue link");
  g.guard([&] {
    for (Ensemble e : {Ensemble::hermitian, Ensemble::real_symmetric}) {
      for (const MomentProfile& m : {MomentProfile::gaussian(e), MomentProfile::rademacher(e)}) {
        for (int n = 1; n <= 5; ++n) {
          for (double mu : {-1.0, 0.0, 1.0}) {
            for (double nu : {-1.0, 0.0, 1.0}) {
              const double o = oracle_f(e, m, n, mu, nu);
              ContourJob job;
              job.params = {static_cast<double>(egf_alpha(e)), egf_bstar(e, m), mu, nu};
              job.n = static_cast<std::uint64_t>(n);
              const double x = extract_f(job).value.to_real();
              g.expect(rel_err(x, o, 1.0) <= 1e-10, "oracle vs egf " + std::string(to_string(e)) + " n=" +
                                                        std::to_string(n) + " at " + at(mu, nu));
            }
          }
        }
      }
    }
    const double pts[][2] = {{0, 0}, {0.3, -0.7}, {1, 1}};
    for (std::uint64_t n = 1; n <= 40; ++n) {
      for (const auto& p : pts) {
        const ScaledReal f = extract_f(ContourJob::with_defaults({1.0, 0.0, p[0], p[1]}, n)).value;
        const ScaledReal k = gue_kernel(static_cast<std::uint32_t>(n + 1), p[0], p[1]);
        double lg = 0.5 * std::log(2 * M_PI) + std::lgamma(static_cast<double>(n) + 1) + (p[0] * p[0] + p[1] * p[1]) / 4;
        const ScaledReal want = scaled_times_exp(k, lg);
        g.expect(std::fabs(((f - want) / want).to_real()) <= 1e-8, "gue link n=" + std::to_string(n) + " at " + at(p[0], p[1]));
      }
    }
  });
  return g.finish();
}

CheckGroup group_radius() {
  Group g("radius independence");
  g.guard([&] {
    for (std::uint64_t n : {5, 20, 50}) {
      for (double alpha : {1.0, 2.0}) {
        for (double t : {-1.0, 0.0, 1.0}) {
          const EgfParams p{alpha, 0.0, edge_point(t, n), edge_point(0.5, n)};
          ContourJob a = ContourJob::with_defaults(p, n);
          ContourJob b = a;
          b.radius = 0.5;
          const ScaledReal va = extract_f(a).value, vb = extract_f(b).value;
          g.expect(std::fabs(((va - vb) / va).to_real()) <= 1e-9, "radius n=" + std::to_string(n));
        }
      }
    }
  });
  return g.finish();
}

CheckGroup group_edge(bool fast, LimitCache& cache) {
  Group g("edge convergence");
  g.guard([&] {
    std::vector<std::uint64_t> ns = {125, 1000};
    if (!fast) ns.push_back(8000);
    const double pts[][2] = {{0, 0}, {0, 1}, {-1, 1}};
    for (double alpha : {1.0, 2.0}) {
      for (const auto& p : pts) {
        const RunReport r = cmd_edge({alpha, 0.0, p[0], p[1], ns}, cache);
        const std::string where = "alpha=" + std::to_string(static_cast<int>(alpha)) + " at " + at(p[0], p[1]);
        for (std::size_t i = 1; i < r.rows.size(); ++i) {
          g.expect(r.rows[i].abs_err < r.rows[i - 1].abs_err, "error not decreasing " + where);
        }
        if (!fast) {
          const double ratio = r.rows[1].abs_err / r.rows[2].abs_err;
          g.expect(ratio >= 1.4 && ratio <= 3.0, "error ratio " + std::to_string(ratio) + " " + where);
        }
      }
    }
  });
  return g.finish();
}

CheckGroup group_corr(bool fast, LimitCache& cache) {
  Group g("correlation coefficient");
  g.guard([&] {
    std::vector<std::uint64_t> ns = {1024};
    if (!fast) ns.push_back(4096);
    struct Case {
      double alpha, mu, nu, tol;
    };
    for (const Case& c : {Case{1, 0, 1, 0.1}, Case{2, -1, 2, 0.15}}) {
      const RunReport r = cmd_corr({c.alpha, 0.0, c.mu, c.nu, ns}, cache);
      const std::string where = "alpha=" + std::to_string(static_cast<int>(c.alpha));
      g.expect(r.rows.back().abs_err <= c.tol, "sigma off by " + std::to_string(r.rows.back().abs_err) + " " + where);
      if (r.rows.size() > 1) g.expect(r.rows[1].abs_err < r.rows[0].abs_err, "sigma error not decreasing " + where);
    }
    const RunReport same = cmd_corr({1.0, 0.0, 0.5, 0.5, ns}, cache);
    for (const ReportRow& row : same.rows) g.expect(row.scaled == 1.0, "sigma(mu, mu) != 1");
  });
  return g.finish();
}

CheckGroup group_bulk() {
  Group g("bulk scaling");
  g.guard([&] {
    for (int alpha : {1, 2}) {
      const double nu = alpha == 1 ? 0.5 : 1.0;
      const RunReport r = cmd_bulk({alpha, 0.0, 0.0, 0.0, nu, {64, 128, 256}});
      for (std::size_t i = 0; i < r.rows.size(); ++i) {
        g.expect(r.rows[i].flag.empty(), "bulk row refused");
        g.expect(r.rows[i].condition < 1e12, "bulk condition too large");
        if (i > 0) g.expect(r.rows[i].abs_err < r.rows[i - 1].abs_err, "bulk error not decreasing");
      }
    }
  });
  return g.finish();
}

CheckGroup group_mc() {
  Group g("monte carlo");
  g.guard([&] {
    MCConfig cfg;
    cfg.n = 4;
    cfg.samples = 20000;
    cfg.seed = 11;
    cfg.points = {{0.5, -0.5}, {1.0, 1.0}};
    for (Ensemble e : {Ensemble::hermitian, Ensemble::real_symmetric}) {
      cfg.ensemble = e;
      cfg.dist = EntryDist::for_ensemble(DistKind::rademacher, e);
      const std::vector<MCEstimate> est = estimate_f(cfg);
      for (std::size_t i = 0; i < est.size(); ++i) {
        const double o = oracle_f(e, cfg.dist.moments(), cfg.n, cfg.points[i].first, cfg.points[i].second);
        g.expect(std::fabs(est[i].mean.to_real() - o) <= 4.0 * est[i].stderr_.to_real(),
                 "mc vs oracle " + std::string(to_string(e)));
      }
      const std::vector<MCEstimate> again = estimate_f(cfg);
      for (std::size_t i = 0; i < est.size(); ++i) {
        g.expect(again[i].mean.log_mag() == est[i].mean.log_mag() && again[i].mean.sign() == est[i].mean.sign(),
                 "mc not reproducible");
      }
    }
  });
  return g.finish();
}

}  // namespace

double LimitCache::get(double alpha, double mu, double nu) {
  const auto key = std::make_tuple(alpha, std::min(mu, nu), std::max(mu, nu));
  const auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const double v = i_alpha(alpha, mu, nu);
  cache_.emplace(key, v);
  return v;
}

void check_n_list(const std::vector<std::uint64_t>& n_list) {
  if (n_list.empty()) throw std::invalid_argument("empty N list");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] == 0) throw std::invalid_argument("N must be positive");
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw std::invalid_argument("N list must be strictly ascending");
  }
}

RunReport cmd_edge(const EdgeArgs& a, LimitCache& cache) {
  check_n_list(a.n_list);
  RunReport r;
  r.command = "edge";
  r.params = {{"alpha", a.alpha}, {"bstar", a.bstar}, {"mu", a.mu}, {"nu", a.nu}, {"n_list", a.n_list}};
  const double limit = std::exp(a.bstar) * cache.get(a.alpha, a.mu, a.nu);
  ordered_json contours = ordered_json::array();
  for (std::uint64_t n : a.n_list) {
    const ScaledEval e = edge_scaled_f(a.alpha, a.bstar, a.mu, a.nu, n);
    ReportRow row;
    row.n = n;
    row.raw = e.raw;
    row.scaled = e.value;
    row.limit = limit;
    row.abs_err = std::fabs(e.value - limit);
    row.condition = e.diag.condition;
    r.rows.push_back(row);
    const ContourJob job = ContourJob::with_defaults({a.alpha, a.bstar, 0, 0}, n);
    contours.push_back({{"N", n}, {"radius", job.radius}, {"points", job.points}, {"shift", e.diag.shift},
                        {"imag_residue", e.diag.imag_residue}});
  }
  const auto slope = loglog_slope(r.rows);
  r.diagnostics["loglog_slope"] = slope ? ordered_json(*slope) : ordered_json(nullptr);
  r.diagnostics["contours"] = std::move(contours);
  r.diagnostics["quadrature"] = quad_record(QuadratureSpec{});
  return r;
}

RunReport cmd_corr(const EdgeArgs& a, LimitCache& cache) {
  check_n_list(a.n_list);
  RunReport r;
  r.command = "corr";
  r.params = {{"alpha", a.alpha}, {"bstar", a.bstar}, {"mu", a.mu}, {"nu", a.nu}, {"n_list", a.n_list}};
  const double dmu = cache.get(a.alpha, a.mu, a.mu), dnu = cache.get(a.alpha, a.nu, a.nu);
  if (!(dmu > 0.0 && dnu > 0.0)) throw ConsistencyError("corr: kernel diagonal is not positive");
  const double limit = a.mu == a.nu ? 1.0 : cache.get(a.alpha, a.mu, a.nu) / std::sqrt(dmu * dnu);
  for (std::uint64_t n : a.n_list) {
    const ScaledEval e = edge_scaled_f(a.alpha, a.bstar, a.mu, a.nu, n);
    ReportRow row;
    row.n = n;
    row.raw = e.raw;
    row.scaled = sigma_alpha(a.alpha, a.bstar, edge_point(a.mu, n), edge_point(a.nu, n), n);
    row.limit = limit;
    row.abs_err = std::fabs(row.scaled - limit);
    row.condition = e.diag.condition;
    r.rows.push_back(row);
  }
  r.diagnostics["quadrature"] = quad_record(QuadratureSpec{});
  return r;
}

RunReport cmd_bulk(const BulkArgs& a) {
  check_n_list(a.n_list);
  if (a.alpha != 1 && a.alpha != 2) throw std::invalid_argument("bulk: alpha must be 1 or 2");
  RunReport r;
  r.command = "bulk";
  r.params = {{"alpha", a.alpha}, {"bstar", a.bstar}, {"xi", a.xi}, {"mu", a.mu}, {"nu", a.nu}, {"n_list", a.n_list}};
  const double kernel = a.alpha == 1 ? sine_kernel(a.mu, a.nu) : t_kernel(a.mu, a.nu);
  const double limit = std::exp(a.bstar) * kernel;
  ordered_json refused = ordered_json::array();
  for (std::uint64_t n : a.n_list) {
    ReportRow row;
    row.n = n;
    row.limit = limit;
    try {
      const ScaledEval e = bulk_scaled_f(a.alpha, a.bstar, a.xi, a.mu, a.nu, n);
      row.raw = e.raw;
      row.scaled = e.value;
      row.abs_err = std::fabs(e.value - limit);
      row.condition = e.diag.condition;
    } catch (const ConsistencyError& e) {
      row.flag = "refused";
      refused.push_back({{"N", n}, {"reason", e.what()}});
    }
    r.rows.push_back(row);
  }
  r.diagnostics["density"] = semicircle_density(a.xi);
  r.diagnostics["refused"] = std::move(refused);
  return r;
}

RunReport cmd_mc(const MCConfig& cfg) {
  cfg.validate();
  RunReport r;
  r.command = "mc";
  ordered_json pts = ordered_json::array();
  for (const auto& [mu, nu] : cfg.points) pts.push_back({mu, nu});
  const MomentProfile m = cfg.dist.moments();
  r.params = {{"ensemble", to_string(cfg.ensemble)}, {"dist", to_string(cfg.dist.kind)},
              {"n", cfg.n},                          {"samples", cfg.samples},
              {"seed", cfg.seed},                    {"points", pts}};
  if (cfg.dist.kind == DistKind::two_point) r.params["two_point_p"] = cfg.dist.two_point_p;
  r.extra_columns = {"mu", "nu", "stderr", "z", "sigma_mc", "sigma_stderr", "sigma_exact"};

  const std::vector<MCEstimate> f = estimate_f(cfg);
  const std::vector<SigmaEstimate> s = estimate_sigma(cfg);
  const double alpha = egf_alpha(cfg.ensemble), bstar = egf_bstar(cfg.ensemble, m);
  const auto n = static_cast<std::uint64_t>(cfg.n);
  for (std::size_t i = 0; i < cfg.points.size(); ++i) {
    const auto [mu, nu] = cfg.points[i];
    ReportRow row;
    row.n = n;
    row.raw = f[i].mean;
    row.scaled = f[i].mean.to_real();
    Extraction ex = extract_f(ContourJob::with_defaults({alpha, bstar, mu, nu}, n));
    row.limit = cfg.n <= 6 ? oracle_f(cfg.ensemble, m, cfg.n, mu, nu) : ex.value.to_real();
    row.abs_err = std::fabs(row.scaled - row.limit);
    row.condition = ex.diag.condition;
    const double se = f[i].stderr_.to_real();
    row.extra = {mu, nu, se, se > 0 ? (row.scaled - row.limit) / se : 0.0, s[i].value, s[i].stderr_,
                 sigma_alpha(alpha, bstar, mu, nu, n)};
    r.rows.push_back(row);
  }
  r.diagnostics["limit_source"] = cfg.n <= 6 ? "oracle" : "egf";
  r.diagnostics["moments"] = {{"m2", m.m2}, {"m3", m.m3}, {"m4", m.m4}, {"bstar", bstar}};
  return r;
}

RunReport cmd_oracle(const OracleArgs& a) {
  check_n_list(a.n_list);
  RunReport r;
  r.command = "oracle";
  const MomentProfile m = a.dist.moments();
  r.params = {{"ensemble", to_string(a.ensemble)}, {"dist", to_string(a.dist.kind)}, {"mu", a.mu}, {"nu", a.nu},
              {"n_list", a.n_list}};
  const double alpha = egf_alpha(a.ensemble), bstar = egf_bstar(a.ensemble, m);
  for (std::uint64_t n : a.n_list) {
    if (n > 6) throw std::invalid_argument("oracle: N must be <= 6");
    const double o = oracle_f(a.ensemble, m, static_cast<int>(n), a.mu, a.nu);
    const Extraction ex = extract_f(ContourJob::with_defaults({alpha, bstar, a.mu, a.nu}, n));
    ReportRow row;
    row.n = n;
    row.raw = ScaledReal::from_real(o);
    row.scaled = o;
    row.limit = ex.value.to_real();
    row.abs_err = std::fabs(o - row.limit);
    row.condition = ex.diag.condition;
    r.rows.push_back(row);
  }
  r.diagnostics["limit_source"] = "egf";
  r.diagnostics["moments"] = {{"m2", m.m2}, {"m3", m.m3}, {"m4", m.m4}, {"bstar", bstar}};
  return r;
}

RunReport cmd_kernel(const KernelArgs& a) {
  RunReport r;
  r.command = "kernel";
  r.params = {{"alpha", a.alpha}, {"mu", a.mu}, {"nu", a.nu}};
  ReportRow row;
  const double v = i_alpha(a.alpha, a.mu, a.nu);
  double ref;
  std::string source;
  if (a.alpha == 0.0) {
    ref = airy(a.mu).ai * airy(a.nu).ai, source = "airy product";
  } else if (a.alpha == 1.0) {
    ref = airy_kernel(a.mu, a.nu), source = "airy kernel";
  } else if (a.alpha == 2.0) {
    ref = b_kernel(a.mu, a.nu), source = "b kernel";
  } else {
    KernelQuery fine{a.alpha, a.mu, a.nu, {}};
    fine.quad.truncation_halfwidth = 24.0;
    fine.quad.point_count = 8000;
    ref = i_alpha(fine), source = "refined quadrature";
  }
  row.raw = ScaledReal::from_real(v);
  row.scaled = v;
  row.limit = ref;
  row.abs_err = std::fabs(v - ref);
  r.rows.push_back(row);
  r.diagnostics["reference"] = source;
  r.diagnostics["quadrature"] = quad_record(QuadratureSpec{});
  return r;
}

std::vector<CheckGroup> run_selftest(bool fast) {
  LimitCache cache;
  std::vector<CheckGroup> out;
  out.push_back(group_special());
  out.push_back(group_kernels());
  out.push_back(group_operator_chain());
  out.push_back(group_positivity());
  out.push_back(group_oracle());
  out.push_back(group_radius());
  out.push_back(group_edge(fast, cache));
  out.push_back(group_corr(fast, cache));
  out.push_back(group_bulk());
  out.push_back(group_mc());
  return out;
}

int cmd_selftest(bool fast, std::ostream& out) {
  bool all = true;
  for (const CheckGroup& g : run_selftest(fast)) {
    all = all && g.passed;
    out << (g.passed ? "PASS " : "FAIL ") << g.name << " (" << g.seconds << " s)\n";
    for (const std::string& f : g.failures) out << "  " << f << '\n';
  }
  out << (all ? "selftest passed" : "selftest FAILED") << '\n';
  return all ? 0 : 2;
}

}  // namespace rmt
