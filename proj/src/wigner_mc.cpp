#include "rmt/wigner_mc.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include "rmt/error.hpp"
#include "rmt/parallel.hpp"
#include "rmt/special.hpp"

namespace rmt {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Distinct evaluation points and, per requested pair, their indices.
struct PointTable {
  std::vector<double> lambdas;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  explicit PointTable(const std::vector<std::pair<double, double>>& points) {
    auto index_of = [&](double v) {
      const auto it = std::find(lambdas.begin(), lambdas.end(), v);
      if (it != lambdas.end()) return static_cast<std::size_t>(it - lambdas.begin());
      lambdas.push_back(v);
      return lambdas.size() - 1;
    };
    for (const auto& [mu, nu] : points) pairs.emplace_back(index_of(mu), index_of(nu));
  }
};

// values[s * L + l] = D_s(lambda_l)
std::vector<ScaledReal> sample_determinants(const MCConfig& cfg, const PointTable& table, bool parallel) {
  const std::size_t L = table.lambdas.size();
  std::vector<ScaledReal> values(cfg.samples * L);
  auto one = [&](std::uint64_t s) {
    std::mt19937_64 rng = substream(cfg.seed, s);
    const SampleMatrix x = sample_matrix(cfg, rng);
    for (std::size_t l = 0; l < L; ++l) values[s * L + l] = char_poly_value(x, table.lambdas[l]);
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 64) num_threads(worker_count())
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(cfg.samples); ++s) one(static_cast<std::uint64_t>(s));
  } else {
    for (std::uint64_t s = 0; s < cfg.samples; ++s) one(s);
  }
  return values;
}

// Mean and standard error of products, aligned to the largest magnitude so
// the Welford pass runs on doubles in [-1, 1].
MCEstimate summarize(const std::vector<ScaledReal>& products) {
  double top = -std::numeric_limits<double>::infinity();
  for (const ScaledReal& p : products) {
    if (!p.is_zero()) top = std::max(top, p.log_mag());
  }
  MCEstimate est;
  est.samples_used = products.size();
  if (!std::isfinite(top)) return est;
  double mean = 0.0, m2 = 0.0;
  std::uint64_t k = 0;
  for (const ScaledReal& p : products) {
    const double v = p.is_zero() ? 0.0 : p.sign() * std::exp(p.log_mag() - top);
    ++k;
    const double delta = v - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (v - mean);
  }
  const double var = k > 1 ? m2 / static_cast<double>(k - 1) : 0.0;
  est.mean = scaled_times_exp(ScaledReal::from_real(mean), top);
  est.stderr_ = scaled_times_exp(ScaledReal::from_real(std::sqrt(var / static_cast<double>(k))), top);
  return est;
}

std::vector<MCEstimate> estimate_from(const MCConfig& cfg, bool parallel) {
  cfg.validate();
  const PointTable table(cfg.points);
  const std::size_t L = table.lambdas.size();
  const std::vector<ScaledReal> det = sample_determinants(cfg, table, parallel);
  std::vector<MCEstimate> out;
  std::vector<ScaledReal> products(cfg.samples);
  for (const auto& [a, b] : table.pairs) {
    for (std::uint64_t s = 0; s < cfg.samples; ++s) products[s] = det[s * L + a] * det[s * L + b];
    out.push_back(summarize(products));
  }
  return out;
}

}  // namespace

DistKind dist_from_string(std::string_view s) {
  if (s == "gaussian") return DistKind::gaussian;
  if (s == "rademacher") return DistKind::rademacher;
  if (s == "uniform") return DistKind::uniform;
  if (s == "two-point" || s == "two_point") return DistKind::two_point;
  throw std::invalid_argument("unknown distribution '" + std::string(s) + "'");
}

std::string_view to_string(DistKind k) {
  switch (k) {
    case DistKind::gaussian: return "gaussian";
    case DistKind::rademacher: return "rademacher";
    case DistKind::uniform: return "uniform";
    case DistKind::two_point: return "two-point";
  }
  return "?";
}

EntryDist EntryDist::for_ensemble(DistKind kind, Ensemble e) {
  EntryDist d;
  d.kind = kind;
  d.variance = e == Ensemble::hermitian ? 0.5 : 1.0;
  return d;
}

double EntryDist::sample(std::mt19937_64& rng) const {
  const double sigma = std::sqrt(variance);
  switch (kind) {
    case DistKind::gaussian: return std::normal_distribution<double>(0.0, sigma)(rng);
    case DistKind::rademacher: return std::bernoulli_distribution(0.5)(rng) ? sigma : -sigma;
    case DistKind::uniform: {
      const double a = std::sqrt(3.0) * sigma;
      return std::uniform_real_distribution<double>(-a, a)(rng);
    }
    case DistKind::two_point: {
      const double p = two_point_p;
      return std::bernoulli_distribution(p)(rng) ? sigma * std::sqrt((1.0 - p) / p) : -sigma * std::sqrt(p / (1.0 - p));
    }
  }
  return 0.0;
}

MomentProfile EntryDist::moments() const {
  const double v = variance;
  MomentProfile m{0.0, v, 0.0, 0.0};
  switch (kind) {
    case DistKind::gaussian: m.m4 = 3.0 * v * v; break;
    case DistKind::rademacher: m.m4 = v * v; break;
    case DistKind::uniform: m.m4 = 1.8 * v * v; break;
    case DistKind::two_point: {
      const double p = two_point_p, q = 1.0 - p;
      m.m3 = v * std::sqrt(v) * (q - p) / std::sqrt(p * q);
      m.m4 = v * v * (q * q / p + p * p / q);
      break;
    }
  }
  return m;
}

void MCConfig::validate() const {
  if (samples < 100) throw std::invalid_argument("MCConfig: samples must be >= 100");
  if (n < 1 || n > 256) throw std::invalid_argument("MCConfig: n must lie in [1, 256]");
  if (points.empty()) throw std::invalid_argument("MCConfig: no evaluation points");
  if (dist.kind == DistKind::two_point && !(dist.two_point_p > 0.0 && dist.two_point_p < 1.0)) {
    throw std::invalid_argument("MCConfig: two-point p must lie in (0, 1)");
  }
  dist.moments().validate(ensemble);
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ index));
}

SampleMatrix sample_matrix(const MCConfig& cfg, std::mt19937_64& rng) {
  const int n = cfg.n;
  SampleMatrix x(n, n);
  for (int i = 0; i < n; ++i) {
    x(i, i) = M_SQRT2 * cfg.dist.sample(rng);
    for (int j = i + 1; j < n; ++j) {
      const double re = cfg.dist.sample(rng);
      const double im = cfg.ensemble == Ensemble::hermitian ? cfg.dist.sample(rng) : 0.0;
      x(i, j) = {re, im};
      x(j, i) = {re, -im};
    }
  }
  return x;
}

ScaledReal char_poly_value(const SampleMatrix& x, double lambda) {
  SampleMatrix shifted = x;
  shifted.diagonal().array() -= lambda;
  const Eigen::PartialPivLU<SampleMatrix> lu(shifted);
  const auto& packed = lu.matrixLU();
  double log_mag = 0.0;
  std::complex<double> phase = lu.permutationP().determinant();
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    const std::complex<double> p = packed(i, i);
    const double a = std::abs(p);
    if (a == 0.0) return {};
    log_mag += std::log(a);
    phase *= p / a;
  }
  if (std::fabs(phase.imag()) > 1e-7) {
    throw ConsistencyError("char_poly_value: imaginary residue " + std::to_string(phase.imag()) +
                           " relative to |det|");
  }
  if (phase.real() == 0.0) return {};
  return ScaledReal::from_log(phase.real() > 0 ? 1 : -1, log_mag);
}

std::vector<MCEstimate> estimate_f(const MCConfig& cfg) { return estimate_from(cfg, true); }

std::vector<SigmaEstimate> estimate_sigma(const MCConfig& cfg) {
  cfg.validate();
  const PointTable table(cfg.points);
  const std::size_t L = table.lambdas.size();
  const std::vector<ScaledReal> det = sample_determinants(cfg, table, true);
  std::vector<ScaledReal> g(L);
  for (std::size_t l = 0; l < L; ++l) g[l] = char_poly_mean(static_cast<std::uint32_t>(cfg.n), table.lambdas[l]);

  std::vector<SigmaEstimate> out;
  const std::uint64_t K = cfg.samples;
  for (const auto& [a, b] : table.pairs) {
    if (a == b) {
      out.push_back({1.0, 0.0});
      continue;
    }
    // Centered products cov_s, va_s, vb_s in a common scale.
    double top = -std::numeric_limits<double>::infinity();
    for (std::uint64_t s = 0; s < K; ++s) {
      for (std::size_t l : {a, b}) {
        const ScaledReal c = det[s * L + l] - g[l];
        if (!c.is_zero()) top = std::max(top, c.log_mag());
      }
    }
    std::vector<double> ca(K), cb(K);
    for (std::uint64_t s = 0; s < K; ++s) {
      ca[s] = scaled_times_exp(det[s * L + a] - g[a], -top).to_real();
      cb[s] = scaled_times_exp(det[s * L + b] - g[b], -top).to_real();
    }
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::uint64_t s = 0; s < K; ++s) {
      cov += ca[s] * cb[s];
      va += ca[s] * ca[s];
      vb += cb[s] * cb[s];
    }
    cov /= static_cast<double>(K);
    va /= static_cast<double>(K);
    vb /= static_cast<double>(K);
    if (!(va > 0.0 && vb > 0.0)) throw ConsistencyError("estimate_sigma: nonpositive variance estimate");
    const double sigma = cov / std::sqrt(va * vb);
    // Influence function of the ratio of means.
    double s1 = 0.0, s2 = 0.0;
    for (std::uint64_t s = 0; s < K; ++s) {
      const double phi = sigma * (ca[s] * cb[s] / cov - 0.5 * ca[s] * ca[s] / va - 0.5 * cb[s] * cb[s] / vb);
      s1 += phi;
      s2 += phi * phi;
    }
    const double mean_phi = s1 / static_cast<double>(K);
    const double var_phi = (s2 - static_cast<double>(K) * mean_phi * mean_phi) / static_cast<double>(K - 1);
    out.push_back({sigma, std::sqrt(std::max(var_phi, 0.0) / static_cast<double>(K))});
  }
  return out;
}

namespace reference {
std::vector<MCEstimate> estimate_f_serial(const MCConfig& cfg) { return estimate_from(cfg, false); }
}  // namespace reference

}  // namespace rmt
