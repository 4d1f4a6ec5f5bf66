#include "rmt/egf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmt/error.hpp"
#include "rmt/parallel.hpp"
#include "rmt/special.hpp"

namespace rmt {
namespace {

std::complex<double> log_egf(const EgfParams& p, std::complex<double> z) {
  // mu nu z/(1-z^2) - (mu^2+nu^2)/2 z^2/(1-z^2) in the form
  // xi^2 z/(1+z) - eta^2 z/(1-z), xi = (mu+nu)/2, eta = (mu-nu)/2;
  // no two O(N^{4/3}) terms cancel at the edge.
  const double xi = 0.5 * (p.mu + p.nu);
  const double eta = 0.5 * (p.mu - p.nu);
  const std::complex<double> one_minus = 1.0 - z;
  const std::complex<double> one_plus = 1.0 + z;
  return xi * xi * z / one_plus - eta * eta * z / one_minus + p.bstar * z * z -
         (p.alpha + 0.5) * std::log(one_minus) - 0.5 * std::log(one_plus);
}

constexpr double kMaxRadius = 0.9999;
constexpr double kConditionLimit = 1e12;

struct Accumulator {
  std::complex<double> sum = 0.0;
  double mass = 0.0;

  Accumulator& operator+=(const Accumulator& o) {
    sum += o.sum;
    mass += o.mass;
    return *this;
  }
};

// Exponent of the k-th sample of z^{-N} G(z) on |z| = r, z = r exp(2 pi i k/M).
// The phase N t_k is reduced modulo 2 pi exactly through (N k) mod M.
std::complex<double> sample_exponent(const ContourJob& job, std::size_t k, double log_r) {
  const std::uint64_t M = job.points;
  const double t = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(M);
  const std::complex<double> z = std::polar(job.radius, t);
  const std::uint64_t wrapped = ((job.n % M) * k) % M;
  const double phase = 2.0 * M_PI * static_cast<double>(wrapped) / static_cast<double>(M);
  return log_egf(job.params, z) - static_cast<double>(job.n) * log_r - std::complex<double>(0.0, phase);
}

Extraction finish(const ContourJob& job, double shift, const Accumulator& acc) {
  const double M = static_cast<double>(job.points);
  const std::complex<double> mean = acc.sum / M;
  const double mass = acc.mass / M;

  Extraction out;
  out.diag.xi_n = 0.5 * (job.params.mu + job.params.nu);
  out.diag.eta_n = 0.5 * (job.params.mu - job.params.nu);
  out.diag.shift = shift;
  const double re = mean.real();
  out.diag.condition = re != 0.0 ? 1.0 / std::fabs(re) : std::numeric_limits<double>::infinity();
  out.diag.imag_residue = re != 0.0 ? std::fabs(mean.imag()) / std::fabs(re) : std::fabs(mean.imag());
  out.diag.cancellation_warning = out.diag.condition > kConditionLimit;

  // Roundoff floor: each exponent carries an absolute error ~ eps * |shift|.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::fabs(shift)) * mass;
  if (std::fabs(mean.imag()) > 1e-8 * std::fabs(re) + floor) {
    throw ConsistencyError("extract_f: imaginary residue " + std::to_string(std::fabs(mean.imag())) +
                           " vs real part " + std::to_string(re) + " at N = " + std::to_string(job.n));
  }
  if (re == 0.0) return out;
  out.value = ScaledReal::from_log(re > 0 ? 1 : -1,
                                   std::lgamma(static_cast<double>(job.n) + 1.0) + shift + std::log(std::fabs(re)));
  return out;
}

Extraction trivial_zeroth(const ContourJob& job) {
  Extraction out;
  out.value = ScaledReal::from_real(1.0);
  out.diag.xi_n = 0.5 * (job.params.mu + job.params.nu);
  out.diag.eta_n = 0.5 * (job.params.mu - job.params.nu);
  return out;
}

}  // namespace

void EgfParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha) || !std::isfinite(bstar) || !std::isfinite(mu) ||
      !std::isfinite(nu)) {
    throw std::invalid_argument("EgfParams: need alpha > 0 and finite parameters");
  }
}

ContourJob ContourJob::with_defaults(const EgfParams& params, std::uint64_t n) {
  ContourJob job;
  job.params = params;
  job.n = n;
  const double cube_root = std::cbrt(static_cast<double>(std::max<std::uint64_t>(n, 1)));
  job.radius = std::clamp(1.0 - 1.0 / cube_root, 0.25, kMaxRadius);
  job.points = std::max<std::size_t>(2048, 512 * static_cast<std::size_t>(std::ceil(cube_root - 1e-9)));
  return job;
}

void ContourJob::validate() const {
  params.validate();
  if (!(radius > 0.0 && radius <= kMaxRadius)) throw std::invalid_argument("ContourJob: radius outside (0, 0.9999]");
  if (points < 64) throw std::invalid_argument("ContourJob: need at least 64 points");
}

std::complex<double> egf_eval(const EgfParams& p, std::complex<double> z) {
  p.validate();
  if (!(std::abs(z) <= kMaxRadius)) throw std::domain_error("egf_eval: |z| too close to 1");
  return log_egf(p, z);
}

Extraction extract_f(const ContourJob& job) {
  job.validate();
  if (job.n == 0) return trivial_zeroth(job);
  const std::size_t M = job.points;
  const double log_r = std::log(job.radius);

  std::vector<std::complex<double>> expo(M);
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(M); ++k) {
    expo[static_cast<std::size_t>(k)] = sample_exponent(job, static_cast<std::size_t>(k), log_r);
  }
  double shift = -std::numeric_limits<double>::infinity();
  for (const auto& e : expo) shift = std::max(shift, e.real());

  const Accumulator acc = blocked_sum<Accumulator>(M, [&](std::size_t k) {
    const std::complex<double> g = std::exp(expo[k] - shift);
    return Accumulator{g, std::abs(g)};
  });
  return finish(job, shift, acc);
}

namespace reference {

Extraction extract_f_serial(const ContourJob& job) {
  job.validate();
  if (job.n == 0) return trivial_zeroth(job);
  const double log_r = std::log(job.radius);
  std::vector<std::complex<double>> expo(job.points);
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < job.points; ++k) {
    expo[k] = sample_exponent(job, k, log_r);
    shift = std::max(shift, expo[k].real());
  }
  Accumulator acc;
  for (const auto& e : expo) {
    const std::complex<double> g = std::exp(e - shift);
    acc.sum += g;
    acc.mass += std::abs(g);
  }
  return finish(job, shift, acc);
}

}  // namespace reference

double edge_point(double t, std::uint64_t n) {
  const double nn = static_cast<double>(n);
  return 2.0 * std::sqrt(nn) + t * std::pow(nn, -1.0 / 6.0);
}

double edge_lognorm(double alpha, std::uint64_t n, double mu, double nu) {
  const double nn = static_cast<double>(n);
  return 0.5 * std::log(2.0 * M_PI) + std::lgamma(nn + 1.0) + (2.0 * alpha - 1.0) / 6.0 * std::log(nn) + 2.0 * nn +
         (mu + nu) * std::cbrt(nn);
}

ScaledEval edge_scaled_f(double alpha, double bstar, double mu, double nu, std::uint64_t n) {
  if (n < 1 || n > 1000000) throw std::invalid_argument("edge_scaled_f: need 1 <= n <= 1e6");
  const EgfParams params{alpha, bstar, edge_point(mu, n), edge_point(nu, n)};
  const Extraction ex = extract_f(ContourJob::with_defaults(params, n));
  ScaledEval out;
  out.raw = ex.value;
  out.diag = ex.diag;
  out.value = scaled_times_exp(ex.value, -edge_lognorm(alpha, n, mu, nu)).to_real();
  return out;
}

double semicircle_density(double xi) { return std::sqrt(4.0 - xi * xi) / (2.0 * M_PI); }

double bulk_point(double xi, double t, std::uint64_t n) {
  const double rn = std::sqrt(static_cast<double>(n));
  return rn * xi + t / (rn * semicircle_density(xi));
}

double bulk_lognorm(int alpha, std::uint64_t n, double xi, double mu, double nu) {
  const double nn = static_cast<double>(n);
  const double rho = semicircle_density(xi);
  return 0.5 * std::log(2.0 * M_PI) + std::lgamma(nn + 1.0) + (alpha - 0.5) * std::log(nn) +
         (2.0 * alpha - 1.0) * std::log(rho) + 0.5 * nn * xi * xi + 0.5 * (mu + nu) * xi / rho;
}

ScaledEval bulk_scaled_f(int alpha, double bstar, double xi, double mu, double nu, std::uint64_t n) {
  if (alpha != 1 && alpha != 2) throw std::invalid_argument("bulk_scaled_f: alpha must be 1 or 2");
  if (n < 1 || n > 512) throw std::invalid_argument("bulk_scaled_f: need 1 <= n <= 512");
  if (!(std::fabs(xi) <= 1.8)) throw std::invalid_argument("bulk_scaled_f: need |xi| <= 1.8");
  const EgfParams params{static_cast<double>(alpha), bstar, bulk_point(xi, mu, n), bulk_point(xi, nu, n)};
  // The two bulk saddles sit on the unit circle, so the contour hugs it at
  // distance 1/n; the integrand then varies on the scale 1/n in angle.
  ContourJob job;
  job.params = params;
  job.n = n;
  job.radius = std::min(kMaxRadius, 1.0 - 1.0 / static_cast<double>(n));
  job.points = std::max<std::size_t>(2048, 64 * static_cast<std::size_t>(n));
  const Extraction ex = extract_f(job);
  if (ex.diag.cancellation_warning) {
    throw ConsistencyError("bulk_scaled_f: contour condition " + std::to_string(ex.diag.condition) +
                           " exceeds 1e12; value refused");
  }
  ScaledEval out;
  out.raw = ex.value;
  out.diag = ex.diag;
  out.value = scaled_times_exp(ex.value, -bulk_lognorm(alpha, n, xi, mu, nu)).to_real();
  return out;
}

double sigma_alpha(double alpha, double bstar, double mu_pt, double nu_pt, std::uint64_t n) {
  if (mu_pt == nu_pt) return 1.0;
  auto f = [&](double a, double b) {
    return extract_f(ContourJob::with_defaults(EgfParams{alpha, bstar, a, b}, n)).value;
  };
  const auto n32 = static_cast<std::uint32_t>(n);
  const ScaledReal g_mu = char_poly_mean(n32, mu_pt);
  const ScaledReal g_nu = char_poly_mean(n32, nu_pt);
  const ScaledReal cov = f(mu_pt, nu_pt) - g_mu * g_nu;
  const ScaledReal var_mu = f(mu_pt, mu_pt) - g_mu * g_mu;
  const ScaledReal var_nu = f(nu_pt, nu_pt) - g_nu * g_nu;
  if (var_mu.sign() <= 0 || var_nu.sign() <= 0) {
    throw ConsistencyError("sigma_alpha: nonpositive variance term (degenerate denominator)");
  }
  return (cov / scaled_sqrt(var_mu * var_nu)).to_real();
}

}  // namespace rmt
