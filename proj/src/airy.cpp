#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "rmt/quadrature.hpp"
#include "rmt/special.hpp"

namespace rmt {
namespace {

using ld = long double;

constexpr ld kAi0 = 0.355028053887817239260063186004183558L;
constexpr ld kAiPrime0 = -0.258819403792806798405183560189203963L;
constexpr ld kSqrtPi = 1.772453850905516027298167483341145183L;
constexpr ld kPi = 3.141592653589793238462643383279502884L;

void check_domain(double x) {
  if (!std::isfinite(x) || std::fabs(x) > 30.0) {
    throw std::domain_error("airy: argument " + std::to_string(x) + " outside [-30, 30]");
  }
}

AiryPair airy_series(ld x) {
  const ld x2 = x * x;
  const ld x3 = x2 * x;
  ld a = 1.0L, b = x;  // current terms of f and g
  ld f = a, g = b, fp = 0.0L, gp = 1.0L;
  for (int k = 1; k < 400; ++k) {
    const ld fp_k = a * x2 / (3 * k - 1);
    const ld gp_k = b * x2 / (3 * k);
    a *= x3 / ((3.0L * k - 1) * (3.0L * k));
    b *= x3 / ((3.0L * k) * (3.0L * k + 1));
    f += a;
    g += b;
    fp += fp_k;
    gp += gp_k;
    const ld scale = std::fabs(f) + std::fabs(g) + std::fabs(fp) + std::fabs(gp);
    if (std::fabs(a) + std::fabs(b) + std::fabs(fp_k) + std::fabs(gp_k) < 1e-24L * scale) break;
  }
  const ld c1 = kAi0, c2 = -kAiPrime0;
  return {static_cast<double>(c1 * f - c2 * g), static_cast<double>(c1 * fp - c2 * gp)};
}

// DLMF 9.7 coefficients u_k, v_k.
struct AsymptoticCoefficients {
  static constexpr int kCount = 64;
  ld u[kCount];
  ld v[kCount];
  AsymptoticCoefficients() {
    u[0] = v[0] = 1.0L;
    for (int k = 1; k < kCount; ++k) {
      u[k] = u[k - 1] * (6.0L * k - 5) * (6.0L * k - 3) * (6.0L * k - 1) / ((2.0L * k - 1) * 216.0L * k);
      v[k] = -(6.0L * k + 1) / (6.0L * k - 1) * u[k];
    }
  }
};

const AsymptoticCoefficients& coefficients() {
  static const AsymptoticCoefficients c;
  return c;
}

// sum_k (-1)^k c[k0 + 2k] / zeta^(k0 + 2k) when stride = 2, or
// sum_k (-1)^k c[k] / zeta^k when stride = 1; stops at the smallest term.
ld alternating_sum(const ld* c, ld zeta, int k0, int stride) {
  ld sum = 0.0L;
  ld prev = INFINITY;
  ld zpow = std::pow(zeta, static_cast<ld>(-k0));
  const ld step = std::pow(zeta, static_cast<ld>(-stride));
  int sign = 1;
  for (int k = k0; k < AsymptoticCoefficients::kCount; k += stride) {
    const ld term = c[k] * zpow;
    if (std::fabs(term) > prev) break;
    sum += sign * term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum)) break;
    prev = std::fabs(term);
    zpow *= step;
    sign = -sign;
  }
  return sum;
}

AiryPair airy_asymptotic(ld x) {
  const auto& c = coefficients();
  if (x > 0) {
    const ld zeta = 2.0L / 3.0L * x * std::sqrt(x);
    const ld q = std::sqrt(std::sqrt(x));
    const ld e = std::exp(-zeta) / (2.0L * kSqrtPi);
    return {static_cast<double>(e / q * alternating_sum(c.u, zeta, 0, 1)),
            static_cast<double>(-e * q * alternating_sum(c.v, zeta, 0, 1))};
  }
  const ld t = -x;
  const ld zeta = 2.0L / 3.0L * t * std::sqrt(t);
  const ld q = std::sqrt(std::sqrt(t));
  const ld cs = std::cos(zeta - kPi / 4), sn = std::sin(zeta - kPi / 4);
  const ld pu = alternating_sum(c.u, zeta, 0, 2), qu = alternating_sum(c.u, zeta, 1, 2);
  const ld pv = alternating_sum(c.v, zeta, 0, 2), qv = alternating_sum(c.v, zeta, 1, 2);
  return {static_cast<double>((cs * pu + sn * qu) / (kSqrtPi * q)),
          static_cast<double>(q * (sn * pv - cs * qv) / kSqrtPi)};
}

}  // namespace

AiryPair airy(double x) {
  check_domain(x);
  if (x > kAiryDecayStart && x <= kAirySeriesLimit) return airy_contour(x);
  if (std::fabs(x) <= kAirySeriesLimit) return airy_series(x);
  return airy_asymptotic(x);
}

AiryPair airy_contour(double x) {
  check_domain(x);
  // Line abscissa: through the real saddle sqrt(x) for x > 1; for x < -1 a
  // line closer to the imaginary axis keeps |integrand| ~ exp(sqrt|x|)
  // instead of exp(|x|), so less is lost to cancellation.
  double c = 1.0;
  if (x > 1.0) c = std::sqrt(x);
  if (x < -1.0) c = 1.0 / std::sqrt(-x);
  const double peak = c * c * c / 3.0 - x * c;  // Re of the exponent at t = 0
  const double T = std::sqrt(60.0 / c);
  const double omega = T * T + std::fabs(x) + c * c;  // bound on the phase speed
  const double h = 1.0 / omega;
  QuadratureSpec spec;
  spec.truncation_halfwidth = T;
  spec.point_count = std::max<std::size_t>(64, static_cast<std::size_t>(std::ceil(2.0 * T / h)) + 1);

  // Only real parts are needed: pack Re(e) and Re(-z e) into one complex
  // sample so both integrals share the node set.
  const std::complex<double> packed = trapezoid_line(
      [&](double t) {
        const std::complex<double> z(c, t);
        const std::complex<double> e = std::exp(z * z * z / 3.0 - x * z - peak);
        return std::complex<double>(e.real(), (-z * e).real());
      },
      spec);
  const double scale = std::exp(peak) / (2.0 * M_PI);
  return {packed.real() * scale, packed.imag() * scale};
}

}  // namespace rmt
