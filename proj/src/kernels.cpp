#include "rmt/kernels.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "rmt/error.hpp"
#include "rmt/special.hpp"

namespace rmt {
namespace {

constexpr double kPi = M_PI;

void check_box(double mu, double nu, const char* who) {
  if (!(std::fabs(mu) <= 30.0 && std::fabs(nu) <= 30.0)) {
    throw std::domain_error(std::string(who) + ": arguments outside [-30, 30]");
  }
}

// Unchecked quadrature of I^(alpha). Returns the complex integral (already
// normalized) and the L1 mass of the samples.
LineIntegral i_alpha_quadrature(double alpha, double mu, double nu, const QuadratureSpec& quad) {
  const double s = mu + nu;
  const double d2 = (mu - nu) * (mu - nu);
  const double power = alpha + 0.5;
  LineIntegral r = trapezoid_line_detailed(
      [&](double u) {
        const std::complex<double> w(1.0, -u);
        const std::complex<double> expo = w * w * w / 12.0 - 0.5 * s * w - 0.25 * d2 / w - power * std::log(w);
        return std::exp(expo);
      },
      quad);
  const double norm = 1.0 / (4.0 * std::pow(kPi, 1.5));
  r.value *= norm;
  r.abs_mass *= norm;
  return r;
}

double checked_real(const LineIntegral& r, const char* who) {
  const double tol = 1e-10 + 64.0 * std::numeric_limits<double>::epsilon() * r.abs_mass;
  if (std::fabs(r.value.imag()) > tol) {
    throw ConsistencyError(std::string(who) + ": imaginary residue " + std::to_string(r.value.imag()) +
                           " exceeds tolerance");
  }
  return r.value.real();
}

}  // namespace

double sine_kernel(double mu, double nu) {
  const double d = mu - nu;
  const double a = kPi * d;
  if (std::fabs(d) < 1e-6) return 1.0 - a * a / 6.0;
  return std::sin(a) / a;
}

double t_kernel(double mu, double nu) {
  const double d = mu - nu;
  if (std::fabs(d) < 1e-3) {
    const double a2 = kPi * kPi * d * d;
    return 2.0 * kPi * kPi * (1.0 / 3.0 - a2 / 30.0 + a2 * a2 / 840.0);
  }
  const double a = kPi * d;
  return 2.0 * std::sin(a) / (kPi * d * d * d) - 2.0 * std::cos(a) / (d * d);
}

double airy_kernel(double mu, double nu) {
  check_box(mu, nu, "airy_kernel");
  const double d = mu - nu;
  if (std::fabs(d) < 1e-5) {
    // Diagonal limit Ai'(x)^2 - x Ai(x)^2 (from Ai'' = x Ai), taken at the
    // midpoint; second-order accurate in d.
    const double m = 0.5 * (mu + nu);
    const AiryPair a = airy(m);
    return a.ai_prime * a.ai_prime - m * a.ai * a.ai;
  }
  const AiryPair a = airy(mu), b = airy(nu);
  return (a.ai * b.ai_prime - a.ai_prime * b.ai) / d;
}

double b_kernel(double mu, double nu) {
  check_box(mu, nu, "b_kernel");
  const double d = mu - nu;
  if (std::fabs(d) < 1e-3) return i_alpha(2.0, mu, nu);
  const AiryPair a = airy(mu), b = airy(nu);
  return ((mu + nu) * a.ai * b.ai - 2.0 * a.ai_prime * b.ai_prime) / (d * d) +
         (2.0 * a.ai * b.ai_prime - 2.0 * a.ai_prime * b.ai) / (d * d * d);
}

double i_alpha(const KernelQuery& q) {
  check_box(q.mu, q.nu, "i_alpha");
  if (!(q.alpha >= 0.0 && q.alpha <= 10.0)) throw std::domain_error("i_alpha: alpha outside [0, 10]");
  return checked_real(i_alpha_quadrature(q.alpha, q.mu, q.nu, q.quad), "i_alpha");
}

double airy_product(double x, double y) { return i_alpha(0.0, x, y); }

DiagRecursion diag_recursion_check(double alpha, double x) {
  if (!(alpha >= 1.0)) throw std::domain_error("diag_recursion_check: alpha must be >= 1");
  if (!(std::fabs(x) <= 10.0)) throw std::domain_error("diag_recursion_check: x outside [-10, 10]");
  DiagRecursion r;
  r.lhs = i_alpha(alpha, x, x);
  // The integrand decays like exp(-4/3 y^{3/2}); beyond y = 30 the box check
  // of i_alpha would reject it, so the unchecked quadrature is used. For
  // x < -2 it oscillates on [x, 0] and needs the finer step.
  const QuadratureSpec quad{};
  r.rhs = tanh_sinh(
      [&](double y) { return checked_real(i_alpha_quadrature(alpha - 1.0, y, y, quad), "diag_recursion_check"); },
      x, x + 40.0, x < -2.0 ? 64 : 16);
  return r;
}

}  // namespace rmt
