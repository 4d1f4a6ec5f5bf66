#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

#include "rmt/error.hpp"

namespace rmt {

enum class QuadratureKind { uniform_trapezoid };

/// Truncated line integral over u in [-U, U].
struct QuadratureSpec {
  double truncation_halfwidth = 20.0;
  std::size_t point_count = 4000;
  QuadratureKind kind = QuadratureKind::uniform_trapezoid;

  void validate() const {
    if (!(truncation_halfwidth > 0.0) || point_count < 64) {
      throw std::invalid_argument("QuadratureSpec: need halfwidth > 0 and point_count >= 64");
    }
  }
};

/// Accumulated value together with the L1 mass of the samples, so callers
/// can judge the roundoff floor of a cancelling sum.
struct LineIntegral {
  std::complex<double> value;
  double abs_mass = 0.0;
};

/// Uniform trapezoid rule for f over [-U, U] with point_count nodes
/// (endpoints included, half weight). f: double -> std::complex<double>.
template <class F>
LineIntegral trapezoid_line_detailed(F&& f, const QuadratureSpec& spec) {
  spec.validate();
  const double U = spec.truncation_halfwidth;
  const std::size_t n = spec.point_count;
  const double h = 2.0 * U / static_cast<double>(n - 1);
  std::complex<double> sum = 0.0;
  double mass = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double u = -U + h * static_cast<double>(k);
    const std::complex<double> v = f(u);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw ConsistencyError("trapezoid_line: non-finite integrand at u = " + std::to_string(u));
    }
    const double w = (k == 0 || k + 1 == n) ? 0.5 : 1.0;
    sum += w * v;
    mass += w * std::abs(v);
  }
  return {sum * h, mass * h};
}

template <class F>
std::complex<double> trapezoid_line(F&& f, const QuadratureSpec& spec) {
  return trapezoid_line_detailed(std::forward<F>(f), spec).value;
}

/// Tanh-sinh rule on [a, b]: the trapezoid rule applied after the
/// substitution y = mid + half * tanh(pi/2 sinh s), truncated at |s| <= 3.5.
/// Spectrally accurate for integrands analytic on the open interval.
template <class F>
double tanh_sinh(F&& f, double a, double b, int steps_per_unit = 32) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double h = 1.0 / steps_per_unit;
  const int kmax = static_cast<int>(std::ceil(3.5 * steps_per_unit));
  double sum = 0.0;
  for (int k = -kmax; k <= kmax; ++k) {
    const double s = h * k;
    const double p = 0.5 * M_PI * std::sinh(s);
    const double c = std::cosh(p);
    const double w = 0.5 * M_PI * std::cosh(s) / (c * c);
    // distance to the nearer endpoint, computed without cancellation
    const double d = half / (std::exp(2.0 * std::fabs(p)) + 1.0) * 2.0;
    const double y = s < 0 ? a + d : (s > 0 ? b - d : mid);
    if (d <= 0.0) continue;
    sum += w * f(y);
  }
  return sum * h * half;
}

/// (f(x+h) - f(x-h)) / 2h
template <class F>
double central_diff(F&& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// (1/(x-y)) (d/dy - d/dx) f(x, y) with central differences in each slot.
template <class F>
double mixed_central_diff(F&& f, double x, double y, double h) {
  const double dy = (f(x, y + h) - f(x, y - h)) / (2.0 * h);
  const double dx = (f(x + h, y) - f(x - h, y)) / (2.0 * h);
  return (dy - dx) / (x - y);
}

}  // namespace rmt
