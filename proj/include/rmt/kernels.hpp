#pragma once

#include <cmath>
#include <stdexcept>

#include "rmt/quadrature.hpp"

namespace rmt {

/// Parameters of one evaluation of the edge family I^(alpha)(mu, nu).
struct KernelQuery {
  double alpha = 1.0;
  double mu = 0.0;
  double nu = 0.0;
  QuadratureSpec quad{};
};

/// sin(pi d) / (pi d), d = mu - nu.
double sine_kernel(double mu, double nu);

/// 2 sin(pi d)/(pi d^3) - 2 cos(pi d)/d^2, the real-symmetric bulk kernel.
double t_kernel(double mu, double nu);

/// Airy kernel (Ai(mu) Ai'(nu) - Ai'(mu) Ai(nu)) / (mu - nu).
double airy_kernel(double mu, double nu);

/// Real-symmetric edge kernel; equals I^(2). Near the diagonal
/// (|mu - nu| < 1e-3) the quadrature route is returned.
double b_kernel(double mu, double nu);

/// I^(alpha)(mu, nu) = (1/4 pi^{3/2}) int exp(w^3/12 - (mu+nu) w/2
///   - (mu-nu)^2/(4w)) w^{-alpha-1/2} du,  w = 1 - iu,
/// by the trapezoid rule on the truncated line. For alpha = 0 this is
/// Ai(mu) Ai(nu). Throws ConsistencyError if the imaginary part of the
/// quadrature is not negligible.
double i_alpha(const KernelQuery& q);
inline double i_alpha(double alpha, double mu, double nu) { return i_alpha(KernelQuery{alpha, mu, nu, {}}); }

/// Ai(x) Ai(y) via the line integral (the alpha = 0 member of the family).
double airy_product(double x, double y);

/// One application of (1/(mu-nu)) (d/dnu - d/dmu) to a two-argument kernel
/// by central differences. Requires h in [1e-6, 1e-2] and |mu - nu| >= 10 h.
template <class F>
double operator_step(F&& f, double mu, double nu, double h) {
  if (!(h >= 1e-6 && h <= 1e-2)) throw std::invalid_argument("operator_step: h outside [1e-6, 1e-2]");
  if (std::fabs(mu - nu) < 10.0 * h) {
    throw std::invalid_argument("operator_step: |mu - nu| too small for the difference stencil");
  }
  return mixed_central_diff(f, mu, nu, h);
}

struct DiagRecursion {
  double lhs = 0.0;  // I^(alpha)(x, x)
  double rhs = 0.0;  // int_x^{x+40} I^(alpha-1)(y, y) dy
};

/// Both sides of I^(alpha)(x,x) = int_x^inf I^(alpha-1)(y,y) dy.
/// Requires alpha >= 1 and x in [-10, 10].
DiagRecursion diag_recursion_check(double alpha, double x);

}  // namespace rmt
