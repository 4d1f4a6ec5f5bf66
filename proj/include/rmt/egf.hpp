#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

#include "rmt/scaled_real.hpp"

namespace rmt {

/// Parameters of the generating function
///   exp(mu nu z/(1-z^2) - (mu^2+nu^2)/2 z^2/(1-z^2) + bstar z^2)
///     / ((1-z)^{alpha+1/2} (1+z)^{1/2}),
/// whose N-th Taylor coefficient times N! is f_N^(alpha)(mu, nu).
/// alpha = 1 is the Hermitian case, alpha = 2 the real-symmetric one.
struct EgfParams {
  double alpha = 1.0;
  double bstar = 0.0;
  double mu = 0.0;
  double nu = 0.0;

  void validate() const;
};

/// One coefficient extraction on the circle |z| = radius.
struct ContourJob {
  EgfParams params;
  std::uint64_t n = 0;
  double radius = 0.5;
  std::size_t points = 2048;

  /// radius = 1 - n^{-1/3} clamped to [0.25, 0.9999];
  /// points = max(2048, 512 * ceil(n^{1/3})).
  static ContourJob with_defaults(const EgfParams& params, std::uint64_t n);
  void validate() const;
};

struct SaddleData {
  double xi_n = 0.0;   // (mu + nu) / 2 of the evaluation points
  double eta_n = 0.0;  // (mu - nu) / 2
  double shift = 0.0;  // max real part of the log-integrand, subtracted before exp
  double condition = 1.0;  // max |integrand| / |result|
  double imag_residue = 0.0;  // |Im| / |Re| of the normalized sum
  bool cancellation_warning = false;  // condition > 1e12
};

struct Extraction {
  ScaledReal value;
  SaddleData diag;
};

/// Complex logarithm of the generating function at |z| <= 0.9999.
/// Throws std::domain_error closer to the unit circle.
std::complex<double> egf_eval(const EgfParams& params, std::complex<double> z);

/// f_N^(alpha)(mu, nu) by the M-point periodic trapezoid rule on the
/// contour. Parallel over contour samples with a deterministic reduction.
/// Throws ConsistencyError when the imaginary residue is not negligible.
Extraction extract_f(const ContourJob& job);

namespace reference {
/// Serial straight-loop version of extract_f; kept for testing and benchmarks.
Extraction extract_f_serial(const ContourJob& job);
}  // namespace reference

/// A scaled value together with the raw coefficient it came from.
struct ScaledEval {
  double value = 0.0;
  ScaledReal raw;
  SaddleData diag;
};

/// 2 sqrt(n) + t n^{-1/6}
double edge_point(double t, std::uint64_t n);

/// log of sqrt(2 pi) n! n^{(2 alpha - 1)/6} exp(2n + (mu+nu) n^{1/3}).
double edge_lognorm(double alpha, std::uint64_t n, double mu, double nu);

/// f_N at the edge points divided by exp(edge_lognorm); tends to
/// exp(bstar) I^(alpha)(mu, nu).
ScaledEval edge_scaled_f(double alpha, double bstar, double mu, double nu, std::uint64_t n);

/// Semicircle density sqrt(4 - xi^2) / (2 pi).
double semicircle_density(double xi);

/// sqrt(n) xi + t / (sqrt(n) rho(xi))
double bulk_point(double xi, double t, std::uint64_t n);

/// log of sqrt(2 pi) n! n^{alpha-1/2} rho^{2 alpha-1} exp(n xi^2/2 + (mu+nu) xi/(2 rho)),
/// i.e. the inverse of c_N' (alpha = 1) and d_N' (alpha = 2).
double bulk_lognorm(int alpha, std::uint64_t n, double xi, double mu, double nu);

/// Bulk-normalized f_N; tends to exp(bstar) S(mu,nu) (alpha = 1) or
/// exp(bstar) T(mu,nu) (alpha = 2). Requires n <= 512 and |xi| <= 1.8.
/// Refuses (ConsistencyError) when the contour condition exceeds 1e12.
ScaledEval bulk_scaled_f(int alpha, double bstar, double xi, double mu, double nu, std::uint64_t n);

/// (f(mu,nu) - g(mu) g(nu)) / sqrt((f(mu,mu) - g(mu)^2)(f(nu,nu) - g(nu)^2))
/// at raw evaluation points. Exactly 1 when mu_pt == nu_pt.
double sigma_alpha(double alpha, double bstar, double mu_pt, double nu_pt, std::uint64_t n);

}  // namespace rmt
