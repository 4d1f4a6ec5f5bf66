#pragma once

#include <cstdint>

#include "rmt/scaled_real.hpp"

namespace rmt {

struct AiryPair {
  double ai = 0.0;
  double ai_prime = 0.0;
};

/// Ai and Ai' on [-30, 30]: Maclaurin series (extended precision) on
/// [-kAirySeriesLimit, kAiryDecayStart], the contour route up to
/// kAirySeriesLimit, asymptotic expansions beyond.
/// Throws std::domain_error outside [-30, 30] or for non-finite x.
AiryPair airy(double x);

/// Ai and Ai' from the vertical-line representation
/// Ai(x) = (1/2 pi i) int exp(z^3/3 - x z) dz, Re z = c, evaluated by the
/// trapezoid rule. Cross-check for the series and asymptotic routes.
AiryPair airy_contour(double x);

inline constexpr double kAirySeriesLimit = 8.0;
// On (kAiryDecayStart, kAirySeriesLimit] the series cancels too much for
// relative accuracy and airy() takes the contour route instead.
inline constexpr double kAiryDecayStart = 4.0;

/// Physicists' Hermite polynomial H_n(x) by upward recurrence with
/// renormalization at every step.
ScaledReal hermite_phys(std::uint32_t n, double x);

/// g_n(lambda) = (-1)^n 2^{-n/2} H_n(lambda / sqrt 2) = E det(X_n - lambda)
/// for both Wigner ensembles.
ScaledReal char_poly_mean(std::uint32_t n, double lambda);

/// GUE kernel
/// K_n(x, y) = exp(-(x^2+y^2)/4) sum_{k<n} p_k(x) p_k(y) / (sqrt(2 pi) k!)
/// with p_k the monic Hermite polynomials for the weight exp(-x^2/2).
/// Requires 1 <= n <= 2000.
ScaledReal gue_kernel(std::uint32_t n, double x, double y);

}  // namespace rmt
