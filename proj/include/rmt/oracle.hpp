#pragma once

#include <string_view>

namespace rmt {

enum class Ensemble { hermitian, real_symmetric };

std::string_view to_string(Ensemble e);
/// "hermitian" | "symmetric" | "real_symmetric"; throws std::invalid_argument otherwise.
Ensemble ensemble_from_string(std::string_view s);

/// Moments (m1..m4) of the entry distribution.
struct MomentProfile {
  double m1 = 0.0;
  double m2 = 0.5;
  double m3 = 0.0;
  double m4 = 0.75;

  /// Gaussian entries: (1/2, 3/4) Hermitian, (1, 3) real-symmetric.
  static MomentProfile gaussian(Ensemble e);
  /// +-sigma entries: (1/2, 1/4) Hermitian, (1, 1) real-symmetric.
  static MomentProfile rademacher(Ensemble e);

  /// m1 = 0, m4 >= m2^2, and m2 = 1/2 (Hermitian) or 1 (real-symmetric).
  void validate(Ensemble e) const;
};

/// alpha of the generating function: 1 for Hermitian, 2 for real-symmetric.
int egf_alpha(Ensemble e);
/// bstar of the generating function: b - 3/4 (Hermitian), (b~ - 3)/2 (real-symmetric).
double egf_bstar(Ensemble e, const MomentProfile& m);

/// E[D_n(mu) D_n(nu)] by expanding both determinants over permutation
/// pairs and taking expectations monomial by monomial. 1 <= n <= 6.
/// Parallel over the first permutation, deterministic reduction order.
double oracle_f(Ensemble e, const MomentProfile& m, int n, double mu, double nu);

/// E[D_n(lambda)], 1 <= n <= 7.
double oracle_mean(Ensemble e, const MomentProfile& m, int n, double lambda);

namespace reference {
double oracle_f_serial(Ensemble e, const MomentProfile& m, int n, double mu, double nu);
}  // namespace reference

}  // namespace rmt
