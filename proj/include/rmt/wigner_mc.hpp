#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rmt/oracle.hpp"
#include "rmt/scaled_real.hpp"

namespace rmt {

enum class DistKind { gaussian, rademacher, uniform, two_point };

DistKind dist_from_string(std::string_view s);
std::string_view to_string(DistKind k);

/// Entry distribution with mean 0 and a fixed variance. two_point puts mass
/// p on sigma sqrt((1-p)/p) and 1-p on -sigma sqrt(p/(1-p)); the default p
/// gives m4 = 3 sigma^4, the Gaussian value, with nonzero skew.
struct EntryDist {
  DistKind kind = DistKind::gaussian;
  double variance = 0.5;
  double two_point_p = kGaussianMatchedP;

  static constexpr double kGaussianMatchedP = 0.21132486540518713;  // (1 - 1/sqrt 3) / 2

  static EntryDist for_ensemble(DistKind kind, Ensemble e);

  double sample(std::mt19937_64& rng) const;
  MomentProfile moments() const;
};

struct MCConfig {
  Ensemble ensemble = Ensemble::hermitian;
  EntryDist dist;
  int n = 4;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 7;
  std::vector<std::pair<double, double>> points;

  /// samples >= 100, 1 <= n <= 256, dist variance matching the ensemble.
  void validate() const;
};

struct MCEstimate {
  ScaledReal mean;
  ScaledReal stderr_;
  std::uint64_t samples_used = 0;
};

struct SigmaEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

/// Hermitian sample as a complex matrix (real-symmetric samples have zero
/// imaginary parts).
using SampleMatrix = Eigen::MatrixXcd;

/// Generator for sample index i of a run with the given seed. Streams depend
/// only on (seed, i), never on the thread schedule.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index);

SampleMatrix sample_matrix(const MCConfig& cfg, std::mt19937_64& rng);

/// det(X - lambda) by partially pivoted LU with the pivot product kept in
/// log space. Throws ConsistencyError if the imaginary residue exceeds 1e-7
/// of |det|.
ScaledReal char_poly_value(const SampleMatrix& x, double lambda);

/// Mean and standard error of D(mu) D(nu), one entry per cfg.points.
std::vector<MCEstimate> estimate_f(const MCConfig& cfg);

/// Plug-in correlation coefficient with the exact mean g_n and a
/// delta-method standard error, one entry per cfg.points.
std::vector<SigmaEstimate> estimate_sigma(const MCConfig& cfg);

namespace reference {
std::vector<MCEstimate> estimate_f_serial(const MCConfig& cfg);
}  // namespace reference

}  // namespace rmt
