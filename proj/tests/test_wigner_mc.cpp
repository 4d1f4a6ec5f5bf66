#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "rmt/egf.hpp"
#include "rmt/error.hpp"
#include "rmt/oracle.hpp"
#include "rmt/parallel.hpp"
#include "rmt/wigner_mc.hpp"

using namespace rmt;

namespace {

MCConfig config(Ensemble e, DistKind k, int n, std::uint64_t samples) {
  MCConfig c;
  c.ensemble = e;
  c.dist = EntryDist::for_ensemble(k, e);
  c.n = n;
  c.samples = samples;
  c.seed = 7;
  return c;
}

void expect_within(const MCEstimate& est, double want, double k = 4.0) {
  const double m = est.mean.to_real(), se = est.stderr_.to_real();
  EXPECT_GT(se, 0.0);
  EXPECT_LE(std::fabs(m - want), k * se) << "mc " << m << " +- " << se << " want " << want;
}

}  // namespace

TEST(EntryDist, RealizedMoments) {
  for (Ensemble e : {Ensemble::hermitian, Ensemble::real_symmetric}) {
    for (DistKind k : {DistKind::gaussian, DistKind::rademacher, DistKind::uniform, DistKind::two_point}) {
      const EntryDist d = EntryDist::for_ensemble(k, e);
      const MomentProfile m = d.moments();
      EXPECT_EQ(m.m1, 0.0);
      EXPECT_EQ(m.m2, e == Ensemble::hermitian ? 0.5 : 1.0);
      EXPECT_NO_THROW(m.validate(e));
      std::mt19937_64 rng = substream(5, static_cast<std::uint64_t>(k));
      const int K = 200000;
      double s1 = 0, s2 = 0, s4 = 0;
      for (int i = 0; i < K; ++i) {
        const double x = d.sample(rng);
        s1 += x, s2 += x * x, s4 += x * x * x * x;
      }
      EXPECT_NEAR(s1 / K, 0.0, 4 * std::sqrt(m.m2 / K));
      EXPECT_NEAR(s2 / K, m.m2, 4 * std::sqrt((m.m4 - m.m2 * m.m2) / K) + 1e-12);
      EXPECT_NEAR(s4 / K, m.m4, 0.05 * m.m4);
    }
  }
}

TEST(EntryDist, TwoPointMatchesGaussianFourthMoment) {
  const MomentProfile m = EntryDist::for_ensemble(DistKind::two_point, Ensemble::real_symmetric).moments();
  EXPECT_NEAR(m.m4, 3.0, 1e-12);
  EXPECT_GT(std::fabs(m.m3), 0.5);
  EXPECT_EQ(dist_from_string("two-point"), DistKind::two_point);
  EXPECT_THROW(dist_from_string("cauchy"), std::invalid_argument);
}

TEST(MCConfig, Validation) {
  MCConfig c = config(Ensemble::hermitian, DistKind::gaussian, 4, 100);
  c.points = {{0, 0}};
  EXPECT_NO_THROW(c.validate());
  c.samples = 99;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.samples = 100;
  c.n = 257;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.n = 4;
  c.dist.variance = 1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.dist.variance = 0.5;
  c.points.clear();
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(SampleMatrix, Structure) {
  MCConfig c = config(Ensemble::hermitian, DistKind::gaussian, 1, 100);
  std::mt19937_64 a = substream(3, 0), b = substream(3, 0);
  const SampleMatrix one = sample_matrix(c, a);
  EXPECT_EQ(one(0, 0).real(), std::sqrt(2.0) * c.dist.sample(b));
  EXPECT_EQ(one(0, 0).imag(), 0.0);
  c.n = 9;
  for (Ensemble e : {Ensemble::hermitian, Ensemble::real_symmetric}) {
    c.ensemble = e;
    c.dist = EntryDist::for_ensemble(DistKind::uniform, e);
    std::mt19937_64 rng = substream(1, 2);
    const SampleMatrix x = sample_matrix(c, rng);
    EXPECT_TRUE(x == x.adjoint());
    if (e == Ensemble::real_symmetric) EXPECT_EQ(x.imag().norm(), 0.0);
    else EXPECT_GT(x.imag().norm(), 0.0);
  }
}

TEST(SampleMatrix, DiagonalMean) {
  const MCConfig c = config(Ensemble::hermitian, DistKind::gaussian, 3, 100);
  const int K = 100000;
  double s = 0;
  for (int i = 0; i < K; ++i) {
    std::mt19937_64 rng = substream(c.seed, static_cast<std::uint64_t>(i));
    s += sample_matrix(c, rng)(0, 0).real();
  }
  EXPECT_LE(std::fabs(s / K), 4 * std::sqrt(2 * c.dist.variance / K));
}

TEST(CharPoly, HandValues) {
  SampleMatrix one(1, 1);
  one(0, 0) = 0.75;
  EXPECT_NEAR(char_poly_value(one, 0.25).to_real(), 0.5, 1e-15);
  SampleMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  EXPECT_NEAR(char_poly_value(swap, 0).to_real(), -1.0, 1e-15);
  EXPECT_EQ(char_poly_value(swap, 1).sign(), 0);
  SampleMatrix h(2, 2);
  h << std::complex<double>(1, 0), std::complex<double>(0, 2), std::complex<double>(0, -2), std::complex<double>(-1, 0);
  EXPECT_NEAR(char_poly_value(h, 0.5).to_real(), (1 - 0.5) * (-1 - 0.5) - 4, 1e-14);
}

TEST(CharPoly, NearEigenvalue) {
  MCConfig c = config(Ensemble::real_symmetric, DistKind::gaussian, 12, 100);
  std::mt19937_64 rng = substream(9, 9);
  const SampleMatrix x = sample_matrix(c, rng);
  // power iteration for the dominant eigenvalue
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(12);
  double lambda = 0;
  for (int i = 0; i < 2000; ++i) {
    const Eigen::VectorXcd w = x * v;
    lambda = (v.adjoint() * w)(0).real() / v.squaredNorm();
    v = w / w.norm();
  }
  const ScaledReal at = char_poly_value(x, lambda), away = char_poly_value(x, lambda + 0.5);
  EXPECT_LT(at.log_mag(), away.log_mag() - std::log(1e3));
}

TEST(CharPoly, ImaginaryResidueAtSize64) {
  const MCConfig c = config(Ensemble::hermitian, DistKind::rademacher, 64, 100);
  for (std::uint64_t s = 0; s < 100000; ++s) {
    std::mt19937_64 rng = substream(c.seed, s);
    EXPECT_NO_THROW(char_poly_value(sample_matrix(c, rng), 0.3));
  }
}

TEST(EstimateF, SizeOneGaussian) {
  MCConfig c = config(Ensemble::hermitian, DistKind::gaussian, 1, 100000);
  c.points = {{0, 0}};
  const MCEstimate e = estimate_f(c)[0];
  EXPECT_EQ(e.samples_used, 100000u);
  expect_within(e, 1.0);
}

TEST(EstimateF, RademacherAtFour) {
  MCConfig c = config(Ensemble::hermitian, DistKind::rademacher, 4, 100000);
  c.points = {{0.5, -0.5}};
  expect_within(estimate_f(c)[0], oracle_f(c.ensemble, c.dist.moments(), 4, 0.5, -0.5));
}

TEST(EstimateF, MatchesOracleAcrossSizes) {
  for (Ensemble e : {Ensemble::hermitian, Ensemble::real_symmetric}) {
    for (DistKind k : {DistKind::gaussian, DistKind::rademacher}) {
      for (int n = 1; n <= 5; ++n) {
        MCConfig c = config(e, k, n, 30000);
        c.seed = 100 + n;
        c.points = {{0.3, -0.8}};
        expect_within(estimate_f(c)[0], oracle_f(e, c.dist.moments(), n, 0.3, -0.8));
      }
    }
  }
}

TEST(EstimateF, ReproducibleAcrossWorkerCaps) {
  MCConfig c = config(Ensemble::real_symmetric, DistKind::two_point, 5, 3000);
  c.points = {{0.1, 0.2}, {-1, 1}};
  set_worker_cap(1);
  const auto a = estimate_f(c);
  set_worker_cap(4);
  const auto b = estimate_f(c);
  set_worker_cap(0);
  const auto s = reference::estimate_f_serial(c);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].mean, b[i].mean);
    EXPECT_EQ(a[i].stderr_, b[i].stderr_);
    EXPECT_EQ(a[i].mean, s[i].mean);
  }
  c.seed = 8;
  EXPECT_NE(estimate_f(c)[0].mean, a[0].mean);
}

TEST(EstimateF, Universality) {
  // equal (m2, m4), different m3
  MCConfig g = config(Ensemble::real_symmetric, DistKind::gaussian, 4, 100000);
  MCConfig t = config(Ensemble::real_symmetric, DistKind::two_point, 4, 100000);
  g.points = t.points = {{0.4, 1.0}};
  t.seed = 99;
  const MCEstimate a = estimate_f(g)[0], b = estimate_f(t)[0];
  const double se = std::hypot(a.stderr_.to_real(), b.stderr_.to_real());
  EXPECT_LE(std::fabs(a.mean.to_real() - b.mean.to_real()), 4 * se);
}

TEST(EstimateSigma, Examples) {
  MCConfig c = config(Ensemble::hermitian, DistKind::gaussian, 4, 100000);
  c.points = {{0.7, 0.7}, {0, 1}};
  const auto s = estimate_sigma(c);
  EXPECT_NEAR(s[0].value, 1.0, 0.02);
  EXPECT_NEAR(s[1].value, sigma_alpha(1, 0, 0, 1, 4), 4 * s[1].stderr_);
  MCConfig d = config(Ensemble::real_symmetric, DistKind::gaussian, 4, 100000);
  d.points = {{0, 1}};
  const auto t = estimate_sigma(d);
  EXPECT_NEAR(t[0].value, sigma_alpha(2, 0, 0, 1, 4), 4 * t[0].stderr_);
}
