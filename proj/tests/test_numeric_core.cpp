#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "rmt/error.hpp"
#include "rmt/parallel.hpp"
#include "rmt/quadrature.hpp"
#include "rmt/scaled_real.hpp"

using rmt::ScaledReal;

namespace {

ScaledReal pos(double log_mag) { return ScaledReal::from_log(1, log_mag); }

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

TEST(ScaledReal, AddSmallIntegers) {
  const ScaledReal s = pos(std::log(2.0)) + pos(std::log(3.0));
  EXPECT_EQ(s.sign(), 1);
  EXPECT_NEAR(s.log_mag(), std::log(5.0), 1e-15);
}

TEST(ScaledReal, ExactCancellation) {
  const ScaledReal s = pos(123.456) + ScaledReal::from_log(-1, 123.456);
  EXPECT_EQ(s.sign(), 0);
  EXPECT_TRUE(s.is_zero());
}

TEST(ScaledReal, DominatedTerm) {
  const ScaledReal s = pos(10000.0) + pos(0.0);
  EXPECT_EQ(s.sign(), 1);
  EXPECT_EQ(s.log_mag(), 10000.0);
}

TEST(ScaledReal, HugeExponentsDoNotOverflow) {
  const ScaledReal s = pos(1e8) + ScaledReal::from_log(-1, 1e8 - 1.0);
  EXPECT_EQ(s.sign(), 1);
  EXPECT_NEAR(s.log_mag(), 1e8 + std::log1p(-std::exp(-1.0)), 1e-7);
}

TEST(ScaledReal, MulDivFromReal) {
  const ScaledReal p = pos(1.0) * ScaledReal::from_log(-1, 2.0);
  EXPECT_EQ(p.sign(), -1);
  EXPECT_DOUBLE_EQ(p.log_mag(), 3.0);
  const ScaledReal f = ScaledReal::from_real(-4.0);
  EXPECT_EQ(f.sign(), -1);
  EXPECT_DOUBLE_EQ(f.log_mag(), std::log(4.0));
  EXPECT_THROW(pos(1.0) / ScaledReal{}, std::domain_error);
  EXPECT_EQ(ScaledReal::from_real(0.0).sign(), 0);
}

TEST(ScaledReal, CheckedConversion) {
  EXPECT_DOUBLE_EQ(pos(std::log(7.0)).to_real(), 7.0);
  EXPECT_DOUBLE_EQ(rmt::scaled_to_real_checked(ScaledReal{}), 0.0);
  EXPECT_THROW(pos(700.0).to_real(), std::out_of_range);
  EXPECT_THROW(pos(-700.5).to_real(), std::out_of_range);
  EXPECT_NO_THROW(pos(699.0).to_real());
}

TEST(ScaledReal, IdentityRoundTrip) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> lg(-500, 500);
  for (int i = 0; i < 1000; ++i) {
    const ScaledReal x = ScaledReal::from_log(i % 2 ? 1 : -1, lg(rng));
    const ScaledReal a = x * ScaledReal::from_real(1.0);
    const ScaledReal b = x + ScaledReal{};
    EXPECT_EQ(a.sign(), x.sign());
    EXPECT_EQ(b.sign(), x.sign());
    EXPECT_LE(std::fabs(a.log_mag() - x.log_mag()), 1e-14 * std::max(1.0, std::fabs(x.log_mag())));
    EXPECT_LE(std::fabs(b.log_mag() - x.log_mag()), 1e-14 * std::max(1.0, std::fabs(x.log_mag())));
  }
}

TEST(ScaledReal, AgreesWithDoubleArithmetic) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> expo(-120, 120), mant(-1, 1);
  auto draw = [&] { return mant(rng) * std::pow(10.0, expo(rng)); };
  for (int i = 0; i < 2000; ++i) {
    const double x = draw(), y = draw();
    const ScaledReal sx = ScaledReal::from_real(x), sy = ScaledReal::from_real(y);
    EXPECT_LE(rel((sx * sy).to_real(), x * y), 1e-12);
    EXPECT_LE(rel((sx / sy).to_real(), x / y), 1e-12);
    const double sum = x + y;
    if (std::fabs(sum) > 1e-3 * std::max(std::fabs(x), std::fabs(y))) {
      EXPECT_LE(rel((sx + sy).to_real(), sum), 1e-12);
      EXPECT_LE(rel((sx - (-sy)).to_real(), sum), 1e-12);
    }
    EXPECT_LE(rel(rmt::scaled_sqrt(sx.abs()).to_real(), std::sqrt(std::fabs(x))), 1e-12);
  }
}

TEST(ScaledReal, AddIsCommutativeAndAssociative) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lg(-50, 50);
  for (int i = 0; i < 1000; ++i) {
    const ScaledReal a = pos(lg(rng)), b = pos(lg(rng)), c = pos(lg(rng));
    EXPECT_EQ((a + b).log_mag(), (b + a).log_mag());
    const double l1 = ((a + b) + c).log_mag(), l2 = (a + (b + c)).log_mag();
    EXPECT_LE(std::fabs(l1 - l2), 1e-12 * std::max(1.0, std::fabs(l1)));
  }
}

TEST(Quadrature, SpecValidation) {
  rmt::QuadratureSpec q;
  EXPECT_NO_THROW(q.validate());
  q.point_count = 63;
  EXPECT_THROW(q.validate(), std::invalid_argument);
  q.point_count = 64;
  q.truncation_halfwidth = 0.0;
  EXPECT_THROW(q.validate(), std::invalid_argument);
}

TEST(Quadrature, GaussianIntegral) {
  const rmt::QuadratureSpec q{20.0, 2000};
  const auto v = rmt::trapezoid_line([](double u) { return std::complex<double>(std::exp(-u * u)); }, q);
  EXPECT_NEAR(v.real(), std::sqrt(M_PI), 1e-12);
  const auto one = rmt::trapezoid_line([](double) { return std::complex<double>(1.0); }, q);
  EXPECT_NEAR(one.real(), 40.0, 1e-11);
  const auto odd = rmt::trapezoid_line([](double u) { return std::complex<double>(u * std::exp(-u * u)); }, q);
  EXPECT_NEAR(odd.real(), 0.0, 1e-14);
}

TEST(Quadrature, NonFiniteSampleCarriesLocation) {
  const rmt::QuadratureSpec q{1.0, 65};
  try {
    rmt::trapezoid_line([](double u) { return std::complex<double>(u == 0.0 ? NAN : 1.0); }, q);
    FAIL() << "expected ConsistencyError";
  } catch (const rmt::ConsistencyError& e) {
    EXPECT_NE(std::string(e.what()).find("u = 0"), std::string::npos);
  }
}

TEST(Quadrature, SpectralConvergence) {
  // analytic, Gaussian-decaying integrand with a known integral
  auto f = [](double u) { return std::complex<double>(std::exp(-u * u / 2) * std::cos(u)); };
  const double exact = std::sqrt(2 * M_PI) * std::exp(-0.5);
  double prev = 0.0;
  for (std::size_t n : {64, 128}) {
    const double err = std::fabs(rmt::trapezoid_line(f, {20.0, n}).real() - exact);
    if (prev > 1e-13) EXPECT_LE(err, prev / 4);
    prev = err;
  }
  EXPECT_LT(prev, 1e-13);
}

TEST(Quadrature, TanhSinh) {
  EXPECT_NEAR(rmt::tanh_sinh([](double y) { return std::exp(-y); }, 0.0, 40.0), 1.0, 1e-13);
  EXPECT_NEAR(rmt::tanh_sinh([](double y) { return 1.0 / std::sqrt(y); }, 0.0, 1.0), 2.0, 1e-9);
}

TEST(CentralDiff, Examples) {
  EXPECT_NEAR(rmt::central_diff([](double x) { return x * x; }, 3.0, 1e-4), 6.0, 1e-7);
  EXPECT_EQ(rmt::central_diff([](double) { return 5.0; }, 1.0, 1e-3), 0.0);
  EXPECT_NEAR(rmt::central_diff([](double x) { return std::exp(x); }, 0.0, 1e-5), 1.0, 1e-9);
}

TEST(CentralDiff, MixedOperator) {
  // (1/(x-y))(d_y - d_x)(x^2 y) = (x^2 - 2xy)/(x-y)
  auto f = [](double x, double y) { return x * x * y; };
  const double x = 0.7, y = -0.4;
  EXPECT_NEAR(rmt::mixed_central_diff(f, x, y, 1e-4), (x * x - 2 * x * y) / (x - y), 1e-7);
  EXPECT_EQ(rmt::mixed_central_diff([](double, double) { return 2.0; }, x, y, 1e-4), 0.0);
}

TEST(Parallel, BlockedSumIsScheduleIndependent) {
  auto term = [](std::size_t k) { return std::sin(0.37 * static_cast<double>(k)) / (1.0 + k); };
  rmt::set_worker_cap(1);
  const double one = rmt::blocked_sum<double>(100000, term, 0.0);
  rmt::set_worker_cap(4);
  const double four = rmt::blocked_sum<double>(100000, term, 0.0);
  rmt::set_worker_cap(0);
  EXPECT_EQ(one, four);
  EXPECT_EQ(rmt::blocked_sum<double>(0, term, 0.0), 0.0);
}
