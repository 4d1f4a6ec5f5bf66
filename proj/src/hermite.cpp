#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "rmt/special.hpp"

namespace rmt {
namespace {

// Pair of consecutive recurrence values sharing a binary exponent; the
// power-of-two renormalization is exact.
struct ScaledPair {
  double prev;
  double cur;
  std::int64_t exponent = 0;

  void renormalize() {
    int e = 0;
    std::frexp(std::fmax(std::fabs(prev), std::fabs(cur)), &e);
    if (e == 0) return;
    prev = std::ldexp(prev, -e);
    cur = std::ldexp(cur, -e);
    exponent += e;
  }

  ScaledReal current() const {
    if (cur == 0.0) return {};
    return ScaledReal::from_log(cur > 0 ? 1 : -1,
                                std::log(std::fabs(cur)) + static_cast<double>(exponent) * M_LN2);
  }
};

// Orthonormalized monic Hermite values q_k = p_k / sqrt(k!), advanced by
// q_{k+1} = (x q_k - sqrt(k) q_{k-1}) / sqrt(k+1).
class NormalizedHermite {
 public:
  explicit NormalizedHermite(double x) : x_(x), state_{0.0, 1.0} {}

  ScaledReal value() const { return state_.current(); }

  void advance() {
    const double k = static_cast<double>(k_);
    const double next = (x_ * state_.cur - std::sqrt(k) * state_.prev) / std::sqrt(k + 1.0);
    state_.prev = state_.cur;
    state_.cur = next;
    state_.renormalize();
    ++k_;
  }

 private:
  double x_;
  ScaledPair state_;
  std::uint32_t k_ = 0;
};

}  // namespace

ScaledReal hermite_phys(std::uint32_t n, double x) {
  if (n == 0) return ScaledReal::from_real(1.0);
  ScaledPair s{1.0, 2.0 * x};
  for (std::uint32_t k = 1; k < n; ++k) {
    const double next = 2.0 * x * s.cur - 2.0 * static_cast<double>(k) * s.prev;
    s.prev = s.cur;
    s.cur = next;
    s.renormalize();
  }
  return s.current();
}

ScaledReal char_poly_mean(std::uint32_t n, double lambda) {
  const ScaledReal h = hermite_phys(n, lambda / M_SQRT2);
  if (h.is_zero()) return h;
  const int sign = (n % 2 == 0) ? h.sign() : -h.sign();
  return ScaledReal::from_log(sign, h.log_mag() - 0.5 * n * M_LN2);
}

ScaledReal gue_kernel(std::uint32_t n, double x, double y) {
  if (n < 1 || n > 2000) throw std::invalid_argument("gue_kernel: need 1 <= n <= 2000");
  NormalizedHermite qx(x), qy(y);
  ScaledReal sum;
  for (std::uint32_t k = 0; k < n; ++k) {
    sum = sum + qx.value() * qy.value();
    qx.advance();
    qy.advance();
  }
  return scaled_times_exp(sum, -(x * x + y * y) / 4.0 - 0.5 * std::log(2.0 * M_PI));
}

}  // namespace rmt
