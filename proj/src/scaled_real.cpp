#include "rmt/scaled_real.hpp"

#include <ostream>
#include <stdexcept>
#include <string>

namespace rmt {

ScaledReal ScaledReal::from_log(int sign, double log_mag) {
  ScaledReal r;
  if (sign != 0) {
    r.sign_ = sign > 0 ? 1 : -1;
    r.log_mag_ = log_mag;
  }
  return r;
}

ScaledReal ScaledReal::from_real(double x) {
  if (x == 0.0) return {};
  return from_log(x > 0 ? 1 : -1, std::log(std::fabs(x)));
}

double ScaledReal::to_real() const {
  if (sign_ == 0) return 0.0;
  if (!(std::fabs(log_mag_) < 700.0)) {
    throw std::out_of_range("ScaledReal::to_real: log magnitude " + std::to_string(log_mag_) +
                            " outside double range");
  }
  return sign_ * std::exp(log_mag_);
}

ScaledReal scaled_add(ScaledReal x, ScaledReal y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const ScaledReal& big = x.log_mag() >= y.log_mag() ? x : y;
  const ScaledReal& small = x.log_mag() >= y.log_mag() ? y : x;
  const double ratio = std::exp(small.log_mag() - big.log_mag());  // in (0, 1]
  if (big.sign() == small.sign()) {
    return ScaledReal::from_log(big.sign(), big.log_mag() + std::log1p(ratio));
  }
  if (ratio == 1.0) return {};
  return ScaledReal::from_log(big.sign(), big.log_mag() + std::log1p(-ratio));
}

ScaledReal scaled_sub(ScaledReal x, ScaledReal y) { return scaled_add(x, -y); }

ScaledReal scaled_mul(ScaledReal x, ScaledReal y) {
  if (x.is_zero() || y.is_zero()) return {};
  return ScaledReal::from_log(x.sign() * y.sign(), x.log_mag() + y.log_mag());
}

ScaledReal scaled_div(ScaledReal x, ScaledReal y) {
  if (y.is_zero()) throw std::domain_error("scaled_div: division by zero");
  if (x.is_zero()) return {};
  return ScaledReal::from_log(x.sign() * y.sign(), x.log_mag() - y.log_mag());
}

ScaledReal scaled_sqrt(ScaledReal x) {
  if (x.sign() < 0) throw std::domain_error("scaled_sqrt: negative argument");
  if (x.is_zero()) return {};
  return ScaledReal::from_log(1, 0.5 * x.log_mag());
}

std::ostream& operator<<(std::ostream& os, const ScaledReal& x) {
  const char s = x.sign() > 0 ? '+' : (x.sign() < 0 ? '-' : '0');
  return os << "(" << s << ", " << x.log_mag() << ")";
}

}  // namespace rmt
