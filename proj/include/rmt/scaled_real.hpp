#pragma once

#include <cmath>
#include <iosfwd>

namespace rmt {

/// Real number stored as sign * exp(log_mag).
///
/// Used for quantities such as N! * exp(2N) that overflow a double long
/// before the interesting range of N. A sign of 0 is exact zero and the
/// log magnitude is then ignored (kept at 0 so equality is well defined).
class ScaledReal {
 public:
  constexpr ScaledReal() = default;

  static ScaledReal from_log(int sign, double log_mag);
  static ScaledReal from_real(double x);

  constexpr int sign() const { return sign_; }
  constexpr double log_mag() const { return log_mag_; }
  constexpr bool is_zero() const { return sign_ == 0; }

  double log10_mag() const { return log_mag_ / M_LN10; }

  /// Ordinary double; throws std::out_of_range unless |log_mag| < 700.
  double to_real() const;

  ScaledReal operator-() const { return from_log(-sign_, log_mag_); }
  ScaledReal abs() const { return from_log(sign_ == 0 ? 0 : 1, log_mag_); }

  friend bool operator==(const ScaledReal&, const ScaledReal&) = default;

 private:
  int sign_ = 0;
  double log_mag_ = 0.0;
};

ScaledReal scaled_add(ScaledReal x, ScaledReal y);
ScaledReal scaled_sub(ScaledReal x, ScaledReal y);
ScaledReal scaled_mul(ScaledReal x, ScaledReal y);
// Throws std::domain_error when y is zero.
ScaledReal scaled_div(ScaledReal x, ScaledReal y);
inline ScaledReal scaled_from_real(double x) { return ScaledReal::from_real(x); }
inline double scaled_to_real_checked(ScaledReal x) { return x.to_real(); }

inline ScaledReal operator+(ScaledReal x, ScaledReal y) { return scaled_add(x, y); }
inline ScaledReal operator-(ScaledReal x, ScaledReal y) { return scaled_sub(x, y); }
inline ScaledReal operator*(ScaledReal x, ScaledReal y) { return scaled_mul(x, y); }
inline ScaledReal operator/(ScaledReal x, ScaledReal y) { return scaled_div(x, y); }

/// sqrt of a non-negative value; throws std::domain_error for negative input.
ScaledReal scaled_sqrt(ScaledReal x);

/// exp(log_factor) * x without leaving log space.
inline ScaledReal scaled_times_exp(ScaledReal x, double log_factor) {
  return x.is_zero() ? x : ScaledReal::from_log(x.sign(), x.log_mag() + log_factor);
}

std::ostream& operator<<(std::ostream& os, const ScaledReal& x);

}  // namespace rmt
