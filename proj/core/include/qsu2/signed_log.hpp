#ifndef QSU2_SIGNED_LOG_HPP
#define QSU2_SIGNED_LOG_HPP

#include <cmath>
#include <cstdlib>
#include <limits>
#include <span>

namespace qsu2 {

// A real number stored as sign and natural log of magnitude.  Products and
// quotients are exact in the sign and additive in the log; this is what lets
// quantum-factorial ratios with thousands of factors evaluate without
// overflow.  log_mag is meaningless when sign == 0.
struct SignedLogReal {
  int sign = 0;  // -1, 0, +1
  double log_mag = -std::numeric_limits<double>::infinity();

  static SignedLogReal zero() { return {0, -std::numeric_limits<double>::infinity()}; }
  static SignedLogReal one() { return {1, 0.0}; }

  static SignedLogReal from_double(double x) {
    if (x == 0.0) return zero();
    return {x > 0 ? 1 : -1, std::log(std::abs(x))};
  }

  bool is_zero() const { return sign == 0; }

  double to_double() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_mag);
  }

  SignedLogReal negate() const { return {-sign, log_mag}; }

  friend SignedLogReal operator*(const SignedLogReal& a, const SignedLogReal& b) {
    if (a.sign == 0 || b.sign == 0) return zero();
    return {a.sign * b.sign, a.log_mag + b.log_mag};
  }

  friend SignedLogReal operator/(const SignedLogReal& a, const SignedLogReal& b) {
    // division by zero is a caller bug; surface it as inf rather than UB
    if (a.sign == 0) return zero();
    return {a.sign * b.sign, a.log_mag - b.log_mag};
  }

  SignedLogReal& operator*=(const SignedLogReal& b) { return *this = *this * b; }
  SignedLogReal& operator/=(const SignedLogReal& b) { return *this = *this / b; }
};

// Stable signed sum: factor out the largest magnitude, accumulate the rest.
// Accuracy is limited by double cancellation; callers needing more use the
// high-precision path in recoupling.cpp.
inline SignedLogReal signed_log_sum(std::span<const SignedLogReal> terms) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms)
    if (t.sign != 0 && t.log_mag > m) m = t.log_mag;
  if (std::isinf(m)) return SignedLogReal::zero();
  double acc = 0.0;
  for (const auto& t : terms)
    if (t.sign != 0) acc += t.sign * std::exp(t.log_mag - m);
  if (acc == 0.0) return SignedLogReal::zero();
  return {acc > 0 ? 1 : -1, m + std::log(std::abs(acc))};
}

}  // namespace qsu2

#endif
