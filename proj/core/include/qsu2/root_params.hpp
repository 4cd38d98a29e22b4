#ifndef QSU2_ROOT_PARAMS_HPP
#define QSU2_ROOT_PARAMS_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace qsu2 {

using complexd = std::complex<double>;

// Level-k root-of-unity data: r = k+2, A = exp(2*pi*i/(4r)).  Every matrix in
// the library is a function of these numbers.
struct RootParams {
  std::int64_t level = 0;  // k >= 1
  std::int64_t r = 0;      // k + 2
  complexd A;

  static RootParams from_level(std::int64_t k) {
    if (k < 1) throw std::domain_error("RootParams: level must be >= 1");
    RootParams p;
    p.level = k;
    p.r = k + 2;
    p.A = std::polar(1.0, std::numbers::pi / (2.0 * static_cast<double>(p.r)));
    return p;
  }

  static RootParams from_r(std::int64_t r) {
    if (r < 3) throw std::domain_error("RootParams: r must be >= 3");
    return from_level(r - 2);
  }

  std::int64_t max_label() const { return r - 2; }

  bool label_in_range(std::int64_t l) const { return l >= 0 && l <= r - 2; }
};

// exp(i*pi*numer/denom) with the exponent reduced mod 2*denom first, so huge
// integer phases (l up to 1e6) keep full accuracy.
inline complexd unit_phase_pi(std::int64_t numer, std::int64_t denom) {
  std::int64_t period = 2 * denom;
  std::int64_t m = numer % period;
  if (m < 0) m += period;
  return std::polar(1.0, std::numbers::pi * static_cast<double>(m) / static_cast<double>(denom));
}

// sin(pi*numer/denom), reduced mod 2*denom.
inline double sin_pi_frac(std::int64_t numer, std::int64_t denom) {
  std::int64_t period = 2 * denom;
  std::int64_t m = numer % period;
  if (m < 0) m += period;
  return std::sin(std::numbers::pi * static_cast<double>(m) / static_cast<double>(denom));
}

// Dehn-twist eigenvalue exp(-i*pi*l(l+2)/(2r)) at label l.
inline complexd twist_eigenvalue(std::int64_t l, const RootParams& params) {
  if (!params.label_in_range(l)) throw std::domain_error("twist_eigenvalue: label out of range");
  return unit_phase_pi(-l * (l + 2), 2 * params.r);
}

}  // namespace qsu2

#endif
