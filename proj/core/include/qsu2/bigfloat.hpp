#ifndef QSU2_BIGFLOAT_HPP
#define QSU2_BIGFLOAT_HPP

#include <mpfr.h>

#include <cstdint>
#include <utility>

namespace qsu2 {

// Thin RAII wrapper over mpfr_t with just the operations the recoupling sums
// need.  Racah-type alternating sums cancel to roughly maxlabel/12 decimal
// digits, which is past double for labels above ~40; these run at a few
// hundred bits instead.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  void set_si(std::int64_t x) { mpfr_set_si(v_, x, MPFR_RNDN); }
  void set(const BigFloat& o) { mpfr_set(v_, o.v_, MPFR_RNDN); }
  void set_zero() { mpfr_set_zero(v_, 1); }

  // this = sin(pi * numer / denom)
  void set_sin_pi_frac(std::int64_t numer, std::int64_t denom) {
    BigFloat t(precision());
    mpfr_const_pi(t.v_, MPFR_RNDN);
    mpfr_mul_si(t.v_, t.v_, numer, MPFR_RNDN);
    mpfr_div_si(t.v_, t.v_, denom, MPFR_RNDN);
    mpfr_sin(v_, t.v_, MPFR_RNDN);
  }

  void mul(const BigFloat& a, const BigFloat& b) { mpfr_mul(v_, a.v_, b.v_, MPFR_RNDN); }
  void div(const BigFloat& a, const BigFloat& b) { mpfr_div(v_, a.v_, b.v_, MPFR_RNDN); }
  void add(const BigFloat& a, const BigFloat& b) { mpfr_add(v_, a.v_, b.v_, MPFR_RNDN); }
  void sub(const BigFloat& a, const BigFloat& b) { mpfr_sub(v_, a.v_, b.v_, MPFR_RNDN); }
  void neg() { mpfr_neg(v_, v_, MPFR_RNDN); }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // natural log of |value|; caller checks sign first
  double log_abs() const {
    BigFloat t(precision());
    mpfr_abs(t.v_, v_, MPFR_RNDN);
    mpfr_log(t.v_, t.v_, MPFR_RNDN);
    return mpfr_get_d(t.v_, MPFR_RNDN);
  }

 private:
  mpfr_t v_;
};

}  // namespace qsu2

#endif
