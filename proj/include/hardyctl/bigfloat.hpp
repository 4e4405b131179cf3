#pragma once

#include <mpfr.h>

#include <string>

namespace hardyctl {

/// Arbitrary-precision real scalar backed by MPFR.
///
/// Every value carries its own mantissa precision. Binary operations between
/// two BigFloats round at the wider of the two precisions; mixed
/// BigFloat/double operations round at the BigFloat's precision (a double is
/// an exact input, not a 53-bit one). New values created from literals pick
/// up the thread-local default precision, normally managed through
/// PrecisionGuard.
class BigFloat {
 public:
  BigFloat() {
    mpfr_init2(v_, default_precision());
    mpfr_set_zero(v_, 1);
  }
  BigFloat(double x) {  // NOLINT: implicit by design, literals are exact
    mpfr_init2(v_, default_precision());
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  BigFloat(int x) : BigFloat(static_cast<double>(x)) {}
  BigFloat(long x) {  // NOLINT
    mpfr_init2(v_, default_precision());
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  BigFloat(double x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }

  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, o.precision());
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  BigFloat& operator=(double x) {
    mpfr_set_d(v_, x, MPFR_RNDN);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  /// Zero with an explicit precision.
  static BigFloat with_precision(mpfr_prec_t prec) {
    BigFloat r(0.0, prec);
    return r;
  }
  static BigFloat from_string(const std::string& s, mpfr_prec_t prec);

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  /// Re-rounds the value to `prec` bits.
  void set_precision(mpfr_prec_t prec) { mpfr_prec_round(v_, prec, MPFR_RNDN); }

  static mpfr_prec_t default_precision() { return default_prec_(); }
  static void set_default_precision(mpfr_prec_t p) { default_prec_() = p; }
  /// 2^(1 - default precision), the unit roundoff scale Eigen sees.
  static BigFloat machine_epsilon() {
    BigFloat e(1.0);
    mpfr_mul_2si(e.v_, e.v_, 1 - static_cast<long>(default_precision()), MPFR_RNDN);
    return e;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Scientific-notation decimal string with enough digits to round-trip
  /// exactly at this value's precision.
  std::string to_string() const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// Base-2 exponent e with |x| in [2^(e-1), 2^e); 0 for x = 0.
  long exponent2() const { return is_zero() ? 0 : mpfr_get_exp(v_); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  // -- arithmetic ----------------------------------------------------------

  BigFloat operator-() const {
    BigFloat r = result_for(*this, *this);
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r = result_for(a, b);
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r = result_for(a, b);
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r = result_for(a, b);
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r = result_for(a, b);
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  friend BigFloat operator+(const BigFloat& a, double b) {
    BigFloat r = result_for(a, a);
    mpfr_add_d(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator+(double a, const BigFloat& b) { return b + a; }
  friend BigFloat operator-(const BigFloat& a, double b) {
    BigFloat r = result_for(a, a);
    mpfr_sub_d(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(double a, const BigFloat& b) {
    BigFloat r = result_for(b, b);
    mpfr_d_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, double b) {
    BigFloat r = result_for(a, a);
    mpfr_mul_d(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(double a, const BigFloat& b) { return b * a; }
  friend BigFloat operator/(const BigFloat& a, double b) {
    BigFloat r = result_for(a, a);
    mpfr_div_d(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(double a, const BigFloat& b) {
    BigFloat r = result_for(b, b);
    mpfr_d_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }

  BigFloat& operator+=(const BigFloat& o) {
    promote_to(o.precision());
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator-=(const BigFloat& o) {
    promote_to(o.precision());
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator*=(const BigFloat& o) {
    promote_to(o.precision());
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator/=(const BigFloat& o) {
    promote_to(o.precision());
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator+=(double x) {
    mpfr_add_d(v_, v_, x, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator-=(double x) {
    mpfr_sub_d(v_, v_, x, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator*=(double x) {
    mpfr_mul_d(v_, v_, x, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator/=(double x) {
    mpfr_div_d(v_, v_, x, MPFR_RNDN);
    return *this;
  }

  // -- comparisons ---------------------------------------------------------

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) == 0; }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

  friend bool operator==(const BigFloat& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }
  friend bool operator!=(const BigFloat& a, double b) { return mpfr_cmp_d(a.v_, b) != 0; }
  friend bool operator<(const BigFloat& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
  friend bool operator<=(const BigFloat& a, double b) { return mpfr_cmp_d(a.v_, b) <= 0; }
  friend bool operator>(const BigFloat& a, double b) { return mpfr_cmp_d(a.v_, b) > 0; }
  friend bool operator>=(const BigFloat& a, double b) { return mpfr_cmp_d(a.v_, b) >= 0; }
  friend bool operator==(double a, const BigFloat& b) { return b == a; }
  friend bool operator!=(double a, const BigFloat& b) { return b != a; }
  friend bool operator<(double a, const BigFloat& b) { return b > a; }
  friend bool operator<=(double a, const BigFloat& b) { return b >= a; }
  friend bool operator>(double a, const BigFloat& b) { return b < a; }
  friend bool operator>=(double a, const BigFloat& b) { return b <= a; }

  // -- elementary functions (ADL, Eigen-compatible) -------------------------

  friend BigFloat sqrt(const BigFloat& x) { return unary(x, mpfr_sqrt); }
  friend BigFloat exp(const BigFloat& x) { return unary(x, mpfr_exp); }
  friend BigFloat expm1(const BigFloat& x) { return unary(x, mpfr_expm1); }
  friend BigFloat log(const BigFloat& x) { return unary(x, mpfr_log); }
  friend BigFloat log1p(const BigFloat& x) { return unary(x, mpfr_log1p); }
  friend BigFloat sin(const BigFloat& x) { return unary(x, mpfr_sin); }
  friend BigFloat cos(const BigFloat& x) { return unary(x, mpfr_cos); }
  friend BigFloat abs(const BigFloat& x) { return unary(x, mpfr_abs); }
  friend BigFloat fabs(const BigFloat& x) { return unary(x, mpfr_abs); }
  friend BigFloat floor(const BigFloat& x) {
    BigFloat r = result_for(x, x);
    mpfr_floor(r.v_, x.v_);
    return r;
  }
  friend BigFloat pow(const BigFloat& x, const BigFloat& y) {
    BigFloat r = result_for(x, y);
    mpfr_pow(r.v_, x.v_, y.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat pow(const BigFloat& x, long n) {
    BigFloat r = result_for(x, x);
    mpfr_pow_si(r.v_, x.v_, n, MPFR_RNDN);
    return r;
  }
  friend BigFloat tgamma(const BigFloat& x) { return unary(x, mpfr_gamma); }
  friend BigFloat ldexp2(const BigFloat& x, long e) {
    BigFloat r = result_for(x, x);
    mpfr_mul_2si(r.v_, x.v_, e, MPFR_RNDN);
    return r;
  }
  friend const BigFloat& max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }
  friend const BigFloat& min(const BigFloat& a, const BigFloat& b) { return b < a ? b : a; }

  static BigFloat pi(mpfr_prec_t prec) {
    BigFloat r = with_precision(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

 private:
  using UnaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
  static BigFloat unary(const BigFloat& x, UnaryFn fn) {
    BigFloat r = result_for(x, x);
    fn(r.v_, x.v_, MPFR_RNDN);
    return r;
  }
  static BigFloat result_for(const BigFloat& a, const BigFloat& b) {
    return with_precision(a.precision() >= b.precision() ? a.precision() : b.precision());
  }
  void promote_to(mpfr_prec_t p) {
    if (precision() < p) mpfr_prec_round(v_, p, MPFR_RNDN);
  }
  static mpfr_prec_t& default_prec_() {
    thread_local mpfr_prec_t p = 256;
    return p;
  }

  mpfr_t v_;
};

/// Scoped override of the thread-local default BigFloat precision.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(mpfr_prec_t bits) : saved_(BigFloat::default_precision()) {
    BigFloat::set_default_precision(bits);
  }
  ~PrecisionGuard() { BigFloat::set_default_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  mpfr_prec_t saved_;
};

std::ostream& operator<<(std::ostream& os, const BigFloat& x);

}  // namespace hardyctl
