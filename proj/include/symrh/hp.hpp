#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace symrh {

using Prec = mpfr_prec_t;
using Rnd = mpfr_rnd_t;

struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Arbitrary-precision real. Value semantics; every value carries its own
// precision. Binary operators round to the wider operand's precision with
// RNDN; directed-rounding variants are provided for bound arithmetic.
class Real {
 public:
  Real() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }
  explicit Real(Prec prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(long n, Prec prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, n, MPFR_RNDN); }
  // no silent rounding through double
  template <typename F, typename = std::enable_if_t<std::is_floating_point_v<F>>>
  Real(F, Prec) = delete;
  Real(const mpz_class& n, Prec prec) { mpfr_init2(v_, prec); mpfr_set_z(v_, n.get_mpz_t(), MPFR_RNDN); }
  Real(const mpq_class& q, Prec prec, Rnd r = MPFR_RNDN) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, q.get_mpq_t(), r);
  }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, MPFR_PREC_MIN); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  Prec prec() const { return mpfr_get_prec(v_); }

  bool is_zero() const { return mpfr_zero_p(v_); }
  bool is_finite() const { return mpfr_number_p(v_); }
  int sign() const { return mpfr_sgn(v_); }
  long exponent() const { return mpfr_get_exp(v_); }  // requires nonzero finite
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  static Real from_string(const std::string& s, Prec prec, Rnd r = MPFR_RNDN) {
    Real x(prec);
    if (mpfr_set_str(x.v_, s.c_str(), 10, r) != 0)
      throw error("unparseable numeric literal: " + s);
    return x;
  }
  // Scientific-notation decimal string; digits chosen by the caller.
  std::string to_string(size_t digits) const;

  static Real pi(Prec prec, Rnd r = MPFR_RNDN) {
    Real x(prec);
    mpfr_const_pi(x.v_, r);
    return x;
  }
  static Real pow2(long e, Prec prec) {  // exact 2^e
    Real x(prec);
    mpfr_set_ui_2exp(x.v_, 1, e, MPFR_RNDN);
    return x;
  }
  // Deliberate, exact embedding of a double (prec >= 53 keeps every bit).
  static Real of_double(double d, Prec prec) {
    Real x(prec);
    mpfr_set_d(x.v_, d, MPFR_RNDN);
    return x;
  }

  // Smallest representable increment near |x|: 2^(exp - prec + 1). Zero -> 0.
  Real ulp() const {
    Real u(prec());
    if (!is_zero() && is_finite()) mpfr_set_ui_2exp(u.v_, 1, exponent() - prec() + 1, MPFR_RNDN);
    return u;
  }

  friend Prec wider(const Real& a, const Real& b) {
    return std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_));
  }

#define SYMRH_BINOP(name, fn)                              \
  static Real name(const Real& a, const Real& b, Rnd r) {  \
    Real out(wider(a, b));                                 \
    fn(out.v_, a.v_, b.v_, r);                             \
    return out;                                            \
  }
  SYMRH_BINOP(add, mpfr_add)
  SYMRH_BINOP(sub, mpfr_sub)
  SYMRH_BINOP(mul, mpfr_mul)
  SYMRH_BINOP(div, mpfr_div)
#undef SYMRH_BINOP

  friend Real operator+(const Real& a, const Real& b) { return add(a, b, MPFR_RNDN); }
  friend Real operator-(const Real& a, const Real& b) { return sub(a, b, MPFR_RNDN); }
  friend Real operator*(const Real& a, const Real& b) { return mul(a, b, MPFR_RNDN); }
  friend Real operator/(const Real& a, const Real& b) { return div(a, b, MPFR_RNDN); }
  Real operator-() const {
    Real out(prec());
    mpfr_neg(out.v_, v_, MPFR_RNDN);
    return out;
  }
  Real& operator+=(const Real& b) { mpfr_add(v_, v_, b.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& b) { mpfr_sub(v_, v_, b.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& b) { mpfr_mul(v_, v_, b.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& b) { mpfr_div(v_, v_, b.v_, MPFR_RNDN); return *this; }

  friend Real operator*(const Real& a, long b) {
    Real out(a.prec());
    mpfr_mul_si(out.v_, a.v_, b, MPFR_RNDN);
    return out;
  }
  friend Real operator/(const Real& a, long b) {
    Real out(a.prec());
    mpfr_div_si(out.v_, a.v_, b, MPFR_RNDN);
    return out;
  }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  int cmp_si(long n) const { return mpfr_cmp_si(v_, n); }

  Real abs() const {
    Real out(prec());
    mpfr_abs(out.v_, v_, MPFR_RNDN);
    return out;
  }
  Real mul2si(long e) const {  // exact scaling by 2^e
    Real out(prec());
    mpfr_mul_2si(out.v_, v_, e, MPFR_RNDN);
    return out;
  }

#define SYMRH_UNFN(name, fn)                    \
  Real name(Rnd r = MPFR_RNDN) const {          \
    Real out(prec());                           \
    fn(out.v_, v_, r);                          \
    return out;                                 \
  }
  SYMRH_UNFN(exp, mpfr_exp)
  SYMRH_UNFN(log, mpfr_log)
  SYMRH_UNFN(sqrt, mpfr_sqrt)
  SYMRH_UNFN(gamma, mpfr_gamma)
  SYMRH_UNFN(lngamma, mpfr_lngamma)
  SYMRH_UNFN(zeta, mpfr_zeta)
  SYMRH_UNFN(floor_r, mpfr_rint_floor)
  SYMRH_UNFN(ceil_r, mpfr_rint_ceil)
#undef SYMRH_UNFN

  static Real pow(const Real& a, const Real& b, Rnd r = MPFR_RNDN) {
    Real out(wider(a, b));
    mpfr_pow(out.v_, a.v_, b.v_, r);
    return out;
  }
  Real pow_si(long e, Rnd r = MPFR_RNDN) const {
    Real out(prec());
    mpfr_pow_si(out.v_, v_, e, r);
    return out;
  }
  static void sin_cos(Real& s, Real& c, const Real& x) {
    mpfr_sin_cos(s.v_, c.v_, x.v_, MPFR_RNDN);
  }
  static Real atan2(const Real& y, const Real& x) {
    Real out(wider(y, x));
    mpfr_atan2(out.v_, y.v_, x.v_, MPFR_RNDN);
    return out;
  }
  static Real hypot(const Real& x, const Real& y, Rnd r = MPFR_RNDN) {
    Real out(wider(x, y));
    mpfr_hypot(out.v_, x.v_, y.v_, r);
    return out;
  }
  static Real fma(const Real& a, const Real& b, const Real& c, Rnd r = MPFR_RNDN) {
    Real out(std::max(wider(a, b), c.prec()));
    mpfr_fma(out.v_, a.v_, b.v_, c.v_, r);
    return out;
  }
  static Real min(const Real& a, const Real& b) { return a < b ? a : b; }
  static Real max(const Real& a, const Real& b) { return a < b ? b : a; }

 private:
  mpfr_t v_;
};

// Complex number over Real; re/im share a precision by construction.
class Complex {
 public:
  Real re, im;

  Complex() = default;
  explicit Complex(Prec prec) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(const Real& r) : re(r), im(Real(r.prec())) {}

  Prec prec() const { return std::max(re.prec(), im.prec()); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  Complex conj() const { return Complex(re, -im); }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  Complex operator-() const { return {-re, -im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  friend Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }
  Complex& operator+=(const Complex& b) { re += b.re; im += b.im; return *this; }
  Complex& operator-=(const Complex& b) { re -= b.re; im -= b.im; return *this; }
  Complex& operator*=(const Complex& b) { *this = *this * b; return *this; }

  Complex mul_i() const { return {-im, re}; }  // multiply by i

  Real abs(Rnd r = MPFR_RNDN) const { return Real::hypot(re, im, r); }
  Real arg() const { return Real::atan2(im, re); }
  Complex exp() const {  // e^(re) * (cos im + i sin im)
    Real m = re.exp();
    Real s(im.prec()), c(im.prec());
    Real::sin_cos(s, c, im);
    return {m * c, m * s};
  }
  Complex log() const { return {abs().log(), arg()}; }

  static Complex from_polar(const Real& r, const Real& theta) {
    Real s(theta.prec()), c(theta.prec());
    Real::sin_cos(s, c, theta);
    return {r * c, r * s};
  }
};

// -------- outward-rounded bound helpers (budgets, radii) --------

inline Real add_up(const Real& a, const Real& b) { return Real::add(a, b, MPFR_RNDU); }
inline Real sub_down(const Real& a, const Real& b) { return Real::sub(a, b, MPFR_RNDD); }
inline Real mul_up(const Real& a, const Real& b) { return Real::mul(a, b, MPFR_RNDU); }
inline Real div_up(const Real& a, const Real& b) { return Real::div(a, b, MPFR_RNDU); }

// Value with an outward error radius: represents [val - rad, val + rad].
struct Approx {
  Real val;
  Real rad;

  Approx() = default;
  explicit Approx(Prec prec) : val(prec), rad(prec) {}
  explicit Approx(Real v) : rad(v.prec()) { Real u = v.ulp(); val = std::move(v); rad = u; }
  Approx(Real v, Real r) : val(std::move(v)), rad(std::move(r)) {}
  static Approx exact(Real v) {
    Real zero(v.prec());
    return Approx(std::move(v), std::move(zero));
  }

  Real lo() const { return sub_down(val, rad); }
  Real hi() const { return add_up(val, rad); }
  Real abs_hi() const { return add_up(val.abs(), rad); }
  Real abs_lo() const {  // max(|val| - rad, 0)
    Real x = sub_down(val.abs(), rad);
    return x.sign() < 0 ? Real(val.prec()) : x;
  }

  friend Approx operator+(const Approx& a, const Approx& b) {
    Real v = a.val + b.val;
    Real r = add_up(add_up(a.rad, b.rad), v.ulp());
    return {std::move(v), std::move(r)};
  }
  friend Approx operator-(const Approx& a, const Approx& b) {
    Real v = a.val - b.val;
    Real r = add_up(add_up(a.rad, b.rad), v.ulp());
    return {std::move(v), std::move(r)};
  }
  Approx operator-() const { return {-val, rad}; }
  friend Approx operator*(const Approx& a, const Approx& b) {
    Real v = a.val * b.val;
    Real r = add_up(mul_up(a.val.abs(), b.rad),
                    add_up(mul_up(b.val.abs(), a.rad),
                           add_up(mul_up(a.rad, b.rad), v.ulp())));
    return {std::move(v), std::move(r)};
  }
  // scale by a quantity known to relative error ~ ulp (e.g. an mpfr constant)
  Approx scale(const Real& c) const {
    Real v = val * c;
    Real r = add_up(mul_up(rad, c.abs()), v.ulp().mul2si(2));
    return {std::move(v), std::move(r)};
  }
};

// Complex value with a disk radius.
struct CApprox {
  Complex val;
  Real rad;

  CApprox() = default;
  explicit CApprox(Prec prec) : val(prec), rad(prec) {}
  CApprox(Complex v, Real r) : val(std::move(v)), rad(std::move(r)) {}

  Real abs_hi() const { return add_up(val.abs(MPFR_RNDU), rad); }

  friend CApprox operator+(const CApprox& a, const CApprox& b) {
    Complex v = a.val + b.val;
    Real u = add_up(v.re.ulp(), v.im.ulp());
    return {std::move(v), add_up(add_up(a.rad, b.rad), u)};
  }
  friend CApprox operator-(const CApprox& a, const CApprox& b) {
    Complex v = a.val - b.val;
    Real u = add_up(v.re.ulp(), v.im.ulp());
    return {std::move(v), add_up(add_up(a.rad, b.rad), u)};
  }
  friend CApprox operator*(const CApprox& a, const CApprox& b) {
    Complex v = a.val * b.val;
    Real aa = a.val.abs(MPFR_RNDU), bb = b.val.abs(MPFR_RNDU);
    Real r = add_up(mul_up(aa, b.rad), add_up(mul_up(bb, a.rad), mul_up(a.rad, b.rad)));
    r = add_up(r, add_up(v.re.ulp(), v.im.ulp()).mul2si(2));
    return {std::move(v), std::move(r)};
  }
};

// digits = ceil(bits * 0.302)
inline size_t decimal_digits(Prec bits) {
  long d = (static_cast<long>(bits) * 302 + 999) / 1000;
  return static_cast<size_t>(std::max<long>(8, d));
}

}  // namespace symrh
