#include <cmath>

#include "doctest.h"
#include "symrh/hp.hpp"

using namespace symrh;

TEST_CASE("exact real operations") {
  Real a(3, 128);
  CHECK(a.mul2si(-1).to_double() == 1.5);
  CHECK(Real::pow2(-7, 64).to_double() == 1.0 / 128);
  CHECK(Real(mpz_class("123456789123456789"), 128).to_string(18) ==
        Real::from_string("123456789123456789", 128).to_string(18));
  Real z(64);
  CHECK(z.is_zero());
  CHECK(Real(-5, 64).sign() == -1);
}

TEST_CASE("directed rounding brackets the exact result") {
  Real a = Real(1, 96) / Real(3, 96);
  Real b = Real(1, 96) / Real(7, 96);
  Real lo = sub_down(a, -b);  // a + b rounded down
  Real hi = add_up(a, b);
  Real mid = a + b;
  CHECK(lo <= mid);
  CHECK(mid <= hi);
  CHECK(hi - lo <= mid.ulp().mul2si(2));
  CHECK(mul_up(a, b) >= a * b);
  CHECK(div_up(a, b) >= a / b);
}

TEST_CASE("string round trip at the printed digit count") {
  Real x = Real(1, 256).exp();  // e
  std::string s = x.to_string(decimal_digits(256));
  Real y = Real::from_string(s, 256);
  CHECK((x - y).abs() <= x.ulp().mul2si(4));
}

TEST_CASE("complex primitives") {
  Prec p = 128;
  Complex i(Real(0, p), Real(1, p));
  Complex z(Real(3, p), Real(-2, p));
  Complex w = z.mul_i();
  CHECK((w - i * z).abs().is_zero());
  CHECK((z * z.conj()).im.is_zero());
  CHECK((z * z.conj()).re.to_double() == 13.0);
  Real s(p), c(p);
  Real::sin_cos(s, c, Real(1, p));
  CHECK((s * s + c * c - Real(1, p)).abs() <= Real::pow2(-120, 96));
  Complex e = Complex::from_polar(Real(2, p), Real::pi(p).mul2si(-1));
  CHECK(e.re.abs() <= Real::pow2(-120, 96));
  CHECK((e.im - Real(2, p)).abs() <= Real::pow2(-120, 96));
}

TEST_CASE("interval boxes stay outward") {
  Prec p = 96;
  Approx a(Real(1, p) / Real(3, p));  // ulp radius
  CHECK(a.rad > Real(0, p));
  Approx b = a * a;
  // enclosure: (1/3)^2 must lie inside b
  Real ninth = Real(1, 2 * p) / Real(9, 2 * p);
  CHECK((b.val - ninth).abs() <= b.rad);
  Approx c = a - a;
  CHECK(c.val.is_zero());
  CHECK((Real(1, p) / Real(3, p) - Real(1, p) / Real(3, p)).is_zero());
  CHECK(a.abs_hi() >= a.abs_lo());
  CHECK(Approx(Real(5, p), Real(7, p)).abs_lo().is_zero());

  CApprox ca(Complex(Real(1, p), Real(1, p)), Real::pow2(-40, 96));
  CApprox cb = ca * ca;
  CHECK(cb.val.re.abs() <= cb.rad);  // (1+i)^2 = 2i
  CHECK(cb.rad <= Real::pow2(-36, 96));
}

TEST_CASE("exponent and ulp scale with the value") {
  Real x = Real(1536, 64);  // 3 * 2^9 = 0.75 * 2^11
  CHECK(x.exponent() == 11);
  CHECK(x.ulp().to_double() == std::pow(2.0, -52));
  CHECK(Real(0, 64).ulp().is_zero());
}
