#include "doctest.h"
#include "symrh/hpgamma.hpp"

using namespace symrh;

namespace {
Real tol(long e) { return Real::pow2(e, 96); }
}

TEST_CASE("bernoulli numbers") {
  const auto& b = bernoulli_even(5);
  REQUIRE(b.size() >= 5);
  CHECK(b[0] == mpq_class(1, 6));
  CHECK(b[1] == mpq_class(-1, 30));
  CHECK(b[2] == mpq_class(1, 42));
  CHECK(b[3] == mpq_class(-1, 30));
  CHECK(b[4] == mpq_class(5, 66));
}

TEST_CASE("gamma at integers and half-integers") {
  Prec p = 192;
  Complex one(Real(1, p));
  CHECK((gamma_complex(one, p) - Complex(Real(1, p))).abs() <= tol(-180));
  Complex eight(Real(8, p));  // Gamma(8) = 7! = 5040
  CHECK((gamma_complex(eight, p) - Complex(Real(5040, p))).abs() <=
        tol(-160));
  Complex half(Real(1, p).mul2si(-1));
  Real sqrtpi = Real::pi(p).sqrt();
  CHECK((gamma_complex(half, p).re - sqrtpi).abs() <= tol(-180));
  CHECK(gamma_complex(half, p).im.abs() <= tol(-180));
}

TEST_CASE("recurrence and conjugation off the real axis") {
  Prec p = 192;
  Complex z(Real(3, p).mul2si(-1), Real(2, p));  // 1.5 + 2i
  Complex g1 = gamma_complex(z + Complex(Real(1, p)), p);
  Complex g0 = gamma_complex(z, p);
  CHECK((g1 - z * g0).abs() <= g1.abs() * tol(-150));
  Complex gc = gamma_complex(z.conj(), p);
  CHECK((gc - g0.conj()).abs() <= g0.abs() * tol(-150));
}

TEST_CASE("lgamma exponentiates back to gamma") {
  Prec p = 160;
  Complex z(Real(5, p), Real(-3, p));
  Complex lg = lgamma_complex(z, p);
  Complex g = gamma_complex(z, p);
  Complex back = lg.exp();
  CHECK((back - g).abs() <= g.abs() * tol(-140));
}

TEST_CASE("matches the real-axis gamma") {
  Prec p = 160;
  for (long n : {1L, 2L, 5L, 11L}) {
    Real x = Real(2 * n + 1, p).mul2si(-1);  // n + 1/2
    Real direct = x.gamma();
    Complex viaC = gamma_complex(Complex(x), p);
    CHECK((viaC.re - direct).abs() <= direct.abs() * tol(-140));
  }
}

TEST_CASE("abs_gamma_upper dominates the truth") {
  Prec p = 160;
  for (double xd : {0.5, 1.0, 2.5, 7.0}) {
    for (double yd : {0.0, 0.5, 3.0, 12.0}) {
      Real x = Real::of_double(xd, p), y = Real::of_double(yd, p);
      Real ub = abs_gamma_upper(x, y);
      Real truth = gamma_complex(Complex(x, y), p).abs();
      CHECK(truth <= ub);
      // and it is not absurdly loose on the real axis
      if (yd == 0.0) CHECK(ub <= truth * Real(2, p));
    }
  }
}
