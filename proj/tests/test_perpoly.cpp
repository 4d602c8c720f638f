#include <algorithm>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "symrh/formsrc.hpp"
#include "symrh/lvalues.hpp"
#include "symrh/perpoly.hpp"
#include "symrh/symcoef.hpp"

using namespace symrh;

namespace {

PeriodPolynomialBundle make_bundle(unsigned m, unsigned k, Prec prec,
                                   unsigned long min_x = 0) {
  unsigned long X = std::max(required_cutoff(m, k, 1, prec), min_x);
  NewformData f = builtin_newform(k, X);
  SymPowerCoefficients c = sym_coeffs(f, m, X, prec);
  return build_bundle(critical_values(c, prec));
}

Real factorial_real(unsigned long n, Prec prec) {
  mpz_class f = 1;
  for (unsigned long i = 2; i <= n; i++) f *= i;
  return Real(f, prec);
}

}  // namespace

TEST_CASE("bundle assembly, decomposition and palindromy") {
  for (unsigned m : {1u, 2u, 3u}) {
    CAPTURE(m);
    PeriodPolynomialBundle b = make_bundle(m, 12, 128);
    CHECK(b.m == m);
    CHECK(b.odd_m == (m % 2 == 1));
    CHECK(b.decomposition.pass);
    CHECK(b.decomposition.worst_residual <= b.decomposition.worst_allowed);
    CHECK(b.R.degree() == size_t(b.D()));
    CHECK(b.P.degree() == size_t(b.D()));
    CHECK(b.P.degree_certain());
    long half = b.odd_m ? (b.w() - 1) / 2 : (b.w() - 2) / 2;
    CHECK(b.Q.degree() == size_t(half));
    CHECK(palindrome_check(b.P, b.epsilon).pass);
    if (b.odd_m) {
      CHECK(b.H.degree() == size_t((b.w() - 1) / 2));
      CHECK(b.M.c.size() == b.H.c.size());
    } else {
      CHECK(b.M.c.empty());
    }
  }
}

TEST_CASE("degree-10 coefficients match the incomplete-gamma oracle") {
  PeriodPolynomialBundle b = make_bundle(1, 12, 128, 640);
  REQUIRE(b.epsilon == 1);
  REQUIRE(b.P.c.size() == 11);
  NewformData f = builtin_newform(12, 640);

  // coefficient n is eps * norm * binom(10, n) * completed(11 - n)
  Real norm_ref = Real::pow(Real(2, 192) * Real::pi(192), Real(11, 192)) /
                  factorial_real(10, 192);
  const long binom10[11] = {1, 10, 45, 120, 210, 252, 210, 120, 45, 10, 1};
  for (size_t n : {size_t(0), size_t(3), size_t(5), size_t(10)}) {
    Real lam = oracle::completed_value_m1(f, 11 - long(n), 192);
    Real expect = norm_ref * Real(binom10[n], 192) * lam;
    Real slack = add_up(expect.abs() * Real::pow2(-100, 96),
                        Real::pow2(-120, 96));
    CHECK((b.P.c[n].val - expect).abs() <= add_up(b.P.c[n].rad, slack));
  }

  // rotated coefficients alternate between pure real and pure imaginary
  for (size_t n = 0; n <= 10; n++) {
    if (n % 2 == 1)
      CHECK(b.R.c[n].val.im.is_zero());
    else
      CHECK(b.R.c[n].val.re.is_zero());
  }

  // half-polynomial split: P_{5+j} = Q_j for j >= 1, P_5 = 2 Q_0
  REQUIRE(b.Q.c.size() == 6);
  for (size_t j = 1; j <= 5; j++) {
    CHECK((b.P.c[5 + j].val - b.Q.c[j].val).abs() <=
          add_up(b.P.c[5 + j].rad, b.Q.c[j].rad));
  }
  CHECK((b.P.c[5].val - b.Q.c[0].val.mul2si(1)).abs() <=
        add_up(b.P.c[5].rad, b.Q.c[0].rad.mul2si(1)));

  // a flipped sign cannot sneak through the palindrome check
  CHECK_THROWS_AS(palindrome_check(b.P, -1), error);
}

TEST_CASE("gamma-ratio polynomial closed form at m = 1") {
  RealPolynomial H, M;
  build_H_M(1, 12, 1, 128, H, M);
  REQUIRE(H.c.size() == 6);
  REQUIRE(M.c.size() == 6);
  Real twopi = Real(2, 192) * Real::pi(192);
  for (unsigned n = 0; n <= 5; n++) {
    // coefficient of z^{5-n} is (2pi)^n / n!, boundary term halved
    Real expect = Real::pow(twopi, Real(long(n), 192)) / factorial_real(n, 192);
    if (n == 5) expect = expect.mul2si(-1);
    CHECK((H.c[5 - n].val - expect).abs() <=
          add_up(H.c[5 - n].rad, expect * Real::pow2(-118, 96)));
  }
  CHECK((M.c[5].val - H.c[5].val).is_zero());
  CHECK((M.c[4].val - H.c[4].val).is_zero());
  for (unsigned j = 0; j <= 3; j++) CHECK(M.c[j].val.is_zero());
  // M vanishes at -c4/c5, the rounding of -2pi its coefficients carry
  CHECK((M.c[5].val - Real(1, 128)).is_zero());
  Approx at = M.eval_real(-M.c[4].val);
  CHECK(at.val.abs() <= at.rad);
}

TEST_CASE("gamma-ratio polynomial shapes away from the base case") {
  RealPolynomial H, M;
  build_H_M(3, 20, 2, 128, H, M);
  REQUIRE(H.c.size() == 29);  // (w - 1)/2 = 28
  REQUIRE(M.c.size() == 29);
  CHECK(H.degree_certain());
  CHECK((M.c[28].val - H.c[28].val).is_zero());
  CHECK((M.c[27].val - H.c[27].val).is_zero());
  for (unsigned j = 0; j <= 26; j++) CHECK(M.c[j].val.is_zero());

  RealPolynomial ha = build_h(2, 12, 1, 128);
  RealPolynomial hb = build_h(2, 12, 5, 128);
  REQUIRE(ha.c.size() == hb.c.size());
  for (size_t j = 0; j < ha.c.size(); j++) {
    CHECK((ha.c[j].val - hb.c[j].val).is_zero());
    CHECK((ha.c[j].rad - hb.c[j].rad).is_zero());
  }
}

TEST_CASE("normalizer closed forms") {
  Real twopi = Real(2, 192) * Real::pi(192);
  Approx n1 = normalizer_constant(1, 12, 1, 128);
  Real e1 = Real::pow(twopi, Real(11, 192)) / factorial_real(10, 192);
  CHECK((n1.val - e1).abs() <= add_up(n1.rad, e1 * Real::pow2(-118, 96)));

  Approx n5 = normalizer_constant(1, 12, 5, 128);
  Real e5 = e1 * Real::pow(Real(5, 192), Real(-13, 192).mul2si(-1));
  CHECK((n5.val - e5).abs() <= add_up(n5.rad, e5 * Real::pow2(-118, 96)));

  Approx n2 = normalizer_constant(2, 12, 1, 128);
  Real e2 = Real::pow(twopi, Real(22, 192)) / factorial_real(21, 192) *
            Real::pow(Real::pi(192), Real(11, 192)) / Real(120, 192);
  CHECK((n2.val - e2).abs() <= add_up(n2.rad, e2 * Real::pow2(-118, 96)));
}

TEST_CASE("incomplete critical data is rejected") {
  NewformData f = builtin_newform(12, 64);
  SymPowerCoefficients c = sym_coeffs(f, 1, 64, 128);
  CriticalValues cv = critical_values(c, 128);
  cv.vals.resize(5);
  CHECK_THROWS_AS(build_R(cv), error);
}

TEST_CASE("exact binomials and signed complex powers") {
  CHECK(binomial_exact(0, 0) == 1);
  CHECK(binomial_exact(7, 0) == 1);
  CHECK(binomial_exact(7, 7) == 1);
  CHECK(binomial_exact(10, 5) == 252);
  CHECK(binomial_exact(52, 5) == 2598960);
  CHECK(binomial_exact(5, 9) == 0);
  CHECK(binomial_exact(12, 4) == binomial_exact(11, 3) + binomial_exact(11, 4));

  Complex z(Real::of_double(0.5, 128), Real::of_double(-0.25, 128));
  CApprox z3 = cpow_si(z, 3);
  Complex truth = z * z * z;
  CHECK((z3.val - truth).abs() <= add_up(z3.rad, Real::pow2(-118, 96)));
  CApprox zm2 = cpow_si(z, -2);
  CApprox z2 = cpow_si(z, 2);
  Complex round = zm2.val * z2.val;
  CHECK((round - Complex(Real(1, 128))).abs() <= Real::pow2(-100, 96));
}
