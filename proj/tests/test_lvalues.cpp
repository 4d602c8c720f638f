#include <mpfr.h>

#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "symrh/formsrc.hpp"
#include "symrh/lvalues.hpp"
#include "symrh/symcoef.hpp"

using namespace symrh;

namespace {

Real incomplete_gamma(long a, const Real& x, Prec prec) {
  Real g(prec), aa(a, prec);
  mpfr_gamma_inc(g.get(), aa.get(), x.get(), MPFR_RNDN);
  return g;
}

}  // namespace

TEST_CASE("gamma factor spec layout") {
  for (unsigned m = 1; m <= 5; m++) {
    GammaFactorSpec g = make_gamma_spec(m, 12);
    CHECK(g.m == m);
    CHECK(g.k == 12);
    CHECK(g.r == (m + 1) / 2);
    CHECK(g.half == (m % 2 == 0));
    CHECK(g.w() == long(m) * 11);
    REQUIRE(g.shifts.size() == g.r);
    for (unsigned j = 0; j < g.r; j++) CHECK(g.shifts[j] == long(j) * 11);
    if (g.half) CHECK(g.hq == long(g.r) * 11 / 2);
  }
}

TEST_CASE("gamma factor values and poles") {
  GammaFactorSpec g1 = make_gamma_spec(1, 12);
  CHECK(gamma_is_pole(g1, 0));
  CHECK(gamma_is_pole(g1, -3));
  CHECK(!gamma_is_pole(g1, 1));
  CHECK_THROWS_AS(gamma_factor(g1, 0, 128), error);

  // (2pi)^{-1} Gamma(1)
  Real v1 = gamma_factor(g1, 1, 128);
  Real ref1 = Real(1, 192) / (Real(2, 192) * Real::pi(192));
  CHECK((v1 - ref1).abs() <= ref1 * Real::pow2(-120, 96));

  GammaFactorSpec g2 = make_gamma_spec(2, 12);
  CHECK(gamma_is_pole(g2, 10));   // Gamma(s/2 - 5) at s = 10
  CHECK(!gamma_is_pole(g2, 9));   // Gamma(-1/2) is finite
  CHECK(!gamma_is_pole(g2, 11));
  // pi^{-6} Gamma(1) (2pi)^{-12} Gamma(12) at s = 12
  Real pi = Real::pi(192);
  Real v2 = gamma_factor(g2, 12, 128);
  Real ref2 = Real::pow(pi, Real(-6, 192)) *
              Real::pow(Real(2, 192) * pi, Real(-12, 192)) *
              Real(39916800, 192);
  CHECK((v2 - ref2).abs() <= ref2.abs() * Real::pow2(-118, 96));

  CHECK(Real(0, 96) < gamma_scale(g1, 0, 1, 128));  // nudged off the pole
  CHECK(Real(0, 96) < gamma_scale(g2, 12, 3, 128));
}

TEST_CASE("inverse Mellin smoothing matches the incomplete gamma") {
  // for m = 1 the contour integral collapses to (2pi)^{-s} Gamma(s, 2pi t)
  GammaFactorSpec g1 = make_gamma_spec(1, 12);
  Real twopi = Real(2, 192) * Real::pi(192);
  for (long s : {6L, 11L}) {
    for (double td : {0.5, 2.0, 7.0}) {
      Real t = Real::of_double(td, 192);
      GValue gv = inverse_mellin_G(g1, s, t, 128);
      CHECK(!(gv.abs_err < Real(0, 96)));
      Real truth =
          incomplete_gamma(s, twopi * t, 192) / Real::pow(twopi, Real(s, 192));
      Real slack = truth.abs() * Real::pow2(-150, 96) + Real::pow2(-170, 96);
      CHECK((gv.value - truth).abs() <= add_up(gv.abs_err, slack));
    }
  }
}

TEST_CASE("functional-equation sign by formula and by probe") {
  CHECK(epsilon_m1_formula(builtin_newform(12, 16)) == 1);
  CHECK(epsilon_m1_formula(builtin_newform(16, 16)) == 1);
  CHECK(epsilon_m1_formula(builtin_newform(18, 16)) == -1);

  NewformData e2 = oracle::eta_newform(2, 256);
  NewformData e3 = oracle::eta_newform(3, 256);
  NewformData e5 = oracle::eta_newform(5, 256);
  int s2 = epsilon_m1_formula(e2);
  int s3 = epsilon_m1_formula(e3);
  int s5 = epsilon_m1_formula(e5);
  CHECK(s2 == 1);
  CHECK((s3 == 1 || s3 == -1));
  CHECK((s5 == 1 || s5 == -1));

  // the smoothing-stability probe must land on the same sign
  SymPowerCoefficients c = sym_coeffs(e2, 1, 256, 128);
  CHECK(determine_epsilon(c, 128) == s2);
}

TEST_CASE("m = 1 completed values match the incomplete-gamma oracle") {
  NewformData f = builtin_newform(12, 640);
  SymPowerCoefficients c = sym_coeffs(f, 1, 640, 128);
  CriticalValues cv = critical_values(c, 128);
  CHECK(cv.epsilon == 1);
  CHECK(cv.w() == 11);
  REQUIRE(cv.vals.size() == 11);

  unsigned n_reflect = 0, pairing_seen = 0;
  for (const CriticalValue& v : cv.vals) {
    Real o = oracle::completed_value_m1(f, v.s, 192);
    Real allowed = add_up(v.budget.total(), Real::pow2(-120, 96));
    CHECK((v.value - o).abs() <= allowed);
    CHECK(!(v.budget.total() < Real(0, 96)));
    if (v.strategy == Strategy::reflect) n_reflect++;
    if (v.pairing_checked) {
      pairing_seen++;
      CHECK(v.pairing_residual <= v.pairing_allowed);
    }
  }
  // lower half s = 1..5 mirrors the upper half; the center s = 6 cannot
  CHECK(n_reflect == 5);
  CHECK(cv.by_s(6).strategy != Strategy::reflect);
  CHECK(pairing_seen >= 1);

  // symmetry across s <-> w + 1 - s within summed budgets
  for (long s = 1; s <= 11; s++) {
    const CriticalValue& a = cv.by_s(s);
    const CriticalValue& b = cv.by_s(12 - s);
    Real resid = (a.value - Real(cv.epsilon, 128) * b.value).abs();
    CHECK(resid <= add_up(a.budget.total(), b.budget.total()));
  }
  CHECK_THROWS_AS(cv.by_s(0), error);
  CHECK_THROWS_AS(cv.by_s(12), error);
}

TEST_CASE("epsilon override is honored") {
  NewformData f = builtin_newform(12, 64);
  SymPowerCoefficients c = sym_coeffs(f, 1, 64, 128);
  CriticalValues cv = critical_values(c, 128, -1, false);
  CHECK(cv.epsilon == -1);
  REQUIRE(cv.vals.size() == 11);
  const CriticalValue& a = cv.by_s(1);
  const CriticalValue& b = cv.by_s(11);
  CHECK(a.strategy == Strategy::reflect);
  CHECK((a.value + b.value).is_zero());  // reflected copy carries the sign

  CriticalValues cvp = critical_values(c, 128, 1, false);
  CHECK(cvp.epsilon == 1);
  CHECK((cvp.by_s(1).value - cvp.by_s(11).value).is_zero());
}

TEST_CASE("|L - 1| bound holds at admissible sample points") {
  NewformData f = builtin_newform(12, 4096);
  for (unsigned m : {2u, 3u}) {
    SymPowerCoefficients c = sym_coeffs(f, m, 4096, 128);
    long s0 = (long(m + 1) * 11 + 1) / 2;
    LemmaBoundsReport rep = check_lemma_bounds(c, {s0, s0 + 2, s0 + 7});
    CHECK(rep.failures == 0);
    REQUIRE(rep.entries.size() == 3);
    Real expect = Real(13, 96) / Real(9, 96) *
                  Real::pow(Real(2, 96), Real(2L * m - 11, 96).mul2si(-1));
    for (const LemmaBoundEntry& e : rep.entries) {
      CHECK(e.checked);
      CHECK(e.pass);
      CHECK(e.lhs < e.bound);
      CHECK((e.bound - expect).abs() <= expect * Real::pow2(-80, 96));
      CHECK(Real(0, 96) < e.convexity_ratio);
    }
  }
}

TEST_CASE("bound check declines outside its hypotheses") {
  NewformData f = builtin_newform(12, 512);
  SymPowerCoefficients c = sym_coeffs(f, 2, 512, 128);
  LemmaBoundsReport rep = check_lemma_bounds(c, {12, 17});
  REQUIRE(rep.entries.size() == 2);
  CHECK(!rep.entries[0].checked);  // sigma = 1: not absolutely convergent
  CHECK(!rep.entries[0].note.empty());
  CHECK(rep.entries[1].checked);
  CHECK(rep.entries[1].pass);
  CHECK(rep.failures == 0);

  // weight below the admissible range is reported, never asserted
  NewformData e5 = oracle::eta_newform(5, 512);
  SymPowerCoefficients c5 = sym_coeffs(e5, 2, 512, 128);
  LemmaBoundsReport rep5 = check_lemma_bounds(c5, {6});
  REQUIRE(rep5.entries.size() == 1);
  CHECK(!rep5.entries[0].checked);
  CHECK(!rep5.entries[0].note.empty());
  CHECK(rep5.failures == 0);
}

TEST_CASE("insufficient coefficient data is rejected") {
  NewformData f = builtin_newform(12, 8);
  SymPowerCoefficients c = sym_coeffs(f, 1, 8, 128);
  bool threw = false;
  try {
    critical_values(c, 128);
  } catch (const error& e) {
    threw = true;
    CHECK(std::string(e.what()).find("coefficient data too short") !=
          std::string::npos);
  }
  CHECK(threw);
}
