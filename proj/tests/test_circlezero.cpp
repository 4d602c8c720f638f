#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "symrh/circlezero.hpp"
#include "symrh/formsrc.hpp"
#include "symrh/lvalues.hpp"
#include "symrh/perpoly.hpp"
#include "symrh/symcoef.hpp"

using namespace symrh;

namespace {

ComplexPolynomial from_roots(const std::vector<Complex>& roots, Prec prec) {
  ComplexPolynomial p;
  p.name = "planted";
  p.c = oracle::poly_from_roots(roots, prec);
  return p;
}

RealPolynomial real_poly(std::initializer_list<double> coeffs, Prec prec) {
  RealPolynomial p;
  p.name = "literal";
  for (double d : coeffs)
    p.c.push_back(Approx::exact(Real::of_double(d, prec)));
  return p;
}

Complex cx(double x, double y, Prec prec) {
  return Complex(Real::of_double(x, prec), Real::of_double(y, prec));
}

}  // namespace

TEST_CASE("planted roots are recovered with certified radii") {
  const Prec prec = 128;
  std::vector<Complex> roots{
      cx(0.4, 0.2, prec),
      cx(-0.3, 0.5, prec),
      cx(0.1, -0.6, prec),
      cx(1.2, -0.1, prec),
      Complex::from_polar(Real(1, prec), Real::of_double(0.3, prec)),
      Complex::from_polar(Real(1, prec), Real::of_double(2.1, prec)),
      Complex::from_polar(Real(1, prec), Real::of_double(-1.4, prec)),
  };
  ComplexPolynomial p = from_roots(roots, prec);
  std::vector<RootBox> boxes = find_roots(p, prec);
  REQUIRE(boxes.size() == roots.size());
  for (const RootBox& b : boxes) CHECK(b.radius_ok);
  for (const Complex& r : roots) {
    bool found = false;
    for (const RootBox& b : boxes)
      if ((b.rho - r).abs() <= add_up(b.radius, Real::pow2(-90, 96)))
        found = true;
    CHECK(found);
  }
}

TEST_CASE("origin zeros split off exactly") {
  const Prec prec = 128;
  RealPolynomial p = real_poly({0.0, 0.0, -0.5, 1.0}, prec);  // z^2 (z - 1/2)
  std::vector<RootBox> boxes = find_roots(p, prec);
  REQUIRE(boxes.size() == 3);
  size_t at_origin = 0;
  bool half_found = false;
  for (const RootBox& b : boxes) {
    if (b.rho.abs().is_zero()) {
      at_origin++;
      CHECK(b.radius.is_zero());
      CHECK(b.radius_ok);
    } else if ((b.rho - Complex(Real::of_double(0.5, prec))).abs() <=
               add_up(b.radius, Real::pow2(-90, 96))) {
      half_found = b.radius_ok;
    }
  }
  CHECK(at_origin == 2);
  CHECK(half_found);
}

TEST_CASE("self-inversive detection") {
  const Prec prec = 128;
  std::vector<Complex> on_circle{
      Complex::from_polar(Real(1, prec), Real::of_double(0.7, prec)),
      Complex::from_polar(Real(1, prec), Real::of_double(-2.3, prec)),
      Complex::from_polar(Real(1, prec), Real::of_double(1.9, prec)),
  };
  ComplexPolynomial p = from_roots(on_circle, prec);
  Complex kappa;
  REQUIRE(self_inversive_multiplier(p, kappa));
  CHECK((kappa.abs() - Real(1, prec)).abs() <= Real::pow2(-100, 96));
  // the defining relation conj(c_{d-j}) = kappa c_j
  for (size_t j = 0; j < p.c.size(); j++) {
    Complex resid = p.c[p.c.size() - 1 - j].val.conj() - kappa * p.c[j].val;
    CHECK(resid.abs() <= Real::pow2(-100, 96));
  }

  ComplexPolynomial q = from_roots({cx(0.5, 0.0, prec), cx(0.2, 0.3, prec)}, prec);
  Complex k2;
  CHECK(!self_inversive_multiplier(q, k2));
  CHECK_THROWS_AS(certify_on_circle(q, prec), error);
}

TEST_CASE("palindromic with off-circle roots is refused") {
  const Prec prec = 128;
  RealPolynomial p = real_poly({1.0, -2.5, 1.0}, prec);  // (z - 1/2)(z - 2)
  ZeroCertificate cert = certify_on_circle(p, prec);
  CHECK(cert.circle == CircleVerdict::failed);
  CHECK(cert.sign_changes < 2);
  CHECK(Real::of_double(0.25, 96) < cert.max_circle_deviation);
}

TEST_CASE("degree-10 period polynomial certifies on the circle") {
  NewformData f = builtin_newform(12, 64);
  SymPowerCoefficients c = sym_coeffs(f, 1, 64, 128);
  PeriodPolynomialBundle b = build_bundle(critical_values(c, 128));
  ZeroCertificate cert = certify_on_circle(b.P, 128);
  CHECK(cert.circle == CircleVerdict::certified);
  CHECK(cert.sign_changes == 10);
  CHECK(cert.degree == 10);
  CHECK(cert.deviation_rigorous);
  CHECK(cert.max_circle_deviation_hi <= Real::of_double(1e-10, 96));
  REQUIRE(cert.roots.size() == 10);
  for (const RootBox& rb : cert.roots) {
    CHECK(rb.radius_ok);
    CHECK(rb.modulus_lo() <= Real(1, 96));
    CHECK(Real(1, 96) <= rb.modulus_hi());
  }
}

TEST_CASE("disk verdicts") {
  const Prec prec = 128;
  RealPolynomial inside = real_poly({-0.15, -0.2, 1.0}, prec);
  CHECK(certify_in_disk(inside, prec) == DiskVerdict::all_inside);

  RealPolynomial outside = real_poly({0.3, -1.7, 1.0}, prec);
  CHECK(certify_in_disk(outside, prec) == DiskVerdict::not_all_inside);

  RealPolynomial boundary = real_poly({0.5, -1.5, 1.0}, prec);
  CHECK(certify_in_disk(boundary, prec) != DiskVerdict::all_inside);
  CHECK(certify_in_disk(boundary, prec, true) == DiskVerdict::all_inside);
}

TEST_CASE("dominance margin on the circle") {
  RealPolynomial H, M;
  build_H_M(3, 20, 1, 128, H, M);
  Real margin = rouche_margin(H, M, 2048, 128);
  CHECK(Real(0, 96) < margin);
  CHECK(certify_in_disk(H, 128) == DiskVerdict::all_inside);

  RealPolynomial H1, M1;
  build_H_M(1, 12, 1, 128, H1, M1);
  CHECK(rouche_margin(H1, M1, 256, 128) < Real(0, 96));

  CHECK_THROWS_AS(rouche_margin(H, M, 32, 128), error);
}

TEST_CASE("interlaced constructions certify on the circle") {
  const Prec prec = 128;
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < 20; t++) {
    size_t nh = 1 + size_t(rng() % 4);
    std::vector<Complex> rts;
    for (size_t i = 0; i < nh; i++) {
      double r = 0.9 * std::sqrt(unif(rng));
      double th = 6.283185307179586 * unif(rng);
      rts.push_back(Complex::from_polar(Real::of_double(r, prec),
                                        Real::of_double(th, prec)));
    }
    ComplexPolynomial h = from_roots(rts, prec);
    size_t d = nh + size_t(rng() % 7);
    Complex lambda = Complex::from_polar(
        Real(1, prec),
        Real::of_double(unif(rng), prec) * Real::pi(prec).mul2si(1));
    ComplexPolynomial p = lalin_smyth_construct(h, d, lambda, prec);
    ZeroCertificate cert = certify_on_circle(p, prec);
    CHECK(cert.degree == d);
    CHECK(cert.circle == CircleVerdict::certified);
    CHECK(cert.sign_changes == d);
  }

  ComplexPolynomial bad = from_roots({cx(1.5, 0.0, prec)}, prec);
  CHECK_THROWS_AS(
      lalin_smyth_construct(bad, 3, Complex(Real(1, prec)), prec), error);
  ComplexPolynomial ok = from_roots({cx(0.5, 0.0, prec)}, prec);
  CHECK_THROWS_AS(lalin_smyth_construct(ok, 0, Complex(Real(1, prec)), prec),
                  error);
  CHECK_THROWS_AS(lalin_smyth_construct(ok, 2, Complex(Real(2, prec)), prec),
                  error);
}
