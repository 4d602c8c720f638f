#pragma once

#include <string>
#include <vector>

#include "symrh/hp.hpp"
#include "symrh/lvalues.hpp"

namespace symrh {

// Polynomial with real coefficients, each carrying an outward error radius.
// Index equals the power of z.
struct RealPolynomial {
  std::string name;
  std::vector<Approx> c;

  size_t degree() const { return c.empty() ? 0 : c.size() - 1; }
  // The degree is certain only when the leading radius is below the
  // leading magnitude.
  bool degree_certain() const {
    return !c.empty() && !c.back().val.is_zero() &&
           c.back().rad < c.back().val.abs();
  }
  Approx eval_real(const Real& x) const;
  CApprox eval(const Complex& z) const;    // z treated as exact
  Complex eval_mid(const Complex& z) const;  // midpoints only, no radii
  Real norm1_hi() const;        // sum_j (|c_j| + rad_j), rounded up
  Real deriv_norm1_hi() const;  // sum_j j (|c_j| + rad_j), rounded up
};

struct ComplexPolynomial {
  std::string name;
  std::vector<CApprox> c;

  size_t degree() const { return c.empty() ? 0 : c.size() - 1; }
  CApprox eval(const Complex& z) const;
  Complex eval_mid(const Complex& z) const;
};

ComplexPolynomial to_complex(const RealPolynomial& p);

// z^e with a rounding radius; e may be negative (z != 0).
CApprox cpow_si(const Complex& z, long e);

struct DecompositionReport {
  size_t worst_index = 0;
  Real worst_residual{96};
  Real worst_allowed{96};
  bool pass = true;
};

// R, the rotated real-coefficient polynomial P (p for even m), the half
// polynomial Q (q), the gamma-ratio comparison polynomials H (h) and M
// (odd m only), and the normalizer that ties them together.
struct PeriodPolynomialBundle {
  unsigned m = 1;
  unsigned k = 12;
  unsigned long level = 1;
  std::string label;
  int epsilon = 1;
  bool odd_m = true;
  Prec prec = 128;
  ComplexPolynomial R;
  Approx normalizer;  // C (odd m) or c (even m)
  RealPolynomial P;
  RealPolynomial Q;
  RealPolynomial H;
  RealPolynomial M;  // odd branch only, the two top terms of H
  DecompositionReport decomposition;

  long w() const { return long(m) * (k - 1); }
  long D() const { return w() - 1; }
};

// Coefficient of z^n is i^w N^{-w/2} binom(w-1, n) (sqrt(N) i)^n L*(w-n),
// so each coefficient is exactly real or exactly imaginary.
ComplexPolynomial build_R(const CriticalValues& cvs);

// (2pi)^{rw} ((w-1)!)^{-1} (prod_{j=1}^{r-1} Gamma((m-j)(k-1)))^{-1}
// N^{-m^2(k-1)/2 - 1}, times pi^{w/2} Gamma(w/2 - floor(r(k-1)/2))^{-1}
// for even m.
Approx normalizer_constant(unsigned m, unsigned k, unsigned long N, Prec prec);

// norm * R(z / (i sqrt N)), rescaled by the global unimodular-and-positive
// constant eps i^{-w} N^{w/2} that makes the coefficients real and the
// half-polynomial decomposition exact.  Any imaginary residue is checked
// against the radii, stripped, and charged to the error bound.
RealPolynomial build_P(const CriticalValues& cvs, const ComplexPolynomial& R,
                       const Approx& norm);

// Odd m: half-weight middle term plus full terms n < (w-1)/2; even m: full
// terms n = 0..(w-2)/2 with no halving.
RealPolynomial build_Q(const CriticalValues& cvs, const Approx& norm);

// Coefficientwise check of P(z) = z^{(w-1)/2} Q(z) + eps z^{(w-1)/2} Q(1/z)
// (odd m; reciprocal written as the reversed polynomial) and of
// p(z) = z^{w/2} q(z) + eps z^{(w-2)/2} q(1/z) (even m).  Throws naming the
// worst coefficient index when a residual exceeds the summed radii.
DecompositionReport verify_decomposition(const RealPolynomial& P,
                                         const RealPolynomial& Q, unsigned m,
                                         unsigned k, int epsilon);

// Worst palindrome residual of coeff_j - eps * coeff_{d-j}; throws when it
// exceeds the summed radii.
DecompositionReport palindrome_check(const RealPolynomial& P, int epsilon);

// H from its gamma-ratio series (halved boundary term included) and M, its
// two top-degree terms.  Odd m only.
void build_H_M(unsigned m, unsigned k, unsigned long N, Prec prec,
               RealPolynomial& H, RealPolynomial& M);

// Even-m analogue h; depends on (m, k) only.
RealPolynomial build_h(unsigned m, unsigned k, unsigned long N, Prec prec);

// Assembles everything and runs the decomposition and palindrome checks.
PeriodPolynomialBundle build_bundle(const CriticalValues& cvs);

mpz_class binomial_exact(unsigned long n, unsigned long k);

}  // namespace symrh
