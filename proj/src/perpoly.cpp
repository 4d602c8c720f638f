#include "symrh/perpoly.hpp"

#include <algorithm>

namespace symrh {

namespace {

constexpr Prec kPb = 96;  // bound arithmetic precision

Approx of_mpz(const mpz_class& z, Prec prec) {
  Real v(z, prec);
  if (mpz_sizeinbase(z.get_mpz_t(), 2) <= size_t(prec))
    return Approx::exact(std::move(v));
  return Approx(std::move(v));  // ulp radius
}

Approx of_mpq(const mpq_class& q, Prec prec) {
  return Approx(Real(q, prec));
}

// N^{e2/2} with an outward radius; exact for N = 1.
Approx npow_half(unsigned long N, long e2, Prec prec) {
  if (N == 1) return Approx::exact(Real(1, prec));
  Real base(long(N), prec);
  if (e2 % 2 == 0) {
    Real v = base.pow_si(e2 / 2);
    return Approx(v, v.ulp().mul2si(1));
  }
  Real v = base.sqrt().pow_si(e2);
  Real rad = mul_up(v.ulp().abs(), Real(std::abs(e2) + 4, kPb));
  return Approx(std::move(v), std::move(rad));
}

Approx twopi_pow(long e, Prec prec) {
  Real v = Real::pi(prec).mul2si(1).pow_si(e);
  Real rad = mul_up(v.ulp(), Real(std::abs(e) / 8 + 4, kPb));
  return Approx(std::move(v), std::move(rad));
}

mpz_class falling_product(long top, long count) {
  // (top-1)(top-2)...(top-count)
  mpz_class acc = 1;
  for (long i = 1; i <= count; i++) {
    if (top - i < 1) throw error("gamma ratio hits a nonpositive argument");
    acc *= (top - i);
  }
  return acc;
}

CApprox cinv(const CApprox& a) {
  Real mag2 = a.val.re * a.val.re + a.val.im * a.val.im;
  Complex v{a.val.re / mag2, -a.val.im / mag2};
  Real ab = a.val.abs(MPFR_RNDD);
  Real lo = sub_down(ab, a.rad);
  if (!(lo.sign() > 0)) throw error("interval inversion through zero");
  Real rad = add_up(div_up(a.rad, mul_up(lo, ab).abs()),
                    add_up(v.re.ulp(), v.im.ulp()).mul2si(2));
  return {std::move(v), std::move(rad)};
}

}  // namespace

Approx RealPolynomial::eval_real(const Real& x) const {
  if (c.empty()) return Approx(x.prec());
  Approx xa = Approx::exact(x);
  Approx acc = c.back();
  for (size_t j = c.size() - 1; j-- > 0;) acc = acc * xa + c[j];
  return acc;
}

CApprox RealPolynomial::eval(const Complex& z) const {
  Prec p = z.prec();
  if (c.empty()) return CApprox(p);
  CApprox za{z, Real(kPb)};
  CApprox acc{Complex(c.back().val), c.back().rad};
  for (size_t j = c.size() - 1; j-- > 0;)
    acc = acc * za + CApprox{Complex(c[j].val), c[j].rad};
  return acc;
}

Complex RealPolynomial::eval_mid(const Complex& z) const {
  Complex acc(z.prec());
  if (c.empty()) return acc;
  acc = Complex(c.back().val);
  for (size_t j = c.size() - 1; j-- > 0;) {
    acc = acc * z;
    acc.re += c[j].val;
  }
  return acc;
}

Real RealPolynomial::norm1_hi() const {
  Real s(kPb);
  for (const Approx& a : c) s = add_up(s, a.abs_hi());
  return s;
}

Real RealPolynomial::deriv_norm1_hi() const {
  Real s(kPb);
  for (size_t j = 1; j < c.size(); j++)
    s = add_up(s, mul_up(c[j].abs_hi(), Real(long(j), kPb)));
  return s;
}

CApprox ComplexPolynomial::eval(const Complex& z) const {
  if (c.empty()) return CApprox(z.prec());
  CApprox za{z, Real(kPb)};
  CApprox acc = c.back();
  for (size_t j = c.size() - 1; j-- > 0;) acc = acc * za + c[j];
  return acc;
}

Complex ComplexPolynomial::eval_mid(const Complex& z) const {
  Complex acc(z.prec());
  if (c.empty()) return acc;
  acc = c.back().val;
  for (size_t j = c.size() - 1; j-- > 0;) acc = acc * z + c[j].val;
  return acc;
}

ComplexPolynomial to_complex(const RealPolynomial& p) {
  ComplexPolynomial out;
  out.name = p.name;
  out.c.reserve(p.c.size());
  for (const Approx& a : p.c)
    out.c.push_back(CApprox{Complex(a.val), a.rad});
  return out;
}

CApprox cpow_si(const Complex& z, long e) {
  Prec p = z.prec();
  CApprox acc{Complex(Real(1, p)), Real(kPb)};
  if (e == 0) return acc;
  CApprox base{z, Real(kPb)};
  unsigned long n = e > 0 ? e : -(unsigned long)e;
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return e > 0 ? acc : cinv(acc);
}

mpz_class binomial_exact(unsigned long n, unsigned long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

ComplexPolynomial build_R(const CriticalValues& cvs) {
  const long w = cvs.w(), D = w - 1;
  const Prec pw = cvs.prec + 64;
  if (long(cvs.vals.size()) != D + 1)
    throw error("critical value set incomplete");
  ComplexPolynomial R;
  R.name = "R";
  R.c.reserve(D + 1);
  for (long j = 0; j <= D; j++) {
    Approx lam(cvs.vals[j].value, cvs.vals[j].budget.total());
    Approx mag = of_mpz(binomial_exact(D, j), pw) *
                 npow_half(cvs.level, j - w, pw) * lam;
    int ph = int((w + j) % 4);
    Complex v(pw);
    switch (ph) {
      case 0: v.re = mag.val; break;
      case 1: v.im = mag.val; break;
      case 2: v.re = -mag.val; break;
      default: v.im = -mag.val; break;
    }
    R.c.push_back(CApprox{std::move(v), mag.rad});
  }
  return R;
}

Approx normalizer_constant(unsigned m, unsigned k, unsigned long N,
                           Prec prec) {
  GammaFactorSpec g = make_gamma_spec(m, k);
  const long w = g.w();
  const long r = g.r;
  const Prec pw = prec + 64;
  mpz_class den;
  mpz_fac_ui(den.get_mpz_t(), w - 1);
  for (long j = 1; j < r; j++) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), (m - j) * (k - 1) - 1);
    den *= f;
  }
  if (g.half) {
    mpz_class f;
    long a = w / 2 - g.hq;  // integer Gamma argument
    if (a < 1) throw error("normalizer gamma argument not positive");
    mpz_fac_ui(f.get_mpz_t(), a - 1);
    den *= f;
  }
  Approx out = twopi_pow(r * w, pw) * of_mpq(mpq_class(1) / mpq_class(den), pw);
  if (g.half) {
    Real pp = Real::pi(pw).pow_si(w / 2);
    out = out * Approx(pp, mul_up(pp.ulp(), Real(w / 16 + 4, kPb)));
  }
  return out * npow_half(N, -(long(m) * m * (k - 1) + 2), pw);
}

RealPolynomial build_P(const CriticalValues& cvs, const ComplexPolynomial& R,
                       const Approx& norm) {
  const long w = cvs.w(), D = w - 1;
  const Prec pw = cvs.prec + 64;
  if (long(R.c.size()) != D + 1) throw error("R has the wrong degree");
  RealPolynomial P;
  P.name = (cvs.m % 2) ? "P" : "p";
  P.c.reserve(D + 1);
  for (long j = 0; j <= D; j++) {
    const CApprox& rc = R.c[j];
    // multiply by i^{-(w+j)}: the coefficient phase returns to the real axis
    int ph = int((w + j) % 4);
    Real re(pw), im(pw);
    switch (ph) {
      case 0: re = rc.val.re; im = rc.val.im; break;
      case 1: re = rc.val.im; im = -rc.val.re; break;
      case 2: re = -rc.val.re; im = -rc.val.im; break;
      default: re = -rc.val.im; im = rc.val.re; break;
    }
    if (!(im.abs() <= rc.rad))
      throw error("imaginary residue exceeds bounds in build_P at index " +
                  std::to_string(j));
    Approx coeff(std::move(re), add_up(rc.rad, im.abs()));
    coeff = coeff * npow_half(cvs.level, w - j, pw) * norm;
    if (cvs.epsilon < 0) coeff = -coeff;
    P.c.push_back(std::move(coeff));
  }
  return P;
}

RealPolynomial build_Q(const CriticalValues& cvs, const Approx& norm) {
  const long w = cvs.w(), D = w - 1;
  const Prec pw = cvs.prec + 64;
  RealPolynomial Q;
  if (cvs.m % 2) {
    const long Dh = (w - 1) / 2;
    Q.name = "Q";
    Q.c.assign(Dh + 1, Approx(pw));
    for (long n = 0; n < Dh; n++) {
      Approx lam(cvs.vals[n].value, cvs.vals[n].budget.total());
      Q.c[Dh - n] = of_mpz(binomial_exact(D, n), pw) * lam * norm;
    }
    Approx mid(cvs.vals[Dh].value, cvs.vals[Dh].budget.total());
    mid = of_mpz(binomial_exact(D, Dh), pw) * mid * norm;
    Q.c[0] = Approx(mid.val.mul2si(-1), mid.rad.mul2si(-1));
  } else {
    const long e = (w - 2) / 2;
    Q.name = "q";
    Q.c.assign(e + 1, Approx(pw));
    for (long n = 0; n <= e; n++) {
      Approx lam(cvs.vals[n].value, cvs.vals[n].budget.total());
      Q.c[e - n] = of_mpz(binomial_exact(D, n), pw) * lam * norm;
    }
  }
  return Q;
}

DecompositionReport verify_decomposition(const RealPolynomial& P,
                                         const RealPolynomial& Q, unsigned m,
                                         unsigned k, int epsilon) {
  const long w = long(m) * (k - 1), D = w - 1;
  const Prec pw = P.c.empty() ? 128 : P.c[0].val.prec();
  if (long(P.degree()) != D) throw error("P degree mismatch");
  const long degq_want = (m % 2) ? (w - 1) / 2 : (w - 2) / 2;
  if (long(Q.degree()) != degq_want)
    throw error("half polynomial degree mismatch (parity)");
  std::vector<Approx> rhs(D + 1, Approx(pw));
  const long lo_shift = (m % 2) ? (w - 1) / 2 : (w - 2) / 2;
  const long hi_shift = (m % 2) ? (w - 1) / 2 : w / 2;
  Real eps(epsilon, pw);
  for (long i = 0; i <= degq_want; i++) {
    rhs[hi_shift + i] = rhs[hi_shift + i] + Q.c[i];
    Approx mirrored(Q.c[i].val * eps, Q.c[i].rad);
    rhs[lo_shift - i] = rhs[lo_shift - i] + mirrored;
  }
  DecompositionReport rep;
  Real worst_gap(kPb);
  bool first = true;
  for (long j = 0; j <= D; j++) {
    Approx diff = P.c[j] - rhs[j];
    Real residual = diff.val.abs();
    Real allowed = diff.rad;
    Real gap = sub_down(residual, allowed);
    if (first || gap > worst_gap) {
      first = false;
      worst_gap = gap;
      rep.worst_index = size_t(j);
      rep.worst_residual = residual;
      rep.worst_allowed = allowed;
    }
    if (!(residual <= allowed)) rep.pass = false;
  }
  if (!rep.pass)
    throw error("decomposition residual exceeds bounds at coefficient index " +
                std::to_string(rep.worst_index));
  return rep;
}

DecompositionReport palindrome_check(const RealPolynomial& P, int epsilon) {
  const size_t d = P.degree();
  DecompositionReport rep;
  Real worst_gap(kPb);
  bool first = true;
  for (size_t j = 0; 2 * j <= d; j++) {
    Approx mirrored(epsilon < 0 ? -P.c[d - j].val : P.c[d - j].val,
                    P.c[d - j].rad);
    Approx diff = P.c[j] - mirrored;
    Real residual = diff.val.abs();
    Real gap = sub_down(residual, diff.rad);
    if (first || gap > worst_gap) {
      first = false;
      worst_gap = gap;
      rep.worst_index = j;
      rep.worst_residual = residual;
      rep.worst_allowed = diff.rad;
    }
    if (!(residual <= diff.rad)) rep.pass = false;
  }
  if (!rep.pass)
    throw error("palindrome residual exceeds bounds at coefficient index " +
                std::to_string(rep.worst_index));
  return rep;
}

void build_H_M(unsigned m, unsigned k, unsigned long N, Prec prec,
               RealPolynomial& H, RealPolynomial& M) {
  if (m % 2 == 0) throw error("build_H_M requires odd m");
  const long w = long(m) * (k - 1);
  const long Dh = (w - 1) / 2;
  const long r = (m + 1) / 2;
  const Prec pw = prec + 64;
  H.name = "H";
  H.c.assign(Dh + 1, Approx(pw));
  mpz_class nfact = 1;
  for (long n = 0; n < Dh; n++) {
    if (n > 0) nfact *= n;
    mpq_class q(1);
    q /= nfact;
    for (long j = 1; j < r; j++)
      q /= falling_product((m - j) * (k - 1), n);
    H.c[Dh - n] = twopi_pow(n, pw) * of_mpq(q, pw) *
                  npow_half(N, -(n + 2), pw);
  }
  {
    mpz_class dhf;
    mpz_fac_ui(dhf.get_mpz_t(), Dh);
    mpq_class q(1);
    q /= 2 * mpq_class(dhf);
    for (long j = 1; j < r; j++) {
      mpz_class num, den;
      long a = Dh + 1 - j * (k - 1);
      if (a < 1) throw error("boundary gamma argument not positive");
      mpz_fac_ui(num.get_mpz_t(), a - 1);
      mpz_fac_ui(den.get_mpz_t(), (m - j) * (k - 1) - 1);
      q *= mpq_class(num) / mpq_class(den);
    }
    H.c[0] = twopi_pow(Dh, pw) * of_mpq(q, pw) *
             npow_half(N, -(long(m) * m * (k - 1) + 2), pw);
  }
  M.name = "M";
  M.c.assign(Dh + 1, Approx(pw));
  M.c[Dh] = H.c[Dh];
  if (Dh >= 1) M.c[Dh - 1] = H.c[Dh - 1];
}

RealPolynomial build_h(unsigned m, unsigned k, unsigned long N, Prec prec) {
  if (m % 2) throw error("build_h requires even m");
  (void)N;  // the series carries no level dependence
  GammaFactorSpec g = make_gamma_spec(m, k);
  const long w = g.w();
  const long e = (w - 2) / 2;
  const long r = g.r;
  const Prec pw = prec + 64;
  RealPolynomial h;
  h.name = "h";
  h.c.assign(e + 1, Approx(pw));
  mpz_class nfact = 1;
  for (long n = 0; n <= e; n++) {
    if (n > 0) nfact *= n;
    mpq_class q(1);
    q /= nfact;
    for (long j = 1; j < r; j++)
      q /= falling_product((m - j) * (k - 1), n);
    long targ2 = w - n - 2 * g.hq;  // twice the Gamma argument
    if (targ2 < 1) throw error("h gamma argument not positive");
    Real garg = Real(targ2, pw).mul2si(-1);
    Real gam = garg.gamma();
    Real ppw = Real::pow(Real::pi(pw), Real(-(w - n), pw).mul2si(-1));
    Approx trans(gam * ppw,
                 mul_up((gam * ppw).ulp().abs(), Real(16, kPb)));
    h.c[e - n] = trans * twopi_pow(n, pw) * of_mpq(q, pw);
  }
  return h;
}

PeriodPolynomialBundle build_bundle(const CriticalValues& cvs) {
  PeriodPolynomialBundle b;
  b.m = cvs.m;
  b.k = cvs.k;
  b.level = cvs.level;
  b.label = cvs.label;
  b.epsilon = cvs.epsilon;
  b.odd_m = cvs.m % 2 != 0;
  b.prec = cvs.prec;
  b.R = build_R(cvs);
  b.normalizer = normalizer_constant(cvs.m, cvs.k, cvs.level, cvs.prec);
  b.P = build_P(cvs, b.R, b.normalizer);
  b.Q = build_Q(cvs, b.normalizer);
  b.decomposition = verify_decomposition(b.P, b.Q, cvs.m, cvs.k, cvs.epsilon);
  palindrome_check(b.P, cvs.epsilon);
  if (b.odd_m)
    build_H_M(cvs.m, cvs.k, cvs.level, cvs.prec, b.H, b.M);
  else
    b.H = build_h(cvs.m, cvs.k, cvs.level, cvs.prec);
  return b;
}

}  // namespace symrh
