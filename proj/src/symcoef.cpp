#include "symrh/symcoef.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace symrh {

SatakeParams satake(const mpz_class& ap, unsigned long p, unsigned k,
                    bool ramified, Prec prec) {
  SatakeParams sp;
  sp.p = p;
  sp.ramified = ramified;
  if (ramified) {
    Real a(prec);
    mpfr_set_z(a.get(), ap.get_mpz_t(), MPFR_RNDN);
    sp.alpha = Complex(a);
    sp.beta = Complex(Real(prec));
    return sp;
  }
  mpz_class pk1;
  mpz_ui_pow_ui(pk1.get_mpz_t(), p, k - 1);
  mpz_class disc = 4 * pk1 - ap * ap;
  if (disc < 0)
    throw error("coefficient bound violated at p=" + std::to_string(p) +
                ": |a(p)| > 2 p^((k-1)/2)");
  // alpha = (a + i sqrt(disc)) / 2: nonnegative imaginary part
  Real re(prec), im(prec);
  mpfr_set_z(re.get(), ap.get_mpz_t(), MPFR_RNDN);
  re = re.mul2si(-1);
  mpfr_set_z(im.get(), disc.get_mpz_t(), MPFR_RNDN);
  mpfr_sqrt(im.get(), im.get(), MPFR_RNDN);
  im = im.mul2si(-1);
  sp.alpha = Complex(re, im);
  sp.beta = sp.alpha.conj();
  return sp;
}

namespace {

// coefficients of prod_i (1 - u_i T)^{-1} to depth e, via the prefix
// recurrence c_new[j] = c_old[j] + u c_new[j-1]
std::vector<Complex> geometric_product(const std::vector<Complex>& us,
                                       unsigned e, Prec pw) {
  std::vector<Complex> c(e + 1, Complex(Real(pw), Real(pw)));
  mpfr_set_ui(c[0].re.get(), 1, MPFR_RNDN);
  for (size_t t = 1; t <= e; t++) {
    mpfr_set_ui(c[t].re.get(), 0, MPFR_RNDN);
  }
  for (const Complex& u : us) {
    if (u.re.is_zero() && u.im.is_zero()) continue;
    for (unsigned j = 1; j <= e; j++) c[j] = c[j] + u * c[j - 1];
  }
  return c;
}

std::vector<Complex> satake_monomials(const SatakeParams& sp, unsigned m,
                                      Prec pw, bool normalized, unsigned k) {
  std::vector<Complex> us;
  Complex a = sp.alpha, b = sp.beta;
  if (normalized) {
    mpz_class pk1;
    mpz_ui_pow_ui(pk1.get_mpz_t(), sp.p, k - 1);
    Real nrm(pw);
    mpfr_set_z(nrm.get(), pk1.get_mpz_t(), MPFR_RNDN);
    nrm = nrm.sqrt();
    a = Complex(a.re / nrm, a.im / nrm);
    b = Complex(b.re / nrm, b.im / nrm);
  }
  // u_i = a^{m-i} b^i, i = 0..m
  std::vector<Complex> apow(m + 1, Complex(Real(1, pw))),
      bpow(m + 1, Complex(Real(1, pw)));
  for (unsigned i = 1; i <= m; i++) {
    apow[i] = apow[i - 1] * a;
    bpow[i] = bpow[i - 1] * b;
  }
  for (unsigned i = 0; i <= m; i++) us.push_back(apow[m - i] * bpow[i]);
  return us;
}

}  // namespace

std::vector<Complex> local_factor_coeffs(const SatakeParams& sp, unsigned m,
                                         unsigned e, unsigned k, Prec prec) {
  Prec pw = prec + 32;
  auto us = satake_monomials(sp, m, pw, false, k);
  auto c = geometric_product(us, e, pw);
  for (auto& z : c) {
    Real re(prec), im(prec);
    mpfr_set(re.get(), z.re.get(), MPFR_RNDN);
    mpfr_set(im.get(), z.im.get(), MPFR_RNDN);
    z = Complex(std::move(re), std::move(im));
  }
  return c;
}

std::vector<Real> local_lambda(const SatakeParams& sp, unsigned m, unsigned e,
                               unsigned k, Prec prec) {
  Prec pw = prec + 32;
  auto us = satake_monomials(sp, m, pw, true, k);
  auto c = geometric_product(us, e, pw);
  std::vector<Real> out;
  out.reserve(e + 1);
  for (unsigned j = 0; j <= e; j++) {
    // imaginary parts cancel for conjugate Satake pairs; a residue beyond
    // rounding noise means broken inputs
    Real scale = c[j].re.abs() + Real(1, pw);
    if (!(c[j].im.abs() < scale.mul2si(-(pw - 24))))
      throw error("local_lambda: nonvanishing imaginary part at p=" +
                  std::to_string(sp.p));
    Real v(prec);
    mpfr_set(v.get(), c[j].re.get(), MPFR_RNDN);
    out.push_back(std::move(v));
  }
  return out;
}

SymPowerCoefficients sym_coeffs(const NewformData& fm, unsigned m,
                                unsigned long X, Prec prec) {
  if (m < 1) throw error("sym_coeffs: m must be >= 1");
  if (!is_squarefree(fm.level))
    throw error("sym_coeffs: level must be squarefree");
  if (fm.cutoff() < X)
    throw error("sym_coeffs: need a(n) up to n=" + std::to_string(X) +
                ", form provides " + std::to_string(fm.cutoff()));
  SymPowerCoefficients sc;
  sc.m = m;
  sc.weight = fm.weight;
  sc.level = fm.level;
  sc.label = fm.label;
  sc.prec = prec;
  if (m == 1) sc.epsilon_hint = fm.epsilon_hint_m1;
  sc.lambda.reserve(X);
  if (X == 0) return sc;

  // smallest-prime-factor sieve
  std::vector<uint32_t> spf(X + 1, 0);
  for (unsigned long i = 2; i <= X; i++) {
    if (spf[i] != 0) continue;
    for (unsigned long j = i; j <= X; j += i)
      if (spf[j] == 0) spf[j] = static_cast<uint32_t>(i);
  }

  std::vector<Real> lam(X + 1, Real(prec));
  mpfr_set_ui(lam[1].get(), 1, MPFR_RNDN);
  // lambda at prime powers, then multiplicative fill
  for (unsigned long p = 2; p <= X; p++) {
    if (spf[p] != p) continue;
    unsigned e = 0;
    unsigned long q = 1;
    while (q <= X / p) {
      q *= p;
      e++;
    }
    auto sp = satake(fm.a(p), p, fm.weight, fm.level % p == 0, prec + 32);
    auto ll = local_lambda(sp, m, e, fm.weight, prec);
    q = p;
    for (unsigned j = 1; j <= e; j++) {
      lam[q] = ll[j];
      if (q > X / p) break;
      q *= p;
    }
  }
  for (unsigned long n = 2; n <= X; n++) {
    unsigned long p = spf[n];
    unsigned long rest = n;
    while (rest % p == 0) rest /= p;
    if (rest == 1) continue;  // prime power, already set
    unsigned long pe = n / rest;
    lam[n] = lam[pe] * lam[rest];
  }
  for (unsigned long n = 1; n <= X; n++) sc.lambda.push_back(std::move(lam[n]));
  return sc;
}

mpz_class divisor_power(unsigned w, unsigned long n) {
  if (w < 1) throw error("divisor_power: w >= 1 required");
  if (n < 1) throw error("divisor_power: n >= 1 required");
  mpz_class out = 1;
  unsigned long rem = n;
  for (unsigned long p = 2; rem > 1;) {
    if (p * p > rem) p = rem;  // rem is prime
    if (rem % p == 0) {
      unsigned long e = 0;
      while (rem % p == 0) {
        rem /= p;
        e++;
      }
      mpz_class b;
      mpz_bin_uiui(b.get_mpz_t(), w - 1 + e, e);
      out *= b;
    } else {
      p++;
    }
  }
  return out;
}

// d_w(n) for all n <= X by repeated divisor-sum sieving; values stay far
// inside 64 bits for the ranges used here (w <= 8, X <= a few 10^6)
std::vector<uint64_t> divisor_power_table(unsigned w, unsigned long X) {
  std::vector<uint64_t> d(X + 1, 1);
  d[0] = 0;
  for (unsigned level = 2; level <= w; level++) {
    std::vector<uint64_t> nd(X + 1, 0);
    for (unsigned long a = 1; a <= X; a++)
      for (unsigned long nn = a; nn <= X; nn += a) nd[nn] += d[a];
    d = std::move(nd);
  }
  return d;
}

Real tail_bound(unsigned m, const Real& sigma, unsigned long X) {
  if (!(sigma > Real(1, sigma.prec())))
    throw error("tail_bound: sigma > 1 required");
  unsigned w = m + 1;
  double sd = sigma.to_double();
  Prec pi = std::max<Prec>(
      128, static_cast<Prec>((sd - 1) * std::log2(std::max<double>(X, 2))) + 64);

  Real sig(pi);
  mpfr_set(sig.get(), sigma.get(), MPFR_RNDU);

  // route 1: zeta(sigma)^w rounded up minus the partial sum rounded down.
  // The partial is capped at 20000 terms so the bound is constant (hence
  // monotone) in X beyond the cap.
  Real best(pi);
  mpfr_set_inf(best.get(), 1);
  {
    unsigned long Xp = std::min<unsigned long>(X, 20000);
    Real zu(pi);
    mpfr_zeta(zu.get(), sig.get(), MPFR_RNDU);
    mpfr_pow_ui(zu.get(), zu.get(), w, MPFR_RNDU);
    static std::mutex mu;
    static std::map<unsigned, std::vector<uint64_t>> dcache;
    std::vector<uint64_t> dtab;
    {
      std::lock_guard<std::mutex> lk(mu);
      auto it = dcache.find(w);
      if (it == dcache.end())
        it = dcache.emplace(w, divisor_power_table(w, 20000)).first;
      dtab = it->second;
    }
    Real part(pi), t(pi), u(pi);
    mpfr_set_ui(part.get(), 0, MPFR_RNDD);
    for (unsigned long n = 1; n <= Xp; n++) {
      mpfr_set_ui(u.get(), n, MPFR_RNDU);
      mpfr_pow(u.get(), u.get(), sig.get(), MPFR_RNDU);  // n^sigma up
      mpfr_set_ui(t.get(), static_cast<unsigned long>(dtab[n]), MPFR_RNDD);
      mpfr_div(t.get(), t.get(), u.get(), MPFR_RNDD);    // d/n^sigma down
      mpfr_add(part.get(), part.get(), t.get(), MPFR_RNDD);
    }
    mpfr_sub(best.get(), zu.get(), part.get(), MPFR_RNDU);
    if (mpfr_sgn(best.get()) < 0) mpfr_set_ui(best.get(), 0, MPFR_RNDN);
  }

  // route 2: sum_{n>X} d_w(n) n^{-sigma} <= zeta(sigma0)^w X^{-(sigma-sigma0)}
  // with sigma0 = (sigma+1)/2
  {
    Real sig0(pi), z0(pi), xe(pi), b2(pi);
    mpfr_add_ui(sig0.get(), sig.get(), 1, MPFR_RNDD);
    mpfr_div_2ui(sig0.get(), sig0.get(), 1, MPFR_RNDD);
    Real sig0u(pi);
    mpfr_add_ui(sig0u.get(), sig.get(), 1, MPFR_RNDU);
    mpfr_div_2ui(sig0u.get(), sig0u.get(), 1, MPFR_RNDU);
    mpfr_zeta(z0.get(), sig0.get(), MPFR_RNDU);  // zeta decreasing: use low arg
    mpfr_pow_ui(z0.get(), z0.get(), w, MPFR_RNDU);
    Real expo(pi);
    mpfr_sub(expo.get(), sig.get(), sig0u.get(), MPFR_RNDD);  // sigma - sigma0
    if (mpfr_sgn(expo.get()) > 0 && X >= 1) {
      mpfr_set_ui(xe.get(), X, MPFR_RNDD);
      mpfr_pow(xe.get(), xe.get(), expo.get(), MPFR_RNDD);  // X^expo down
      mpfr_div(b2.get(), z0.get(), xe.get(), MPFR_RNDU);
      mpfr_min(best.get(), best.get(), b2.get(), MPFR_RNDU);
    }
  }
  Real out(96);
  mpfr_set(out.get(), best.get(), MPFR_RNDU);
  return out;
}

}  // namespace symrh
