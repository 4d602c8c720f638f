#include "symrh/hpgamma.hpp"

#include <map>
#include <mutex>

namespace symrh {

namespace {
std::mutex g_bmutex;
std::vector<mpq_class> g_bern;  // B_2, B_4, ...
}  // namespace

const std::vector<mpq_class>& bernoulli_even(size_t count) {
  std::lock_guard<std::mutex> lk(g_bmutex);
  if (g_bern.size() >= count) return g_bern;
  size_t n = count;
  // tangent numbers T_1..T_n
  std::vector<mpz_class> t(n + 1);
  t[1] = 1;
  for (size_t k = 2; k <= n; k++) t[k] = mpz_class((long)(k - 1)) * t[k - 1];
  for (size_t k = 2; k <= n; k++)
    for (size_t j = k; j <= n; j++)
      t[j] = mpz_class((long)(j - k)) * t[j - 1] + mpz_class((long)(j - k + 2)) * t[j];
  g_bern.assign(n, 0);
  mpz_class four_k = 1;
  for (size_t k = 1; k <= n; k++) {
    four_k *= 4;  // 4^k
    mpq_class b(mpz_class(2 * (long)k) * t[k], four_k * (four_k - 1));
    b.canonicalize();
    if (k % 2 == 0) b = -b;
    g_bern[k - 1] = b;
  }
  return g_bern;
}

namespace {

// Stirling series coefficients B_{2n}/(2n(2n-1)) rounded once per precision.
const std::vector<Real>& stirling_coeffs(Prec prec, size_t count) {
  static std::mutex m;
  static std::map<std::pair<Prec, size_t>, std::vector<Real>> cache;
  std::lock_guard<std::mutex> lk(m);
  auto key = std::make_pair(prec, count);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const auto& bern = bernoulli_even(count);
  std::vector<Real> cs;
  cs.reserve(count);
  for (size_t nidx = 1; nidx <= count; nidx++) {
    mpq_class c = bern[nidx - 1] / mpq_class(2 * (long)nidx * (2 * (long)nidx - 1));
    c.canonicalize();
    cs.emplace_back(c, prec);
  }
  return cache.emplace(key, std::move(cs)).first->second;
}

}  // namespace

Complex lgamma_complex(const Complex& z, Prec prec) {
  if (z.re.sign() <= 0)
    throw error("lgamma_complex requires Re z > 0");
  Prec pw = prec + prec / 14 + 48;
  // Shift until |z + R| >= S; the Stirling tail then bottoms out below
  // 2^-pw even at arguments near the imaginary axis.
  long S = static_cast<long>(0.4 * pw) + 4;
  long R = 0;
  if (z.im.abs().cmp_si(S) < 0) {
    double rez = z.re.to_double();
    R = rez >= static_cast<double>(S) ? 0 : S - static_cast<long>(rez);
  }
  Complex w{Real(pw), Real(pw)};
  mpfr_set(w.re.get(), z.re.get(), MPFR_RNDN);
  mpfr_set(w.im.get(), z.im.get(), MPFR_RNDN);
  Complex prodshift{Real(1, pw), Real(pw)};
  for (long i = 0; i < R; i++) {
    prodshift = prodshift * w;
    mpfr_add_ui(w.re.get(), w.re.get(), 1, MPFR_RNDN);
  }

  size_t tcap = static_cast<size_t>(0.35 * pw) + 10;
  const auto& cs = stirling_coeffs(pw, tcap);

  Complex logw = w.log();
  Real half(pw);
  mpfr_set_d(half.get(), 0.5, MPFR_RNDN);
  Complex acc = (w - Complex(half)) * logw - w;
  {  // + (1/2) log(2 pi)
    Real l2pi = (Real::pi(pw) * 2).log();
    acc.re += l2pi.mul2si(-1);
  }
  Complex invw = Complex(Real(1, pw)) / w;
  Complex invw2 = invw * invw;
  Complex upow = invw;
  Real thresh = acc.abs().mul2si(-static_cast<long>(pw));
  for (size_t i = 0; i < tcap; i++) {
    Complex term = upow * cs[i];
    acc += term;
    Real tm = term.re.abs() + term.im.abs();
    if (tm < thresh) break;
    upow = upow * invw2;
  }
  if (R > 0) acc -= prodshift.log();
  Real re_out(prec), im_out(prec);
  mpfr_set(re_out.get(), acc.re.get(), MPFR_RNDN);
  mpfr_set(im_out.get(), acc.im.get(), MPFR_RNDN);
  return {std::move(re_out), std::move(im_out)};
}

Complex gamma_complex(const Complex& z, Prec prec) {
  Complex lg = lgamma_complex(z, prec + 16);
  Complex g = lg.exp();
  Real re_out(prec), im_out(prec);
  mpfr_set(re_out.get(), g.re.get(), MPFR_RNDN);
  mpfr_set(im_out.get(), g.im.get(), MPFR_RNDN);
  return {std::move(re_out), std::move(im_out)};
}

Real abs_gamma_upper(const Real& x, const Real& y, unsigned factors) {
  const Prec p = 96;
  if (x.sign() <= 0) throw error("abs_gamma_upper requires x > 0");
  Real g(p);
  mpfr_gamma(g.get(), x.get(), MPFR_RNDU);
  Real y2(p);
  mpfr_sqr(y2.get(), y.get(), MPFR_RNDD);
  Real acc = g;
  Real xn(p);
  mpfr_set(xn.get(), x.get(), MPFR_RNDD);
  Real one(1, p);
  for (unsigned n = 0; n < factors; n++) {
    Real d(p);
    mpfr_sqr(d.get(), xn.get(), MPFR_RNDD);
    Real t(p);
    mpfr_div(t.get(), y2.get(), d.get(), MPFR_RNDD);
    mpfr_add(t.get(), t.get(), one.get(), MPFR_RNDD);
    mpfr_sqrt(t.get(), t.get(), MPFR_RNDD);
    mpfr_div(acc.get(), acc.get(), t.get(), MPFR_RNDU);
    mpfr_add(xn.get(), xn.get(), one.get(), MPFR_RNDD);
    if (mpfr_cmp_d(t.get(), 1.0) == 0 && n > 4) break;
  }
  return acc;
}

}  // namespace symrh
