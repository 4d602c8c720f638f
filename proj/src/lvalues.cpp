#include "symrh/lvalues.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

#include "symrh/hpgamma.hpp"

namespace symrh {

namespace {

constexpr Prec kPb = 128;  // all bound/ledger arithmetic runs here
constexpr double kLadderNats = 18.0;
constexpr double kCCap = 4000.0;
constexpr unsigned long kXCapDirect = 1048576;
constexpr unsigned long kXCapAfe = 4194304;

struct BudgetRetry {};

// Bound values pass through a bounded number of nearest-rounded operations,
// so one final relative pad of 2^-100 dominates the accumulated drift.
Real inflate(const Real& v) { return v + v.abs().mul2si(-100); }

void add_up(Real& acc, const Real& x) {
  mpfr_add(acc.get(), acc.get(), x.get(), MPFR_RNDU);
}

Real rd(double x) { return Real::of_double(x, kPb); }

Real mag_up(const Real& x) {
  Real r(kPb);
  mpfr_abs(r.get(), x.get(), MPFR_RNDU);
  return r;
}

double lnadd(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -HUGE_VAL) return a;
  return a + std::log1p(std::exp(b - a));
}

double psi_d(double x) {
  Real t(64);
  mpfr_set_d(t.get(), x, MPFR_RNDN);
  mpfr_digamma(t.get(), t.get(), MPFR_RNDN);
  return t.to_double();
}

// d/dc ln|gamma_m(sg + c)| on the real axis, exponential prefactor included
double psisum_d(const GammaFactorSpec& g, long sg, double c) {
  double s = 0;
  for (long sh : g.shifts) s += psi_d(double(sg - sh) + c);
  if (g.half) s += 0.5 * psi_d((double(sg) + c) / 2 - double(g.hq));
  s -= g.r * std::log(2 * M_PI);
  if (g.half) s -= 0.5 * std::log(M_PI);
  return s;
}

// F(c) = ln gamma_m(sg + c) for c right of every pole
double lgsum_d(const GammaFactorSpec& g, long sg, double c) {
  double s = 0;
  for (long sh : g.shifts) s += std::lgamma(double(sg - sh) + c);
  if (g.half) s += std::lgamma((double(sg) + c) / 2 - double(g.hq));
  s -= g.r * (double(sg) + c) * std::log(2 * M_PI);
  if (g.half) s -= (double(sg) + c) / 2 * std::log(M_PI);
  return s;
}

// rightmost real pole of gamma_m(sg + z), as an offset in c
double pole_wall(const GammaFactorSpec& g, long sg) {
  double w0 = -1e18;
  for (long sh : g.shifts) w0 = std::max(w0, double(sh - sg));
  if (g.half) w0 = std::max(w0, double(2 * g.hq - sg));
  return w0;
}

double c_floor(const GammaFactorSpec& g, long sg) {
  return std::max(2.5, pole_wall(g, sg) + 2.0);
}

// least admissible c with d/dc ln|gamma_m(sg+c)| >= lnt: the saddle abscissa
// for t = e^lnt, where |gamma_m(sg+c)| t^-c is minimized over c
double saddle_c(const GammaFactorSpec& g, long sg, double lnt) {
  double lo = c_floor(g, sg);
  if (psisum_d(g, sg, lo) >= lnt) return lo;
  double hi = lo;
  while (psisum_d(g, sg, hi) < lnt) {
    hi = 2 * hi + 4;
    if (hi >= kCCap) return kCCap;
  }
  for (int i = 0; i < 60; i++) {
    double mid = (lo + hi) / 2;
    (psisum_d(g, sg, mid) < lnt ? lo : hi) = mid;
  }
  return hi;
}

// ln of the exponential prefactor of gamma_m at sg + c
Real ln_pref(const GammaFactorSpec& g, long sg, double c, Prec prec) {
  Real x = Real::of_double(c, prec) + Real(sg, prec);
  Real e = -(Real::pi(prec).mul2si(1).log() * x) * long(g.r);
  if (g.half) e -= Real::pi(prec).log() * x.mul2si(-1);
  return e;
}

// |gamma_m(sg + c)| for c >= c_floor (every argument positive there)
Real gprod(const GammaFactorSpec& g, long sg, double c) {
  Real p = ln_pref(g, sg, c, kPb).exp();
  for (long sh : g.shifts) p *= (rd(c) + Real(sg - sh, kPb)).gamma();
  if (g.half)
    p *= ((rd(c) + Real(sg, kPb)).mul2si(-1) - Real(g.hq, kPb)).gamma();
  return p;
}

// Upper bound for (1/2pi) int |gamma_m(sg+c+iv)| / |c+iv| dv.  Peels the
// j = 0 Gamma factor: |Gamma(x+iy)| <= Gamma(x) x / sqrt(x^2+y^2), then
//   int x1 dv / (sqrt(x1^2+v^2) sqrt(c^2+v^2)) <= 2 min(1, x1/c)
//                                  * (asinh(max(x1,c)/min(x1,c)) + 1).
Real kub(const GammaFactorSpec& g, long sg, double c) {
  Real G = gprod(g, sg, c);
  double x1 = double(sg) + c;
  Real ratio(kPb), as(kPb);
  mpfr_set_d(ratio.get(), std::max(x1, c) / std::min(x1, c), MPFR_RNDU);
  mpfr_asinh(as.get(), ratio.get(), MPFR_RNDU);
  Real out = G * (as + Real(1, kPb)) / Real::pi(kPb);
  if (c > x1) out *= rd(x1 / c);
  return inflate(out);
}

// e-free closed form for sum_{n>X} d_w(n) n^-a: with b = 1 + 1/ln X,
// zeta(b) <= 1 + ln X, so the tail is at most (1+ln X)^w X^{b-a}.
Real coef_tail(unsigned w, const Real& a, unsigned long X) {
  if (X < 2) X = 2;
  Real lx(kPb);
  mpfr_set_ui(lx.get(), X, MPFR_RNDN);
  lx = lx.log();
  Real b = Real(1, kPb) + Real(1, kPb) / lx;
  if (!(a > b)) {
    Real inf(kPb);
    mpfr_set_inf(inf.get(), 1);
    return inf;
  }
  Real lnv = (Real(1, kPb) + lx).log() * long(w) + (b - a) * lx;
  return inflate(lnv.exp());
}

// One shell of the smoothed-sum tail: a full-tail bound from Xi, charged at
// a contour adapted to t(Xi), so successive shells decay superexponentially.
Real shell_bound(const GammaFactorSpec& g, unsigned m, long sg,
                 const Real& sigma, double sigma_d, const Real& qt_ub,
                 double lnqt, unsigned long Xi) {
  double lnt = std::log(double(Xi)) - lnqt;
  double c = std::max(saddle_c(g, sg, lnt), 2.6 - sigma_d);
  c = std::min(c, kCCap);
  c = std::max(c, c_floor(g, sg));
  Real s1 = Real::pow(qt_ub, rd(c), MPFR_RNDU);
  s1 *= kub(g, sg, c);
  s1 *= coef_tail(m + 1, sigma + rd(c), Xi);
  return inflate(s1);
}

struct ShellPlan {
  unsigned long X = 0;
  Real tail{kPb};
};

// Smallest power-of-two cutoff whose tail bound meets `target`, plus the
// bound itself.  Each shell bound covers the whole tail past its own Xi, so
// any truncation of the shell sum stays an upper bound.
ShellPlan plan_sum(const GammaFactorSpec& g, unsigned m, long sg,
                   const Real& sigma, double sigma_d, const Real& qt_ub,
                   double lnqt, const Real& target) {
  std::vector<Real> sb;
  Real tiny = target.mul2si(-8);
  for (int i = 0; i < 47; i++) {
    sb.push_back(
        shell_bound(g, m, sg, sigma, sigma_d, qt_ub, lnqt, 16ul << i));
    if (sb.back() <= tiny) break;
  }
  std::vector<Real> suf(sb.size(), Real(kPb));
  for (size_t i = sb.size(); i-- > 0;) {
    suf[i] = sb[i];
    if (i + 1 < sb.size()) add_up(suf[i], suf[i + 1]);
  }
  for (size_t i = 0; i < sb.size(); i++)
    if (suf[i] <= target) return {16ul << i, suf[i]};
  throw error("smoothed-sum truncation cannot meet its target within caps");
}

// One evaluation range of one smoothed sum, used to size kernel tables.
struct Use {
  double lnTq;  // ln of the per-sum absolute target, in sum units
  double sigma_d;
  double lnqt;
  unsigned long X;
};

struct KernelTable {
  double c = 0, h = 0;
  Real cR, hR;  // exact doubles carried at working precision
  std::vector<Real> tre, tim;
  unsigned long J = 0;
  Real absmax{kPb};
  Real truncC{kPb};  // per unit of sum_|pref|
  Real discC{kPb};
  Real truncC2{kPb};  // same bounds for the step-2h check quadrature
  Real discC2{kPb};
  Real roundC{kPb};  // multiplied by h/2pi at charge time
};

struct TableSet {
  std::vector<double> lnb;  // boundaries between consecutive tables
  std::vector<KernelTable> tabs;
  size_t pick(double lnt) const {
    return size_t(std::upper_bound(lnb.begin(), lnb.end(), lnt) -
                  lnb.begin());
  }
};

Complex cexp(const Complex& z, Prec pw) {
  Real er = z.re.exp();
  Real s(pw), c(pw);
  Real::sin_cos(s, c, z.im);
  return {er * c, er * s};
}

// Build one quadrature table on the vertical line Re z = c.  lnTgt is the
// ln of the absolute per-unit-weight target that both the truncation and
// discretization bounds must meet over t in [e^lntlo, e^lnthi].
KernelTable make_table(const GammaFactorSpec& g, long sg, double c,
                       double lnTgt, double lntlo, double lnthi, Prec pw,
                       Prec cprec) {
  KernelTable kt;
  kt.c = c;
  lnTgt = std::min(lnTgt, 600.0);

  double wall = std::max(pole_wall(g, sg) + 0.25, 0.25);
  double dmax = c - wall;
  double best_h = 0, best_d = 0;
  for (double f : {0.25, 0.4, 0.55, 0.7, 0.85, 0.97}) {
    double dl = f * dmax;
    double lnD0 = lnadd(kub(g, sg, c - dl).log().to_double() + dl * lnthi,
                        kub(g, sg, c + dl).log().to_double() - dl * lntlo);
    double beta = std::max(std::log(4.0), std::log(2.0) - (lnTgt - lnD0));
    double h = 2 * M_PI * dl / beta;
    if (h > best_h) {
      best_h = h;
      best_d = dl;
    }
  }
  // the Poisson images must keep a positive frequency offset at every t the
  // table serves, on the step-2h check grid as well
  double nyq = M_PI / std::max({lnthi, -lntlo, 0.5});
  kt.h = std::min({best_h, 2.0, nyq});
  {
    Real beta = Real::pi(kPb).mul2si(1) * rd(best_d) / rd(kt.h);
    Real q = (-beta).exp().mul2si(1);  // e^-b/(1-e^-b) <= 2e^-b for b >= ln2
    Real q2 = (-beta.mul2si(-1)).exp().mul2si(1);  // beta/2 >= ln2 still
    Real D0 = kub(g, sg, c - best_d) * (rd(best_d) * rd(lnthi)).exp() +
              kub(g, sg, c + best_d) * (-(rd(best_d) * rd(lntlo))).exp();
    kt.discC = inflate(q * D0);
    kt.discC2 = inflate(q2 * D0);
  }

  struct Fac {
    double x, a;
  };
  std::vector<Fac> fac;
  for (long sh : g.shifts) fac.push_back({double(sg - sh) + c, 1.0});
  if (g.half) fac.push_back({(double(sg) + c) / 2 - double(g.hq), 0.5});

  // |truncated integral tail| <= (1/pi) pref prod|Gamma(x_i + i a_i V)|
  //   * 2^{rho/2} / rho, with rho the count of product-formula factors that
  //   each contribute at least sqrt(2) V / v of decay past V
  auto Bof = [&](double V, long& rho) -> Real {
    rho = 0;
    Real B = ln_pref(g, sg, c, kPb).exp() / Real::pi(kPb);
    for (const Fac& fc : fac) {
      // enough product factors that the bound keeps its exponential decay
      unsigned nf = unsigned(2 * fc.a * V) + 64;
      B *= abs_gamma_upper(rd(fc.x), rd(fc.a * V), nf);
      long kk = long(std::floor(fc.a * V - fc.x)) + 1;
      if (kk > 0) rho += kk;
    }
    if (rho >= 1) {
      B *= Real::pow(Real(2, kPb), Real(rho, kPb).mul2si(-1), MPFR_RNDU);
      B /= Real(rho, kPb);
    }
    return inflate(B);
  };

  Real Btgt = rd(lnTgt).exp();
  double V = 8;
  long rho = 0;
  for (int it = 0;; it++) {
    Real B = Bof(V, rho);
    if (rho >= 2 && B <= Btgt) break;
    V *= 1.3;
    if (it > 220 || V > 3e6)
      throw error("quadrature truncation scan exceeded its cap");
  }
  unsigned long J = (unsigned long)std::ceil(V / kt.h);
  for (int it = 0;; it++) {
    kt.truncC = Bof(double(J) * kt.h, rho);
    if (rho >= 2 && kt.truncC <= Btgt) break;
    J++;
    if (it > 400) throw error("quadrature truncation scan stalled");
  }
  kt.J = J;
  kt.truncC2 = Bof(double(J & ~1ul) * kt.h, rho);

  kt.cR = Real(pw);
  mpfr_set_d(kt.cR.get(), kt.c, MPFR_RNDN);
  kt.hR = Real(pw);
  mpfr_set_d(kt.hR.get(), kt.h, MPFR_RNDN);
  Real lnP = ln_pref(g, sg, kt.c, pw);
  // the exponential prefactor also carries a linear phase in v
  Real phs = Real::pi(pw).mul2si(1).log() * (-long(g.r));
  if (g.half) phs -= Real::pi(pw).log().mul2si(-1);
  kt.tre.reserve(J + 1);
  kt.tim.reserve(J + 1);
  for (unsigned long j = 0; j <= J; j++) {
    Real v = kt.hR * long(j);
    Complex lg(pw);
    for (long sh : g.shifts)
      lg += lgamma_complex(Complex{kt.cR + Real(sg - sh, pw), v}, pw);
    if (g.half)
      lg += lgamma_complex(
          Complex{(kt.cR + Real(sg, pw)).mul2si(-1) - Real(g.hq, pw),
                  v.mul2si(-1)},
          pw);
    lg.re += lnP;
    lg.im += phs * v;
    Complex val = cexp(lg, pw) / Complex{kt.cR, v};
    Real am = Real::hypot(val.re, val.im, MPFR_RNDU);
    kt.absmax = Real::max(kt.absmax, mag_up(am));
    kt.tre.push_back(std::move(val.re));
    kt.tim.push_back(std::move(val.im));
  }

  Real Jr(long(J), kPb);
  Real one(1, kPb);
  kt.roundC =
      kt.absmax *
      ((Jr * 8 + Real(32, kPb)) * (Jr + one) * Real::pow2(-pw, kPb) +
       (Jr * 2 + Real(3, kPb)) *
           (Real::pow2(-long(pw) + 15, kPb) + Real::pow2(-long(cprec) + 2, kPb)));
  kt.roundC = inflate(kt.roundC);
  return kt;
}

// Table ladder for one value of sg, shared by every sum that integrates
// gamma_m(sg + z): per-table contour heights follow the saddle of the
// largest t, with boundaries at the chord slopes of F(c) = ln gamma_m(sg+c)
// so that per-term cancellation against the stored kernel stays bounded.
TableSet build_tables(const GammaFactorSpec& g, long sg,
                      const std::vector<Use>& uses,
                      const std::vector<uint64_t>& dtab, Prec pw,
                      Prec cprec) {
  double lnt_max = -1e300, lnt_min = 1e300;
  for (const Use& u : uses) {
    lnt_max = std::max(lnt_max, std::log(double(u.X)) - u.lnqt);
    lnt_min = std::min(lnt_min, -u.lnqt);
  }
  double c0 = c_floor(g, sg);
  double cbig = std::min(std::max(c0, saddle_c(g, sg, lnt_max)), kCCap);
  double reff = g.r + (g.half ? 0.25 : 0.0);
  std::vector<double> cs{c0};
  while (cs.back() < cbig - 1e-9)
    cs.push_back(std::min(
        cbig,
        cs.back() + 2 * std::sqrt(2 * cs.back() * kLadderNats / reff)));
  size_t L = cs.size();

  TableSet ts;
  for (size_t i = 0; i + 1 < L; i++) {
    double b = (lgsum_d(g, sg, cs[i + 1]) - lgsum_d(g, sg, cs[i])) /
               (cs[i + 1] - cs[i]);
    if (!ts.lnb.empty()) b = std::max(b, ts.lnb.back());
    ts.lnb.push_back(b);
  }

  std::vector<double> lnTgt(L, 1e300);
  const double ln8L = std::log(8.0 * double(L));
  for (const Use& u : uses) {
    std::vector<double> lw(L, -HUGE_VAL);
    for (unsigned long n = 1; n <= u.X; n++) {
      double lnn = std::log(double(n));
      double lnt = lnn - u.lnqt;
      size_t idx = ts.pick(lnt);
      lw[idx] = lnadd(lw[idx], std::log(double(dtab[n])) - u.sigma_d * lnn -
                                   cs[idx] * lnt);
    }
    for (size_t i = 0; i < L; i++)
      if (lw[i] != -HUGE_VAL)
        lnTgt[i] = std::min(lnTgt[i], u.lnTq - ln8L - lw[i]);
  }

  for (size_t i = 0; i < L; i++) {
    double tlo = (i == 0 ? lnt_min : ts.lnb[i - 1]) - 0.01;
    double thi = (i + 1 == L ? lnt_max : ts.lnb[i]) + 0.01;
    thi = std::max(thi, tlo);
    ts.tabs.push_back(
        make_table(g, sg, cs[i], lnTgt[i], tlo, thi, pw, cprec));
  }
  return ts;
}

struct SideOut {
  Real S;         // the smoothed sum, in sum units
  ErrorBudget B;  // absolute, in sum units
};

// sum_{n<=X} lambda(n) n^-sigma G_sg(n / qt) by tabulated vertical-line
// quadrature; one table per contour level, one complex rotation per term.
SideOut eval_sum(const SymPowerCoefficients& sc, const TableSet& ts, long sg,
                 long ww, unsigned long X, const Real& qt, const Real& tail,
                 Prec pw) {
  size_t L = ts.tabs.size();
  Real sigma = Real(2 * sg - ww, pw).mul2si(-1);
  Real lnqt = qt.log();
  std::vector<Real> rawf(L, Real(pw)), rawc(L, Real(pw)),
      Wsum(L, Real(kPb));
  Real lnn(pw), lnt(pw), e(pw), pref(pw), th(pw), us(pw), uc(pw), wr(pw),
      wi(pw), t1(pw), rt(pw), accf(pw), accc(pw), ap(kPb);
  for (unsigned long n = 1; n <= X; n++) {
    const Real& lam = sc.lam(n);
    if (lam.is_zero()) continue;
    mpfr_set_ui(lnn.get(), n, MPFR_RNDN);
    mpfr_log(lnn.get(), lnn.get(), MPFR_RNDN);
    mpfr_sub(lnt.get(), lnn.get(), lnqt.get(), MPFR_RNDN);
    size_t idx = ts.pick(lnt.to_double());
    const KernelTable& kt = ts.tabs[idx];
    mpfr_fmma(e.get(), sigma.get(), lnn.get(), kt.cR.get(), lnt.get(),
              MPFR_RNDN);
    mpfr_neg(e.get(), e.get(), MPFR_RNDN);
    mpfr_exp(e.get(), e.get(), MPFR_RNDN);
    mpfr_mul(pref.get(), lam.get(), e.get(), MPFR_RNDN);
    mpfr_mul(th.get(), kt.hR.get(), lnt.get(), MPFR_RNDN);
    mpfr_neg(th.get(), th.get(), MPFR_RNDN);
    mpfr_sin_cos(us.get(), uc.get(), th.get(), MPFR_RNDN);
    mpfr_set_ui(wr.get(), 1, MPFR_RNDN);
    mpfr_set_zero(wi.get(), 1);
    mpfr_set_zero(accf.get(), 1);
    mpfr_set_zero(accc.get(), 1);
    for (unsigned long j = 0; j <= kt.J; j++) {
      mpfr_fmms(rt.get(), kt.tre[j].get(), wr.get(), kt.tim[j].get(),
                wi.get(), MPFR_RNDN);
      mpfr_add(accf.get(), accf.get(), rt.get(), MPFR_RNDN);
      if (!(j & 1)) mpfr_add(accc.get(), accc.get(), rt.get(), MPFR_RNDN);
      mpfr_fmms(t1.get(), wr.get(), uc.get(), wi.get(), us.get(), MPFR_RNDN);
      mpfr_fmma(wi.get(), wr.get(), us.get(), wi.get(), uc.get(), MPFR_RNDN);
      mpfr_swap(wr.get(), t1.get());
    }
    mpfr_mul_2si(accf.get(), accf.get(), 1, MPFR_RNDN);
    mpfr_sub(accf.get(), accf.get(), kt.tre[0].get(), MPFR_RNDN);
    mpfr_fma(rawf[idx].get(), pref.get(), accf.get(), rawf[idx].get(),
             MPFR_RNDN);
    mpfr_mul_2si(accc.get(), accc.get(), 1, MPFR_RNDN);
    mpfr_sub(accc.get(), accc.get(), kt.tre[0].get(), MPFR_RNDN);
    mpfr_fma(rawc[idx].get(), pref.get(), accc.get(), rawc[idx].get(),
             MPFR_RNDN);
    mpfr_abs(ap.get(), pref.get(), MPFR_RNDU);
    mpfr_add(Wsum[idx].get(), Wsum[idx].get(), ap.get(), MPFR_RNDU);
  }

  SideOut out;
  out.S = Real(pw);
  Real Sc(pw);
  Real twopi = Real::pi(pw).mul2si(1);
  for (size_t i = 0; i < L; i++) {
    Real f = ts.tabs[i].hR / twopi;
    out.S += rawf[i] * f;       // fine trapezoid, step h
    Sc += rawc[i] * f.mul2si(1);  // coarse trapezoid, step 2h
  }

  out.B.series_tail = tail;
  Real tr(kPb), dc(kPb), rc(kPb), xc(kPb);
  Real twopiB = Real::pi(kPb).mul2si(1);
  for (size_t i = 0; i < L; i++) {
    const KernelTable& kt = ts.tabs[i];
    add_up(tr, inflate(kt.truncC * Wsum[i]));
    add_up(dc, inflate(kt.discC * Wsum[i]));
    add_up(rc, inflate(rd(kt.h) / twopiB * kt.roundC * Wsum[i]));
    add_up(xc, inflate((kt.truncC2 + kt.discC2) * Wsum[i]));
    add_up(xc, inflate(rd(kt.h) / twopiB * kt.roundC * Wsum[i]).mul2si(2));
  }
  out.B.quad_trunc = tr;
  out.B.quad_disc = dc;
  out.B.rounding = rc;
  if (getenv("SYMRH_DEBUG"))
    for (size_t i = 0; i < L; i++) {
      const KernelTable& kt = ts.tabs[i];
      Real f = kt.hR / twopi;
      Real d = (rawf[i] * f - rawc[i] * f.mul2si(1));
      fprintf(stderr,
              "  tab[%zu] sg=%ld c=%.3f h=%.4f J=%lu W=%.3e "
              "Sf=%.6e d=%.3e b2=%.3e tC=%.2e dC=%.2e tC2=%.2e dC2=%.2e\n",
              i, sg, kt.c, kt.h, kt.J, Wsum[i].to_double(),
              (rawf[i] * f).to_double(), d.to_double(),
              ((kt.truncC2 + kt.discC2) * Wsum[i]).to_double(),
              kt.truncC.to_double(), kt.discC.to_double(),
              kt.truncC2.to_double(), kt.discC2.to_double());
    }
  // The step-2h sum carries its own rigorous bound; a wider gap between the
  // two grids can only come from a defect in the tables or the rotation.
  add_up(xc, tr);
  add_up(xc, dc);
  if (!(mag_up(out.S - Sc) <= xc))
    throw error("quadrature self-check failed: the two grid refinements "
                "disagree beyond their combined rigorous bounds");
  return out;
}

// Plain truncated Dirichlet series times the completed-value prefactor.
ValueWithBudget direct_sum(const SymPowerCoefficients& sc,
                           const GammaFactorSpec& g, unsigned long N, long s,
                           unsigned long X, Prec pw, Prec cprec) {
  Real gam = gamma_factor(g, s, pw);
  Real nh = Real::pow(Real(long(N), pw),
                      Real(long(g.m) * s, pw).mul2si(-1));
  Real pre = nh * gam;
  Real sig = Real(2 * s - g.w(), pw).mul2si(-1);
  Real acc(pw), nn(pw), term(pw), aacc(kPb), at(kPb);
  for (unsigned long n = 1; n <= X; n++) {
    const Real& lam = sc.lam(n);
    if (lam.is_zero()) continue;
    mpfr_set_ui(nn.get(), n, MPFR_RNDN);
    mpfr_pow(term.get(), nn.get(), sig.get(), MPFR_RNDN);
    mpfr_div(term.get(), lam.get(), term.get(), MPFR_RNDN);
    mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDN);
    mpfr_abs(at.get(), term.get(), MPFR_RNDU);
    mpfr_add(aacc.get(), aacc.get(), at.get(), MPFR_RNDU);
  }
  ValueWithBudget out;
  out.value = pre * acc;
  Real preU = mag_up(pre);
  Real sigB = Real(2 * s - g.w(), kPb).mul2si(-1);
  out.budget.series_tail = inflate(preU * coef_tail(g.m + 1, sigB, X));
  out.budget.rounding = inflate(
      preU * aacc *
      (Real(long(4 * X + 512), kPb) * Real::pow2(-pw, kPb) +
       Real::pow2(-long(cprec) + 2, kPb)));
  out.budget.quad_trunc = Real(kPb);
  out.budget.quad_disc = Real(kPb);
  return out;
}

struct VPlan {
  long s = 0;
  int Aidx = 0;  // 0: A = 1, 1: A = 6/5
  Strategy strat = Strategy::afe;
  long anchor = 0;  // argument whose budget this evaluation must meet
  unsigned long Xd = 0;
  unsigned long X1 = 0, X2 = 0;
  Real tail1{kPb}, tail2{kPb};
};

struct EvalOut {
  Real S1, S2;    // side sums (direct: S1 holds the whole value, S2 = 0)
  Real nh1, nh2;  // level powers N^{m sg/2} per side
  ErrorBudget B;  // assembled, value units, sign-of-epsilon free
};

class Engine {
 public:
  const SymPowerCoefficients* sc;
  GammaFactorSpec g;
  unsigned m, k;
  unsigned long N;
  long w, D, shalf;
  Prec prec, cprec;
  long tau;
  bool pairing;
  Prec pw = 0;
  std::map<std::pair<long, int>, VPlan> plans;
  std::map<long, std::vector<Use>> uses;
  std::map<long, TableSet> tables;
  std::map<std::pair<long, int>, EvalOut> outs;
  std::vector<uint64_t> dtab;

  Engine(const SymPowerCoefficients* sc_, unsigned m_, unsigned k_,
         unsigned long N_, Prec prec_, long tau_, bool pairing_)
      : sc(sc_), m(m_), k(k_), N(N_), prec(prec_), tau(tau_),
        pairing(pairing_) {
    if (prec < 64) throw error("precision below 64 bits is not supported");
    if (tau > -8) throw error("target_rel_log2 must be at most -8");
    g = make_gamma_spec(m, k);
    w = g.w();
    D = w - 1;
    shalf = (w + 2) / 2;
    cprec = sc ? sc->prec : prec + 512;
  }

  Real T_of(long s) const {
    return Real::pow2(tau, kPb) * gamma_scale(g, s, N, kPb);
  }
  double lnT_of(long s) const { return T_of(s).log().to_double(); }

  double ln_nh(long sg) const {
    return 0.5 * double(m) * double(sg) * std::log(double(N));
  }
  Real nh_pw(long sg) const {
    return Real::pow(Real(long(N), pw), Real(long(m) * sg, pw).mul2si(-1));
  }
  Real nh_pb(long sg) const {
    return inflate(
        Real::pow(Real(long(N), kPb), Real(long(m) * sg, kPb).mul2si(-1)));
  }

  void add_use(long sg, double lnT, double lnqt, unsigned long X) {
    uses[sg].push_back({lnT - ln_nh(sg), double(sg) - double(w) / 2, lnqt, X});
  }

  bool plan_direct(long s) {
    if (2 * s - w < 3) return false;  // sigma >= 1.5 needed in practice
    unsigned long cap = kXCapDirect;
    if (sc) cap = std::min(cap, sc->cutoff());
    Real tgt = Real::pow2(tau - 2, kPb);
    Real sig = Real(2 * s - w, kPb).mul2si(-1);
    for (unsigned long X = 16; X <= cap; X *= 2) {
      if (coef_tail(m + 1, sig, X) <= tgt) {
        VPlan p;
        p.s = s;
        p.anchor = s;
        p.strat = Strategy::direct;
        p.Xd = X;
        plans[{s, 0}] = p;
        return true;
      }
      if (X > cap / 2) break;
    }
    return false;
  }

  void plan_value(long s, int Aidx, long anchor) {
    auto key = std::make_pair(s, Aidx);
    auto it = plans.find(key);
    if (it != plans.end() && lnT_of(anchor) >= lnT_of(it->second.anchor))
      return;
    VPlan p;
    p.s = s;
    p.Aidx = Aidx;
    p.anchor = anchor;
    long s2 = w + 1 - s;
    Real T = T_of(anchor);
    double lnT = T.log().to_double();
    Real nm2 = Real::pow(Real(long(N), kPb), Real(long(m), kPb).mul2si(-1));
    Real qt1_ub = inflate(Aidx ? nm2 * 6 / 5 : nm2);
    Real qt2_ub = inflate(Aidx ? nm2 * 5 / 6 : nm2);
    double lnA = Aidx ? std::log(1.2) : 0.0;
    double lnqt1 = 0.5 * m * std::log(double(N)) + lnA;
    double lnqt2 = 0.5 * m * std::log(double(N)) - lnA;
    Real sig1 = Real(2 * s - w, kPb).mul2si(-1);
    Real sig2 = Real(2 * s2 - w, kPb).mul2si(-1);
    Real tgt1 = T.mul2si(-3) / nh_pb(s);
    Real tgt2 = T.mul2si(-3) / nh_pb(s2);
    ShellPlan sp1 = plan_sum(g, m, s, sig1, double(s) - double(w) / 2,
                             qt1_ub, lnqt1, tgt1);
    ShellPlan sp2 = plan_sum(g, m, s2, sig2, double(s2) - double(w) / 2,
                             qt2_ub, lnqt2, tgt2);
    p.X1 = sp1.X;
    p.tail1 = sp1.tail;
    p.X2 = sp2.X;
    p.tail2 = sp2.tail;
    if (p.X1 > kXCapAfe || p.X2 > kXCapAfe)
      throw error("smoothed-sum truncation exceeds the hard cap");
    if (sc && (p.X1 > sc->cutoff() || p.X2 > sc->cutoff())) {
      std::ostringstream os;
      os << "coefficient data too short: have " << sc->cutoff() << ", need "
         << std::max(p.X1, p.X2) << " (m=" << m << ", s=" << s << ")";
      throw error(os.str());
    }
    add_use(s, lnT, lnqt1, p.X1);
    add_use(s2, lnT, lnqt2, p.X2);
    plans[key] = p;
  }

  void plan_main() {
    for (long s = shalf; s <= w; s++) {
      if (!plan_direct(s)) plan_value(s, 0, s);
      if (pairing) plan_value(w + 1 - s, 1, s);
    }
  }

  void plan_epsilon() {
    long sa = shalf, sb = shalf + 1;
    plan_value(sa, 0, sa);
    plan_value(sa, 1, sa);
    if (!plan_direct(sb)) plan_value(sb, 0, sb);
    plan_value(sb, 1, sb);
  }

  unsigned long max_X() const {
    unsigned long mx = 0;
    for (const auto& kv : plans)
      mx = std::max({mx, kv.second.Xd, kv.second.X1, kv.second.X2});
    return mx;
  }

  void prepare() {
    tables.clear();
    unsigned long mx = 2;
    for (const auto& kv : uses)
      for (const Use& u : kv.second) mx = std::max(mx, u.X);
    dtab = divisor_power_table(m + 1, mx);
    for (const auto& kv : uses)
      tables.emplace(kv.first,
                     build_tables(g, kv.first, kv.second, dtab, pw, cprec));
  }

  void eval_all() {
    outs.clear();
    for (const auto& kv : plans) {
      const VPlan& p = kv.second;
      EvalOut o;
      if (p.strat == Strategy::direct) {
        ValueWithBudget v = direct_sum(*sc, g, N, p.s, p.Xd, pw, cprec);
        o.S1 = v.value;
        o.S2 = Real(pw);
        o.nh1 = Real(1, pw);
        o.nh2 = Real(pw);
        o.B = v.budget;
      } else {
        long s2 = w + 1 - p.s;
        Real nm2 =
            Real::pow(Real(long(N), pw), Real(long(m), pw).mul2si(-1));
        Real qt1 = p.Aidx ? nm2 * 6 / 5 : nm2;
        Real qt2 = p.Aidx ? nm2 * 5 / 6 : nm2;
        SideOut a =
            eval_sum(*sc, tables.at(p.s), p.s, w, p.X1, qt1, p.tail1, pw);
        SideOut b =
            eval_sum(*sc, tables.at(s2), s2, w, p.X2, qt2, p.tail2, pw);
        o.S1 = a.S;
        o.S2 = b.S;
        o.nh1 = nh_pw(p.s);
        o.nh2 = nh_pw(s2);
        o.B.scaled_add(a.B, nh_pb(p.s));
        o.B.scaled_add(b.B, nh_pb(s2));
        Real vb = mag_up(o.nh1 * o.S1) + mag_up(o.nh2 * o.S2);
        add_up(o.B.rounding, inflate(vb.mul2si(-pw + 5)));
      }
      outs[kv.first] = std::move(o);
    }
  }

  void check_budgets() const {
    bool bad = false;
    for (const auto& kv : plans) {
      const ErrorBudget& B = outs.at(kv.first).B;
      bool over = !(B.total() <= T_of(kv.second.anchor));
      if (getenv("SYMRH_DEBUG") && over)
        fprintf(stderr,
                "BUDGET s=%ld A=%d anchor=%ld tot=%.3e T=%.3e "
                "[st=%.2e tr=%.2e di=%.2e ro=%.2e]\n",
                kv.first.first, kv.first.second, kv.second.anchor,
                B.total().to_double(), T_of(kv.second.anchor).to_double(),
                B.series_tail.to_double(), B.quad_trunc.to_double(),
                B.quad_disc.to_double(), B.rounding.to_double());
      if (over) bad = true;
    }
    if (bad) throw BudgetRetry{};
  }

  Real value_of(long s, int Aidx, int eps) const {
    const EvalOut& o = outs.at({s, Aidx});
    Real v = o.nh1 * o.S1;
    Real v2 = o.nh2 * o.S2;
    return eps == 1 ? v + v2 : v - v2;
  }

  // Sign search: the assembled value must be independent of the smoothing
  // parameter for the true sign only.
  int eps_from_outs() const {
    long sa = shalf, sb = shalf + 1;
    int found = 0, good = 0;
    for (int e = -1; e <= 1; e += 2) {
      bool ok = true;
      for (long s : {sa, sb}) {
        Real dev = mag_up(value_of(s, 0, e) - value_of(s, 1, e));
        Real allowed(kPb);
        add_up(allowed, outs.at({s, 0}).B.total());
        add_up(allowed, outs.at({s, 1}).B.total());
        allowed = allowed.mul2si(6);
        if (!(dev <= allowed)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        found++;
        good = e;
      }
    }
    return found == 1 ? good : 0;
  }

  CriticalValues assemble(int eps) {
    CriticalValues cv;
    cv.m = m;
    cv.k = k;
    cv.level = N;
    cv.label = sc->label;
    cv.epsilon = eps;
    cv.prec = prec;
    cv.prec_work = pw;
    cv.vals.assign(size_t(D + 1), CriticalValue{});
    for (long s = shalf; s <= w; s++) {
      CriticalValue& slot = cv.vals[size_t(w - s)];
      slot.s = s;
      slot.value = value_of(s, 0, eps);
      slot.strategy = plans.at({s, 0}).strat;
      slot.budget = outs.at({s, 0}).B;
    }
    for (long n = w - shalf + 1; n <= D; n++) {
      const CriticalValue& src = cv.vals[size_t(D - n)];
      CriticalValue& slot = cv.vals[size_t(n)];
      slot.s = w - n;
      slot.value = eps == 1 ? src.value : -src.value;
      slot.strategy = Strategy::reflect;
      slot.budget = src.budget;
    }
    if (pairing) {
      for (long s = shalf; s <= w; s++) {
        CriticalValue& slot = cv.vals[size_t(s - 1)];
        Real vm = value_of(w + 1 - s, 1, eps);
        slot.pairing_checked = true;
        slot.pairing_residual = mag_up(vm - slot.value);
        Real allowed(kPb);
        add_up(allowed, outs.at({s, 0}).B.total());
        add_up(allowed, outs.at({w + 1 - s, 1}).B.total());
        slot.pairing_allowed = allowed;
      }
    }
    return cv;
  }

  int run_epsilon() {
    for (int attempt = 0; attempt < 2; attempt++) {
      pw = prec + 160 + attempt * 128;
      try {
        prepare();
        eval_all();
        check_budgets();
        int e = eps_from_outs();
        if (e == 0) throw BudgetRetry{};
        return e;
      } catch (const BudgetRetry&) {
        outs.clear();
      }
    }
    throw error(
        "functional-equation sign is ambiguous at this precision; raise the "
        "coefficient precision or the working precision");
  }

  CriticalValues run(int eps_override) {
    for (int attempt = 0; attempt < 2; attempt++) {
      pw = prec + 160 + attempt * 128;
      try {
        prepare();
        eval_all();
        check_budgets();
        int eps = eps_override;
        if (!eps) {
          eps = eps_from_outs();
          if (eps == 0) throw BudgetRetry{};
          if (sc->epsilon_hint && eps != sc->epsilon_hint)
            throw error(
                "functional-equation sign contradicts the stored hint");
        }
        return assemble(eps);
      } catch (const BudgetRetry&) {
        outs.clear();
      }
    }
    throw error(
        "error budget exceeded at both working precisions; the coefficient "
        "precision is too low for this target");
  }
};

long eff_tau(Prec prec, long t) { return t ? t : -(long(prec) / 2 + 16); }

// signed gamma_m at a real argument off every pole
Real gamma_signed(const GammaFactorSpec& g, const Real& sv, Prec prec) {
  Real p(1, prec);
  for (long sh : g.shifts) p *= (sv - Real(sh, prec)).gamma();
  if (g.half) p *= (sv.mul2si(-1) - Real(g.hq, prec)).gamma();
  Real e = -(Real::pi(prec).mul2si(1).log() * sv) * long(g.r);
  if (g.half) e -= Real::pi(prec).log() * sv.mul2si(-1);
  return p * e.exp();
}

}  // namespace

GammaFactorSpec make_gamma_spec(unsigned m, unsigned k) {
  if (m == 0) throw error("symmetric-power order must be positive");
  if (k < 4 || k % 2) throw error("weight must be even and at least 4");
  GammaFactorSpec g;
  g.m = m;
  g.k = k;
  g.half = (m % 2 == 0);
  g.r = g.half ? m / 2 : (m + 1) / 2;
  g.hq = long(g.r) * (k - 1) / 2;
  for (unsigned j = 0; j < g.r; j++) g.shifts.push_back(long(j) * (k - 1));
  return g;
}

bool gamma_is_pole(const GammaFactorSpec& g, long s) {
  if (s <= g.shifts.back()) return true;
  if (g.half && s % 2 == 0 && s <= 2 * g.hq) return true;
  return false;
}

Real gamma_factor(const GammaFactorSpec& g, long s, Prec prec) {
  if (gamma_is_pole(g, s))
    throw error("gamma factor has a pole at this argument");
  return gamma_signed(g, Real(s, prec), prec);
}

Real gamma_scale(const GammaFactorSpec& g, long s, unsigned long N,
                 Prec prec) {
  Real sv(s, prec);
  if (gamma_is_pole(g, s)) sv += Real(1, prec) / Real(4, prec);
  Real p = gamma_signed(g, sv, prec).abs();
  p *= Real::pow(Real(long(N), prec), (sv * long(g.m)).mul2si(-1));
  return p;
}

int epsilon_m1_formula(const NewformData& fm) {
  unsigned long Nv = fm.level;
  int mu = 1;
  unsigned long nn = Nv;
  for (unsigned long p = 2; p * p <= nn; p++)
    if (nn % p == 0) {
      nn /= p;
      if (nn % p == 0) throw error("level is not squarefree");
      mu = -mu;
    }
  if (nn > 1) mu = -mu;
  mpz_class den = 1;
  mpz_ui_pow_ui(den.get_mpz_t(), Nv, fm.weight / 2 - 1);
  mpz_class q = fm.a(Nv) / den;
  if (q * den != fm.a(Nv) || (q != 1 && q != -1))
    throw error("a(N) N^{1-k/2} is not a unit; data is inconsistent");
  int sgn = (fm.weight / 2) % 2 ? -1 : 1;
  return sgn * mu * (q == 1 ? 1 : -1);
}

Real ErrorBudget::total() const {
  Real t(128);
  add_up(t, series_tail);
  add_up(t, quad_trunc);
  add_up(t, quad_disc);
  add_up(t, rounding);
  return t;
}

void ErrorBudget::scaled_add(const ErrorBudget& o, const Real& c) {
  add_up(series_tail, inflate(c * o.series_tail));
  add_up(quad_trunc, inflate(c * o.quad_trunc));
  add_up(quad_disc, inflate(c * o.quad_disc));
  add_up(rounding, inflate(c * o.rounding));
}

const char* strategy_name(Strategy st) {
  switch (st) {
    case Strategy::direct:
      return "direct";
    case Strategy::reflect:
      return "reflect";
    case Strategy::afe:
      return "afe";
  }
  return "?";
}

const CriticalValue& CriticalValues::by_s(long s) const {
  long n = w() - s;
  if (n < 0 || n >= long(vals.size()))
    throw error("argument outside the critical range");
  return vals[size_t(n)];
}

ValueWithBudget lseries_direct(const SymPowerCoefficients& c, long s,
                               unsigned long X, Prec prec) {
  GammaFactorSpec g = make_gamma_spec(c.m, c.weight);
  if (2 * s - g.w() < 3)
    throw error("direct summation needs sigma >= 3/2");
  if (X == 0 || X > c.cutoff())
    throw error("truncation point outside the stored coefficient range");
  return direct_sum(c, g, c.level, s, X, prec + 64, c.prec);
}

GValue inverse_mellin_G(const GammaFactorSpec& g, long s, const Real& t,
                        Prec prec) {
  if (!(t > Real(0, 64)))
    throw error("inverse_mellin_G requires t > 0");
  Prec pw = prec + 96;
  Real lt(pw);
  mpfr_set(lt.get(), t.get(), MPFR_RNDN);
  lt = lt.log();
  double lnt_d = lt.to_double();
  double c = std::min(std::max(c_floor(g, s), saddle_c(g, s, lnt_d)), kCCap);
  double lnTgt = gprod(g, s, c).log().to_double() +
                 double(-long(prec) - 12) * std::log(2.0);
  KernelTable kt = make_table(g, s, c, lnTgt, lnt_d, lnt_d, pw, pw);

  Real e(pw), th(pw), us(pw), uc(pw), wr(pw), wi(pw), t1(pw), rt(pw),
      accf(pw);
  mpfr_mul(e.get(), kt.cR.get(), lt.get(), MPFR_RNDN);
  mpfr_neg(e.get(), e.get(), MPFR_RNDN);
  mpfr_exp(e.get(), e.get(), MPFR_RNDN);  // t^-c
  mpfr_mul(th.get(), kt.hR.get(), lt.get(), MPFR_RNDN);
  mpfr_neg(th.get(), th.get(), MPFR_RNDN);
  mpfr_sin_cos(us.get(), uc.get(), th.get(), MPFR_RNDN);
  mpfr_set_ui(wr.get(), 1, MPFR_RNDN);
  mpfr_set_zero(wi.get(), 1);
  for (unsigned long j = 0; j <= kt.J; j++) {
    mpfr_fmms(rt.get(), kt.tre[j].get(), wr.get(), kt.tim[j].get(), wi.get(),
              MPFR_RNDN);
    mpfr_add(accf.get(), accf.get(), rt.get(), MPFR_RNDN);
    mpfr_fmms(t1.get(), wr.get(), uc.get(), wi.get(), us.get(), MPFR_RNDN);
    mpfr_fmma(wi.get(), wr.get(), us.get(), wi.get(), uc.get(), MPFR_RNDN);
    mpfr_swap(wr.get(), t1.get());
  }
  mpfr_mul_2si(accf.get(), accf.get(), 1, MPFR_RNDN);
  mpfr_sub(accf.get(), accf.get(), kt.tre[0].get(), MPFR_RNDN);

  GValue out;
  out.value = e * accf * (kt.hR / Real::pi(pw).mul2si(1));
  Real pu(kPb);
  mpfr_set(pu.get(), e.get(), MPFR_RNDU);
  out.abs_err = inflate(
      pu * (kt.truncC + kt.discC +
            rd(kt.h) / Real::pi(kPb).mul2si(1) * kt.roundC));
  return out;
}

int determine_epsilon(const SymPowerCoefficients& c, Prec prec) {
  Engine e(&c, c.m, c.weight, c.level, prec, eff_tau(prec, 0), false);
  e.plan_epsilon();
  int eps = e.run_epsilon();
  if (c.epsilon_hint && eps != c.epsilon_hint)
    throw error("functional-equation sign contradicts the stored hint");
  return eps;
}

unsigned long required_cutoff(unsigned m, unsigned k, unsigned long N,
                              Prec prec, long target_rel_log2, bool pairing) {
  Engine e(nullptr, m, k, N, prec, eff_tau(prec, target_rel_log2), pairing);
  e.plan_main();
  e.plan_epsilon();
  return std::max<unsigned long>(e.max_X(), 16);
}

CriticalValues critical_values(const SymPowerCoefficients& c, Prec prec,
                               int eps_override, bool pairing,
                               long target_rel_log2) {
  if (eps_override != 0 && eps_override != 1 && eps_override != -1)
    throw error("eps_override must be -1, 0 or +1");
  Engine e(&c, c.m, c.weight, c.level, prec,
           eff_tau(prec, target_rel_log2), pairing);
  e.plan_main();
  if (!eps_override) e.plan_epsilon();
  return e.run(eps_override);
}

LemmaBoundsReport check_lemma_bounds(const SymPowerCoefficients& c,
                                     const std::vector<long>& sample_s) {
  const unsigned m = c.m, k = c.weight;
  const long w = long(m) * (k - 1);
  // admissible from s >= (m+1)(k-1)/2, i.e. 2s >= (m+1)(k-1)
  const long twice_lo = long(m + 1) * (k - 1);
  const Prec pw = std::max<Prec>(c.prec, 96);
  Real bound = Real(mpq_class(13, 9), kPb, MPFR_RNDU) *
               Real::pow(Real(2, kPb), Real(2 * long(m) - long(k) + 1,
                                            kPb).mul2si(-1), MPFR_RNDU);
  LemmaBoundsReport rep;
  for (long s : sample_s) {
    LemmaBoundEntry e;
    e.s = s;
    e.bound = bound;
    if (2 * s - w < 3) {  // need sigma > 1.25
      e.note = "series not absolutely convergent with margin at this s";
      rep.entries.push_back(std::move(e));
      continue;
    }
    Real sig = Real(2 * s - w, pw).mul2si(-1);
    unsigned long X = std::min<unsigned long>(c.cutoff(), 20000);
    Real acc(pw), nn(pw), term(pw), aacc(kPb), at(kPb);
    for (unsigned long n = 2; n <= X; n++) {
      const Real& lam = c.lam(n);
      if (lam.is_zero()) continue;
      mpfr_set_ui(nn.get(), n, MPFR_RNDN);
      mpfr_pow(term.get(), nn.get(), sig.get(), MPFR_RNDN);
      mpfr_div(term.get(), lam.get(), term.get(), MPFR_RNDN);
      mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDN);
      mpfr_abs(at.get(), term.get(), MPFR_RNDU);
      mpfr_add(aacc.get(), aacc.get(), at.get(), MPFR_RNDU);
    }
    Real tail = tail_bound(m, Real(2 * s - w, kPb).mul2si(-1), X);
    Real round_err =
        mul_up(aacc, Real(long(4 * X + 64), kPb) * Real::pow2(-pw, kPb));
    e.lhs = add_up(add_up(mag_up(acc), tail), round_err);
    // ratio only: |L(s)| / log^{m+1}(k + |s + w/2 - 1| + 2)
    Real arg = Real(std::abs(2 * s + w - 2) + 2 * long(k) + 4, kPb).mul2si(-1);
    Real lg = arg.log();
    e.convexity_ratio =
        (Real(1, kPb) + mag_up(acc)) / lg.pow_si(long(m) + 1);
    if (k < 6) {
      e.note = "hypothesis k >= 6 unmet";
    } else if (2 * s < twice_lo) {
      e.note = "s below (m+1)(k-1)/2";
    } else {
      e.checked = true;
      e.pass = e.lhs < e.bound;
      if (!e.pass) rep.failures++;
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace symrh
