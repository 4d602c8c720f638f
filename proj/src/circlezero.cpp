#include "symrh/circlezero.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>

namespace symrh {

namespace {

constexpr Prec kPb = 96;

const char* verdict_names_circle[] = {"certified", "numeric-only", "failed"};
const char* verdict_names_disk[] = {"all-inside", "not-all-inside",
                                    "indeterminate"};

Complex raise_prec(const Complex& z, Prec pw) {
  Complex out(pw);
  mpfr_set(out.re.get(), z.re.get(), MPFR_RNDN);
  mpfr_set(out.im.get(), z.im.get(), MPFR_RNDN);
  return out;
}

CApprox raise_prec(const CApprox& a, Prec pw) {
  return {raise_prec(a.val, pw), a.rad};
}

// indices [lo, hi] of the certainly-relevant coefficient window: exact zeros
// are stripped at both ends
void trim_exact_zeros(const std::vector<CApprox>& c, size_t& lo, size_t& hi) {
  lo = 0;
  hi = c.empty() ? 0 : c.size() - 1;
  while (hi > lo && c[hi].val.is_zero() && c[hi].rad.is_zero()) hi--;
  while (lo < hi && c[lo].val.is_zero() && c[lo].rad.is_zero()) lo++;
}

Real norm1_hi_c(const std::vector<CApprox>& c) {
  Real s(kPb);
  for (const CApprox& a : c) s = add_up(s, a.abs_hi());
  return s;
}

Real deriv_norm1_hi_c(const std::vector<CApprox>& c) {
  Real s(kPb);
  for (size_t j = 1; j < c.size(); j++)
    s = add_up(s, mul_up(c[j].abs_hi(), Real(long(j), kPb)));
  return s;
}

Complex horner_mid(const std::vector<Complex>& a, const Complex& z) {
  Complex acc = a.back();
  for (size_t j = a.size() - 1; j-- > 0;) acc = acc * z + a[j];
  return acc;
}

CApprox horner_box(const std::vector<CApprox>& a, const Complex& z) {
  CApprox za{z, Real(kPb)};
  CApprox acc = a.back();
  for (size_t j = a.size() - 1; j-- > 0;) acc = acc * za + a[j];
  return acc;
}

Real abs_lo_c(const CApprox& a) {
  Real x = sub_down(a.val.abs(MPFR_RNDD), a.rad);
  return x.sign() < 0 ? Real(x.prec()) : x;
}

}  // namespace

const char* to_string(CircleVerdict v) {
  return verdict_names_circle[int(v)];
}
const char* to_string(DiskVerdict v) { return verdict_names_disk[int(v)]; }

Real RootBox::modulus_lo() const {
  if (!radius_ok) return Real(kPb);
  Real x = sub_down(rho.abs(MPFR_RNDD), radius);
  return x.sign() < 0 ? Real(kPb) : x;
}

Real RootBox::modulus_hi() const {
  return add_up(rho.abs(MPFR_RNDU), radius);
}

std::vector<RootBox> find_roots(const ComplexPolynomial& p, Prec prec) {
  size_t lo, hi;
  trim_exact_zeros(p.c, lo, hi);
  if (p.c.empty() || hi == lo) {
    if (lo > 0) {  // pure monomial c z^lo
      std::vector<RootBox> zs(lo);
      for (RootBox& b : zs) {
        b.rho = Complex(kPb);
        b.radius = Real(kPb);
        b.radius_ok = true;
        b.residual_hi = Real(kPb);
      }
      return zs;
    }
    return {};
  }
  if (!(abs_lo_c(p.c[hi]).sign() > 0))
    throw error("leading coefficient is uncertain");

  const Prec pw = prec + 64;
  const size_t n = hi - lo;  // deflated degree
  std::vector<CApprox> coef(n + 1);
  for (size_t j = 0; j <= n; j++) coef[j] = raise_prec(p.c[lo + j], pw);
  std::vector<Complex> a(n + 1), da(n);
  for (size_t j = 0; j <= n; j++) a[j] = coef[j].val;
  for (size_t j = 1; j <= n; j++) da[j - 1] = a[j] * Real(long(j), pw);

  // initial guesses on a circle sized by the root-product estimate
  Real r0(kPb);
  {
    Real a0 = p.c[lo].val.abs(MPFR_RNDN), an = p.c[hi].val.abs(MPFR_RNDN);
    if (a0.is_zero())
      r0 = Real(mpq_class(1, 2), kPb);
    else
      r0 = Real::pow(a0 / an, Real(mpq_class(1, long(n)), kPb));
    r0 = Real::max(Real(mpq_class(1, 5), kPb),
                   Real::min(Real(5, kPb), r0));
    r0 = r0 * Real(mpq_class(23, 20), kPb);
  }
  std::vector<Complex> z(n, Complex(pw));
  {
    Real twopi = Real::pi(pw).mul2si(1);
    for (size_t i = 0; i < n; i++) {
      Real th = twopi * (Real(long(i), pw) +
                         Real(mpq_class(1234567, 4000000), pw)) /
                Real(long(n), pw);
      z[i] = Complex::from_polar(Real(r0), th);
    }
  }

  const Real eps_tight = Real::pow2(-(long(pw) - 16), kPb);
  const Real eps_ok = Real::pow2(-(long(prec) / 2 + 16), kPb);
  const int itmax = 800;
  bool converged = false;
  for (int it = 0; it < itmax; it++) {
    Real maxstep(kPb);
    for (size_t i = 0; i < n; i++) {
      Complex pv = horner_mid(a, z[i]);
      if (pv.is_zero()) continue;
      Complex dv = horner_mid(da, z[i]);
      if (dv.is_zero()) {
        z[i].re += Real::pow2(-long(pw) / 2, pw);
        continue;
      }
      Complex newton = pv / dv;
      Complex s(pw);
      bool collision = false;
      for (size_t j = 0; j < n; j++) {
        if (j == i) continue;
        Complex diff = z[i] - z[j];
        if (diff.is_zero()) {
          collision = true;
          break;
        }
        s += Complex(Real(1, pw)) / diff;
      }
      if (collision) {
        z[i].im += Real::pow2(-long(pw) / 3, pw);
        continue;
      }
      Complex denom = Complex(Real(1, pw)) - newton * s;
      Complex w = denom.is_zero() ? newton : newton / denom;
      z[i] -= w;
      Real rel = w.abs(MPFR_RNDU) / Real::max(z[i].abs(MPFR_RNDU), Real(1, pw));
      maxstep = Real::max(maxstep, rel);
    }
    if (maxstep < eps_tight || (it >= 48 && maxstep < eps_ok)) {
      converged = true;
      break;
    }
  }

  std::vector<CApprox> dcoef(n);
  for (size_t j = 1; j <= n; j++) {
    dcoef[j - 1] = CApprox{coef[j].val * Real(long(j), pw),
                           mul_up(coef[j].rad, Real(long(j), kPb))};
  }

  std::vector<RootBox> boxes;
  boxes.reserve(n);
  Real contract =
      mul_up(Real::pow2(-(long(prec) / 2), kPb), norm1_hi_c(coef));
  bool contract_ok = true;
  for (size_t i = 0; i < n; i++) {
    RootBox b;
    b.rho = z[i];
    CApprox pv = horner_box(coef, z[i]);
    b.residual_hi = pv.abs_hi();
    if (horner_mid(a, z[i]).abs(MPFR_RNDU) > contract) contract_ok = false;
    CApprox dv = horner_box(dcoef, z[i]);
    Real dlo = abs_lo_c(dv);
    if (dlo.sign() > 0) {
      b.radius = div_up(mul_up(Real(long(n), kPb), b.residual_hi), dlo);
      b.radius_ok = true;
    }
    boxes.push_back(std::move(b));
  }
  if (!converged || !contract_ok)
    throw root_error("root iteration failed to reach the residual target",
                     std::move(boxes));

  std::sort(boxes.begin(), boxes.end(), [](const RootBox& x, const RootBox& y) {
    Real ax = x.rho.arg(), ay = y.rho.arg();
    if (ax < ay) return true;
    if (ay < ax) return false;
    return x.rho.abs() < y.rho.abs();
  });

  if (lo > 0) {
    std::vector<RootBox> zs(lo);
    for (RootBox& b : zs) {
      b.rho = Complex(kPb);
      b.radius = Real(kPb);
      b.radius_ok = true;
      b.residual_hi = Real(kPb);
    }
    zs.insert(zs.end(), std::make_move_iterator(boxes.begin()),
              std::make_move_iterator(boxes.end()));
    return zs;
  }
  return boxes;
}

std::vector<RootBox> find_roots(const RealPolynomial& p, Prec prec) {
  return find_roots(to_complex(p), prec);
}

bool self_inversive_multiplier(const ComplexPolynomial& p, Complex& kappa) {
  if (p.c.empty()) return false;
  const size_t d = p.c.size() - 1;
  const Prec pw = std::max<Prec>(p.c[0].val.prec(), 128);
  size_t j0 = 0;
  Real best(kPb);
  for (size_t j = 0; j <= d; j++) {
    Real lo = abs_lo_c(p.c[j]);
    if (lo > best) {
      best = lo;
      j0 = j;
    }
  }
  if (!(best.sign() > 0)) return false;
  Complex k = raise_prec(p.c[d - j0].val.conj(), pw) /
              raise_prec(p.c[j0].val, pw);
  // |kappa - true multiplier| bound from the defining pair
  Real krad = div_up(
      add_up(p.c[d - j0].rad, mul_up(k.abs(MPFR_RNDU), p.c[j0].rad)), best);
  Real ka = k.abs(MPFR_RNDN);
  if ((ka - Real(1, pw)).abs() > add_up(krad, Real::pow2(-16, kPb)))
    return false;
  k = k / ka;  // force unimodular; deviation charged below
  krad = add_up(krad.mul2si(1), Real::pow2(-long(pw) + 8, kPb));
  for (size_t j = 0; j <= d; j++) {
    Complex resid = p.c[d - j].val.conj() - k * p.c[j].val;
    Real allowed = add_up(
        add_up(p.c[d - j].rad, p.c[j].rad),
        add_up(mul_up(krad, p.c[j].abs_hi()),
               mul_up(p.c[j].abs_hi(), Real::pow2(-long(pw) + 6, kPb))));
    if (resid.abs(MPFR_RNDU) > allowed) return false;
  }
  kappa = k;
  return true;
}

namespace {

size_t count_certified_flips(const std::vector<int8_t>& s, int wrap) {
  int first = 0, prev = 0;
  size_t flips = 0;
  for (int8_t v : s) {
    if (!v) continue;
    if (!prev)
      first = v;
    else if (v != prev)
      flips++;
    prev = v;
  }
  if (!prev) return 0;
  if (prev != first * wrap) flips++;
  return flips;
}

}  // namespace

ZeroCertificate certify_on_circle(const ComplexPolynomial& p, Prec prec,
                                  size_t max_grid) {
  ZeroCertificate cert;
  cert.name = p.name;
  if (p.c.empty()) throw error("empty polynomial");
  const size_t d = p.c.size() - 1;
  cert.degree = d;
  if (!(abs_lo_c(p.c.back()).sign() > 0))
    throw error("leading coefficient is uncertain");
  Complex kappa;
  if (!self_inversive_multiplier(p, kappa))
    throw error("polynomial is not self-inversive within its error bounds");

  const Prec pw = prec + 64;
  std::vector<CApprox> coef(d + 1);
  for (size_t j = 0; j <= d; j++) coef[j] = raise_prec(p.c[j], pw);

  // sigma^2 = conj(kappa); F = conj(sigma) e^{-id theta/2} p(e^{i theta})
  Real psi0 = -kappa.conj().arg().mul2si(-1);  // arg of conj(sigma)
  Real slackF = mul_up(add_up(deriv_norm1_hi_c(coef),
                              mul_up(norm1_hi_c(coef),
                                     Real(long(d) + 8, kPb))),
                       Real::pow2(-long(pw) + 4, kPb));
  Real twopi = Real::pi(pw).mul2si(1);
  Real one(1, pw);
  Real dh = Real(long(d), pw).mul2si(-1);

  auto sample = [&](size_t i, size_t S) -> int8_t {
    Real th = twopi * Real(long(i), pw) / Real(long(S), pw);
    Complex z = Complex::from_polar(one, th);
    CApprox v = horner_box(coef, z);
    Complex w = Complex::from_polar(one, psi0 - dh * th);
    Complex val = v.val * w;
    Real bound = add_up(add_up(v.rad, slackF), val.im.abs());
    if (val.re > bound) return 1;
    Real nb = -bound;
    if (val.re < nb) return -1;
    return 0;
  };

  const int wrap = (d % 2 == 0) ? 1 : -1;
  size_t S = 64;
  while (S < 4 * (d + 1) && S < max_grid) S *= 2;
  S = std::min(S, std::max<size_t>(max_grid, 8));
  std::vector<int8_t> signs(S);
  for (size_t i = 0; i < S; i++) signs[i] = sample(i, S);
  size_t count = count_certified_flips(signs, wrap);
  while (count < d && signs.size() * 2 <= max_grid) {
    size_t S2 = signs.size() * 2;
    std::vector<int8_t> next(S2);
    for (size_t i = 0; i < signs.size(); i++) {
      next[2 * i] = signs[i];
      next[2 * i + 1] = sample(2 * i + 1, S2);
    }
    signs.swap(next);
    count = count_certified_flips(signs, wrap);
  }
  if (count > d)
    throw error("sign-change count exceeds the degree (inconsistent input)");
  cert.sign_changes = count;
  cert.grid_size = signs.size();

  try {
    cert.roots = find_roots(p, prec);
  } catch (const root_error& e) {
    cert.roots = e.partial;
    cert.note = "root refinement incomplete; ";
  }
  bool all_rad = !cert.roots.empty();
  bool off_circle_certain = false;
  Real dev(kPb), dev_hi(kPb);
  for (const RootBox& b : cert.roots) {
    Real md = (b.rho.abs(MPFR_RNDN) - Real(1, kPb)).abs();
    dev = Real::max(dev, md);
    if (b.radius_ok) {
      dev_hi = Real::max(dev_hi, add_up(md, b.radius));
      if (b.modulus_lo() > Real(1, kPb) || b.modulus_hi() < Real(1, kPb))
        off_circle_certain = true;
    } else {
      all_rad = false;
    }
  }
  cert.max_circle_deviation = dev;
  cert.max_circle_deviation_hi = all_rad ? dev_hi : dev;
  cert.deviation_rigorous = all_rad;

  if (count == d) {
    cert.circle = CircleVerdict::certified;
    cert.note += "sign-change count reached the degree";
  } else if (off_circle_certain) {
    cert.circle = CircleVerdict::failed;
    cert.note += "a root is certainly off the unit circle";
  } else {
    cert.circle = CircleVerdict::numeric_only;
    cert.note += "grid cap reached before the count; root radii are evidence";
  }
  return cert;
}

ZeroCertificate certify_on_circle(const RealPolynomial& p, Prec prec,
                                  size_t max_grid) {
  return certify_on_circle(to_complex(p), prec, max_grid);
}

namespace {

DiskVerdict disk_from_roots(const ComplexPolynomial& p, Prec prec,
                            bool closed) {
  std::vector<RootBox> roots;
  try {
    roots = find_roots(p, prec);
  } catch (const root_error&) {
    return DiskVerdict::indeterminate;
  }
  if (closed) {
    for (const RootBox& b : roots)
      if (b.radius_ok && b.modulus_lo() > Real(1, kPb))
        return DiskVerdict::not_all_inside;
    return DiskVerdict::all_inside;
  }
  bool all_ok = true;
  Real max_hi(kPb);
  for (const RootBox& b : roots) {
    if (b.radius_ok && b.modulus_lo() > Real(1, kPb))
      return DiskVerdict::not_all_inside;
    if (!b.radius_ok) all_ok = false;
    else max_hi = Real::max(max_hi, b.modulus_hi());
  }
  if (!all_ok || !(max_hi < Real(1, kPb))) return DiskVerdict::indeterminate;
  // the disks must be pairwise disjoint for the one-root-per-disk argument
  for (size_t i = 0; i < roots.size(); i++)
    for (size_t j = i + 1; j < roots.size(); j++) {
      Real sep = (roots[i].rho - roots[j].rho).abs(MPFR_RNDD);
      if (!(sep > add_up(roots[i].radius, roots[j].radius)))
        return DiskVerdict::indeterminate;
    }
  return DiskVerdict::all_inside;
}

}  // namespace

DiskVerdict certify_in_disk(const ComplexPolynomial& p, Prec prec,
                            bool closed) {
  size_t lo, hi;
  trim_exact_zeros(p.c, lo, hi);
  if (p.c.empty() || hi == lo) return DiskVerdict::all_inside;  // monomial
  if (!(abs_lo_c(p.c[hi]).sign() > 0)) return DiskVerdict::indeterminate;
  if (closed) return disk_from_roots(p, prec, true);

  const size_t n0 = hi - lo;
  const Prec pw = prec + 64 + Prec(2 * n0);
  std::vector<CApprox> b(n0 + 1);
  for (size_t j = 0; j <= n0; j++) b[j] = raise_prec(p.c[lo + j], pw);

  while (true) {
    size_t n = b.size() - 1;
    if (n == 0) return DiskVerdict::all_inside;
    long maxe = LONG_MIN;
    for (const CApprox& x : b) {
      if (!x.val.re.is_zero()) maxe = std::max(maxe, x.val.re.exponent());
      if (!x.val.im.is_zero()) maxe = std::max(maxe, x.val.im.exponent());
      if (!x.rad.is_zero()) maxe = std::max(maxe, x.rad.exponent());
    }
    if (maxe == LONG_MIN) return DiskVerdict::indeterminate;
    for (CApprox& x : b) {
      x.val.re = x.val.re.mul2si(-maxe);
      x.val.im = x.val.im.mul2si(-maxe);
      x.rad = x.rad.mul2si(-maxe);
    }
    Real n_lo = abs_lo_c(b[n]), n_hi = b[n].abs_hi();
    Real z_lo = abs_lo_c(b[0]), z_hi = b[0].abs_hi();
    Real d_lo = sub_down(Real::mul(n_lo, n_lo, MPFR_RNDD), mul_up(z_hi, z_hi));
    Real d_hi = -sub_down(Real::mul(z_lo, z_lo, MPFR_RNDD),
                          mul_up(n_hi, n_hi));
    if (d_lo.sign() > 0) {
      std::vector<CApprox> q(n);
      CApprox anc{b[n].val.conj(), b[n].rad};
      const CApprox& a0 = b[0];
      for (size_t j = 0; j < n; j++) {
        CApprox t1 = anc * b[j + 1];
        CApprox t2 = a0 * CApprox{b[n - 1 - j].val.conj(), b[n - 1 - j].rad};
        q[j] = t1 - t2;
      }
      b.swap(q);
      continue;
    }
    if (!(d_hi.sign() > 0)) return DiskVerdict::not_all_inside;
    break;  // straddle: fall back to root radii
  }
  return disk_from_roots(p, prec, false);
}

DiskVerdict certify_in_disk(const RealPolynomial& p, Prec prec, bool closed) {
  return certify_in_disk(to_complex(p), prec, closed);
}

Real rouche_margin(const RealPolynomial& A, const RealPolynomial& B,
                   size_t samples, Prec prec) {
  if (samples < 64) throw error("rouche_margin needs at least 64 samples");
  const Prec pw = prec + 64;
  const size_t nd = std::max(A.c.size(), B.c.size());
  RealPolynomial D;
  D.name = "A-B";
  D.c.reserve(nd);
  for (size_t j = 0; j < nd; j++) {
    Approx aj = j < A.c.size() ? A.c[j] : Approx(pw);
    Approx bj = j < B.c.size() ? B.c[j] : Approx(pw);
    D.c.push_back(aj - bj);
  }
  Real slack = mul_up(
      div_up(Real::pi(kPb), Real(long(samples), kPb)),
      add_up(B.deriv_norm1_hi(), D.deriv_norm1_hi()));
  // z rounding at each sample
  Real zslack = mul_up(add_up(B.deriv_norm1_hi(), D.deriv_norm1_hi()),
                       Real::pow2(-long(pw) + 4, kPb));
  Real twopi = Real::pi(pw).mul2si(1);
  Real one(1, pw);
  Real worst(kPb);
  bool first = true;
  for (size_t i = 0; i < samples; i++) {
    Real th = twopi * Real(long(i), pw) / Real(long(samples), pw);
    Complex z = Complex::from_polar(one, th);
    CApprox bv = B.eval(z), dv = D.eval(z);
    Real blo = sub_down(bv.val.abs(MPFR_RNDD), add_up(bv.rad, zslack));
    Real dhi = add_up(dv.val.abs(MPFR_RNDU), add_up(dv.rad, zslack));
    Real m = sub_down(blo, dhi);
    if (first || m < worst) {
      worst = m;
      first = false;
    }
  }
  return sub_down(worst, slack);
}

ComplexPolynomial lalin_smyth_construct(const ComplexPolynomial& h, size_t d,
                                        const Complex& lambda, Prec prec) {
  if (h.c.empty()) throw error("empty polynomial");
  const size_t n = h.c.size() - 1;
  if (d < n) throw error("d must be at least deg h");
  Real la = lambda.abs(MPFR_RNDN);
  if ((la - Real(1, kPb)).abs() > Real::pow2(-16, kPb))
    throw error("lambda is not unimodular");
  if (certify_in_disk(h, prec, true) == DiskVerdict::not_all_inside)
    throw error("a root of h lies certainly outside the closed unit disk");

  const Prec pw = prec + 64;
  Complex lam = raise_prec(lambda, pw) / la;
  Real lam_slack = Real::pow2(-long(pw) + 6, kPb);

  ComplexPolynomial P;
  P.name = "P^lambda";
  P.c.assign(d + 1, CApprox(pw));
  for (size_t j = 0; j <= n; j++) {
    // z^{d-n} h contributes h_j at degree d-n+j
    size_t idx = d - n + j;
    P.c[idx] = P.c[idx] + raise_prec(h.c[j], pw);
  }
  for (size_t j = 0; j <= n; j++) {
    // lambda conj-reversed(h) contributes lambda conj(h_{n-j}) at degree j
    const CApprox& src = h.c[n - j];
    CApprox t{lam * src.val.conj(),
              add_up(src.rad, mul_up(src.abs_hi(), lam_slack))};
    P.c[j] = P.c[j] + t;
  }
  return P;
}

}  // namespace symrh
