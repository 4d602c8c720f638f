#include "symrh/iseries.hpp"

#include <algorithm>
#include <cstring>

namespace symrh {

IntegerSeries IntegerSeries::add(const IntegerSeries& o, size_t len) const {
  IntegerSeries r(len);
  for (size_t i = 0; i < len; i++) {
    if (i < c_.size()) r.c_[i] += c_[i];
    if (i < o.c_.size()) r.c_[i] += o.c_[i];
  }
  return r;
}

IntegerSeries IntegerSeries::sub(const IntegerSeries& o, size_t len) const {
  IntegerSeries r(len);
  for (size_t i = 0; i < len; i++) {
    if (i < c_.size()) r.c_[i] += c_[i];
    if (i < o.c_.size()) r.c_[i] -= o.c_[i];
  }
  return r;
}

namespace {

size_t max_coeff_bits(const std::vector<mpz_class>& v) {
  size_t b = 1;
  for (const auto& x : v)
    if (x != 0) b = std::max(b, mpz_sizeinbase(x.get_mpz_t(), 2));
  return b;
}

// Pack magnitudes of one sign class into B-bit byte-aligned slots.
void pack_sign(const std::vector<mpz_class>& v, int sign, size_t stride,
               std::vector<unsigned char>& buf) {
  for (size_t i = 0; i < v.size(); i++) {
    if (mpz_sgn(v[i].get_mpz_t()) != sign) continue;
    size_t count = 0;
    mpz_export(buf.data() + i * stride, &count, -1, 1, 0, 0, v[i].get_mpz_t());
  }
}

}  // namespace

// Kronecker substitution: evaluate both series at q = 2^B, multiply once
// with GMP, then read balanced B-bit digits back.  B is sized so the true
// product coefficients satisfy |c| < 2^{B-1}, which makes the balanced
// digits unique.
IntegerSeries IntegerSeries::mul(const IntegerSeries& o, size_t len) const {
  IntegerSeries r(len);
  size_t na = std::min(c_.size(), len);
  size_t nb = std::min(o.c_.size(), len);
  if (na == 0 || nb == 0) return r;

  size_t ba = max_coeff_bits(c_);
  size_t bb = max_coeff_bits(o.c_);
  size_t overlap = std::min(na, nb);
  size_t lg = 1;
  while ((size_t{1} << lg) < overlap) lg++;
  size_t B = ((ba + bb + lg + 3 + 7) / 8) * 8;
  size_t stride = B / 8;

  std::vector<unsigned char> abuf(na * stride, 0), bbuf(nb * stride, 0);
  mpz_class apos, aneg, bpos, bneg;
  {
    std::vector<mpz_class> av(c_.begin(), c_.begin() + na);
    std::vector<mpz_class> bv(o.c_.begin(), o.c_.begin() + nb);
    pack_sign(av, 1, stride, abuf);
    mpz_import(apos.get_mpz_t(), abuf.size(), -1, 1, 0, 0, abuf.data());
    std::fill(abuf.begin(), abuf.end(), 0);
    pack_sign(av, -1, stride, abuf);
    mpz_import(aneg.get_mpz_t(), abuf.size(), -1, 1, 0, 0, abuf.data());
    pack_sign(bv, 1, stride, bbuf);
    mpz_import(bpos.get_mpz_t(), bbuf.size(), -1, 1, 0, 0, bbuf.data());
    std::fill(bbuf.begin(), bbuf.end(), 0);
    pack_sign(bv, -1, stride, bbuf);
    mpz_import(bneg.get_mpz_t(), bbuf.size(), -1, 1, 0, 0, bbuf.data());
  }
  mpz_class prod = (apos - aneg) * (bpos - bneg);

  int psign = mpz_sgn(prod.get_mpz_t());
  if (psign == 0) return r;
  mpz_class pabs = abs(prod);
  size_t pbytes = (mpz_sizeinbase(pabs.get_mpz_t(), 2) + 7) / 8;
  std::vector<unsigned char> pbuf(std::max(pbytes, len * stride) + stride, 0);
  size_t count = 0;
  mpz_export(pbuf.data(), &count, -1, 1, 0, 0, pabs.get_mpz_t());

  mpz_class half = mpz_class(1) << (B - 1);
  mpz_class full = mpz_class(1) << B;
  int carry = 0;
  for (size_t i = 0; i < len; i++) {
    mpz_class w;
    mpz_import(w.get_mpz_t(), stride, -1, 1, 0, 0, pbuf.data() + i * stride);
    w += carry;
    if (w >= half) {
      w -= full;
      carry = 1;
    } else {
      carry = 0;
    }
    r.c_[i] = psign < 0 ? mpz_class(-w) : w;
  }
  return r;
}

IntegerSeries IntegerSeries::pow(unsigned long e, size_t len) const {
  IntegerSeries acc = IntegerSeries::one(len);
  if (e == 0) return acc;
  IntegerSeries base(*this);
  while (true) {
    if (e & 1) acc = acc.mul(base, len);
    e >>= 1;
    if (e == 0) break;
    base = base.mul(base, len);
  }
  return acc;
}

IntegerSeries IntegerSeries::shifted(size_t s, size_t len) const {
  IntegerSeries r(len);
  for (size_t i = 0; i + s < len && i < c_.size(); i++) r.c_[i + s] = c_[i];
  return r;
}

IntegerSeries IntegerSeries::dilated(size_t d, size_t len) const {
  if (d == 0) throw error("dilation factor must be positive");
  IntegerSeries r(len);
  for (size_t i = 0; i * d < len && i < c_.size(); i++) r.c_[i * d] = c_[i];
  return r;
}

IntegerSeries IntegerSeries::exact_divide(const mpz_class& v) const {
  if (v == 0) throw error("exact_divide by zero");
  IntegerSeries r(c_.size());
  for (size_t i = 0; i < c_.size(); i++) {
    mpz_class q, rem;
    mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), c_[i].get_mpz_t(),
                v.get_mpz_t());
    if (rem != 0) throw error("exact_divide: nonzero remainder");
    r.c_[i] = q;
  }
  return r;
}

IntegerSeries euler_product_series(size_t len) {
  IntegerSeries r(len);
  for (long j = 0;; j++) {
    // generalized pentagonal numbers j(3j-1)/2 for j = 0, 1, -1, 2, -2, ...
    long g1 = j * (3 * j - 1) / 2;
    long g2 = j * (3 * j + 1) / 2;
    if (static_cast<size_t>(g1) >= len && static_cast<size_t>(g2) >= len)
      break;
    int sg = (j % 2 == 0) ? 1 : -1;
    if (static_cast<size_t>(g1) < len) r[g1] += sg;
    if (j > 0 && static_cast<size_t>(g2) < len) r[g2] += sg;
  }
  return r;
}

IntegerSeries euler_product_cubed(size_t len) {
  IntegerSeries r(len);
  for (long j = 0;; j++) {
    long t = j * (j + 1) / 2;
    if (static_cast<size_t>(t) >= len) break;
    long v = 2 * j + 1;
    r[t] += (j % 2 == 0) ? v : -v;
  }
  return r;
}

}  // namespace symrh
