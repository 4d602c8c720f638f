#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "symrh/hp.hpp"

namespace symrh {

// Truncated integer power series: sum_{n < size()} c[n] q^n.
// All arithmetic is exact; truncation order is explicit everywhere.
class IntegerSeries {
 public:
  explicit IntegerSeries(size_t len) : c_(len) {}
  static IntegerSeries one(size_t len) {
    IntegerSeries s(len);
    if (len > 0) s.c_[0] = 1;
    return s;
  }

  size_t size() const { return c_.size(); }
  mpz_class& operator[](size_t n) { return c_[n]; }
  const mpz_class& operator[](size_t n) const { return c_[n]; }

  IntegerSeries add(const IntegerSeries& o, size_t len) const;
  IntegerSeries sub(const IntegerSeries& o, size_t len) const;
  IntegerSeries mul(const IntegerSeries& o, size_t len) const;
  IntegerSeries pow(unsigned long e, size_t len) const;
  // Multiply by q^s (s >= 0), truncating at len.
  IntegerSeries shifted(size_t s, size_t len) const;
  // Substitute q -> q^d.
  IntegerSeries dilated(size_t d, size_t len) const;
  // Divide every coefficient by v; remainder must vanish.
  IntegerSeries exact_divide(const mpz_class& v) const;

 private:
  std::vector<mpz_class> c_;
};

// prod_{n>=1} (1 - q^n) via the pentagonal number theorem.
IntegerSeries euler_product_series(size_t len);
// (prod (1 - q^n))^3 via Jacobi: sum (-1)^j (2j+1) q^{j(j+1)/2}.
IntegerSeries euler_product_cubed(size_t len);

}  // namespace symrh
