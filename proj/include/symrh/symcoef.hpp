#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symrh/formsrc.hpp"
#include "symrh/hp.hpp"

namespace symrh {

// Roots of X^2 - a(p) X + p^{k-1} at unramified p (Deligne-bounded, so a
// conjugate pair); (a(p), 0) at p | N.
struct SatakeParams {
  unsigned long p = 2;
  Complex alpha;
  Complex beta;
  bool ramified = false;
};

SatakeParams satake(const mpz_class& ap, unsigned long p, unsigned k,
                    bool ramified, Prec prec);

// c_0..c_e with c_j = a_m(p^j): the T^j coefficients of
// prod_{0<=i<=m} (1 - alpha^{m-i} beta^i T)^{-1}.
std::vector<Complex> local_factor_coeffs(const SatakeParams& sp, unsigned m,
                                         unsigned e, unsigned k, Prec prec);

// Normalized variant lambda_m(p^j) = a_m(p^j) / p^{j m (k-1)/2}.
std::vector<Real> local_lambda(const SatakeParams& sp, unsigned m, unsigned e,
                               unsigned k, Prec prec);

struct SymPowerCoefficients {
  unsigned m = 1;
  unsigned weight = 12;
  unsigned long level = 1;
  std::string label;
  Prec prec = 128;
  int epsilon_hint = 0;      // carried over from the form when m == 1
  std::vector<Real> lambda;  // lambda[i] holds lambda_m(i+1)

  unsigned long cutoff() const { return lambda.size(); }
  const Real& lam(unsigned long n) const {
    if (n == 0 || n > lambda.size()) throw error("lambda index out of range");
    return lambda[n - 1];
  }
};

SymPowerCoefficients sym_coeffs(const NewformData& fm, unsigned m,
                                unsigned long X, Prec prec);

// d_w(n): ordered factorizations of n into w positive parts.
mpz_class divisor_power(unsigned w, unsigned long n);

// d_w(n) for all n <= X at once (sieve); d[0] = 0.  Values must stay inside
// 64 bits, which holds comfortably for w <= 8, X <= a few 10^6.
std::vector<uint64_t> divisor_power_table(unsigned w, unsigned long X);

// Rigorous upper bound for sum_{n>X} d_{m+1}(n) n^{-sigma}, sigma > 1.
// Outward-rounded; monotone nonincreasing in X.
Real tail_bound(unsigned m, const Real& sigma, unsigned long X);

}  // namespace symrh
