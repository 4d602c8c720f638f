#pragma once

#include "symrh/hp.hpp"

namespace symrh {

// Exact Bernoulli numbers B_{2n}, n = 1..count (tangent-number recurrence).
const std::vector<mpq_class>& bernoulli_even(size_t count);

// Principal-branch log-gamma for Re z > 0, accurate to a few ulps at `prec`.
// Computed by upward shift + Stirling; the result may differ from the
// principal Im by multiples of 2*pi only through exp(), which is immune.
Complex lgamma_complex(const Complex& z, Prec prec);
Complex gamma_complex(const Complex& z, Prec prec);

// Rigorous upper bound for |Gamma(x+iy)|, x > 0, via
//   |Gamma(x+iy)| = Gamma(x) * prod_{n>=0} (1 + y^2/(x+n)^2)^(-1/2)
// truncated after `factors` terms (each factor < 1, so truncation is an
// upper bound). Low fixed precision, outward rounded.
Real abs_gamma_upper(const Real& x, const Real& y, unsigned factors = 64);

}  // namespace symrh
