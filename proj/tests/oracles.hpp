#pragma once

#include <cstdint>
#include <vector>

#include "symrh/formsrc.hpp"
#include "symrh/hp.hpp"
#include "symrh/perpoly.hpp"

// Independent reference implementations the tests compare the library
// against.  Each one deliberately takes a different computational route from
// the code under test.
namespace oracle {

using symrh::Complex;
using symrh::NewformData;
using symrh::Prec;
using symrh::Real;

// Completed L-value of a level-1 form via the upper-incomplete-gamma
// partition of the Mellin integral:
//   Lambda(s) = sum_n a(n) (2 pi n)^{-s} Gamma(s, 2 pi n)
//             + (-1)^{k/2} sum_n a(n) (2 pi n)^{-(k-s)} Gamma(k-s, 2 pi n).
// Terms decay like e^{-2 pi n}; the sum stops when eight consecutive terms
// fall below the working-precision noise floor.
Real completed_value_m1(const NewformData& f, long s, Prec prec);

// Symmetric-power Dirichlet coefficients by direct Euler convolution in the
// n domain: for every prime and every Satake monomial u, fold the geometric
// series (1 - u p^{-s})^{-1} into the coefficient array in ascending order.
// The result has size X+1 and is indexed by n directly; entry 0 is unused.
std::vector<Complex> euler_convolution(const NewformData& f, unsigned m,
                                       unsigned long X, Prec prec);

// Number of ordered w-tuples of positive integers with product n, counted
// by divisor recursion.
unsigned long divisor_count_enum(unsigned w, unsigned long n);

// Monic polynomial with the given roots; coefficient boxes carry the
// accumulated rounding radii.
std::vector<symrh::CApprox> poly_from_roots(const std::vector<Complex>& roots,
                                            Prec prec);

// Eta-product newforms: eta(z)^a eta(Nz)^a with a = 24/(N+1), weight a,
// squarefree level N in {2, 3, 5}.
NewformData eta_newform(unsigned long N, unsigned long X);

// Random multiplicative coefficient system obeying the Ramanujan bound
// |a(p)| <= 2 p^{(k-1)/2}, the Hecke prime-power recursion, and
// a(p) = +-p^{(k-2)/2} at p | N.  Deterministic in the seed.
NewformData synthetic_newform(unsigned k, unsigned long N, unsigned long X,
                              uint64_t seed);

}  // namespace oracle
