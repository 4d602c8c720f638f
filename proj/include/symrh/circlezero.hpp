#pragma once

#include <string>
#include <vector>

#include "symrh/perpoly.hpp"

namespace symrh {

enum class CircleVerdict { certified, numeric_only, failed };
enum class DiskVerdict { all_inside, not_all_inside, indeterminate };

const char* to_string(CircleVerdict v);
const char* to_string(DiskVerdict v);

// One located root.  radius bounds |rho - true root| over every polynomial
// the coefficient intervals contain; radius_ok is false near multiple roots,
// where the a-posteriori bound degenerates.
struct RootBox {
  Complex rho;
  Real residual_hi{96};
  Real radius{96};
  bool radius_ok = false;

  Real modulus_lo() const;  // max(|rho| - radius, 0); 0 when !radius_ok
  Real modulus_hi() const;  // |rho| + radius; meaningless when !radius_ok
};

struct ZeroCertificate {
  std::string name;
  size_t degree = 0;
  std::vector<RootBox> roots;
  // max_j ||rho_j| - 1| over midpoints; the _hi variant adds the root radii
  // and is rigorous only when deviation_rigorous (every radius_ok).
  Real max_circle_deviation{96};
  Real max_circle_deviation_hi{96};
  bool deviation_rigorous = false;
  size_t sign_changes = 0;
  size_t grid_size = 0;
  CircleVerdict circle = CircleVerdict::numeric_only;
  DiskVerdict disk = DiskVerdict::indeterminate;
  bool has_rouche = false;
  Real rouche_margin{96};
  std::string note;
};

// Thrown by find_roots when the iteration stalls; carries whatever was
// located so far.
struct root_error : error {
  std::vector<RootBox> partial;
  root_error(const std::string& msg, std::vector<RootBox> p)
      : error(msg), partial(std::move(p)) {}
};

// All roots (exact zeros at the origin split off first), sorted by argument.
// Residuals are interval evaluations over the coefficient boxes; the error
// radius is degree * residual_hi / |p'(rho)|_lo.
std::vector<RootBox> find_roots(const ComplexPolynomial& p, Prec prec);
std::vector<RootBox> find_roots(const RealPolynomial& p, Prec prec);

// Unimodular kappa with conj(c_{d-j}) = kappa c_j for all j, within the
// summed radii.  Returns false when no such multiplier fits.
bool self_inversive_multiplier(const ComplexPolynomial& p, Complex& kappa);

// Sign-change certification on |z| = 1.  The circle function
// F(theta) = conj(sigma) e^{-id theta/2} p(e^{i theta}), sigma^2 = conj(kappa),
// is real for self-inversive p and has at most d zeros per period, so a
// certified sign-change count of d proves every root lies on the circle.
// The grid doubles until the count reaches d or max_grid points.
ZeroCertificate certify_on_circle(const ComplexPolynomial& p, Prec prec,
                                  size_t max_grid = size_t(1) << 20);
ZeroCertificate certify_on_circle(const RealPolynomial& p, Prec prec,
                                  size_t max_grid = size_t(1) << 20);

// Schur-Cohn recursion with outward rounding; find_roots fallback when a
// contraction test straddles zero.  closed = accept boundary roots (used for
// the construction precondition): rejects only roots certainly outside.
DiskVerdict certify_in_disk(const ComplexPolynomial& p, Prec prec,
                            bool closed = false);
DiskVerdict certify_in_disk(const RealPolynomial& p, Prec prec,
                            bool closed = false);

// Lower bound for min_{|z|=1} (|B(z)| - |A(z) - B(z)|): sampled minimum minus
// the inter-sample slack (pi/S) (||B'||_1 + ||(A-B)'||_1).  Positive margin
// certifies |A - B| < |B| on the whole circle.  S >= 64 required.
Real rouche_margin(const RealPolynomial& A, const RealPolynomial& B,
                   size_t samples, Prec prec);

// z^{d-n} h(z) + lambda z^n conj-reversed(h)(z), n = deg h <= d, |lambda| = 1
// (renormalized; material deviation is an error).  Precondition: no root of h
// certainly outside the closed unit disk.
ComplexPolynomial lalin_smyth_construct(const ComplexPolynomial& h, size_t d,
                                        const Complex& lambda, Prec prec);

}  // namespace symrh
