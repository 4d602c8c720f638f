#pragma once

#include <string>
#include <vector>

#include "symrh/hp.hpp"
#include "symrh/symcoef.hpp"

namespace symrh {

// Archimedean factor gamma_m(s):
//   m = 2r-1:  (2pi)^{-rs} prod_{j=0}^{r-1} Gamma(s - j(k-1))
//   m = 2r:    pi^{-s/2} Gamma(s/2 - floor(r(k-1)/2)) * [the m=2r-1 factor]
struct GammaFactorSpec {
  unsigned m = 1;
  unsigned k = 12;
  unsigned r = 1;            // count of Gamma(s - j(k-1)) factors
  bool half = false;         // even m carries the extra half-argument factor
  long hq = 0;               // floor(r(k-1)/2), used only when half
  std::vector<long> shifts;  // j(k-1), j = 0..r-1

  long w() const { return static_cast<long>(m) * (k - 1); }
};

GammaFactorSpec make_gamma_spec(unsigned m, unsigned k);

// Pole test at integer s (all Gamma arguments are in (1/2)Z there).
bool gamma_is_pole(const GammaFactorSpec& g, long s);

// gamma_m(s) at integer s; throws at a pole.
Real gamma_factor(const GammaFactorSpec& g, long s, Prec prec);

// N^{ms/2} |gamma_m(s)|, nudging s by 1/4 when s sits on a pole.  Used to
// convert relative targets into absolute ones.
Real gamma_scale(const GammaFactorSpec& g, long s, unsigned long N, Prec prec);

// Sign of the m = 1 functional equation: (-1)^{k/2} mu(N) a(N) N^{1-k/2}.
// Exact integer arithmetic; throws if the result is not +-1.
int epsilon_m1_formula(const NewformData& fm);

// Outward-rounded absolute error ledger, kept at small fixed precision.
struct ErrorBudget {
  Real series_tail{96};
  Real quad_trunc{96};
  Real quad_disc{96};
  Real rounding{96};
  Real total() const;
  void scaled_add(const ErrorBudget& o, const Real& c);  // this += c*o, upward
};

enum class Strategy { direct, reflect, afe };
const char* strategy_name(Strategy st);

struct CriticalValue {
  long s = 0;
  Real value;  // completed value at s: N^{ms/2} gamma_m(s) L_{m,f}(s), real
  ErrorBudget budget;
  Strategy strategy = Strategy::afe;
  // Mirror consistency check: the value at w+1-s recomputed from scratch with
  // a different smoothing parameter, compared against epsilon * value.
  bool pairing_checked = false;
  Real pairing_residual{96};
  Real pairing_allowed{96};
};

struct CriticalValues {
  unsigned m = 1;
  unsigned k = 12;
  unsigned long level = 1;
  std::string label;
  int epsilon = 1;
  Prec prec = 128;
  Prec prec_work = 0;
  std::vector<CriticalValue> vals;  // vals[n] holds s = m(k-1) - n, n = 0..D

  long w() const { return static_cast<long>(m) * (k - 1); }
  const CriticalValue& by_s(long s) const;
};

// Truncated Dirichlet sum N^{ms/2} gamma_m(s) sum_{n<=X} lambda(n) n^{-sigma},
// with the tail charged to the budget.  Requires sigma(s) > 1.25.
struct ValueWithBudget {
  Real value;
  ErrorBudget budget;
};
ValueWithBudget lseries_direct(const SymPowerCoefficients& c, long s,
                               unsigned long X, Prec prec);

// G_s(t) = (1/2pi i) int_(c) gamma_m(s+z) t^{-z} dz/z for t > 0, with a
// rigorous absolute error bound.
struct GValue {
  Real value;
  Real abs_err;
};
GValue inverse_mellin_G(const GammaFactorSpec& g, long s, const Real& t,
                        Prec prec);

// Functional-equation sign from smoothing-parameter stability of the
// completed value at two consecutive arguments.  Throws on ambiguity or on
// contradiction with c.epsilon_hint.
int determine_epsilon(const SymPowerCoefficients& c, Prec prec);

// Largest coefficient index any planned evaluation will touch, including the
// epsilon search and mirror checks.  Needs no coefficient data.
unsigned long required_cutoff(unsigned m, unsigned k, unsigned long N,
                              Prec prec, long target_rel_log2 = 0,
                              bool pairing = true);

// One sampled point of the |L - 1| bound check.  For s below the admissible
// range or k < 6 the assertion is skipped; the convexity ratio
// L(s) / log^{m+1}(k + |s + w/2 - 1| + 2) is reported but never asserted
// (its implicit constant is unknown).
struct LemmaBoundEntry {
  long s = 0;
  bool checked = false;
  bool pass = false;
  Real lhs{96};    // upper bound for |L(s) - 1|, series tail included
  Real bound{96};  // (13/9) * 2^{m - (k-1)/2}
  Real convexity_ratio{96};
  std::string note;
};
struct LemmaBoundsReport {
  std::vector<LemmaBoundEntry> entries;
  unsigned failures = 0;
};
LemmaBoundsReport check_lemma_bounds(const SymPowerCoefficients& c,
                                     const std::vector<long>& sample_s);

// All completed values at s = m(k-1) - n, n = 0..D, each within
// target_rel * N^{ms/2} |gamma_m(s)| absolute error (target_rel_log2 = 0
// picks the default -(prec/2 + 16)).  eps_override skips the functional
// equation sign search.
CriticalValues critical_values(const SymPowerCoefficients& c, Prec prec,
                               int eps_override = 0, bool pairing = true,
                               long target_rel_log2 = 0);

}  // namespace symrh
