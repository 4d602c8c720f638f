#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "symrh/iseries.hpp"

namespace symrh {

enum class FormSource { builtin, file };

// Exact Fourier coefficients a(1..X) of a normalized newform on
// Gamma_0(N) with trivial character, squarefree N, even weight k.
struct NewformData {
  unsigned long level = 1;
  unsigned weight = 12;
  std::string label;
  std::vector<mpz_class> an;  // an[i] holds a(i+1)
  int epsilon_hint_m1 = 0;    // 0 means no hint
  FormSource source = FormSource::builtin;

  unsigned long cutoff() const { return an.size(); }
  const mpz_class& a(unsigned long n) const {
    if (n == 0 || n > an.size()) throw error("coefficient index out of range");
    return an[n - 1];
  }
};

bool is_squarefree(unsigned long n);
std::vector<unsigned long> primes_up_to(unsigned long n);

// Normalized Eisenstein series E_w = 1 - (2w/B_w) sum sigma_{w-1}(n) q^n,
// truncated at q^X inclusive.  Only w = 4 and 6 are supported.
IntegerSeries eisenstein_series(unsigned w, size_t X);

// Level-1 eigenform for the one-dimensional spaces
// k in {12, 16, 18, 20, 22, 26}, built as Delta times a monomial in E4, E6.
NewformData builtin_newform(unsigned k, unsigned long X);

NewformData load_newform(const std::string& path);
void save_newform(const NewformData& fm, const std::string& path);

struct HeckeCheck {
  std::string what;
  bool pass = false;
};
struct HeckeReport {
  std::vector<HeckeCheck> checks;
  unsigned long failures = 0;
};

// Multiplicativity, the a(p^2) Hecke relation, and the coefficient bound
// at every prime, over the stored range.
HeckeReport validate_hecke(const NewformData& fm);

}  // namespace symrh
