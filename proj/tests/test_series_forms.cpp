#include <cstdio>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "symrh/formsrc.hpp"
#include "symrh/iseries.hpp"

using namespace symrh;

namespace {

// naive O(X^2) expansion of prod_n (1 - q^n)^e, the reference for the
// Kronecker-substitution series arithmetic
IntegerSeries naive_euler_power(unsigned e, size_t len) {
  std::vector<mpz_class> c(len);
  c[0] = 1;
  for (unsigned long n = 1; n < len; n++)
    for (unsigned i = 0; i < e; i++)  // multiply by (1 - q^n)
      for (size_t j = len; j-- > n;) c[j] -= c[j - n];
  IntegerSeries s(len);
  for (size_t j = 0; j < len; j++) s[j] = c[j];
  return s;
}

}  // namespace

TEST_CASE("euler product against the naive expansion") {
  const size_t len = 300;
  IntegerSeries fast = euler_product_series(len);
  IntegerSeries slow = naive_euler_power(1, len);
  for (size_t j = 0; j < len; j++) CHECK(fast[j] == slow[j]);
  IntegerSeries cubed = euler_product_cubed(len);
  IntegerSeries ref = fast.mul(fast, len).mul(fast, len);
  for (size_t j = 0; j < len; j++) CHECK(cubed[j] == ref[j]);
}

TEST_CASE("eisenstein series normalization") {
  IntegerSeries e4 = eisenstein_series(4, 10);
  IntegerSeries e6 = eisenstein_series(6, 10);
  CHECK(e4[0] == 1);
  CHECK(e4[1] == 240);
  CHECK(e4[2] == 2160);   // 240 * sigma_3(2) = 240 * 9
  CHECK(e6[1] == -504);
  CHECK(e6[3] == -504 * 244);  // sigma_5(3) = 1 + 243
  CHECK_THROWS_AS(eisenstein_series(8, 10), error);
}

TEST_CASE("level-one cusp forms and their Hecke structure") {
  NewformData d12 = builtin_newform(12, 2000);
  CHECK(d12.a(1) == 1);
  CHECK(d12.a(2) == -24);
  CHECK(d12.a(3) == 252);
  CHECK(d12.a(5) == 4830);
  CHECK(d12.a(6) == d12.a(2) * d12.a(3));
  // a(4) = a(2)^2 - 2^11
  CHECK(d12.a(4) == d12.a(2) * d12.a(2) - 2048);
  HeckeReport hr = validate_hecke(d12);
  CHECK(hr.failures == 0);
  CHECK(hr.checks.size() > 0);

  NewformData d16 = builtin_newform(16, 200);
  CHECK(d16.a(2) == 216);
  NewformData d18 = builtin_newform(18, 200);
  CHECK(d18.a(2) == -528);
  CHECK(d12.epsilon_hint_m1 == 1);
  CHECK(d18.epsilon_hint_m1 == -1);
  CHECK_THROWS_AS(builtin_newform(14, 100), error);
}

TEST_CASE("eta-product forms at squarefree level") {
  for (unsigned long N : {2ul, 3ul, 5ul}) {
    NewformData f = oracle::eta_newform(N, 3000);
    CHECK(f.level == N);
    CHECK(f.weight == 24 / (N + 1));
    CHECK(f.a(1) == 1);
    // Atkin-Lehner: a(N)^2 = N^{k-2}
    mpz_class nk;
    mpz_ui_pow_ui(nk.get_mpz_t(), N, f.weight - 2);
    CHECK(f.a(N) * f.a(N) == nk);
    HeckeReport hr = validate_hecke(f);
    CHECK(hr.failures == 0);
  }
  // the level-2 product against its naive expansion
  NewformData f2 = oracle::eta_newform(2, 60);
  std::vector<mpz_class> c(61);
  c[0] = 1;
  for (unsigned long n = 1; n <= 60; n++)
    for (int rep = 0; rep < 8; rep++) {
      for (size_t j = 61; j-- > n;) c[j] -= c[j - n];
      if (2 * n <= 60)
        for (size_t j = 61; j-- > 2 * n;) c[j] -= c[j - 2 * n];
    }
  for (unsigned long n = 1; n <= 60; n++) CHECK(f2.a(n) == c[n - 1]);
}

TEST_CASE("synthetic coefficient systems satisfy every Hecke constraint") {
  oracle::NewformData s1 = oracle::synthetic_newform(30, 2, 5000, 20240601);
  CHECK(s1.a(1) == 1);
  HeckeReport hr = validate_hecke(s1);
  CHECK(hr.failures == 0);
  // Ramanujan bound at every prime
  for (unsigned long p : primes_up_to(5000)) {
    mpz_class pk1;
    mpz_ui_pow_ui(pk1.get_mpz_t(), p, 29);
    CHECK(s1.a(p) * s1.a(p) <= 4 * pk1);
  }
  // deterministic in the seed
  oracle::NewformData s2 = oracle::synthetic_newform(30, 2, 5000, 20240601);
  CHECK(s1.a(4999) == s2.a(4999));
  oracle::NewformData s3 = oracle::synthetic_newform(30, 2, 5000, 7);
  bool same = true;
  for (unsigned long n = 1; n <= 5000 && same; n++)
    same = s1.a(n) == s3.a(n);
  CHECK(!same);
}

TEST_CASE("save and load round trip") {
  NewformData f = oracle::eta_newform(3, 128);
  std::string path = "/tmp/symrh_test_form_roundtrip.json";
  save_newform(f, path);
  NewformData g = load_newform(path);
  CHECK(g.level == f.level);
  CHECK(g.weight == f.weight);
  CHECK(g.label == f.label);
  CHECK(g.source == FormSource::file);
  REQUIRE(g.cutoff() == f.cutoff());
  for (unsigned long n = 1; n <= f.cutoff(); n++) CHECK(g.a(n) == f.a(n));
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_newform("/tmp/symrh_no_such_file.json"), error);
}

TEST_CASE("squarefree predicate and prime sieve") {
  CHECK(is_squarefree(1));
  CHECK(is_squarefree(30));
  CHECK(!is_squarefree(12));
  CHECK(!is_squarefree(49));
  auto pr = primes_up_to(30);
  CHECK(pr == std::vector<unsigned long>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
}
