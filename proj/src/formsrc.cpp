#include "symrh/formsrc.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace symrh {

bool is_squarefree(unsigned long n) {
  if (n == 0) return false;
  for (unsigned long p = 2; p * p <= n; p++) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return false;
    }
  }
  return true;
}

std::vector<unsigned long> primes_up_to(unsigned long n) {
  std::vector<bool> comp(n + 1, false);
  std::vector<unsigned long> ps;
  for (unsigned long i = 2; i <= n; i++) {
    if (comp[i]) continue;
    ps.push_back(i);
    for (unsigned long j = i * i; j <= n; j += i) comp[j] = true;
  }
  return ps;
}

IntegerSeries eisenstein_series(unsigned w, size_t X) {
  if (w != 4 && w != 6) throw error("eisenstein_series: weight must be 4 or 6");
  long mult = (w == 4) ? 240 : -504;
  IntegerSeries s(X + 1);
  s[0] = 1;
  // sigma_{w-1} by sieving multiples of each divisor
  for (size_t d = 1; d <= X; d++) {
    mpz_class dp;
    mpz_ui_pow_ui(dp.get_mpz_t(), d, w - 1);
    dp *= mult;
    for (size_t n = d; n <= X; n += d) s[n] += dp;
  }
  return s;
}

NewformData builtin_newform(unsigned k, unsigned long X) {
  int e4 = 0, e6 = 0;
  switch (k) {
    case 12: break;
    case 16: e4 = 1; break;
    case 18: e6 = 1; break;
    case 20: e4 = 2; break;
    case 22: e4 = 1; e6 = 1; break;
    case 26: e4 = 2; e6 = 1; break;
    default:
      throw error("builtin_newform: weight " + std::to_string(k) +
                  " is not a one-dimensional level-1 space");
  }
  size_t len = X + 1;
  IntegerSeries E4 = eisenstein_series(4, X);
  IntegerSeries E6 = eisenstein_series(6, X);
  IntegerSeries delta =
      E4.pow(3, len).sub(E6.pow(2, len), len).exact_divide(1728);
  IntegerSeries f = delta;
  for (int i = 0; i < e4; i++) f = f.mul(E4, len);
  for (int i = 0; i < e6; i++) f = f.mul(E6, len);

  NewformData fm;
  fm.level = 1;
  fm.weight = k;
  fm.label = "1." + std::to_string(k) + ".a";
  fm.source = FormSource::builtin;
  fm.epsilon_hint_m1 = (k / 2) % 2 == 0 ? 1 : -1;  // mu(1) sgn(a(1)) = 1
  fm.an.resize(X);
  for (unsigned long n = 1; n <= X; n++) fm.an[n - 1] = f[n];
  if (X >= 1 && fm.an[0] != 1) throw error("builtin_newform: a(1) != 1");
  return fm;
}

NewformData load_newform(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open coefficient file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw error("malformed coefficient file " + path + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("level") || !j.contains("weight") ||
      !j.contains("coefficients"))
    throw error("coefficient file missing required fields: " + path);

  NewformData fm;
  fm.source = FormSource::file;
  if (!j["level"].is_number_unsigned())
    throw error("level must be a positive integer: " + path);
  fm.level = j["level"].get<unsigned long>();
  if (fm.level == 0 || !is_squarefree(fm.level))
    throw error("level not squarefree: " + std::to_string(fm.level));
  if (!j["weight"].is_number_unsigned())
    throw error("weight must be a positive integer: " + path);
  fm.weight = j["weight"].get<unsigned>();
  if (fm.weight % 2 != 0 || fm.weight < 2)
    throw error("weight must be even and >= 2, got " +
                std::to_string(fm.weight));
  fm.label = j.value("label", std::string("file"));
  if (j.contains("epsilon_m1")) {
    int e = j["epsilon_m1"].get<int>();
    if (e != 1 && e != -1) throw error("epsilon_m1 must be +1 or -1");
    fm.epsilon_hint_m1 = e;
  }
  const auto& cs = j["coefficients"];
  if (!cs.is_array() || cs.empty())
    throw error("coefficients must be a nonempty array: " + path);
  fm.an.reserve(cs.size());
  for (const auto& c : cs) {
    if (!c.is_string())
      throw error("coefficients must be decimal strings: " + path);
    try {
      fm.an.emplace_back(c.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw error("bad decimal integer '" + c.get<std::string>() +
                  "' in " + path);
    }
  }
  if (fm.an[0] != 1) throw error("not normalized: a(1) != 1 in " + path);
  return fm;
}

void save_newform(const NewformData& fm, const std::string& path) {
  nlohmann::json j;
  j["level"] = fm.level;
  j["weight"] = fm.weight;
  j["label"] = fm.label;
  if (fm.epsilon_hint_m1 != 0) j["epsilon_m1"] = fm.epsilon_hint_m1;
  std::vector<std::string> cs;
  cs.reserve(fm.an.size());
  for (const auto& a : fm.an) cs.push_back(a.get_str());
  j["coefficients"] = cs;
  std::ofstream out(path);
  if (!out) throw error("cannot write coefficient file: " + path);
  out << j.dump(1) << "\n";
  if (!out) throw error("write failed: " + path);
}

HeckeReport validate_hecke(const NewformData& fm) {
  HeckeReport rep;
  auto push = [&](std::string what, bool pass) {
    if (!pass) rep.failures++;
    rep.checks.push_back({std::move(what), pass});
  };
  unsigned long X = fm.cutoff();
  auto ps = primes_up_to(X);
  mpz_class pk1, pk2;

  for (unsigned long p : ps) {
    bool ram = fm.level % p == 0;
    mpz_ui_pow_ui(pk1.get_mpz_t(), p, fm.weight - 1);
    if (ram) {
      // |a(p)|^2 = p^{k-2} exactly at primes dividing a squarefree level
      mpz_ui_pow_ui(pk2.get_mpz_t(), p, fm.weight - 2);
      push("ramified |a(" + std::to_string(p) + ")|^2 = p^(k-2)",
           fm.a(p) * fm.a(p) == pk2);
    } else {
      push("|a(" + std::to_string(p) + ")| <= 2p^((k-1)/2)",
           fm.a(p) * fm.a(p) <= 4 * pk1);
    }
    if (p * p <= X) {
      mpz_class want = fm.a(p) * fm.a(p);
      if (!ram) want -= pk1;
      push("a(" + std::to_string(p) + "^2) Hecke relation",
           fm.a(p * p) == want);
    }
    // higher prime powers: a(p^{j+1}) = a(p)a(p^j) - p^{k-1} a(p^{j-1})
    unsigned long pj = p * p;
    while (pj <= X / p) {
      unsigned long pj1 = pj * p;
      mpz_class want = fm.a(p) * fm.a(pj);
      if (!ram) want -= pk1 * fm.a(pj / p);
      push("a(" + std::to_string(p) + "^j) recursion at " +
               std::to_string(pj1),
           fm.a(pj1) == want);
      pj = pj1;
    }
  }

  // multiplicativity across coprime parts: split off the smallest prime power
  for (unsigned long n = 2; n <= X; n++) {
    unsigned long p = 0;
    for (unsigned long q : ps) {
      if (n % q == 0) {
        p = q;
        break;
      }
    }
    unsigned long pe = 1;
    unsigned long rest = n;
    while (rest % p == 0) {
      rest /= p;
      pe *= p;
    }
    if (rest == 1) continue;
    push("a(" + std::to_string(n) + ") = a(" + std::to_string(pe) + ")a(" +
             std::to_string(rest) + ")",
         fm.a(n) == fm.a(pe) * fm.a(rest));
  }
  return rep;
}

}  // namespace symrh
