#include "symrh/hp.hpp"

#include <cstring>

namespace symrh {

std::string Real::to_string(size_t digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return sign() < 0 ? "-inf" : "inf";
  if (mpfr_zero_p(v_)) return "0";
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
  if (!raw) throw error("mpfr_get_str failed");
  std::string mant(raw);
  mpfr_free_str(raw);
  bool neg = !mant.empty() && mant[0] == '-';
  std::string body = neg ? mant.substr(1) : mant;
  // strip trailing zeros but keep at least one digit
  size_t last = body.find_last_not_of('0');
  if (last != std::string::npos && last + 1 < body.size()) body.erase(last + 1);
  std::string out = neg ? "-" : "";
  out += body.substr(0, 1);
  if (body.size() > 1) out += "." + body.substr(1);
  out += "e" + std::to_string(static_cast<long>(e) - 1);
  return out;
}

}  // namespace symrh
