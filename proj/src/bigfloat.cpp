#include "hardyctl/bigfloat.hpp"

#include <cstdlib>
#include <ostream>
#include <stdexcept>

namespace hardyctl {

BigFloat BigFloat::from_string(const std::string& s, mpfr_prec_t prec) {
  BigFloat r = with_precision(prec);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("BigFloat: unparsable decimal string '" + s + "'");
  }
  return r;
}

std::string BigFloat::to_string() const {
  if (is_nan()) return "nan";
  if (is_inf()) return sign() < 0 ? "-inf" : "inf";
  if (is_zero()) return sign() < 0 ? "-0" : "0";
  mpfr_exp_t exp = 0;
  // n = 0 digits: MPFR picks exactly enough digits for an exact round trip.
  char* raw = mpfr_get_str(nullptr, &exp, 10, 0, v_, MPFR_RNDN);
  std::string digits(raw);
  mpfr_free_str(raw);
  std::string sign_part;
  if (!digits.empty() && digits[0] == '-') {
    sign_part = "-";
    digits.erase(0, 1);
  }
  // mpfr_get_str yields 0.digits * 10^exp; render as d.ddd...e(exp-1).
  std::string out = sign_part + digits.substr(0, 1);
  if (digits.size() > 1) out += "." + digits.substr(1);
  out += "e" + std::to_string(static_cast<long>(exp) - 1);
  return out;
}

std::ostream& operator<<(std::ostream& os, const BigFloat& x) { return os << x.to_string(); }

}  // namespace hardyctl
