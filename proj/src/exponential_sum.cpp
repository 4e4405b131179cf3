#include "hardyctl/exponential_sum.hpp"

#include <algorithm>

#include "hardyctl/errors.hpp"

namespace hardyctl {

BigFloat exp_gram_entry(const BigFloat& s, const BigFloat& T) {
  if (s.is_zero()) return T;
  return -expm1(-s * T) / s;
}

void ExponentialSum::add_term(const BigFloat& rate, const BigFloat& coeff) {
  if (rate < 0) throw DomainError("expsum", "rates must be nonnegative");
  auto it = std::lower_bound(terms_.begin(), terms_.end(), rate,
                             [](const Term& t, const BigFloat& r) { return t.rate < r; });
  if (it != terms_.end() && it->rate == rate) {
    it->coeff += coeff;
  } else {
    terms_.insert(it, Term{rate, coeff});
  }
}

BigFloat ExponentialSum::value(const BigFloat& t) const {
  BigFloat s(0.0);
  for (const auto& term : terms_) s += term.coeff * exp(-term.rate * (T_ - t));
  return s;
}

BigFloat ExponentialSum::integral_to(const BigFloat& t) const {
  // int_0^t c e^{-r(T-s)} ds = (c/r)(e^{-r(T-t)} - e^{-rT}); c*t for r = 0.
  BigFloat s(0.0);
  for (const auto& term : terms_) {
    if (term.rate.is_zero()) {
      s += term.coeff * t;
    } else {
      s += term.coeff / term.rate * (exp(-term.rate * (T_ - t)) - exp(-term.rate * T_));
    }
  }
  return s;
}

BigFloat ExponentialSum::coeff_norm() const {
  BigFloat s(0.0);
  for (const auto& term : terms_) s += term.coeff * term.coeff;
  return sqrt(s);
}

ExponentialSum& ExponentialSum::operator*=(const BigFloat& s) {
  for (auto& term : terms_) term.coeff *= s;
  return *this;
}

ExponentialSum& ExponentialSum::operator+=(const ExponentialSum& other) {
  if (!(T_ == other.T_)) throw DomainError("expsum", "horizon mismatch in sum");
  for (const auto& term : other.terms_) add_term(term.rate, term.coeff);
  return *this;
}

}  // namespace hardyctl
