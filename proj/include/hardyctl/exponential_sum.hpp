#pragma once

#include <vector>

#include "hardyctl/bigfloat.hpp"

namespace hardyctl {

/// Overflow-safe representation of t -> sum_l c_l * exp(-lambda_l (T - t))
/// on [0, T]: every basis value lies in (0, 1], so stored coefficients carry
/// all the magnitude. Rates are distinct, nonnegative and kept sorted.
class ExponentialSum {
 public:
  struct Term {
    BigFloat rate;
    BigFloat coeff;
  };

  explicit ExponentialSum(BigFloat horizon) : T_(std::move(horizon)) {}

  const BigFloat& horizon() const { return T_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Inserts (or merges into) the term with the given rate.
  void add_term(const BigFloat& rate, const BigFloat& coeff);

  /// Pointwise value at t in [0, T].
  BigFloat value(const BigFloat& t) const;

  /// int_0^T of the sum.
  BigFloat integral() const { return integral_to(T_); }

  /// int_0^t of the sum (the antiderivative vanishing at 0).
  BigFloat integral_to(const BigFloat& t) const;

  /// Euclidean norm of the coefficient vector.
  BigFloat coeff_norm() const;

  ExponentialSum& operator*=(const BigFloat& s);
  ExponentialSum& operator+=(const ExponentialSum& other);

 private:
  BigFloat T_;
  std::vector<Term> terms_;
};

/// (1 - exp(-s T)) / s, the building block of every closed-form integral
/// here; equals T at s = 0. Total on s >= 0.
BigFloat exp_gram_entry(const BigFloat& s, const BigFloat& T);

}  // namespace hardyctl
