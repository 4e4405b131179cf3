#pragma once

#include <vector>

#include "hardyctl/bigfloat.hpp"
#include "hardyctl/precision.hpp"

namespace hardyctl {
class ZeroCache;
}

namespace hardyctl::specfun {

/// Euler Gamma on (0, 200], correctly rounded at the working precision.
BigFloat gamma(const BigFloat& x);

/// Bessel function of the first kind J_nu(x) for nu >= 0, x >= 0, by its
/// defining power series summed in working precision. Throws PrecisionError
/// when cancellation eats past the precision budget (raise mantissa_bits).
BigFloat bessel_j(const BigFloat& nu, const BigFloat& x, const Precision& prec);

/// d/dx J_nu(x) = (nu/x) J_nu(x) - J_{nu+1}(x), for x > 0.
BigFloat bessel_j_prime(const BigFloat& nu, const BigFloat& x, const Precision& prec);

/// Two-sided bounds on the k-th positive zero of J_nu (regime split at
/// nu = 1/2, where both collapse to k*pi).
struct ZeroBounds {
  double lower;
  double upper;
};
ZeroBounds zero_bounds(double nu, int k);

/// Two-term McMahon expansion of j_{nu,k}, used to seed the root search.
double mcmahon_seed(double nu, int k);

/// The first K positive zeros of J_nu, each bracketed, polished by Newton at
/// working precision, and validated against its two-sided bound.
struct ZeroTable {
  BigFloat nu;
  std::vector<BigFloat> zeros;
  Precision precision;
};
ZeroTable bessel_zeros(const BigFloat& nu, int K, const Precision& prec,
                       ZeroCache* cache = nullptr);

}  // namespace hardyctl::specfun
