#include "hardyctl/specfun.hpp"

#include <cmath>
#include <numbers>

#include "hardyctl/errors.hpp"
#include "hardyctl/zero_cache.hpp"

namespace hardyctl::specfun {

namespace {
constexpr const char* kModule = "specfun";
}

BigFloat gamma(const BigFloat& x) {
  if (!(x > 0)) throw DomainError(kModule, "gamma requires x > 0, got " + x.to_string());
  if (x > 200) throw DomainError(kModule, "gamma requires x <= 200, got " + x.to_string());
  return tgamma(x);
}

BigFloat bessel_j(const BigFloat& nu, const BigFloat& x, const Precision& prec) {
  prec.validate();
  if (nu < 0) throw DomainError(kModule, "bessel_j requires nu >= 0");
  if (x < 0) throw DomainError(kModule, "bessel_j requires x >= 0");
  PrecisionGuard guard(prec.mantissa_bits);
  if (x.is_zero()) return nu.is_zero() ? BigFloat(1.0) : BigFloat(0.0);

  BigFloat half_x = x / 2.0;
  half_x.set_precision(prec.mantissa_bits);
  BigFloat nu_w = nu;
  nu_w.set_precision(prec.mantissa_bits);

  // t_0 = (x/2)^nu / Gamma(nu+1); t_m = -t_{m-1} * (x/2)^2 / (m (m+nu)).
  BigFloat term = pow(half_x, nu_w) / gamma(nu_w + 1.0);
  BigFloat q = half_x * half_x;
  BigFloat sum = term;
  BigFloat max_mag = abs(term);
  const double hump = half_x.to_double();
  long m = 0;
  for (m = 1; m <= 200000; ++m) {
    term *= q / (static_cast<double>(m) * (static_cast<double>(m) + nu_w));
    term = -term;
    sum += term;
    BigFloat a = abs(term);
    if (max_mag < a) max_mag = a;
    if (static_cast<double>(m) > hump) {
      if (a < prec.series_tol * abs(sum)) break;
      // Below the rounding floor the tail cannot move the sum anymore.
      if (a < ldexp2(max_mag, -prec.mantissa_bits - 8)) break;
    }
  }

  // Rounding noise accumulated by the alternating sum. Certify either the
  // relative target or an absolute error of series_tol (J is O(1)-bounded);
  // near zeros of J only the absolute form is meaningful.
  BigFloat noise = ldexp2(max_mag * static_cast<double>(m + 2), -prec.mantissa_bits);
  if (noise > prec.series_tol && noise > prec.series_tol * abs(sum)) {
    throw PrecisionError(kModule,
                         "bessel_j cancellation exceeds working precision at x = " +
                             std::to_string(x.to_double()) + "; raise mantissa_bits");
  }
  return sum;
}

BigFloat bessel_j_prime(const BigFloat& nu, const BigFloat& x, const Precision& prec) {
  if (!(x > 0)) throw DomainError(kModule, "bessel_j_prime requires x > 0");
  return (nu / x) * bessel_j(nu, x, prec) - bessel_j(nu + 1.0, x, prec);
}

ZeroBounds zero_bounds(double nu, int k) {
  const double pi = std::numbers::pi;
  const double mc = (k + nu / 2.0 - 0.25) * pi;
  const double half_mc = (k + nu / 4.0 - 0.125) * pi;
  if (nu <= 0.5) return {mc, half_mc};
  return {half_mc, mc};
}

double mcmahon_seed(double nu, int k) {
  const double b = (k + nu / 2.0 - 0.25) * std::numbers::pi;
  return b - (4.0 * nu * nu - 1.0) / (8.0 * b);
}

namespace {

// Locates the k-th zero inside [lo, hi]: scan for the first sign change,
// bisect, then Newton at working precision.
BigFloat find_zero(const BigFloat& nu, double lo, double hi, const Precision& prec) {
  auto J = [&](const BigFloat& t) { return bessel_j(nu, t, prec); };
  auto Jp = [&](const BigFloat& t) { return bessel_j_prime(nu, t, prec); };

  const double step = std::min(std::numbers::pi / 4.0, std::max((hi - lo) / 4.0, 1e-4));
  BigFloat a(lo), fa = J(a);
  BigFloat b = a;
  bool bracketed = false;
  while (b.to_double() < hi + 0.5 * step) {
    b = min(BigFloat(b.to_double() + step), BigFloat(hi));
    BigFloat fb = J(b);
    if (fa.sign() == 0) return a;
    if (fb.sign() == 0) return b;
    if (fa.sign() != fb.sign()) {
      bracketed = true;
      break;
    }
    if (b >= hi) break;
    a = b;
    fa = fb;
  }
  if (!bracketed) {
    throw BracketError(kModule, "no sign change of J_nu found inside the zero bracket [" +
                                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }

  // Bisect to a narrow interval; cheap and keeps Newton honest.
  for (int it = 0; it < 40 && (b - a) > abs(a) * 1e-8; ++it) {
    BigFloat m = (a + b) / 2.0;
    BigFloat fm = J(m);
    if (fm.sign() == 0) return m;
    if (fm.sign() == fa.sign()) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }

  BigFloat root = (a + b) / 2.0;
  const BigFloat tol = ldexp2(abs(root), 12 - prec.mantissa_bits);
  for (int it = 0; it < 80; ++it) {
    BigFloat delta = J(root) / Jp(root);
    BigFloat next = root - delta;
    if (next < a || next > b) {
      next = (a + b) / 2.0;  // fell out of the bisection interval
    }
    BigFloat fn = J(next);
    if (fn.sign() == fa.sign()) {
      a = next;
    } else {
      b = next;
    }
    BigFloat moved = abs(next - root);
    root = next;
    if (moved <= tol) break;
  }
  return root;
}

}  // namespace

ZeroTable bessel_zeros(const BigFloat& nu, int K, const Precision& prec, ZeroCache* cache) {
  prec.validate();
  if (nu < 0) throw DomainError(kModule, "bessel_zeros requires nu >= 0");
  if (K < 1 || K > 200) throw DomainError(kModule, "bessel_zeros requires 1 <= K <= 200");
  PrecisionGuard guard(prec.mantissa_bits);

  ZeroTable table{nu, {}, prec};
  table.nu.set_precision(prec.mantissa_bits);

  if (cache != nullptr) {
    if (auto hit = cache->lookup(nu, K, prec.mantissa_bits)) {
      table.zeros = std::move(*hit);
      return table;
    }
  }

  const double nu_d = nu.to_double();
  table.zeros.reserve(K);
  double prev = 0.0;
  for (int k = 1; k <= K; ++k) {
    auto bounds = zero_bounds(nu_d, k);
    // Slack covers the nu = 1/2 case where lower == upper == k*pi, and keeps
    // the interval open at the shared edge with the previous zero.
    const double slack = 1e-3;
    double lo = std::max(bounds.lower - slack, prev > 0.0 ? prev + 2.0 : 0.25 * bounds.lower);
    double hi = bounds.upper + slack;
    BigFloat root = find_zero(table.nu, lo, hi, prec);

    const double jd = root.to_double();
    const double bound_slack = 1e-9 * jd + 1e-12;
    if (jd < bounds.lower - bound_slack || jd > bounds.upper + bound_slack) {
      throw BracketError(kModule, "computed zero j_{nu," + std::to_string(k) +
                                      "} = " + std::to_string(jd) +
                                      " escapes its two-sided bound");
    }
    if (!table.zeros.empty() && !(root > table.zeros.back())) {
      throw BracketError(kModule, "zero table lost strict monotonicity at k = " + std::to_string(k));
    }

    // |J(j)| at convergence must sit at the series-tolerance floor.
    BigFloat resid = abs(bessel_j(table.nu, root, prec));
    BigFloat scale = abs(bessel_j_prime(table.nu, root, prec)) * root * prec.series_tol;
    BigFloat limit = 10.0 * prec.series_tol * max(BigFloat(1.0), scale);
    if (resid > limit) {
      throw BracketError(kModule, "zero j_{nu," + std::to_string(k) +
                                      "} failed residual validation");
    }

    table.zeros.push_back(root);
    prev = jd;
  }

  if (cache != nullptr) cache->store(nu, K, prec.mantissa_bits, table.zeros);
  return table;
}

}  // namespace hardyctl::specfun
