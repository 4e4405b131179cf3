#include "hardyctl/spectrum.hpp"

#include <array>
#include <cmath>

#include "hardyctl/errors.hpp"
#include "hardyctl/quadrature.hpp"
#include "hardyctl/specfun.hpp"

namespace hardyctl::spectrum {

namespace {
constexpr const char* kModule = "spectrum";
constexpr double kNuCap = 25.0;
}  // namespace

PotentialParams derive_params(const BigFloat& mu, const Precision& prec) {
  prec.validate();
  PrecisionGuard guard(prec.mantissa_bits);
  BigFloat mu_w = mu;
  mu_w.set_precision(prec.mantissa_bits);
  BigFloat disc = 1.0 - 4.0 * mu_w;
  if (!(disc > 0)) {
    throw DomainError(kModule, "mu must be < 1/4 strictly (got mu = " + mu.to_string() +
                                   "); the critical case is not modelled");
  }
  BigFloat s = sqrt(disc);
  PotentialParams p;
  p.mu = mu_w;
  p.nu = s / 2.0;
  p.alpha = (1.0 - s) / 2.0;
  if (p.nu > kNuCap) {
    throw DomainError(kModule, "nu = sqrt(1-4mu)/2 exceeds the desk-scale cap of 25");
  }
  return p;
}

std::vector<BigFloat> Spectrum::lambdas() const {
  std::vector<BigFloat> out;
  out.reserve(modes.size());
  for (const auto& m : modes) out.push_back(m.lambda);
  return out;
}

Spectrum build_spectrum(const PotentialParams& params, int K, const Precision& prec,
                        ZeroCache* cache) {
  prec.validate();
  if (K < 1 || K > 200) throw DomainError(kModule, "build_spectrum requires 1 <= K <= 200");
  PrecisionGuard guard(prec.mantissa_bits);

  auto table = specfun::bessel_zeros(params.nu, K + 1, prec, cache);
  Spectrum spec{params, {}, table.zeros.back() * table.zeros.back(), prec};
  spec.modes.reserve(K);
  for (int k = 1; k <= K; ++k) {
    EigenMode mode;
    mode.k = k;
    mode.j = table.zeros[k - 1];
    mode.lambda = mode.j * mode.j;
    BigFloat jp = specfun::bessel_j_prime(params.nu, mode.j, prec);
    mode.c_norm = sqrt(BigFloat(2.0)) / abs(jp);
    mode.r = trace_coefficient(params, mode, prec);
    // shared small-x amplitude D = c_norm j^nu / (2^nu Gamma(nu+1))
    mode.s = mode.r * (2.0 * params.nu) / (0.5 + params.nu);
    spec.modes.push_back(std::move(mode));
  }
  return spec;
}

BigFloat eigenfunction(const Spectrum& spec, int k, const BigFloat& x) {
  if (k < 1 || k > spec.size()) throw DomainError(kModule, "eigenfunction: mode index out of range");
  if (!(x > 0) || x > 1) throw DomainError(kModule, "eigenfunction requires 0 < x <= 1");
  PrecisionGuard guard(spec.precision.mantissa_bits);
  const auto& m = spec.modes[k - 1];
  return m.c_norm * sqrt(x) * specfun::bessel_j(spec.params.nu, m.j * x, spec.precision);
}

BigFloat eigenfunction_dx(const Spectrum& spec, int k, const BigFloat& x) {
  if (k < 1 || k > spec.size()) throw DomainError(kModule, "eigenfunction_dx: mode index out of range");
  if (!(x > 0) || x > 1) throw DomainError(kModule, "eigenfunction_dx requires 0 < x <= 1");
  PrecisionGuard guard(spec.precision.mantissa_bits);
  const auto& m = spec.modes[k - 1];
  BigFloat rx = sqrt(x);
  BigFloat J = specfun::bessel_j(spec.params.nu, m.j * x, spec.precision);
  BigFloat Jp = specfun::bessel_j_prime(spec.params.nu, m.j * x, spec.precision);
  return m.c_norm * (J / (2.0 * rx) + m.j * rx * Jp);
}

namespace {

// Polynomial extrapolation of (u_i, h_i) samples to u = 0 (Aitken-Neville).
BigFloat neville_at_zero(const std::vector<BigFloat>& u, std::vector<BigFloat> h) {
  const size_t n = u.size();
  for (size_t m = 1; m < n; ++m) {
    for (size_t i = n - 1; i >= m; --i) {
      h[i] = (u[i - m] * h[i] - u[i] * h[i - 1]) / (u[i - m] - u[i]);
      if (i == m) break;
    }
  }
  return h[n - 1];
}

}  // namespace

BigFloat trace_coefficient(const PotentialParams& params, const EigenMode& mode,
                           const Precision& prec) {
  PrecisionGuard guard(prec.mantissa_bits);
  const BigFloat& nu = params.nu;
  BigFloat closed = mode.c_norm * pow(mode.j, nu) * (0.5 + nu) /
                    (pow(BigFloat(2.0), nu) * specfun::gamma(nu + 1.0));

  // Limit definition r = lim x^alpha Phi'(x), extrapolated in x^2 from four
  // decades (the expansion of x^alpha Phi' has only even powers of j*x).
  std::vector<BigFloat> u, h;
  for (double xd : {1e-2, 1e-3, 1e-4, 1e-5}) {
    BigFloat x(xd);
    BigFloat J = specfun::bessel_j(nu, mode.j * x, prec);
    BigFloat Jp = specfun::bessel_j_prime(nu, mode.j * x, prec);
    BigFloat phi_dx = mode.c_norm * (J / (2.0 * sqrt(x)) + mode.j * sqrt(x) * Jp);
    u.push_back(x * x);
    h.push_back(pow(x, params.alpha) * phi_dx);
  }
  BigFloat limit = neville_at_zero(u, std::move(h));

  BigFloat rel = abs(limit - closed) / abs(closed);
  if (rel > 1e-4) {
    throw ConsistencyError(kModule, "trace coefficient: limit and closed form disagree (rel " +
                                        std::to_string(rel.to_double()) + ") at k = " +
                                        std::to_string(mode.k));
  }
  return closed;
}

HardyResult hardy_check(const std::function<double(double)>& z,
                        const std::function<double(double)>& dz, int quadrature_nodes,
                        double tol) {
  if (quadrature_nodes < 8) throw DomainError(kModule, "hardy_check needs at least 8 nodes");
  auto lhs_f = [&](double x) {
    double v = z(x);
    return 0.25 * v * v / (x * x);
  };
  auto rhs_f = [&](double x) {
    double v = dz(x);
    return v * v;
  };
  const int per_panel = std::max(quadrature_nodes / 4, 2);
  double lhs1 = quad::integrate_composite(lhs_f, 0.0, 1.0, per_panel, 4);
  double rhs1 = quad::integrate_composite(rhs_f, 0.0, 1.0, per_panel, 4);
  double lhs2 = quad::integrate_composite(lhs_f, 0.0, 1.0, per_panel, 8);
  double rhs2 = quad::integrate_composite(rhs_f, 0.0, 1.0, per_panel, 8);

  HardyResult res;
  res.lhs = lhs2;
  res.rhs = rhs2;
  res.converged = std::abs(lhs2 - lhs1) <= tol * (1.0 + std::abs(lhs2)) &&
                  std::abs(rhs2 - rhs1) <= tol * (1.0 + std::abs(rhs2));
  res.holds = res.lhs <= res.rhs + tol * (1.0 + std::abs(res.rhs));
  return res;
}

}  // namespace hardyctl::spectrum
