#pragma once

#include <functional>
#include <vector>

#include "hardyctl/bigfloat.hpp"
#include "hardyctl/precision.hpp"

namespace hardyctl {
class ZeroCache;
}

namespace hardyctl::spectrum {

/// The coefficient triple governing the singular operator: mu < 1/4,
/// nu = sqrt(1-4mu)/2 and alpha = (1-sqrt(1-4mu))/2, so nu + alpha = 1/2.
struct PotentialParams {
  BigFloat mu;
  BigFloat nu;
  BigFloat alpha;
};

/// Derives (nu, alpha) from mu. Rejects the critical value mu >= 1/4 (the
/// weighted boundary condition degenerates there) and caps nu at 25 to keep
/// Gamma(m+nu+1) inside the gamma domain.
PotentialParams derive_params(const BigFloat& mu, const Precision& prec = Precision{});

/// One spectral datum: zero j = j_{nu,k}, eigenvalue lambda = j^2,
/// normalization c_norm = sqrt(2)/|J_nu'(j)|, trace coefficient r and
/// boundary coupling s.
///
/// With D_k = c_norm j^nu / (2^nu Gamma(nu+1)) (the small-x amplitude of
/// Phi_k / x^(nu+1/2)):
///   r = (1/2 + nu) D_k   -- the trace limit  x^alpha Phi_k'(x) at 0+
///   s = 2 nu D_k         -- the coefficient coupling the boundary control
///                           to mode k in the moment conditions; equivalently
///                           <-x^alpha p, Phi_k> = -s/lambda (the Wronskian
///                           x^alpha Phi_k' - (x^alpha)' Phi_k at 0+).
/// The two coincide at mu = 0 (nu = 1/2) and only there.
struct EigenMode {
  int k = 0;
  BigFloat j;
  BigFloat lambda;
  BigFloat c_norm;
  BigFloat r;
  BigFloat s;
};

struct Spectrum {
  PotentialParams params;
  std::vector<EigenMode> modes;
  BigFloat lambda_next;  // (K+1)-th eigenvalue, for truncation-tail bounds
  Precision precision;

  int size() const { return static_cast<int>(modes.size()); }
  std::vector<BigFloat> lambdas() const;
};

Spectrum build_spectrum(const PotentialParams& params, int K, const Precision& prec,
                        ZeroCache* cache = nullptr);

/// Normalised eigenfunction Phi_k(x) = c_norm * x^(1/2) * J_nu(j x), k >= 1,
/// 0 < x <= 1.
BigFloat eigenfunction(const Spectrum& spec, int k, const BigFloat& x);

/// Analytic d/dx of Phi_k.
BigFloat eigenfunction_dx(const Spectrum& spec, int k, const BigFloat& x);

/// Trace coefficient r_k = lim_{x->0+} x^alpha Phi_k'(x). Computed by
/// Richardson extrapolation of the analytic derivative and cross-checked
/// against the small-argument closed form
/// c_norm j^nu (1/2 + nu) / (2^nu Gamma(nu+1)); returns the closed form.
BigFloat trace_coefficient(const PotentialParams& params, const EigenMode& mode,
                           const Precision& prec);

/// Quadrature check of the Hardy inequality (1/4) int z^2/x^2 <= int z_x^2
/// for a test function z with derivative dz, both vanishing at the endpoints.
struct HardyResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  bool converged = false;  // false flags a quadrature-divergence warning
};
HardyResult hardy_check(const std::function<double(double)>& z,
                        const std::function<double(double)>& dz, int quadrature_nodes,
                        double tol = 1e-9);

}  // namespace hardyctl::spectrum
