#pragma once

#include <vector>

#include "hardyctl/eigen_support.hpp"
#include "hardyctl/exponential_sum.hpp"
#include "hardyctl/precision.hpp"

namespace hardyctl::biortho {

/// Gram matrix of the shifted exponentials e^{-rate_i (T-t)} on (0, T):
/// G_ij = (1 - e^{-(r_i+r_j)T}) / (r_i + r_j), with the rate-0 diagonal
/// entry equal to T. Rates must be distinct and nonnegative.
BigMat gram_matrix(const std::vector<BigFloat>& rates, const BigFloat& T);

/// Family (sigma_k) biorthogonal to (e^{lambda_k t}) on (0, T) with the
/// zero-mean side constraint, realized as the Gram solve in
/// span{1, e^{-lambda_l (T-t)}}.
struct BiorthogonalFamily {
  int K = 0;
  BigFloat T;
  std::vector<BigFloat> lambdas;          // lambda_1..lambda_K
  std::vector<ExponentialSum> sigmas;     // one per k
  std::vector<double> scaled_norm_log;    // log(||sigma_k|| e^{lambda_k T})
  double gram_condition = 0.0;            // rough two-sided power-iteration estimate
  double max_biortho_residual = 0.0;      // scaled by ||c_k|| T
  double max_zero_mean_residual = 0.0;    // scaled by ||c_k|| T
  Precision precision;
  bool zero_mean = true;
};

BiorthogonalFamily build_family(const std::vector<BigFloat>& lambdas, const BigFloat& T,
                                const Precision& prec, bool zero_mean = true);

/// Overflow-safe moment: e^{-lambda_k T} * int_0^T sigma(t) e^{lambda_k t} dt.
BigFloat scaled_moment(const ExponentialSum& sigma, const BigFloat& lambda_k);

/// Exact L2(0,T) norm of an exponential sum via its own Gram form.
BigFloat l2_norm(const ExponentialSum& sigma);

/// Least-squares fit of log(||sigma_k|| e^{lambda_k T}) against sqrt(lambda_k),
/// instantiating the constant P of the biorthogonal norm estimate.
struct FitResult {
  double C_fit = 0.0;
  double P_fit = 0.0;
  double r_squared = 0.0;
  std::vector<double> residuals;
};
FitResult estimate_fit(const BiorthogonalFamily& family);

/// Cauchy-Schwarz floor on the scaled norms: ||sigma_k|| e^{lambda_k T} must
/// be at least 1/sqrt(G_max (K+1)).
double norm_lower_bound(const BiorthogonalFamily& family);

}  // namespace hardyctl::biortho
