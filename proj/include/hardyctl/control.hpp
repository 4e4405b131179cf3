#pragma once

#include <functional>
#include <vector>

#include "hardyctl/biortho.hpp"
#include "hardyctl/exponential_sum.hpp"
#include "hardyctl/spectrum.hpp"

namespace hardyctl::control {

/// Modal statement of the control task: steer the coefficients rho0 of the
/// initial state to the coefficients rhoT of the target in time T, using the
/// first K modes. `u0_tail_norm` carries the L2 norm of the part of u0 not
/// captured by the truncation (zero for purely modal data).
struct ControlProblem {
  spectrum::PotentialParams params;
  BigFloat T;
  int K = 0;
  std::vector<BigFloat> rho0;
  std::vector<BigFloat> rhoT;
  double u0_tail_norm = 0.0;
};

ControlProblem make_problem(const spectrum::PotentialParams& params, double T, int K,
                            const std::vector<double>& rho0, const std::vector<double>& rhoT);

/// Fourier coefficients of a sampled function against the eigenbasis, by
/// composite Gauss-Legendre quadrature. `warning` is set when doubling the
/// panel count moves any coefficient by more than 1e-8.
struct FourierResult {
  std::vector<double> coeffs;
  double parseval_defect = 0.0;
  double max_refinement_delta = 0.0;
  bool warning = false;
};
FourierResult fourier_coefficients(const std::function<double(double)>& u,
                                   const spectrum::Spectrum& spec, int nodes = 400);

/// Quantitative reachability proxy sum_k |rhoT_k| k^(1/2-nu) e^(P pi k) over
/// the truncated coefficient list, evaluated in log space; returns +inf when
/// any term's natural log exceeds 700.
double admissibility(const std::vector<double>& rhoT, const spectrum::PotentialParams& params,
                     double P);

/// Boundary control in derivative form: f(t) = int_0^t g, with g a linear
/// combination of the biorthogonal family. f(0) = 0 by construction and
/// f(T) = 0 up to the zero-mean solve residual.
struct SynthesizedControl {
  ExponentialSum g;                        // f'
  BigFloat f_T;                            // f(T), reported rather than assumed
  std::vector<BigFloat> moment_residuals;  // scaled moment-condition residuals
  double admissibility_score = 0.0;
  double admissibility_P = 0.0;

  BigFloat f_at(const BigFloat& t) const { return g.integral_to(t); }
  BigFloat g_at(const BigFloat& t) const { return g.value(t); }
};

/// Assembles g = sum_k (lambda_k/r_k)(rho0_k - rhoT_k e^{lambda_k T}) sigma_k
/// and verifies the moment conditions in scaled form. Throws MagnitudeError
/// when a nonzero target mode's e^{lambda_k T} weight exceeds the 700-unit
/// log budget (unreachable at this precision/horizon).
SynthesizedControl synthesize(const ControlProblem& problem, const spectrum::Spectrum& spec,
                              const biortho::BiorthogonalFamily& family);

/// H1(0,T) norm of f: sqrt(||f||^2 + ||f'||^2), both factors in closed form.
BigFloat h1_norm(const SynthesizedControl& control);

/// L2(0,T) norm of f alone (closed form via the antiderivative).
BigFloat f_l2_norm(const SynthesizedControl& control);

}  // namespace hardyctl::control
