#include "hardyctl/control.hpp"

#include <cmath>
#include <limits>

#include "hardyctl/errors.hpp"
#include "hardyctl/quadrature.hpp"

namespace hardyctl::control {

namespace {
constexpr const char* kModule = "control";
constexpr double kLogBudget = 700.0;
}  // namespace

ControlProblem make_problem(const spectrum::PotentialParams& params, double T, int K,
                            const std::vector<double>& rho0, const std::vector<double>& rhoT) {
  if (K < 1) throw DomainError(kModule, "K must be positive");
  if (!(T > 0)) throw DomainError(kModule, "T must be positive");
  ControlProblem p;
  p.params = params;
  p.T = BigFloat(T);
  p.K = K;
  p.rho0.assign(K, BigFloat(0.0));
  p.rhoT.assign(K, BigFloat(0.0));
  for (size_t i = 0; i < rho0.size() && i < static_cast<size_t>(K); ++i) p.rho0[i] = rho0[i];
  for (size_t i = 0; i < rhoT.size() && i < static_cast<size_t>(K); ++i) p.rhoT[i] = rhoT[i];
  return p;
}

FourierResult fourier_coefficients(const std::function<double(double)>& u,
                                   const spectrum::Spectrum& spec, int nodes) {
  if (nodes < 16) throw DomainError(kModule, "fourier_coefficients needs at least 16 nodes");
  const int K = spec.size();

  // Panels graded toward x = 0, where Phi_k carries fractional powers.
  auto project = [&](bool refined) {
    std::vector<double> rho(K, 0.0);
    double u_sq = quad::integrate_unit_graded(
        [&](double x) {
          const double ux = u(x);
          return ux * ux;
        },
        nodes, refined);
    for (int k = 1; k <= K; ++k) {
      rho[k - 1] = quad::integrate_unit_graded(
          [&](double x) {
            return u(x) * spectrum::eigenfunction(spec, k, BigFloat(x)).to_double();
          },
          nodes, refined);
    }
    return std::pair{rho, u_sq};
  };

  auto [rho_coarse, usq_coarse] = project(false);
  auto [rho_fine, usq_fine] = project(true);
  (void)usq_coarse;

  FourierResult res;
  res.coeffs = rho_fine;
  double sum_sq = 0.0;
  for (double r : rho_fine) sum_sq += r * r;
  res.parseval_defect = usq_fine - sum_sq;
  for (int k = 0; k < K; ++k) {
    res.max_refinement_delta =
        std::max(res.max_refinement_delta, std::abs(rho_fine[k] - rho_coarse[k]));
  }
  res.warning = res.max_refinement_delta > 1e-8;
  return res;
}

double admissibility(const std::vector<double>& rhoT, const spectrum::PotentialParams& params,
                     double P) {
  const double nu = params.nu.to_double();
  double score = 0.0;
  for (size_t i = 0; i < rhoT.size(); ++i) {
    if (rhoT[i] == 0.0) continue;
    const double k = static_cast<double>(i + 1);
    const double lt = std::log(std::abs(rhoT[i])) + (0.5 - nu) * std::log(k) +
                      P * std::numbers::pi * k;
    if (lt > kLogBudget) return std::numeric_limits<double>::infinity();
    score += std::exp(lt);
  }
  return score;
}

SynthesizedControl synthesize(const ControlProblem& problem, const spectrum::Spectrum& spec,
                              const biortho::BiorthogonalFamily& family) {
  const int K = problem.K;
  if (spec.size() != K || family.K != K) {
    throw DomainError(kModule, "problem, spectrum and family disagree on K");
  }
  if (!(abs(family.T - problem.T) <= abs(problem.T) * 1e-12)) {
    throw DomainError(kModule, "family horizon does not match the problem's T");
  }
  const Precision& prec = family.precision;
  PrecisionGuard guard(prec.mantissa_bits);
  for (int k = 0; k < K; ++k) {
    BigFloat rel = abs(family.lambdas[k] - spec.modes[k].lambda);
    if (rel > spec.modes[k].lambda * 1e-12) {
      throw DomainError(kModule, "family rates do not match the spectrum's eigenvalues");
    }
  }

  // Reachability budget: a target mode with log|rhoT_k| + lambda_k T > 700
  // is numerically unreachable here.
  for (int k = 0; k < K; ++k) {
    if (problem.rhoT[k].is_zero()) continue;
    const double lt = std::log(abs(problem.rhoT[k]).to_double()) +
                      (spec.modes[k].lambda * problem.T).to_double();
    if (lt > kLogBudget) {
      throw MagnitudeError(kModule, "target mode " + std::to_string(k + 1) +
                                        " exceeds the e^(lambda T) log budget of 700");
    }
  }

  SynthesizedControl ctl{ExponentialSum(family.T), BigFloat(0.0), {}, 0.0, 0.0};
  for (int k = 0; k < K; ++k) {
    const auto& mode = spec.modes[k];
    BigFloat weight = mode.lambda / mode.s *
                      (problem.rho0[k] - problem.rhoT[k] * exp(mode.lambda * problem.T));
    if (weight.is_zero()) continue;
    for (const auto& term : family.sigmas[k].terms()) {
      ctl.g.add_term(term.rate, weight * term.coeff);
    }
  }
  ctl.f_T = ctl.g.integral();

  // Scaled moment conditions:
  // (s_k/lambda_k)(f(T) - m_k) + rho0_k e^{-lambda_k T} - rhoT_k = 0,
  // where m_k = e^{-lambda_k T} int_0^T g e^{lambda_k t} dt.
  ctl.moment_residuals.reserve(K);
  for (int k = 0; k < K; ++k) {
    const auto& mode = spec.modes[k];
    BigFloat m_k = biortho::scaled_moment(ctl.g, mode.lambda);
    BigFloat resid = mode.s / mode.lambda * (ctl.f_T - m_k) +
                     problem.rho0[k] * exp(-mode.lambda * problem.T) - problem.rhoT[k];
    ctl.moment_residuals.push_back(abs(resid));
  }

  std::vector<double> rhoT_d(K);
  for (int k = 0; k < K; ++k) rhoT_d[k] = problem.rhoT[k].to_double();
  if (K >= 4) {
    ctl.admissibility_P = biortho::estimate_fit(family).P_fit;
  }
  ctl.admissibility_score = admissibility(rhoT_d, problem.params, ctl.admissibility_P);
  return ctl;
}

BigFloat f_l2_norm(const SynthesizedControl& control) {
  // f(t) = sum_l a_l e^{-r_l (T-t)} + b t + d with a_l = c_l/r_l for r_l > 0,
  // b the rate-0 coefficient of g and d = -sum_l a_l e^{-r_l T}; all pieces
  // of int f^2 are closed-form.
  const BigFloat& T = control.g.horizon();
  std::vector<ExponentialSum::Term> a;
  BigFloat b(0.0), d(0.0);
  for (const auto& term : control.g.terms()) {
    if (term.rate.is_zero()) {
      b = term.coeff;
    } else {
      BigFloat al = term.coeff / term.rate;
      d -= al * exp(-term.rate * T);
      a.push_back({term.rate, al});
    }
  }
  auto I1 = [&](const BigFloat& r) {  // int_0^T t e^{-r(T-t)} dt
    return T / r - exp_gram_entry(r, T) / r;
  };
  BigFloat s(0.0);
  for (const auto& p : a) {
    for (const auto& q : a) s += p.coeff * q.coeff * exp_gram_entry(p.rate + q.rate, T);
  }
  for (const auto& p : a) {
    s += 2.0 * p.coeff * (b * I1(p.rate) + d * exp_gram_entry(p.rate, T));
  }
  s += b * b * T * T * T / 3.0 + b * d * T * T + d * d * T;
  if (s < 0) s = BigFloat(0.0);
  return sqrt(s);
}

BigFloat h1_norm(const SynthesizedControl& control) {
  BigFloat f2 = f_l2_norm(control);
  BigFloat g2 = biortho::l2_norm(control.g);
  return sqrt(f2 * f2 + g2 * g2);
}

}  // namespace hardyctl::control
