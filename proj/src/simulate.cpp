#include "hardyctl/simulate.hpp"

#include <cmath>

#include "hardyctl/errors.hpp"
#include "hardyctl/quadrature.hpp"

namespace hardyctl::simulate {

namespace {
constexpr const char* kModule = "simulate";

void check_rates_match(const control::SynthesizedControl& ctl, const spectrum::Spectrum& spec) {
  for (const auto& term : ctl.g.terms()) {
    if (term.rate.is_zero()) continue;
    bool found = false;
    for (const auto& mode : spec.modes) {
      if (abs(term.rate - mode.lambda) <= mode.lambda * 1e-12) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw DomainError(kModule, "control and spectrum disagree on the exponential rates");
    }
  }
}

}  // namespace

ModalSolution::ModalSolution(const control::ControlProblem& problem,
                             const spectrum::Spectrum& spec,
                             const control::SynthesizedControl* ctl)
    : problem_(&problem), spec_(&spec), ctl_(ctl) {
  if (spec.size() != problem.K) throw DomainError(kModule, "problem/spectrum K mismatch");
  if (ctl != nullptr) check_rates_match(*ctl, spec);
}

BigFloat ModalSolution::beta(int k, const BigFloat& t) const {
  const auto& mode = spec_->modes[k - 1];
  BigFloat out = problem_->rho0[k - 1] * exp(-mode.lambda * t);
  if (ctl_ == nullptr) return out;
  // int_0^t e^{-lambda_k (t-s)} e^{-lambda_l (T-s)} ds
  //   = e^{-lambda_l (T-t)} (1 - e^{-(lambda_k+lambda_l) t}) / (lambda_k+lambda_l).
  BigFloat src(0.0);
  for (const auto& term : ctl_->g.terms()) {
    src += term.coeff * exp(-term.rate * (problem_->T - t)) *
           exp_gram_entry(mode.lambda + term.rate, t);
  }
  return out - mode.s / mode.lambda * src;
}

BigFloat ModalSolution::beta_dt(int k, const BigFloat& t) const {
  const auto& mode = spec_->modes[k - 1];
  BigFloat out = -mode.lambda * beta(k, t);
  if (ctl_ != nullptr) out -= mode.s / mode.lambda * ctl_->g_at(t);
  return out;
}

BigFloat ModalSolution::f(const BigFloat& t) const {
  return ctl_ == nullptr ? BigFloat(0.0) : ctl_->f_at(t);
}

BigFloat ModalSolution::lift(const BigFloat& x, const BigFloat& t) const {
  if (ctl_ == nullptr) return BigFloat(0.0);
  const auto& p = spec_->params;
  BigFloat px = 1.0 - pow(x, 1.0 - 2.0 * p.alpha);
  return pow(x, p.alpha) * px * ctl_->f_at(t);
}

BigFloat ModalSolution::u(const BigFloat& x, const BigFloat& t) const {
  BigFloat s(0.0);
  for (int k = 1; k <= spec_->size(); ++k) {
    s += beta(k, t) * spectrum::eigenfunction(*spec_, k, x);
  }
  return s + lift(x, t);
}

BigFloat ModalSolution::u_t(const BigFloat& x, const BigFloat& t) const {
  BigFloat s(0.0);
  for (int k = 1; k <= spec_->size(); ++k) {
    s += beta_dt(k, t) * spectrum::eigenfunction(*spec_, k, x);
  }
  if (ctl_ != nullptr) {
    const auto& p = spec_->params;
    BigFloat px = 1.0 - pow(x, 1.0 - 2.0 * p.alpha);
    s += pow(x, p.alpha) * px * ctl_->g_at(t);
  }
  return s;
}

SimulationReport terminal_state(const control::ControlProblem& problem,
                                const control::SynthesizedControl& ctl,
                                const spectrum::Spectrum& spec) {
  if (spec.size() != problem.K) throw DomainError(kModule, "problem/spectrum K mismatch");
  check_rates_match(ctl, spec);
  PrecisionGuard guard(spec.precision.mantissa_bits);

  SimulationReport report;
  report.beta_T.reserve(problem.K);
  BigFloat err_sq(0.0);
  for (int k = 1; k <= problem.K; ++k) {
    const auto& mode = spec.modes[k - 1];
    BigFloat b = problem.rho0[k - 1] * exp(-mode.lambda * problem.T) -
                 mode.s / mode.lambda * biortho::scaled_moment(ctl.g, mode.lambda);
    BigFloat diff = b - problem.rhoT[k - 1];
    err_sq += diff * diff;
    report.beta_T.push_back(std::move(b));
  }
  report.terminal_error_l2 = sqrt(err_sq).to_double();
  report.tail_bound =
      (BigFloat(problem.u0_tail_norm) * exp(-spec.lambda_next * problem.T)).to_double();
  return report;
}

double step_crosscheck(const control::ControlProblem& problem,
                       const control::SynthesizedControl& ctl, const spectrum::Spectrum& spec,
                       long steps) {
  if (steps < 10000) throw DomainError(kModule, "step_crosscheck requires steps >= 10^4");
  PrecisionGuard guard(spec.precision.mantissa_bits);
  const int K = problem.K;
  const auto& terms = ctl.g.terms();
  const size_t L = terms.size();
  const BigFloat h = problem.T / static_cast<double>(steps);

  // beta' = -lambda beta - (s/lambda) g(t), stepped with the exact
  // propagator; the source is integrated in closed form on each step:
  // int_t^{t+h} e^{-lam(t+h-s)} c e^{-rate(T-s)} ds
  //   = c e^{-rate(T-t-h)} (1 - e^{-(lam+rate) h}) / (lam+rate).
  std::vector<BigFloat> prop(K), src_w(K);
  std::vector<std::vector<BigFloat>> D(K, std::vector<BigFloat>(L));
  for (int k = 0; k < K; ++k) {
    const auto& mode = spec.modes[k];
    prop[k] = exp(-mode.lambda * h);
    src_w[k] = mode.s / mode.lambda;
    for (size_t l = 0; l < L; ++l) D[k][l] = exp_gram_entry(mode.lambda + terms[l].rate, h);
  }
  std::vector<BigFloat> E(L), E_step(L);
  for (size_t l = 0; l < L; ++l) {
    E[l] = exp(-terms[l].rate * (problem.T - h));
    E_step[l] = exp(terms[l].rate * h);
  }

  std::vector<BigFloat> beta(K);
  for (int k = 0; k < K; ++k) beta[k] = problem.rho0[k];
  for (long n = 0; n < steps; ++n) {
    for (int k = 0; k < K; ++k) {
      BigFloat src(0.0);
      for (size_t l = 0; l < L; ++l) src += terms[l].coeff * E[l] * D[k][l];
      beta[k] = prop[k] * beta[k] - src_w[k] * src;
    }
    if (n + 1 < steps) {
      for (size_t l = 0; l < L; ++l) E[l] *= E_step[l];
    }
  }

  SimulationReport closed = terminal_state(problem, ctl, spec);
  BigFloat dev(0.0);
  for (int k = 0; k < K; ++k) {
    BigFloat d = abs(beta[k] - closed.beta_T[k]);
    if (d > dev) dev = d;
  }
  return dev.to_double();
}

Samples reconstruct(const control::ControlProblem& problem,
                    const control::SynthesizedControl* ctl, const spectrum::Spectrum& spec,
                    const std::vector<double>& x_grid, const std::vector<double>& t_grid) {
  for (double x : x_grid) {
    if (x < 1e-6 || x > 1.0) {
      throw DomainError(kModule, "reconstruct grid must satisfy 1e-6 <= x <= 1");
    }
  }
  for (double t : t_grid) {
    if (t < 0.0 || BigFloat(t) > problem.T + 1e-15) {
      throw DomainError(kModule, "reconstruct grid must satisfy 0 <= t <= T");
    }
  }
  PrecisionGuard guard(spec.precision.mantissa_bits);
  ModalSolution sol(problem, spec, ctl);

  const int K = problem.K;
  const int Nx = static_cast<int>(x_grid.size());
  const int Nt = static_cast<int>(t_grid.size());

  Eigen::MatrixXd phi(Nx, K), betas(K, Nt);
  for (int i = 0; i < Nx; ++i) {
    for (int k = 1; k <= K; ++k) {
      phi(i, k - 1) = spectrum::eigenfunction(spec, k, BigFloat(x_grid[i])).to_double();
    }
  }
  for (int j = 0; j < Nt; ++j) {
    for (int k = 1; k <= K; ++k) betas(k - 1, j) = sol.beta(k, BigFloat(t_grid[j])).to_double();
  }

  Samples s;
  s.x = x_grid;
  s.t = t_grid;
  s.u = phi * betas;
  for (int j = 0; j < Nt; ++j) {
    BigFloat ft = sol.f(BigFloat(t_grid[j]));
    for (int i = 0; i < Nx; ++i) {
      BigFloat x(x_grid[i]);
      BigFloat px = 1.0 - pow(x, 1.0 - 2.0 * spec.params.alpha);
      s.u(i, j) += (pow(x, spec.params.alpha) * px * ft).to_double();
    }
  }
  return s;
}

WeightedTrace weighted_trace_check(const ModalSolution& sol, double x, double t) {
  const auto& spec = sol.spec();
  PrecisionGuard guard(spec.precision.mantissa_bits);
  const auto& p = spec.params;
  BigFloat xb(x), tb(t);

  WeightedTrace out;
  BigFloat trace = pow(xb, -p.alpha) * sol.u(xb, tb);
  BigFloat fv = sol.f(tb);
  BigFloat px = 1.0 - pow(xb, 1.0 - 2.0 * p.alpha);
  BigFloat modal(0.0);
  for (int k = 1; k <= spec.size(); ++k) {
    modal += sol.beta(k, tb) * spec.modes[k - 1].r;
  }
  BigFloat expansion = px * fv + pow(xb, 2.0 * p.nu) * modal / (0.5 + p.nu);

  out.trace = trace.to_double();
  out.f_value = fv.to_double();
  out.expansion = expansion.to_double();
  const double scale = std::abs(out.f_value);
  out.expansion_rel = (abs(trace - expansion)).to_double() / scale;
  out.raw_rel = (abs(trace - fv)).to_double() / scale;
  return out;
}

double p_identity_check(const spectrum::PotentialParams& params,
                        const std::vector<double>& x_grid) {
  PrecisionGuard guard(params.nu.precision());
  // (x^alpha p)'' + mu x^(alpha-2) p
  //   = [alpha(alpha-1) + mu] x^(alpha-2) + [alpha(1-alpha) - mu] x^(-1-alpha);
  // both brackets vanish since alpha^2 - alpha + mu = 0.
  const BigFloat& a = params.alpha;
  BigFloat c1 = a * (a - 1.0) + params.mu;
  BigFloat c2 = a * (1.0 - a) - params.mu;
  BigFloat worst(0.0);
  for (double xd : x_grid) {
    if (!(xd > 0.0) || xd >= 1.0) throw DomainError(kModule, "p_identity_check needs 0 < x < 1");
    BigFloat x(xd);
    BigFloat t1 = pow(x, a - 2.0);
    BigFloat t2 = pow(x, -1.0 - a);
    BigFloat resid = abs(c1 * t1 + c2 * t2);
    BigFloat scale = max(BigFloat(1.0), abs(params.mu) * t1 + abs(a * (1.0 - a)) * t2);
    BigFloat scaled = resid / scale;
    if (scaled > worst) worst = scaled;
  }
  return worst.to_double();
}

double source_projection_quadrature(const spectrum::Spectrum& spec, int k, int nodes) {
  const double alpha = spec.params.alpha.to_double();
  auto integrand = [&](double x) {
    const double p = 1.0 - std::pow(x, 1.0 - 2.0 * alpha);
    return -std::pow(x, alpha) * p * spectrum::eigenfunction(spec, k, BigFloat(x)).to_double();
  };
  return quad::integrate_unit_graded(integrand, nodes, true);
}

}  // namespace hardyctl::simulate
