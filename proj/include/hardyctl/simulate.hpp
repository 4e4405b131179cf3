#pragma once

#include <Eigen/Core>

#include <optional>
#include <vector>

#include "hardyctl/control.hpp"

namespace hardyctl::simulate {

/// Closed-form modal solution of the controlled problem on [0, T]:
/// u(x,t) = sum_k beta_k(t) Phi_k(x) + x^alpha p(x) f(t), p(x) = 1 - x^(1-2 alpha),
/// with beta_k the coefficients of the lifted (homogeneous-boundary) part.
/// A null control pointer means f = 0 (pure semigroup decay).
class ModalSolution {
 public:
  ModalSolution(const control::ControlProblem& problem, const spectrum::Spectrum& spec,
                const control::SynthesizedControl* ctl);

  BigFloat beta(int k, const BigFloat& t) const;     // k >= 1
  BigFloat beta_dt(int k, const BigFloat& t) const;  // -lambda beta - (r/lambda) g(t)
  BigFloat lift(const BigFloat& x, const BigFloat& t) const;
  BigFloat u(const BigFloat& x, const BigFloat& t) const;
  BigFloat u_t(const BigFloat& x, const BigFloat& t) const;  // exact time derivative
  BigFloat f(const BigFloat& t) const;

  const spectrum::Spectrum& spec() const { return *spec_; }
  const control::ControlProblem& problem() const { return *problem_; }

 private:
  const control::ControlProblem* problem_;
  const spectrum::Spectrum* spec_;
  const control::SynthesizedControl* ctl_;  // may be null
};

struct SimulationReport {
  std::vector<BigFloat> beta_T;
  double terminal_error_l2 = 0.0;  // l2 distance of beta(T) to rhoT over k <= K
  double tail_bound = 0.0;         // ||u0 tail|| e^{-lambda_{K+1} T}
};

/// Terminal modal state by variation of constants, every factor bounded.
SimulationReport terminal_state(const control::ControlProblem& problem,
                                const control::SynthesizedControl& ctl,
                                const spectrum::Spectrum& spec);

/// Independent exponential-integrator time stepper (exact per-step source
/// integration); returns the max modal deviation from the closed form.
double step_crosscheck(const control::ControlProblem& problem,
                       const control::SynthesizedControl& ctl, const spectrum::Spectrum& spec,
                       long steps);

struct Samples {
  std::vector<double> x;
  std::vector<double> t;
  Eigen::MatrixXd u;  // u(i, j) = u(x[i], t[j])
};

/// Space-time reconstruction of u on a grid; x must stay in [1e-6, 1].
Samples reconstruct(const control::ControlProblem& problem,
                    const control::SynthesizedControl* ctl, const spectrum::Spectrum& spec,
                    const std::vector<double>& x_grid, const std::vector<double>& t_grid);

/// Weighted-trace diagnostic near the singular endpoint. The trace
/// x^{-alpha} u(x,t) converges to f(t) at the rate x^{2 nu}; its small-x
/// expansion is p(x) f(t) + x^{2 nu} sum_k beta_k(t) r_k / (1/2 + nu).
/// `expansion_rel` (deviation from the expansion, relative to f) is the
/// tight check; `raw_rel` records the distance to f itself, which shrinks
/// like x^{2 nu}.
struct WeightedTrace {
  double trace = 0.0;
  double f_value = 0.0;
  double expansion = 0.0;
  double expansion_rel = 0.0;
  double raw_rel = 0.0;
};
WeightedTrace weighted_trace_check(const ModalSolution& sol, double x, double t);

/// Max scaled residual of the identity (x^alpha p)'' + mu x^(alpha-2) p = 0,
/// evaluated through the exact polynomial exponents.
double p_identity_check(const spectrum::PotentialParams& params,
                        const std::vector<double>& x_grid);

/// Quadrature of <-x^alpha p, Phi_k>, which the closed form says is
/// -r_k/lambda_k; used to validate the source projection.
double source_projection_quadrature(const spectrum::Spectrum& spec, int k, int nodes = 400);

}  // namespace hardyctl::simulate
