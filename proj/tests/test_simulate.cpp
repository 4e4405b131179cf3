#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hardyctl/errors.hpp"
#include "hardyctl/quadrature.hpp"
#include "hardyctl/simulate.hpp"
#include "oracles.hpp"

using namespace hardyctl;
using namespace hardyctl::simulate;

namespace {
const Precision kP256 = Precision::bits(256);

struct Pipeline {
  spectrum::Spectrum spec;
  control::ControlProblem problem;
  control::SynthesizedControl ctl;
};

Pipeline make_pipeline(double mu, double T, int K, std::vector<double> rho0,
                       std::vector<double> rhoT) {
  auto params = spectrum::derive_params(BigFloat(mu), kP256);
  auto spec = spectrum::build_spectrum(params, K, kP256);
  auto family = biortho::build_family(spec.lambdas(), BigFloat(T), kP256);
  auto problem = control::make_problem(params, T, K, rho0, rhoT);
  auto ctl = control::synthesize(problem, spec, family);
  return {std::move(spec), std::move(problem), std::move(ctl)};
}

control::SynthesizedControl null_control(double T) {
  return control::SynthesizedControl{ExponentialSum(BigFloat(T)), BigFloat(0.0), {}, 0.0, 0.0};
}
}  // namespace

TEST_CASE("f = 0 gives pure modal decay") {
  auto params = spectrum::derive_params(BigFloat(0.2), kP256);
  auto spec = spectrum::build_spectrum(params, 5, kP256);
  auto problem = control::make_problem(params, 0.3, 5, {1.0, 0.0, -0.5}, {});
  auto ctl = null_control(0.3);
  auto report = terminal_state(problem, ctl, spec);
  double norm_b = 0.0, norm_r = 0.0;
  for (int k = 0; k < 5; ++k) {
    BigFloat expect = problem.rho0[k] * exp(-spec.modes[k].lambda * problem.T);
    CHECK(report.beta_T[k] == expect);
    norm_b += report.beta_T[k].to_double() * report.beta_T[k].to_double();
    norm_r += problem.rho0[k].to_double() * problem.rho0[k].to_double();
  }
  // semigroup contraction, mode-wise
  const double bound = std::exp(-spec.modes[0].lambda.to_double() * 0.3) * std::sqrt(norm_r);
  CHECK(std::sqrt(norm_b) <= bound * (1.0 + 1e-14));
  CHECK(report.tail_bound == 0.0);
}

TEST_CASE("null control reaches zero: mu = 0, K = 6") {
  auto pipe = make_pipeline(0.0, 1.0, 6, {1.0, 0.5}, {});
  auto report = terminal_state(pipe.problem, pipe.ctl, pipe.spec);
  CHECK(report.terminal_error_l2 <= 1e-8);
  double max_resid = 0.0;
  for (const auto& r : pipe.ctl.moment_residuals) max_resid = std::max(max_resid, r.to_double());
  CHECK(report.terminal_error_l2 <= 10.0 * 6 * max_resid + 1e-30);
}

TEST_CASE("null control reaches zero: mu = 0.2, T = 0.1, K = 8") {
  auto pipe = make_pipeline(0.2, 0.1, 8, {1.0, 0.0, 0.5}, {});
  auto report = terminal_state(pipe.problem, pipe.ctl, pipe.spec);
  CHECK(report.terminal_error_l2 <= 1e-6);
}

TEST_CASE("nonzero reachable target: mu = 0.2, rhoT = 0.1 e1") {
  auto pipe = make_pipeline(0.2, 1.0, 6, {1.0, 0.5}, {0.1});
  auto report = terminal_state(pipe.problem, pipe.ctl, pipe.spec);
  CHECK(report.terminal_error_l2 <= 1e-6);
  CHECK(std::abs(report.beta_T[0].to_double() - 0.1) <= 1e-8);
}

TEST_CASE("exponential-integrator cross-check agrees with the closed form") {
  auto pipe = make_pipeline(0.0, 1.0, 6, {1.0, 0.5}, {});
  const double dev1 = step_crosscheck(pipe.problem, pipe.ctl, pipe.spec, 10000);
  CHECK(dev1 <= 1e-10);
  const double dev2 = step_crosscheck(pipe.problem, pipe.ctl, pipe.spec, 20000);
  CHECK(std::abs(dev1 - dev2) <= 1e-12);
  CHECK_THROWS_AS(step_crosscheck(pipe.problem, pipe.ctl, pipe.spec, 5000), DomainError);
}

TEST_CASE("cross-check with f = 0 is exact") {
  auto params = spectrum::derive_params(BigFloat(-1.0), kP256);
  auto spec = spectrum::build_spectrum(params, 4, kP256);
  auto problem = control::make_problem(params, 0.5, 4, {1.0, -0.25, 0.0, 2.0}, {});
  auto ctl = null_control(0.5);
  CHECK(step_crosscheck(problem, ctl, spec, 10000) <= 1e-40);
}

TEST_CASE("reconstruction at t = 0 recovers the initial datum") {
  auto pipe = make_pipeline(0.2, 1.0, 6, {1.0, 0.5}, {});
  std::vector<double> xs{1e-4, 0.05, 0.2, 0.5, 0.77, 1.0};
  auto samples = reconstruct(pipe.problem, &pipe.ctl, pipe.spec, xs, {0.0, 0.5, 1.0});
  for (size_t i = 0; i < xs.size(); ++i) {
    double expect = 0.0;
    for (int k = 1; k <= 6; ++k) {
      expect += pipe.problem.rho0[k - 1].to_double() *
                spectrum::eigenfunction(pipe.spec, k, BigFloat(xs[i])).to_double();
    }
    CHECK(std::abs(samples.u(i, 0) - expect) < 1e-9);
  }
  // boundary condition at x = 1, all sampled times
  for (int j = 0; j < 3; ++j) CHECK(std::abs(samples.u(5, j)) < 1e-9);
}

TEST_CASE("reconstruct validates its grids") {
  auto pipe = make_pipeline(0.2, 1.0, 4, {1.0}, {});
  CHECK_THROWS_AS(reconstruct(pipe.problem, &pipe.ctl, pipe.spec, {1e-7}, {0.5}), DomainError);
  CHECK_THROWS_AS(reconstruct(pipe.problem, &pipe.ctl, pipe.spec, {0.5}, {1.5}), DomainError);
}

TEST_CASE("weighted trace converges to f at the x^(2 nu) rate") {
  auto pipe = make_pipeline(0.2, 1.0, 8, {1.0, 0.0, 0.5}, {});
  ModalSolution sol(pipe.problem, pipe.spec, &pipe.ctl);
  const double t = 0.5;

  auto w3 = weighted_trace_check(sol, 1e-3, t);
  auto w4 = weighted_trace_check(sol, 1e-4, t);
  auto w5 = weighted_trace_check(sol, 1e-5, t);

  // the small-x expansion pins the trace to f's scale
  CHECK(w4.expansion_rel <= 1e-3);
  CHECK(w5.expansion_rel <= 1e-4);

  // raw distance to f decays by 10^(-2 nu) per decade in x
  const double decade = std::pow(10.0, -2.0 * pipe.spec.params.nu.to_double());
  CHECK(w4.raw_rel / w3.raw_rel == doctest::Approx(decade).epsilon(0.05));
  CHECK(w5.raw_rel / w4.raw_rel == doctest::Approx(decade).epsilon(0.05));
  CHECK(w5.raw_rel < w4.raw_rel);
  CHECK(w4.raw_rel < w3.raw_rel);
}

TEST_CASE("projection of the reconstructed terminal state returns beta(T)") {
  auto pipe = make_pipeline(0.2, 1.0, 6, {1.0, 0.5}, {0.1});
  auto report = terminal_state(pipe.problem, pipe.ctl, pipe.spec);
  ModalSolution sol(pipe.problem, pipe.spec, &pipe.ctl);
  for (int k = 1; k <= 6; ++k) {
    const double projected = quad::integrate_unit_graded(
        [&](double x) {
          return sol.u(BigFloat(x), pipe.problem.T).to_double() *
                 spectrum::eigenfunction(pipe.spec, k, BigFloat(x)).to_double();
        },
        400);
    CHECK(std::abs(projected - report.beta_T[k - 1].to_double()) < 1e-8);
  }
}

TEST_CASE("p-identity residual vanishes") {
  std::vector<double> grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  auto p0 = spectrum::derive_params(BigFloat(0.0), kP256);
  CHECK(simulate::p_identity_check(p0, grid) == 0.0);  // alpha = 0: both brackets are 0
  auto p1 = spectrum::derive_params(BigFloat(0.2), kP256);
  CHECK(simulate::p_identity_check(p1, grid) <= 1e-12);
  auto p2 = spectrum::derive_params(BigFloat(-1.0), kP256);
  CHECK(simulate::p_identity_check(p2, grid) <= 1e-12);
}

TEST_CASE("source projection quadrature equals -s_k/lambda_k") {
  for (double mu : {-1.0, 0.2}) {
    auto params = spectrum::derive_params(BigFloat(mu), kP256);
    auto spec = spectrum::build_spectrum(params, 8, kP256);
    for (int k = 1; k <= 8; ++k) {
      const double expect = -(spec.modes[k - 1].s / spec.modes[k - 1].lambda).to_double();
      CHECK(std::abs(source_projection_quadrature(spec, k) - expect) < 1e-8);
    }
  }
}

TEST_CASE("terminal_state rejects foreign controls") {
  auto pipe = make_pipeline(0.2, 1.0, 4, {1.0}, {});
  auto other = make_pipeline(0.1, 1.0, 4, {1.0}, {});
  CHECK_THROWS_AS(terminal_state(pipe.problem, other.ctl, pipe.spec), DomainError);
}
