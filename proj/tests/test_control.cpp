#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "hardyctl/control.hpp"
#include "hardyctl/errors.hpp"
#include "oracles.hpp"

using namespace hardyctl;
using namespace hardyctl::control;

namespace {
const Precision kP256 = Precision::bits(256);
constexpr double kPi = std::numbers::pi;

struct Rig {
  spectrum::Spectrum spec;
  biortho::BiorthogonalFamily family;
};

Rig make_rig(double mu, double T, int K) {
  auto params = spectrum::derive_params(BigFloat(mu), kP256);
  auto spec = spectrum::build_spectrum(params, K, kP256);
  auto family = biortho::build_family(spec.lambdas(), BigFloat(T), kP256);
  return {std::move(spec), std::move(family)};
}
}  // namespace

TEST_CASE("fourier_coefficients: eigenfunction projects to a unit vector") {
  auto rig = make_rig(0.2, 1.0, 6);
  auto res = fourier_coefficients(
      [&](double x) { return spectrum::eigenfunction(rig.spec, 1, BigFloat(x)).to_double(); },
      rig.spec);
  REQUIRE(res.coeffs.size() == 6);
  CHECK(std::abs(res.coeffs[0] - 1.0) < 1e-10);
  for (int k = 1; k < 6; ++k) CHECK(std::abs(res.coeffs[k]) < 1e-10);
  CHECK_FALSE(res.warning);
}

TEST_CASE("fourier_coefficients: bubble polynomial against the exact antiderivative") {
  auto rig = make_rig(0.0, 1.0, 8);
  auto res = fourier_coefficients([](double x) { return x * (1.0 - x); }, rig.spec);
  for (int k = 1; k <= 8; ++k) {
    // int x(1-x) sqrt(2) sin(k pi x) dx = sqrt(2) * 2 (1 - (-1)^k) / (k pi)^3
    const double exact = std::sqrt(2.0) * 2.0 * (1.0 - std::pow(-1.0, k)) / std::pow(k * kPi, 3);
    CHECK(std::abs(res.coeffs[k - 1] - exact) < 1e-10);
  }
  CHECK(res.coeffs[0] == doctest::Approx(0.18244222961109435).epsilon(1e-9));
  // Parseval defect equals the l2 mass of the truncated tail
  CHECK(res.parseval_defect >= 0.0);
  CHECK(res.parseval_defect < 1e-6);
}

TEST_CASE("fourier_coefficients: zero function") {
  auto rig = make_rig(0.2, 1.0, 4);
  auto res = fourier_coefficients([](double) { return 0.0; }, rig.spec);
  for (double c : res.coeffs) CHECK(c == 0.0);
  CHECK(res.parseval_defect == 0.0);
}

TEST_CASE("admissibility examples") {
  auto p0 = spectrum::derive_params(BigFloat(0.0), kP256);
  CHECK(admissibility({0.0, 0.0, 0.0}, p0, 1.0) == 0.0);
  CHECK(admissibility({}, p0, 1.0) == 0.0);
  CHECK(admissibility({1.0}, p0, 1.0) == doctest::Approx(std::exp(kPi)).epsilon(1e-12));

  // negative mu lowers the k-power for mass on k >= 2
  auto pneg = spectrum::derive_params(BigFloat(-2.0), kP256);
  std::vector<double> rhoT{0.0, 1.0, 0.5};
  CHECK(admissibility(rhoT, pneg, 1.0) < admissibility(rhoT, p0, 1.0));

  // log-space overflow guard
  std::vector<double> far(300, 0.0);
  far.back() = 1.0;
  CHECK(std::isinf(admissibility(far, p0, 1.0)));
}

TEST_CASE("synthesize: zero data gives the zero control") {
  auto rig = make_rig(0.2, 0.7, 4);
  auto problem = make_problem(rig.spec.params, 0.7, 4, {}, {});
  auto ctl = synthesize(problem, rig.spec, rig.family);
  CHECK(ctl.g.empty());
  CHECK(ctl.f_T.is_zero());
  for (const auto& r : ctl.moment_residuals) CHECK(r.is_zero());
  CHECK(h1_norm(ctl).is_zero());
  CHECK(ctl.admissibility_score == 0.0);
}

TEST_CASE("synthesize: K = 1 null control is (pi/sqrt 2) rho0 sigma_1") {
  auto params = spectrum::derive_params(BigFloat(0.0), kP256);
  auto spec = spectrum::build_spectrum(params, 1, kP256);
  auto family = biortho::build_family(spec.lambdas(), BigFloat(1.0), kP256);
  const double rho0 = 0.8;
  auto problem = make_problem(params, 1.0, 1, {rho0}, {});
  auto ctl = synthesize(problem, spec, family);

  const double w = kPi / std::sqrt(2.0) * rho0;  // lambda_1 / r_1 = pi/sqrt(2)
  REQUIRE(ctl.g.terms().size() == family.sigmas[0].terms().size());
  for (size_t i = 0; i < ctl.g.terms().size(); ++i) {
    BigFloat expect = BigFloat(w) * family.sigmas[0].terms()[i].coeff;
    CHECK(abs(ctl.g.terms()[i].coeff - expect).to_double() < 1e-12);
  }
}

TEST_CASE("synthesize: K = 6 moment residuals at mu = 0.2") {
  auto rig = make_rig(0.2, 1.0, 6);
  auto problem = make_problem(rig.spec.params, 1.0, 6, {1.0, 0.5}, {});
  auto ctl = synthesize(problem, rig.spec, rig.family);
  for (const auto& r : ctl.moment_residuals) CHECK(r.to_double() <= 1e-10);
  CHECK(abs(ctl.f_T).to_double() <=
        1e-10 * (biortho::l2_norm(ctl.g) * sqrt(BigFloat(1.0))).to_double());
  CHECK(ctl.f_at(BigFloat(0.0)).is_zero());
}

TEST_CASE("synthesize: linear in the modal data") {
  // dyadic data so the superposition is exact in binary
  auto rig = make_rig(-1.0, 0.5, 5);
  auto pa = make_problem(rig.spec.params, 0.5, 5, {1.0, 0.0, -0.25}, {0.03125});
  auto pb = make_problem(rig.spec.params, 0.5, 5, {0.0, 0.75, 0.125}, {0.0, 0.015625});
  auto pc = make_problem(rig.spec.params, 0.5, 5, {2.0, 0.75, -0.375}, {0.0625, 0.015625});
  auto ca = synthesize(pa, rig.spec, rig.family);
  auto cb = synthesize(pb, rig.spec, rig.family);
  auto cc = synthesize(pc, rig.spec, rig.family);
  REQUIRE(cc.g.terms().size() == ca.g.terms().size());
  for (size_t i = 0; i < cc.g.terms().size(); ++i) {
    BigFloat combo = 2.0 * ca.g.terms()[i].coeff + cb.g.terms()[i].coeff;
    BigFloat scale = max(BigFloat(1.0), abs(cc.g.terms()[i].coeff));
    CHECK((abs(cc.g.terms()[i].coeff - combo) / scale).to_double() < 1e-40);
  }
}

TEST_CASE("synthesize: unreachable target mode raises MagnitudeError") {
  auto rig = make_rig(0.0, 1.0, 10);
  std::vector<double> rhoT(10, 0.0);
  rhoT[9] = 0.1;  // lambda_10 T = 100 pi^2 > 700
  auto problem = make_problem(rig.spec.params, 1.0, 10, {1.0}, rhoT);
  CHECK_THROWS_AS(synthesize(problem, rig.spec, rig.family), MagnitudeError);
}

TEST_CASE("synthesize rejects mismatched inputs") {
  auto rig = make_rig(0.2, 1.0, 4);
  auto other = make_rig(0.1, 1.0, 4);
  auto problem = make_problem(rig.spec.params, 1.0, 4, {1.0}, {});
  CHECK_THROWS_AS(synthesize(problem, other.spec, rig.family), DomainError);
  auto problem_wrong_T = make_problem(rig.spec.params, 0.5, 4, {1.0}, {});
  CHECK_THROWS_AS(synthesize(problem_wrong_T, rig.spec, rig.family), DomainError);
}

TEST_CASE("h1_norm: single-term derivative with large lambda T") {
  SynthesizedControl ctl{ExponentialSum(BigFloat(1.0)), BigFloat(0.0), {}, 0.0, 0.0};
  ctl.g.add_term(BigFloat(400.0), BigFloat(1.0));
  // ||f'||^2 -> 1/(2 lambda) for large lambda T
  const double g_l2 = biortho::l2_norm(ctl.g).to_double();
  CHECK(g_l2 * g_l2 == doctest::Approx(1.0 / 800.0).epsilon(1e-10));
  CHECK(h1_norm(ctl).to_double() >= g_l2);
}

TEST_CASE("h1_norm agrees with a dense trapezoid oracle") {
  auto rig = make_rig(0.2, 1.0, 6);
  auto problem = make_problem(rig.spec.params, 1.0, 6, {1.0, 0.5}, {});
  auto ctl = synthesize(problem, rig.spec, rig.family);

  const long N = 100000;
  const double h = 1.0 / N;
  double f_sq = 0.0, g_sq = 0.0;
  for (long i = 0; i <= N; ++i) {
    const double w = (i == 0 || i == N) ? 0.5 : 1.0;
    BigFloat t(i * h);
    const double fv = ctl.f_at(t).to_double();
    const double gv = ctl.g_at(t).to_double();
    f_sq += w * fv * fv;
    g_sq += w * gv * gv;
  }
  f_sq *= h;
  g_sq *= h;
  const double oracle_h1 = std::sqrt(f_sq + g_sq);
  CHECK(h1_norm(ctl).to_double() == doctest::Approx(oracle_h1).epsilon(1e-6));
}

TEST_CASE("mu = 0 pipeline matches the independent sine-basis pipeline") {
  std::vector<double> rho0{1.0, 0.5};
  std::vector<double> rhoT{0.1};
  for (bool null_target : {true, false}) {
    auto rig = make_rig(0.0, 1.0, 6);
    auto problem =
        make_problem(rig.spec.params, 1.0, 6, rho0, null_target ? std::vector<double>{} : rhoT);
    auto ctl = synthesize(problem, rig.spec, rig.family);
    oracle::SinePipeline sine(1.0, 6, rho0, null_target ? std::vector<double>{} : rhoT);

    CHECK(h1_norm(ctl).to_double() == doctest::Approx(sine.h1).epsilon(1e-9));
    CHECK(f_l2_norm(ctl).to_double() == doctest::Approx(sine.f_l2).epsilon(1e-9));
    CHECK(biortho::l2_norm(ctl.g).to_double() == doctest::Approx(sine.g_l2).epsilon(1e-9));
    double worst = 0.0;
    for (const auto& r : ctl.moment_residuals) worst = std::max(worst, r.to_double());
    CHECK(worst <= 1e-9);
    CHECK(sine.max_moment_residual <= 1e-9);
  }
}
