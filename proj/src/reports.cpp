#include "hardyctl/reports.hpp"

#include <sstream>

#include "hardyctl/json_io.hpp"

namespace hardyctl::reports {

namespace {

constexpr const char* kCrlf = "\r\n";  // RFC 4180 line endings

nlohmann::json power_fit_json(const analysis::PowerFit& fit) {
  return {{"exponent", io::decimal(fit.exponent)},
          {"intercept", io::decimal(fit.intercept)},
          {"r_squared", io::decimal(fit.r_squared)}};
}

}  // namespace

nlohmann::json spectrum_report(const spectrum::Spectrum& spec) {
  nlohmann::json modes = nlohmann::json::array();
  for (const auto& m : spec.modes) {
    modes.push_back({{"k", m.k},
                     {"j", io::decimal(m.j)},
                     {"lambda", io::decimal(m.lambda)},
                     {"c_norm", io::decimal(m.c_norm)},
                     {"r", io::decimal(m.r)},
                     {"s", io::decimal(m.s)}});
  }
  return {{"mu", io::decimal(spec.params.mu)},
          {"nu", io::decimal(spec.params.nu)},
          {"alpha", io::decimal(spec.params.alpha)},
          {"K", spec.size()},
          {"lambda_next", io::decimal(spec.lambda_next)},
          {"mantissa_bits", spec.precision.mantissa_bits},
          {"modes", std::move(modes)}};
}

nlohmann::json family_report(const biortho::BiorthogonalFamily& family) {
  nlohmann::json sigmas = nlohmann::json::array();
  for (const auto& sigma : family.sigmas) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : sigma.terms()) {
      terms.push_back({{"rate", io::decimal(t.rate)}, {"coeff", io::decimal(t.coeff)}});
    }
    sigmas.push_back(std::move(terms));
  }
  nlohmann::json lambdas = nlohmann::json::array();
  for (const auto& l : family.lambdas) lambdas.push_back(io::decimal(l));
  nlohmann::json norms = nlohmann::json::array();
  for (double v : family.scaled_norm_log) norms.push_back(io::decimal(v));

  nlohmann::json out{{"K", family.K},
                     {"T", io::decimal(family.T)},
                     {"mantissa_bits", family.precision.mantissa_bits},
                     {"zero_mean", family.zero_mean},
                     {"gram_condition", io::decimal(family.gram_condition)},
                     {"max_biortho_residual", io::decimal(family.max_biortho_residual)},
                     {"max_zero_mean_residual", io::decimal(family.max_zero_mean_residual)},
                     {"lambdas", std::move(lambdas)},
                     {"scaled_norm_log", std::move(norms)},
                     {"sigmas", std::move(sigmas)}};
  if (family.K >= 4) {
    auto fit = biortho::estimate_fit(family);
    out["fit"] = {{"C_fit", io::decimal(fit.C_fit)},
                  {"P_fit", io::decimal(fit.P_fit)},
                  {"r_squared", io::decimal(fit.r_squared)}};
  }
  return out;
}

nlohmann::json control_report(const control::ControlProblem& problem,
                              const control::SynthesizedControl& ctl) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : ctl.g.terms()) {
    terms.push_back({{"rate", io::decimal(t.rate)}, {"coeff", io::decimal(t.coeff)}});
  }
  nlohmann::json residuals = nlohmann::json::array();
  for (const auto& r : ctl.moment_residuals) residuals.push_back(io::decimal(r));

  return {{"mu", io::decimal(problem.params.mu)},
          {"T", io::decimal(problem.T)},
          {"K", problem.K},
          {"g_terms", std::move(terms)},
          {"f_T", io::decimal(ctl.f_T)},
          {"h1_norm", io::decimal(control::h1_norm(ctl))},
          {"f_l2_norm", io::decimal(control::f_l2_norm(ctl))},
          {"g_l2_norm", io::decimal(biortho::l2_norm(ctl.g))},
          {"moment_residuals", std::move(residuals)},
          {"admissibility_score", io::decimal(ctl.admissibility_score)},
          {"admissibility_P", io::decimal(ctl.admissibility_P)}};
}

nlohmann::json simulate_report(const control::ControlProblem& problem,
                               const simulate::SimulationReport& report,
                               double crosscheck_deviation) {
  nlohmann::json beta = nlohmann::json::array();
  for (const auto& b : report.beta_T) beta.push_back(io::decimal(b));
  return {{"mu", io::decimal(problem.params.mu)},
          {"T", io::decimal(problem.T)},
          {"K", problem.K},
          {"beta_T", std::move(beta)},
          {"terminal_error_l2", io::decimal(report.terminal_error_l2)},
          {"tail_bound", io::decimal(report.tail_bound)},
          {"crosscheck_deviation", io::decimal(crosscheck_deviation)}};
}

nlohmann::json cost_report(const analysis::CostTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"mu", io::decimal(r.mu)},
                    {"T", io::decimal(r.T)},
                    {"K", r.K},
                    {"h1_norm", io::decimal(r.h1_norm)},
                    {"product", io::decimal(r.product)},
                    {"cs_lower_bound", io::decimal(r.cs_lower_bound)},
                    {"lower_bound_ok", r.lower_bound_ok},
                    {"skipped", r.skipped},
                    {"skip_reason", r.skip_reason}});
  }
  return {{"rows", std::move(rows)},
          {"fit", power_fit_json(table.fit)},
          {"deviation_flagged", table.deviation_flagged}};
}

nlohmann::json time_report(const analysis::TimeSweepResult& sweep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : sweep.rows) {
    rows.push_back({{"T", io::decimal(r.T)}, {"h1_norm", io::decimal(r.h1_norm)}});
  }
  return {{"rows", std::move(rows)},
          {"C_fit", io::decimal(sweep.C_fit)},
          {"r_squared", io::decimal(sweep.r_squared)}};
}

std::string cost_csv(const analysis::CostTable& table) {
  std::ostringstream out;
  out << "mu,T,K,h1_norm,product,cs_lower_bound,skipped" << kCrlf;
  for (const auto& r : table.rows) {
    out << io::decimal(r.mu) << ',' << io::decimal(r.T) << ',' << r.K << ','
        << io::decimal(r.h1_norm) << ',' << io::decimal(r.product) << ','
        << io::decimal(r.cs_lower_bound) << ',' << (r.skipped ? 1 : 0) << kCrlf;
  }
  return out.str();
}

std::string time_csv(const analysis::TimeSweepResult& sweep) {
  std::ostringstream out;
  out << "T,h1_norm" << kCrlf;
  for (const auto& r : sweep.rows) {
    out << io::decimal(r.T) << ',' << io::decimal(r.h1_norm) << kCrlf;
  }
  return out.str();
}

std::string samples_csv(const simulate::Samples& samples) {
  std::ostringstream out;
  out << "x,t,u" << kCrlf;
  for (size_t j = 0; j < samples.t.size(); ++j) {
    for (size_t i = 0; i < samples.x.size(); ++i) {
      out << io::decimal(samples.x[i]) << ',' << io::decimal(samples.t[j]) << ','
          << io::decimal(samples.u(i, j)) << kCrlf;
    }
  }
  return out.str();
}

std::string transform_csv(const analysis::TransformResult& result) {
  std::ostringstream out;
  out << "xi,t,phi" << kCrlf;
  for (size_t j = 0; j < result.t.size(); ++j) {
    for (size_t i = 0; i < result.xi.size(); ++i) {
      out << io::decimal(result.xi[i]) << ',' << io::decimal(result.t[j]) << ','
          << io::decimal(result.phi(i, j)) << kCrlf;
    }
  }
  return out.str();
}

std::string control_samples_csv(const control::SynthesizedControl& ctl, int n) {
  std::ostringstream out;
  out << "t,f,g" << kCrlf;
  const BigFloat& T = ctl.g.horizon();
  for (int i = 0; i <= n; ++i) {
    BigFloat t = T * static_cast<double>(i) / static_cast<double>(n);
    out << io::decimal(t.to_double()) << ',' << io::decimal(ctl.f_at(t).to_double()) << ','
        << io::decimal(ctl.g_at(t).to_double()) << kCrlf;
  }
  return out.str();
}

}  // namespace hardyctl::reports
