#include "hardyctl/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "hardyctl/errors.hpp"
#include "hardyctl/specfun.hpp"

namespace hardyctl::analysis {

namespace {
constexpr const char* kModule = "analysis";

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double xm = 0.0, ym = 0.0;
  for (size_t i = 0; i < n; ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= n;
  ym /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - xm) * (x[i] - xm);
    sxy += (x[i] - xm) * (y[i] - ym);
    syy += (y[i] - ym) * (y[i] - ym);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ym - fit.slope * xm;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

// Builds the null-control row for one mu; throws PrecisionError upward.
CostRow cost_row(double mu, double T, const std::vector<double>& u0_modal, int K,
                 const Precision& prec, ZeroCache* cache) {
  auto params = spectrum::derive_params(BigFloat(mu), prec);
  auto spec = spectrum::build_spectrum(params, K, prec, cache);
  auto family = biortho::build_family(spec.lambdas(), BigFloat(T), prec);
  auto problem = control::make_problem(params, T, K, u0_modal, {});
  auto ctl = control::synthesize(problem, spec, family);

  CostRow row;
  row.mu = mu;
  row.T = T;
  row.K = K;
  row.h1_norm = control::h1_norm(ctl).to_double();
  row.product = row.h1_norm * std::sqrt(1.0 - 4.0 * mu);

  // Cauchy-Schwarz witness from the k = 1 moment equation:
  // |rho0_1| = s_1 |int f e^{lambda_1 t}| <= s_1 ||f|| ||e^{lambda_1 t}||.
  const auto& m1 = spec.modes[0];
  BigFloat weight = exp(-m1.lambda * problem.T) /
                    sqrt(exp_gram_entry(2.0 * m1.lambda, problem.T));
  row.cs_lower_bound = (abs(problem.rho0[0]) * weight / m1.s).to_double();
  row.lower_bound_ok = row.cs_lower_bound <= row.h1_norm * (1.0 + 1e-12) + 1e-300;
  return row;
}

}  // namespace

CostTable cost_sweep(const std::vector<double>& mu_list, double T,
                     const std::vector<double>& u0_modal, int K, const Precision& prec,
                     ZeroCache* cache) {
  if (mu_list.empty()) throw DomainError(kModule, "cost_sweep needs at least one mu");
  std::vector<double> sorted = mu_list;
  std::sort(sorted.begin(), sorted.end());

  CostTable table;
  std::vector<double> xs, ys;
  for (double mu : sorted) {
    try {
      CostRow row = cost_row(mu, T, u0_modal, K, prec, cache);
      if (row.h1_norm > 0.0) {
        xs.push_back(std::log(1.0 - 4.0 * mu));
        ys.push_back(std::log(row.h1_norm));
      }
      table.rows.push_back(std::move(row));
    } catch (const PrecisionError& e) {
      CostRow row;
      row.mu = mu;
      row.T = T;
      row.K = K;
      row.skipped = true;
      row.skip_reason = e.what();
      table.rows.push_back(std::move(row));
    }
  }
  if (xs.size() >= 2) {
    LineFit fit = least_squares(xs, ys);
    table.fit.exponent = fit.slope;
    table.fit.intercept = fit.intercept;
    table.fit.r_squared = fit.r_squared;
    table.deviation_flagged = std::abs(fit.slope - (-0.5)) > 0.1;
  }
  return table;
}

TimeSweepResult time_sweep(double mu, const std::vector<double>& T_list,
                           const std::vector<double>& u0_modal, int K, const Precision& prec,
                           ZeroCache* cache) {
  if (T_list.size() < 2) throw DomainError(kModule, "time_sweep needs at least two horizons");
  for (size_t i = 1; i < T_list.size(); ++i) {
    if (!(T_list[i] < T_list[i - 1]) || !(T_list[i] > 0.0)) {
      throw DomainError(kModule, "time_sweep requires a positive, decreasing T list");
    }
  }
  TimeSweepResult result;
  for (double T : T_list) {
    CostRow row = cost_row(mu, T, u0_modal, K, prec, cache);
    result.rows.push_back(TimeRow{T, row.h1_norm});
  }
  // Fit on the smallest horizons, where the e^{C/T} factor dominates.
  const size_t m = std::min<size_t>(3, result.rows.size());
  std::vector<double> xs, ys;
  for (size_t i = result.rows.size() - m; i < result.rows.size(); ++i) {
    xs.push_back(1.0 / result.rows[i].T);
    ys.push_back(std::log(result.rows[i].h1_norm));
  }
  LineFit fit = least_squares(xs, ys);
  result.C_fit = fit.slope;
  result.r_squared = fit.r_squared;
  return result;
}

namespace {

// L_nu(y) with J_nu(y) = y^nu L_nu(y); term-ratio stop, 200-term cap.
BigFloat l_series(const BigFloat& nu, const BigFloat& y, const Precision& prec) {
  BigFloat term = 1.0 / (pow(BigFloat(2.0), nu) * specfun::gamma(nu + 1.0));
  BigFloat sum = term;
  BigFloat y2 = y * y;
  for (int m = 1; m <= 200; ++m) {
    term *= -y2 / (4.0 * m * (static_cast<double>(m) + nu));
    sum += term;
    if (abs(term) < prec.series_tol * abs(sum)) return sum;
  }
  throw PrecisionError(kModule, "target series exceeded the 200-term cap; raise the cap "
                                "or reduce the argument");
}

}  // namespace

BigFloat target_series_F(const std::vector<double>& rhoT, const spectrum::Spectrum& spec,
                         const BigFloat& x) {
  if (x < 0 || !(x < 1.0 + 1e-15)) throw DomainError(kModule, "target_series_F needs 0 <= x <= 1");
  if (rhoT.size() > static_cast<size_t>(spec.size())) {
    throw DomainError(kModule, "rhoT longer than the available spectrum");
  }
  PrecisionGuard guard(spec.precision.mantissa_bits);
  const BigFloat& nu = spec.params.nu;
  BigFloat sum(0.0);
  for (size_t k = 0; k < rhoT.size(); ++k) {
    if (rhoT[k] == 0.0) continue;
    const auto& mode = spec.modes[k];
    sum += BigFloat(rhoT[k]) * mode.c_norm * pow(mode.j, nu) *
           l_series(nu, mode.j * x, spec.precision);
  }
  return sum;
}

ExponentResult leading_exponent(const std::function<double(double)>& u_target,
                                const spectrum::PotentialParams& params,
                                const std::vector<double>& probes) {
  if (probes.size() < 2) throw DomainError(kModule, "leading_exponent needs >= 2 probes");
  std::vector<double> xs, ys;
  for (double x : probes) {
    const double v = std::abs(u_target(x));
    if (!(v > 0.0)) {
      throw DomainError(kModule, "degenerate fit: target vanishes at probe x = " +
                                     std::to_string(x));
    }
    xs.push_back(std::log(x));
    ys.push_back(std::log(v));
  }
  ExponentResult res;
  res.slope = least_squares(xs, ys).slope;
  res.expected = params.nu.to_double() + 0.5;
  return res;
}

double DegenerateMap::xi_of_x(double x) const {
  return (xi0 * pow(BigFloat(x), 2.0 / (2.0 - beta))).to_double();
}

double DegenerateMap::x_of_xi(double xi) const {
  return pow(BigFloat(xi) / xi0, (2.0 - beta) / 2.0).to_double();
}

DegenerateMap degenerate_map(double mu) {
  if (!(mu < 0.25)) throw DomainError(kModule, "degenerate_map requires mu < 1/4");
  if (std::abs(3.0 + 4.0 * mu) < 1e-6) {
    throw DomainError(kModule, "mu = -3/4 is an excluded point (beta denominator vanishes); "
                               "the limit map is continuous but beta itself diverges");
  }
  PrecisionGuard guard(256);
  DegenerateMap map;
  map.mu = mu;
  BigFloat mu_b(mu);
  BigFloat s = sqrt(1.0 - 4.0 * mu_b);
  map.beta = (2.0 + 8.0 * mu_b - 2.0 * s) / (3.0 + 4.0 * mu_b);
  map.a = map.beta / (2.0 * (2.0 - map.beta));
  map.xi0 = pow((2.0 - map.beta) / 2.0, 2.0 / (2.0 - map.beta));

  BigFloat alpha = (1.0 - s) / 2.0;
  if (abs(map.a - alpha) > 1e-13 || abs(mu_b + map.a * (map.a - 1.0)) > 1e-13) {
    throw ConsistencyError(kModule, "degenerate map identities failed at mu = " +
                                        std::to_string(mu));
  }
  return map;
}

TransformResult transform_solution(const simulate::ModalSolution& sol, const DegenerateMap& map,
                                   int xi_points, const std::vector<double>& t_list,
                                   double lo_frac, double hi_frac) {
  if (xi_points < 16) throw DomainError(kModule, "transform grid too small");
  if (!(lo_frac > 0.0 && hi_frac > lo_frac && hi_frac < 1.0)) {
    throw DomainError(kModule, "transform window must satisfy 0 < lo < hi < 1");
  }
  const double xi0 = map.xi0.to_double();
  const double a_d = map.a.to_double();
  const double beta_d = map.beta.to_double();

  TransformResult out;
  out.t = t_list;
  out.xi.resize(xi_points);
  const double lo = lo_frac * xi0, hi = hi_frac * xi0;
  const double h = (hi - lo) / (xi_points - 1);
  out.grid_h = h;
  for (int i = 0; i < xi_points; ++i) out.xi[i] = lo + i * h;

  const int Nt = static_cast<int>(t_list.size());
  out.phi.resize(xi_points, Nt);
  Eigen::MatrixXd phi_t(xi_points, Nt);
  for (int i = 0; i < xi_points; ++i) {
    const double x = map.x_of_xi(out.xi[i]);
    const double w = std::pow(x, -a_d);
    for (int j = 0; j < Nt; ++j) {
      BigFloat t(t_list[j]);
      out.phi(i, j) = w * sol.u(BigFloat(x), t).to_double();
      phi_t(i, j) = w * sol.u_t(BigFloat(x), t).to_double();
    }
  }

  // phi_t = xi^beta phi_xixi + beta xi^(beta-1) phi_xi, checked with
  // 4th-order central stencils on the uniform xi grid.
  double worst = 0.0;
  double scale = 0.0;
  for (int j = 0; j < Nt; ++j) {
    for (int i = 2; i < xi_points - 2; ++i) {
      const double xi = out.xi[i];
      const double d1 = (out.phi(i - 2, j) - 8.0 * out.phi(i - 1, j) + 8.0 * out.phi(i + 1, j) -
                         out.phi(i + 2, j)) /
                        (12.0 * h);
      const double d2 = (-out.phi(i - 2, j) + 16.0 * out.phi(i - 1, j) - 30.0 * out.phi(i, j) +
                         16.0 * out.phi(i + 1, j) - out.phi(i + 2, j)) /
                        (12.0 * h * h);
      const double resid =
          phi_t(i, j) - std::pow(xi, beta_d) * d2 - beta_d * std::pow(xi, beta_d - 1.0) * d1;
      worst = std::max(worst, std::abs(resid));
      scale = std::max(scale, std::abs(phi_t(i, j)));
    }
  }
  out.max_residual = worst;
  out.coarse_warning = worst > 1e-3 * std::max(scale, 1.0);
  return out;
}

}  // namespace hardyctl::analysis
