#pragma once

#include <Eigen/Core>

#include <functional>
#include <string>
#include <vector>

#include "hardyctl/simulate.hpp"

namespace hardyctl {
class ZeroCache;
}

namespace hardyctl::analysis {

/// One row of a cost sweep: the H1 norm of the synthesized null control for
/// a given mu, its product with sqrt(1-4mu), and the Cauchy-Schwarz witness
/// from the k = 1 moment equation (a rigorous lower bound on any admissible
/// control's L2 norm).
struct CostRow {
  double mu = 0.0;
  double T = 0.0;
  int K = 0;
  double h1_norm = 0.0;
  double product = 0.0;
  double cs_lower_bound = 0.0;
  bool lower_bound_ok = false;
  bool skipped = false;
  std::string skip_reason;
};

struct PowerFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

struct CostTable {
  std::vector<CostRow> rows;
  PowerFit fit;                 // log h1 against log(1 - 4 mu)
  bool deviation_flagged = false;  // fit exponent far from the -1/2 rate
};

CostTable cost_sweep(const std::vector<double>& mu_list, double T,
                     const std::vector<double>& u0_modal, int K, const Precision& prec,
                     ZeroCache* cache = nullptr);

struct TimeRow {
  double T = 0.0;
  double h1_norm = 0.0;
};

struct TimeSweepResult {
  std::vector<TimeRow> rows;
  double C_fit = 0.0;  // slope of log h1 against 1/T over the smallest T's
  double r_squared = 0.0;
};

TimeSweepResult time_sweep(double mu, const std::vector<double>& T_list,
                           const std::vector<double>& u0_modal, int K, const Precision& prec,
                           ZeroCache* cache = nullptr);

/// Entire part of the target: F(x) = sum_k rhoT_k c_k j_k^nu L_nu(j_k x),
/// where J_nu(y) = y^nu L_nu(y); the target itself is x^(nu+1/2) F(x).
BigFloat target_series_F(const std::vector<double>& rhoT, const spectrum::Spectrum& spec,
                         const BigFloat& x);

/// Least-squares slope of log|u_T| against log x over small-x probes; for a
/// target with F(0) != 0 this recovers nu + 1/2.
struct ExponentResult {
  double slope = 0.0;
  double expected = 0.0;  // nu + 1/2 for the given parameters
};
ExponentResult leading_exponent(const std::function<double(double)>& u_target,
                                const spectrum::PotentialParams& params,
                                const std::vector<double>& probes = {1e-2, 1e-3, 1e-4});

/// Change of variables to the degenerate equation phi_t = (xi^beta phi_xi)_xi
/// on (0, xi0): beta from mu, a = beta/(2(2-beta)) (equals alpha), and
/// xi = xi0 x^(2/(2-beta)).
struct DegenerateMap {
  double mu = 0.0;
  BigFloat beta;
  BigFloat a;
  BigFloat xi0;

  double xi_of_x(double x) const;
  double x_of_xi(double xi) const;
};

DegenerateMap degenerate_map(double mu);

struct TransformResult {
  std::vector<double> xi;  // uniform interior grid
  std::vector<double> t;
  Eigen::MatrixXd phi;     // phi(i, j) at (xi[i], t[j])
  double max_residual = 0.0;  // degenerate-PDE residual, 4th-order stencils
  double grid_h = 0.0;
  bool coarse_warning = false;
};

/// Transforms a modal solution to degenerate variables and measures the
/// residual of phi_t - (xi^beta phi_xi)_xi on the interior window
/// [lo_frac, hi_frac] * xi0, using exact time derivatives and 4th-order
/// central differences in xi.
TransformResult transform_solution(const simulate::ModalSolution& sol, const DegenerateMap& map,
                                   int xi_points, const std::vector<double>& t_list,
                                   double lo_frac = 0.1, double hi_frac = 0.95);

}  // namespace hardyctl::analysis
