#include "hardyctl/biortho.hpp"

#include <Eigen/Cholesky>

#include <cmath>

#include "hardyctl/errors.hpp"

namespace hardyctl::biortho {

namespace {
constexpr const char* kModule = "biortho";
}

BigMat gram_matrix(const std::vector<BigFloat>& rates, const BigFloat& T) {
  if (!(T > 0)) throw DomainError(kModule, "gram_matrix requires T > 0");
  const int n = static_cast<int>(rates.size());
  for (int i = 0; i < n; ++i) {
    if (rates[i] < 0) throw DomainError(kModule, "gram_matrix requires nonnegative rates");
    if (i > 0 && !(rates[i] > rates[i - 1])) {
      throw DomainError(kModule, "gram_matrix requires strictly increasing rates");
    }
  }
  BigMat G(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      G(i, j) = G(j, i) = exp_gram_entry(rates[i] + rates[j], T);
    }
  }
  return G;
}

namespace {

// Two-sided power iteration condition estimate; deterministic start vector.
BigFloat condition_estimate(const BigMat& G, const Eigen::LLT<BigMat>& llt) {
  const int n = static_cast<int>(G.rows());
  BigVec v = BigVec::Constant(n, BigFloat(1.0));
  v /= sqrt(BigFloat(static_cast<double>(n)));
  BigFloat sigma_max(0.0);
  for (int it = 0; it < 30; ++it) {
    BigVec w = G * v;
    sigma_max = w.norm();
    if (sigma_max.is_zero()) return BigFloat(1.0);
    v = w / sigma_max;
  }
  BigVec u = BigVec::Constant(n, BigFloat(1.0));
  u /= sqrt(BigFloat(static_cast<double>(n)));
  BigFloat inv_norm(1.0);
  for (int it = 0; it < 30; ++it) {
    BigVec w = llt.solve(u);
    inv_norm = w.norm();
    u = w / inv_norm;
  }
  return sigma_max * inv_norm;
}

}  // namespace

BiorthogonalFamily build_family(const std::vector<BigFloat>& lambdas, const BigFloat& T,
                                const Precision& prec, bool zero_mean) {
  prec.validate();
  const int K = static_cast<int>(lambdas.size());
  if (K < 1 || K > 30) throw DomainError(kModule, "build_family requires 1 <= K <= 30");
  if (!(T > 0)) throw DomainError(kModule, "build_family requires T > 0");
  PrecisionGuard guard(prec.mantissa_bits);

  std::vector<BigFloat> rates;
  rates.reserve(K + 1);
  if (zero_mean) rates.emplace_back(0.0);
  for (const auto& l : lambdas) {
    if (!(l > 0)) throw DomainError(kModule, "build_family requires positive rates");
    BigFloat lw = l;
    lw.set_precision(prec.mantissa_bits);
    rates.push_back(std::move(lw));
  }
  const int n = static_cast<int>(rates.size());
  const int offset = zero_mean ? 1 : 0;

  BigFloat Tw = T;
  Tw.set_precision(prec.mantissa_bits);
  BigMat G = gram_matrix(rates, Tw);

  Eigen::LLT<BigMat> llt(G);
  if (llt.info() != Eigen::Success) {
    throw PrecisionError(kModule, "Gram matrix lost positive definiteness at this precision");
  }

  BigFloat cond = condition_estimate(G, llt);
  BigFloat cond_limit = ldexp2(BigFloat(1.0), prec.mantissa_bits - 20);
  if (cond > cond_limit) {
    throw PrecisionError(kModule,
                         "Gram condition estimate exceeds 2^(mantissa_bits - 20); raise "
                         "precision or lower K");
  }

  // Row 0 (when present) pins the zero mean; row of lambda_l carries the
  // scaled biorthogonality target delta_{kl} e^{-lambda_l T}.
  BigMat B = BigMat::Zero(n, K);
  for (int k = 0; k < K; ++k) B(k + offset, k) = exp(-rates[k + offset] * Tw);

  BigMat C = llt.solve(B);
  C += llt.solve(BigMat(B - G * C));  // one step of iterative refinement

  BiorthogonalFamily fam;
  fam.K = K;
  fam.T = Tw;
  fam.lambdas = std::vector<BigFloat>(rates.begin() + offset, rates.end());
  fam.precision = prec;
  fam.zero_mean = zero_mean;
  fam.gram_condition = cond.to_double();

  BigMat R = G * C - B;
  BigFloat max_resid(0.0), max_zero_mean(0.0);
  for (int k = 0; k < K; ++k) {
    ExponentialSum sigma(Tw);
    BigFloat cnorm(0.0);
    for (int i = 0; i < n; ++i) {
      sigma.add_term(rates[i], C(i, k));
      cnorm += C(i, k) * C(i, k);
    }
    cnorm = sqrt(cnorm);
    BigFloat scale = cnorm * Tw;
    if (scale.is_zero()) scale = BigFloat(1.0);
    for (int i = 0; i < n; ++i) {
      BigFloat scaled = abs(R(i, k)) / scale;
      if (zero_mean && i == 0 && scaled > max_zero_mean) max_zero_mean = scaled;
      if (scaled > max_resid) max_resid = scaled;
    }
    BigFloat norm = l2_norm(sigma);
    fam.scaled_norm_log.push_back((log(norm) + fam.lambdas[k] * Tw).to_double());
    fam.sigmas.push_back(std::move(sigma));
  }
  fam.max_biortho_residual = max_resid.to_double();
  fam.max_zero_mean_residual = max_zero_mean.to_double();
  return fam;
}

BigFloat scaled_moment(const ExponentialSum& sigma, const BigFloat& lambda_k) {
  BigFloat m(0.0);
  for (const auto& term : sigma.terms()) {
    m += term.coeff * exp_gram_entry(lambda_k + term.rate, sigma.horizon());
  }
  return m;
}

BigFloat l2_norm(const ExponentialSum& sigma) {
  const auto& terms = sigma.terms();
  BigFloat s(0.0);
  for (const auto& a : terms) {
    for (const auto& b : terms) {
      s += a.coeff * b.coeff * exp_gram_entry(a.rate + b.rate, sigma.horizon());
    }
  }
  if (s < 0) s = BigFloat(0.0);  // clamp roundoff on near-null sums
  return sqrt(s);
}

FitResult estimate_fit(const BiorthogonalFamily& family) {
  if (family.K < 4) throw DomainError(kModule, "estimate_fit requires K >= 4");
  const int K = family.K;
  Eigen::VectorXd x(K), y(K);
  for (int k = 0; k < K; ++k) {
    x(k) = std::sqrt(family.lambdas[k].to_double());
    y(k) = family.scaled_norm_log[k];
  }
  const double xm = x.mean(), ym = y.mean();
  const double sxx = (x.array() - xm).square().sum();
  const double sxy = ((x.array() - xm) * (y.array() - ym)).sum();
  const double slope = sxy / sxx;
  const double intercept = ym - slope * xm;

  FitResult fit;
  fit.P_fit = slope;
  fit.C_fit = std::exp(intercept);
  double ss_res = 0.0, ss_tot = 0.0;
  fit.residuals.resize(K);
  for (int k = 0; k < K; ++k) {
    const double r = y(k) - (intercept + slope * x(k));
    fit.residuals[k] = r;
    ss_res += r * r;
    ss_tot += (y(k) - ym) * (y(k) - ym);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

double norm_lower_bound(const BiorthogonalFamily& family) {
  std::vector<BigFloat> rates;
  if (family.zero_mean) rates.emplace_back(0.0);
  for (const auto& l : family.lambdas) rates.push_back(l);
  BigFloat g_max(0.0);
  for (const auto& a : rates) {
    for (const auto& b : rates) {
      BigFloat g = exp_gram_entry(a + b, family.T);
      if (g > g_max) g_max = g;
    }
  }
  return 1.0 / std::sqrt(g_max.to_double() * (family.K + 1));
}

}  // namespace hardyctl::biortho
