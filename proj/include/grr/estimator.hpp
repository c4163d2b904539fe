#pragma once

#include <string>
#include <vector>

#include "grr/common.hpp"
#include "grr/dataset.hpp"
#include "grr/spectral.hpp"

namespace grr {

// Everything the estimator and diagnostics consume: the correlation matrix of
// the regressors, its eigendecomposition, the cross-moments alpha = x^t y,
// and the sample size. Built either from a standardized design or directly
// from published summary statistics (correlation matrix + OLS coefficients),
// in which case alpha is recovered as R * beta_ols.
struct ModelMoments {
  Matrix correlation;            // m x m
  SpectralDecomposition spec;
  Vector alpha;                  // Gamma-basis source of delta
  Index n = 0;
  std::vector<std::string> names;
  std::string dependent_name;
  Index m() const { return correlation.rows(); }
};

ModelMoments make_moments(const StandardizedModel& model);
ModelMoments moments_from_correlation(const Matrix& correlation,
                                      const Vector& beta_ols, Index n,
                                      std::vector<std::string> names = {},
                                      std::string dependent_name = {});

// Plug-in values used inside penalized-fit formulas (variance, coefficient
// direction). Normally the OLS fit of the same data.
struct Plugins {
  double sigma2 = 0.0;
  Vector beta;
};

// Per-penalty derived quantities shared by the estimator formulas:
//   delta = Gamma^t alpha            omega_j = 1/(lambda_j + k_j)
//   psi_j = lambda_j omega_j^2       theta_j = k_j^2 omega_j^2
//   xi    = Gamma^t beta_plugin
struct GRContext {
  Vector delta, omega, psi, theta, xi;
};

GRContext make_context(const ModelMoments& moments, const PenaltyMatrix& k,
                       const Plugins& plugins);

// One penalized (or OLS, at K = 0) fit.
struct EstimateReport {
  Vector coefficients;
  Vector std_errors;
  Matrix covariance;
  double mse = 0.0;              // scalar mean squared error of the estimator
  double gof = 0.0;              // penalized goodness of fit in [0, 1]
  double norm = 0.0;             // squared length of the coefficient vector
  double condition_number = 0.0;
  Vector penalty;                // diagonal of K actually used
};

struct OlsResult {
  EstimateReport report;
  double sigma2_hat = 0.0;       // (1 - R^2) / (n - m) on standardized data
  double r_squared = 0.0;
  Vector p_values;               // two-sided t tests per coefficient
  Plugins plugins() const { return {sigma2_hat, report.coefficients}; }
};

OlsResult ols(const ModelMoments& moments);

// OLS view assembled from published statistics instead of refitting: the
// provided coefficients and variance are taken verbatim, standard errors and
// p-values are derived from them.
OlsResult ols_from_plugins(const ModelMoments& moments,
                           const Plugins& plugins);

EstimateReport gr_estimate(const ModelMoments& moments, const PenaltyMatrix& k,
                           const Plugins& plugins);

// sigma^2 sum_j psi_j + sum_j xi_j^2 theta_j: variance part plus squared-bias
// part of the estimator's scalar mean squared error.
double scalar_mse(const SpectralDecomposition& spec, const PenaltyMatrix& k,
                  const Plugins& plugins);

// Penalized goodness of fit b^t (R + 2 Gamma K Gamma^t) b for standardized
// data (y^t y = 1); reduces to R^2 at K = 0.
double gof(const ModelMoments& moments, const PenaltyMatrix& k,
           const Vector& coefficients);

// Covariance difference var(penalized) - var(OLS); negative definite for any
// penalty with all k_j > 0.
Matrix variance_gap(const SpectralDecomposition& spec, const PenaltyMatrix& k,
                    double sigma2);

}  // namespace grr
