#include "grr/estimator.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>

namespace grr {
namespace {

void validate_plugins(const Plugins& plugins, Index m) {
  if (!std::isfinite(plugins.sigma2) || plugins.sigma2 < 0.0)
    throw invalid_input("estimator: plug-in variance must be finite and >= 0");
  if (plugins.beta.size() != m)
    throw invalid_input("estimator: plug-in coefficient vector has size " +
                        std::to_string(plugins.beta.size()) + ", expected " +
                        std::to_string(m));
}

double condition_number_of(const SpectralDecomposition& spec,
                           const PenaltyMatrix& k) {
  Vector mu = spec.lambda + k.values();
  return std::sqrt(mu.maxCoeff() / mu.minCoeff());
}

}  // namespace

ModelMoments make_moments(const StandardizedModel& model) {
  ModelMoments moments;
  moments.correlation = correlation_matrix(model);
  moments.spec = eigendecompose(moments.correlation);
  moments.alpha = model.x.transpose() * model.y;
  moments.n = model.n();
  moments.names = model.names;
  moments.dependent_name = model.dependent_name;
  return moments;
}

ModelMoments moments_from_correlation(const Matrix& correlation,
                                      const Vector& beta_ols, Index n,
                                      std::vector<std::string> names,
                                      std::string dependent_name) {
  const Index m = correlation.rows();
  if (beta_ols.size() != m)
    throw invalid_input("estimator: coefficient vector has size " +
                        std::to_string(beta_ols.size()) +
                        ", correlation matrix is " + std::to_string(m) + "x" +
                        std::to_string(correlation.cols()));
  if (n <= m)
    throw invalid_input("estimator: need more observations than regressors");
  for (Index i = 0; i < m; ++i) {
    if (std::abs(correlation(i, i) - 1.0) > 1e-8)
      throw invalid_input("estimator: correlation matrix diagonal must be 1");
    for (Index j = 0; j < m; ++j)
      if (std::abs(correlation(i, j)) > 1.0 + 1e-12)
        throw invalid_input(
            "estimator: correlation entries must lie in [-1, 1]");
  }
  if (names.empty())
    for (Index j = 0; j < m; ++j) names.push_back("x" + std::to_string(j + 1));
  if (static_cast<Index>(names.size()) != m)
    throw invalid_input("estimator: got " + std::to_string(names.size()) +
                        " names for " + std::to_string(m) + " regressors");

  ModelMoments moments;
  moments.correlation = correlation;
  moments.spec = eigendecompose(correlation);
  moments.alpha = correlation * beta_ols;
  moments.n = n;
  moments.names = std::move(names);
  moments.dependent_name =
      dependent_name.empty() ? std::string("y") : std::move(dependent_name);
  return moments;
}

GRContext make_context(const ModelMoments& moments, const PenaltyMatrix& k,
                       const Plugins& plugins) {
  if (k.m() != moments.m())
    throw invalid_input("estimator: penalty dimension mismatch");
  validate_plugins(plugins, moments.m());
  GRContext ctx;
  ctx.delta = moments.spec.gamma.transpose() * moments.alpha;
  ctx.omega = (moments.spec.lambda + k.values()).cwiseInverse();
  ctx.psi = moments.spec.lambda.array() * ctx.omega.array().square();
  ctx.theta = k.values().array().square() * ctx.omega.array().square();
  ctx.xi = moments.spec.gamma.transpose() * plugins.beta;
  return ctx;
}

namespace {

OlsResult assemble_ols(const ModelMoments& moments, Vector coefficients,
                       double sigma2_hat) {
  const Index m = moments.m();
  const SpectralDecomposition& spec = moments.spec;
  Vector inv_lambda = spec.lambda.cwiseInverse();

  OlsResult result;
  result.r_squared = coefficients.dot(moments.alpha);
  result.sigma2_hat = sigma2_hat;
  EstimateReport& rep = result.report;
  rep.covariance = sigma2_hat * (spec.gamma * inv_lambda.asDiagonal() *
                                 spec.gamma.transpose());
  rep.std_errors = rep.covariance.diagonal().cwiseMax(0.0).cwiseSqrt();
  rep.mse = sigma2_hat * inv_lambda.sum();
  rep.gof = result.r_squared;
  rep.norm = coefficients.squaredNorm();
  rep.condition_number = std::sqrt(spec.lambda_max() / spec.lambda_min());
  rep.penalty = Vector::Zero(m);
  rep.coefficients = std::move(coefficients);

  boost::math::students_t dist(static_cast<double>(moments.n - m));
  result.p_values.resize(m);
  for (Index j = 0; j < m; ++j) {
    if (rep.std_errors(j) == 0.0) {
      result.p_values(j) = rep.coefficients(j) == 0.0 ? 1.0 : 0.0;
      continue;
    }
    double t = std::abs(rep.coefficients(j) / rep.std_errors(j));
    result.p_values(j) = 2.0 * boost::math::cdf(dist, -t);
  }
  return result;
}

}  // namespace

OlsResult ols(const ModelMoments& moments) {
  const Index m = moments.m();
  if (moments.n <= m)
    throw invalid_input("estimator: need more observations than regressors");
  const SpectralDecomposition& spec = moments.spec;

  Vector delta = spec.gamma.transpose() * moments.alpha;
  Vector coefficients =
      spec.gamma *
      (delta.array() / spec.lambda.array()).matrix();

  double r_squared = coefficients.dot(moments.alpha);
  double sigma2_hat = (1.0 - r_squared) / static_cast<double>(moments.n - m);
  if (sigma2_hat < 0.0) {
    if (sigma2_hat < -1e-9)
      throw numerical_error("estimator: R^2 above 1; inconsistent inputs");
    sigma2_hat = 0.0;
  }
  return assemble_ols(moments, std::move(coefficients), sigma2_hat);
}

OlsResult ols_from_plugins(const ModelMoments& moments,
                           const Plugins& plugins) {
  if (moments.n <= moments.m())
    throw invalid_input("estimator: need more observations than regressors");
  validate_plugins(plugins, moments.m());
  return assemble_ols(moments, plugins.beta, plugins.sigma2);
}

EstimateReport gr_estimate(const ModelMoments& moments, const PenaltyMatrix& k,
                           const Plugins& plugins) {
  GRContext ctx = make_context(moments, k, plugins);
  const SpectralDecomposition& spec = moments.spec;

  EstimateReport rep;
  rep.coefficients =
      spec.gamma * (ctx.omega.array() * ctx.delta.array()).matrix();
  rep.covariance = plugins.sigma2 * (spec.gamma * ctx.psi.asDiagonal() *
                                     spec.gamma.transpose());
  rep.std_errors = rep.covariance.diagonal().cwiseMax(0.0).cwiseSqrt();
  rep.mse = plugins.sigma2 * ctx.psi.sum() +
            (ctx.xi.array().square() * ctx.theta.array()).sum();
  rep.gof = gof(moments, k, rep.coefficients);
  rep.norm = (ctx.omega.array() * ctx.delta.array()).matrix().squaredNorm();
  rep.condition_number = condition_number_of(spec, k);
  rep.penalty = k.values();
  return rep;
}

double scalar_mse(const SpectralDecomposition& spec, const PenaltyMatrix& k,
                  const Plugins& plugins) {
  validate_plugins(plugins, spec.m());
  if (k.m() != spec.m())
    throw invalid_input("estimator: penalty dimension mismatch");
  Vector omega = (spec.lambda + k.values()).cwiseInverse();
  Vector xi = spec.gamma.transpose() * plugins.beta;
  double variance_part =
      plugins.sigma2 *
      (spec.lambda.array() * omega.array().square()).sum();
  double bias_part = (xi.array().square() * k.values().array().square() *
                      omega.array().square())
                         .sum();
  return variance_part + bias_part;
}

double gof(const ModelMoments& moments, const PenaltyMatrix& k,
           const Vector& coefficients) {
  if (coefficients.size() != moments.m())
    throw invalid_input("estimator: coefficient dimension mismatch");
  Vector in_basis = moments.spec.gamma.transpose() * coefficients;
  double quad = coefficients.dot(moments.correlation * coefficients);
  double penalty_part =
      2.0 * (in_basis.array().square() * k.values().array()).sum();
  return quad + penalty_part;
}

Matrix variance_gap(const SpectralDecomposition& spec, const PenaltyMatrix& k,
                    double sigma2) {
  if (!std::isfinite(sigma2) || sigma2 < 0.0)
    throw invalid_input("estimator: plug-in variance must be finite and >= 0");
  if (k.m() != spec.m())
    throw invalid_input("estimator: penalty dimension mismatch");
  Vector omega = (spec.lambda + k.values()).cwiseInverse();
  Vector psi = spec.lambda.array() * omega.array().square();
  Vector gap_diag = psi - spec.lambda.cwiseInverse();
  return sigma2 *
         (spec.gamma * gap_diag.asDiagonal() * spec.gamma.transpose());
}

}  // namespace grr
