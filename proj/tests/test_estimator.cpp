#include <doctest.h>

#include <cmath>

#include "grr/dataset.hpp"
#include "grr/estimator.hpp"
#include "grr/spectral.hpp"
#include "support/checkers.h"
#include "support/expected_firms.h"
#include "support/expected_longley.h"
#include "support/oracles.h"

using namespace grr;

namespace {

ModelMoments longley_moments() {
  return make_moments(standardize(load_csv(longley::kCsv, longley::kDependent)));
}

ModelMoments firms_moments() {
  return moments_from_correlation(firms::correlation(), firms::beta_ols(),
                                  firms::kN);
}

Plugins firms_plugins() { return {firms::kSigma2, firms::beta_ols()}; }

}  // namespace

TEST_SUITE("estimator") {

TEST_CASE("moments from a standardized design match direct cross products") {
  TestRng rng(101);
  StandardizedModel model = random_model(rng, 18, 4);
  ModelMoments moments = make_moments(model);

  CHECK(moments.n == 18);
  CHECK(moments.names == model.names);
  CHECK((moments.alpha - model.x.transpose() * model.y).cwiseAbs().maxCoeff() ==
        0.0);
  for (Index i = 0; i < moments.m(); ++i)
    for (Index j = 0; j < moments.m(); ++j)
      CHECK(close_abs(moments.correlation(i, j),
                      i == j ? 1.0 : pearson(model.x.col(i), model.x.col(j)),
                      1e-12));
}

TEST_CASE("moments from published statistics") {
  ModelMoments moments = firms_moments();
  CHECK(moments.n == 15);
  CHECK(moments.names == std::vector<std::string>{"x1", "x2", "x3"});
  CHECK(moments.dependent_name == "y");
  // alpha = R beta recovers the cross products implied by the published fit
  CHECK((moments.alpha - firms::correlation() * firms::beta_ols())
            .cwiseAbs()
            .maxCoeff() == 0.0);

  Vector beta = firms::beta_ols();
  CHECK_THROWS_AS(moments_from_correlation(firms::correlation(), beta, 3),
                  invalid_input);
  CHECK_THROWS_AS(
      moments_from_correlation(firms::correlation(), Vector::Zero(2), 15),
      invalid_input);
  CHECK_THROWS_AS(moments_from_correlation(firms::correlation(), beta, 15,
                                           {"a", "b"}),
                  invalid_input);

  Matrix bad_diag = firms::correlation();
  bad_diag(1, 1) = 0.9;
  CHECK_THROWS_AS(moments_from_correlation(bad_diag, beta, 15), invalid_input);
  Matrix bad_entry = firms::correlation();
  bad_entry(0, 1) = bad_entry(1, 0) = 1.5;
  CHECK_THROWS_AS(moments_from_correlation(bad_entry, beta, 15), invalid_input);
}

TEST_CASE("least squares on the employment series") {
  OlsResult fit = ols(longley_moments());
  for (int j = 0; j < 5; ++j) {
    CHECK(matches_printed(fit.report.coefficients(j),
                          longley::kOlsCoefficients[j]));
    CHECK(matches_printed(fit.p_values(j), longley::kOlsPValues[j]));
  }
  CHECK(matches_printed(fit.r_squared, longley::kRSquared));
  CHECK(matches_printed(fit.sigma2_hat, longley::kSigma2));
  CHECK(matches_printed(fit.report.condition_number,
                        longley::kConditionNumber));
  CHECK(matches_printed(fit.report.mse, longley::kResults[0].mse));
  CHECK(fit.report.gof == fit.r_squared);
  CHECK(fit.report.penalty.isZero());
  CHECK(fit.report.norm ==
        doctest::Approx(fit.report.coefficients.squaredNorm()));
}

TEST_CASE("least squares solves the normal equations") {
  TestRng rng(103);
  for (int rep = 0; rep < 10; ++rep) {
    ModelMoments moments = make_moments(random_model(rng, 16, 4));
    OlsResult fit = ols(moments);
    CHECK((moments.correlation * fit.report.coefficients - moments.alpha)
              .cwiseAbs()
              .maxCoeff() < 1e-10);
    CHECK(fit.r_squared ==
          doctest::Approx(fit.report.coefficients.dot(moments.alpha)));
    CHECK(fit.sigma2_hat >= 0.0);
    // covariance = sigma2 R^{-1}
    Matrix expected = fit.sigma2_hat * moments.correlation.inverse();
    CHECK((fit.report.covariance - expected).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("published-statistics route reproduces a refit") {
  ModelMoments moments = longley_moments();
  OlsResult refit = ols(moments);
  OlsResult assembled = ols_from_plugins(moments, refit.plugins());
  CHECK((assembled.report.coefficients - refit.report.coefficients)
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK(assembled.sigma2_hat == refit.sigma2_hat);
  CHECK((assembled.p_values - refit.p_values).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(assembled.report.mse == refit.report.mse);
}

TEST_CASE("an exact linear relation gives zero variance and extreme p-values") {
  TestRng rng(107);
  RawDataset raw = random_raw(rng, 12, 4);
  raw.columns.col(3) =
      2.0 * raw.columns.col(0) - raw.columns.col(1) + raw.columns.col(2);
  OlsResult fit = ols(make_moments(standardize(raw)));
  CHECK(fit.sigma2_hat == 0.0);
  CHECK(fit.report.std_errors.maxCoeff() == 0.0);
  for (Index j = 0; j < 3; ++j) CHECK(fit.p_values(j) == 0.0);

  // a coefficient that is exactly zero with zero spread is "certainly zero"
  ModelMoments degenerate = firms_moments();
  Vector beta(3);
  beta << 1.0, 0.0, -2.0;
  OlsResult flat = ols_from_plugins(degenerate, {0.0, beta});
  CHECK(flat.p_values(0) == 0.0);
  CHECK(flat.p_values(1) == 1.0);
  CHECK(flat.p_values(2) == 0.0);

  // the dependent duplicating a regressor picks out that single coefficient
  RawDataset copycat = random_raw(rng, 12, 4);
  copycat.columns.col(3) = copycat.columns.col(1);
  OlsResult unit = ols(make_moments(standardize(copycat)));
  CHECK(close_abs(unit.report.coefficients(0), 0.0, 1e-10));
  CHECK(close_rel(unit.report.coefficients(1), 1.0, 1e-10));
  CHECK(close_abs(unit.report.coefficients(2), 0.0, 1e-10));
  CHECK(close_rel(unit.r_squared, 1.0, 1e-10));
  CHECK(unit.sigma2_hat >= 0.0);
  CHECK(unit.sigma2_hat <= 1e-12);
}

TEST_CASE("zero penalty reproduces least squares") {
  ModelMoments moments = longley_moments();
  OlsResult fit = ols(moments);
  EstimateReport penalized =
      gr_estimate(moments, PenaltyMatrix::zero(5), fit.plugins());
  CHECK((penalized.coefficients - fit.report.coefficients)
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  CHECK((penalized.covariance - fit.report.covariance).cwiseAbs().maxCoeff() <
        1e-12);
  CHECK(penalized.mse == doctest::Approx(fit.report.mse).epsilon(1e-12));
  CHECK(penalized.gof == doctest::Approx(fit.report.gof).epsilon(1e-12));
  CHECK(penalized.condition_number == fit.report.condition_number);
}

TEST_CASE("penalized fit is continuous at zero") {
  ModelMoments moments = longley_moments();
  OlsResult fit = ols(moments);
  EstimateReport nearby =
      gr_estimate(moments, PenaltyMatrix::uniform(5, 1e-12), fit.plugins());
  CHECK((nearby.coefficients - fit.report.coefficients).cwiseAbs().maxCoeff() <
        1e-6);
}

TEST_CASE("published penalized fits for the firm panel") {
  ModelMoments moments = firms_moments();
  Plugins plugins = firms_plugins();
  for (const auto& column : {firms::kResults[1], firms::kResults[5]}) {
    PenaltyMatrix k =
        column.single_index == 0
            ? PenaltyMatrix::uniform(3, column.k)
            : PenaltyMatrix::single(3, column.single_index - 1, column.k);
    EstimateReport rep = gr_estimate(moments, k, plugins);
    for (int j = 0; j < 3; ++j) {
      CHECK(matches_printed(rep.coefficients(j), column.coefficients[j]));
      CHECK(matches_printed(rep.std_errors(j), column.std_errors[j]));
    }
    CHECK(matches_printed(rep.mse, column.mse));
    CHECK(matches_printed(rep.gof, column.gof));
    CHECK(matches_printed(rep.condition_number, column.cn));
  }
}

TEST_CASE("penalized coefficients equal least squares on the augmented design") {
  TestRng rng(109);
  for (int rep = 0; rep < 25; ++rep) {
    StandardizedModel model = random_model(rng, 14, 4);
    ModelMoments moments = make_moments(model);
    Plugins plugins = ols(moments).plugins();
    PenaltyMatrix k = random_penalty(rng, moments.m());

    auto [xa, ya] = augmented_design(model, moments.spec, k);
    Vector direct = xa.colPivHouseholderQr().solve(ya);
    EstimateReport rep2 = gr_estimate(moments, k, plugins);
    CHECK((rep2.coefficients - direct).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("scalar mean squared error") {
  ModelMoments moments = firms_moments();
  Plugins plugins = firms_plugins();

  // at K = 0 only the variance part survives: sigma^2 sum 1/lambda
  double at_zero = scalar_mse(moments.spec, PenaltyMatrix::zero(3), plugins);
  CHECK(at_zero ==
        doctest::Approx(plugins.sigma2 *
                        moments.spec.lambda.cwiseInverse().sum()));
  CHECK(matches_printed(at_zero, firms::kOlsMse));

  for (const auto& row : firms::kKlMin) {
    PenaltyMatrix k = PenaltyMatrix::single(
        3, row.l - 1, std::strtod(row.k.c_str(), nullptr));
    CHECK(matches_printed(scalar_mse(moments.spec, k, plugins), row.mse));
  }

  CHECK_THROWS_AS(
      scalar_mse(moments.spec, PenaltyMatrix::zero(2), plugins),
      invalid_input);
  CHECK_THROWS_AS(
      scalar_mse(moments.spec, PenaltyMatrix::zero(3), {-1.0, plugins.beta}),
      invalid_input);
}

TEST_CASE("goodness of fit of a penalized fit") {
  ModelMoments moments = firms_moments();
  Plugins plugins = firms_plugins();

  // K = 0 reduces to the quadratic form b^t R b, i.e. R^2 at the OLS fit
  Vector b = firms::beta_ols();
  double base = gof(moments, PenaltyMatrix::zero(3), b);
  CHECK(base == doctest::Approx(b.dot(firms::correlation() * b)));
  CHECK(matches_printed(base, firms::kResults[0].gof));

  // the penalty adds 2 sum k_j (Gamma^t b)_j^2, always non-negative
  TestRng rng(113);
  for (int rep = 0; rep < 10; ++rep) {
    PenaltyMatrix k = random_penalty(rng, 3);
    Vector in_basis = moments.spec.gamma.transpose() * b;
    double expected = b.dot(firms::correlation() * b) +
                      2.0 * (in_basis.array().square() *
                             k.values().array())
                                .sum();
    CHECK(gof(moments, k, b) == doctest::Approx(expected));
    CHECK(gof(moments, k, b) >= base);
  }
  CHECK_THROWS_AS(gof(moments, PenaltyMatrix::zero(3), Vector::Zero(2)),
                  invalid_input);
}

TEST_CASE("coefficient norm shrinks as a uniform penalty grows") {
  ModelMoments moments = longley_moments();
  Plugins plugins = ols(moments).plugins();
  double previous = gr_estimate(moments, PenaltyMatrix::zero(5), plugins).norm;
  for (double k : {1e-4, 1e-2, 1e-1, 1.0, 10.0}) {
    double current =
        gr_estimate(moments, PenaltyMatrix::uniform(5, k), plugins).norm;
    CHECK(current < previous);
    previous = current;
  }
}

TEST_CASE("variance gap") {
  SUBCASE("vanishes without a penalty") {
    ModelMoments moments = longley_moments();
    Matrix gap = variance_gap(moments.spec, PenaltyMatrix::zero(5),
                              longley::kSigma2Plugin);
    CHECK(gap.cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("is negative definite for strictly positive penalties") {
    TestRng rng(127);
    for (int rep = 0; rep < 20; ++rep) {
      ModelMoments moments = make_moments(random_model(rng, 15, 4));
      Vector diag(4);
      for (Index j = 0; j < 4; ++j) diag(j) = 1e-6 + 2.0 * rng.positive();
      Matrix gap = variance_gap(moments.spec, PenaltyMatrix::general(diag),
                                0.5 + rng.positive());
      Eigen::SelfAdjointEigenSolver<Matrix> eigen(gap);
      CHECK(eigen.eigenvalues().maxCoeff() < 0.0);
    }
  }

  SUBCASE("single-regressor case by hand") {
    // lambda = 1, k = 1, sigma^2 = 1: 1/(1+1)^2 - 1/1 = -3/4
    SpectralDecomposition unit = eigendecompose(Matrix::Identity(1, 1));
    Matrix gap = variance_gap(unit, PenaltyMatrix::uniform(1, 1.0), 1.0);
    CHECK(gap(0, 0) == -0.75);
  }
}

}  // TEST_SUITE
