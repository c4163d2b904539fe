#include "grr/diagnostics.hpp"

#include <cmath>
#include <limits>

namespace grr {
namespace {

constexpr double kMeanFloor = 1e-300;
// Denominator of every augmented moment: the augmented design has n + m rows.
double rows_of(const ModelMoments& moments) {
  return static_cast<double>(moments.n + moments.m());
}

void validate_pair(const ModelMoments& moments, const PenaltyMatrix& k) {
  if (k.m() != moments.m())
    throw invalid_input("diagnostics: penalty dimension mismatch");
  if (moments.n < 1)
    throw invalid_input("diagnostics: sample size must be positive");
}

// First and raw second moments of augmented column l. The data part is
// centered and unit-length, so only the penalty rows sqrt(k_j) gamma_lj
// contribute to the mean, and the sum of squares is 1 + sum_j k_j gamma_lj^2.
struct ColumnMoments {
  double mean;
  double second;
  double variance() const { return second - mean * mean; }
};

ColumnMoments column_moments(const ModelMoments& moments,
                             const PenaltyMatrix& k, Index l) {
  double na = rows_of(moments);
  double weighted = 0.0, squared = 0.0;
  for (Index j = 0; j < moments.m(); ++j) {
    double g = moments.spec.gamma(l, j);
    weighted += std::sqrt(k.values()(j)) * g;
    squared += k.values()(j) * g * g;
  }
  return {weighted / na, (1.0 + squared) / na};
}

double vif_from_gram(const Matrix& gram, Index l) {
  const Index m = gram.rows();
  double total = gram(l, l);
  Vector cross(m - 1);
  Matrix block(m - 1, m - 1);
  for (Index i = 0, r = 0; i < m; ++i) {
    if (i == l) continue;
    cross(r) = gram(i, l);
    for (Index j = 0, c = 0; j < m; ++j) {
      if (j == l) continue;
      block(r, c) = gram(i, j);
      ++c;
    }
    ++r;
  }
  double explained = cross.dot(block.ldlt().solve(cross));
  double residual = total - explained;
  if (!(residual > 0.0))
    throw numerical_error(
        "diagnostics: auxiliary regression for VIF is degenerate");
  return total / residual;
}

}  // namespace

double cv(const ModelMoments& moments, const PenaltyMatrix& k, Index l) {
  validate_pair(moments, k);
  if (l < 0 || l >= moments.m())
    throw invalid_input("diagnostics: column index out of range");
  ColumnMoments cm = column_moments(moments, k, l);
  if (std::abs(cm.mean) < kMeanFloor)
    return std::numeric_limits<double>::infinity();
  double variance = std::max(cm.variance(), 0.0);
  return std::sqrt(variance) / std::abs(cm.mean);
}

AugmentedCorrelation corr_augmented(const ModelMoments& moments,
                                    const PenaltyMatrix& k) {
  validate_pair(moments, k);
  const Index m = moments.m();
  double na = rows_of(moments);

  std::vector<ColumnMoments> cols;
  for (Index l = 0; l < m; ++l) cols.push_back(column_moments(moments, k, l));

  AugmentedCorrelation out;
  out.correlation = Matrix::Identity(m, m);
  for (Index i = 0; i < m; ++i) {
    for (Index j = i + 1; j < m; ++j) {
      double cross = moments.correlation(i, j);
      for (Index t = 0; t < m; ++t)
        cross +=
            k.values()(t) * moments.spec.gamma(i, t) * moments.spec.gamma(j, t);
      double cov = cross / na - cols[i].mean * cols[j].mean;
      double scale =
          std::sqrt(std::max(cols[i].variance(), 0.0) *
                    std::max(cols[j].variance(), 0.0));
      if (!(scale > 0.0))
        throw numerical_error(
            "diagnostics: zero-variance augmented column in correlation");
      out.correlation(i, j) = out.correlation(j, i) = cov / scale;
    }
  }
  out.det = out.correlation.determinant();
  return out;
}

double vif(const ModelMoments& moments, const PenaltyMatrix& k, Index l) {
  validate_pair(moments, k);
  const Index m = moments.m();
  if (l < 0 || l >= m)
    throw invalid_input("diagnostics: column index out of range");
  if (m == 1) return 1.0;
  const Matrix& r = moments.correlation;

  switch (k.kind()) {
    case PenaltyMatrix::Kind::uniform: {
      // (1 + k) / (1 + k - r_l^t (R_{-l} + k I)^{-1} r_l)
      double kk = k.values()(0);
      Vector cross(m - 1);
      Matrix block(m - 1, m - 1);
      for (Index i = 0, ri = 0; i < m; ++i) {
        if (i == l) continue;
        cross(ri) = r(i, l);
        for (Index j = 0, ci = 0; j < m; ++j) {
          if (j == l) continue;
          block(ri, ci) = r(i, j) + (i == j ? kk : 0.0);
          ++ci;
        }
        ++ri;
      }
      double explained = cross.dot(block.ldlt().solve(cross));
      double residual = (1.0 + kk) - explained;
      if (!(residual > 0.0))
        throw numerical_error(
            "diagnostics: auxiliary regression for VIF is degenerate");
      return (1.0 + kk) / residual;
    }
    case PenaltyMatrix::Kind::single: {
      // Rank-one update along eigen-direction p with weight k_p.
      Index p = k.single_index();
      double kp = k.values()(p);
      double gl = moments.spec.gamma(l, p);
      double total = 1.0 + kp * gl * gl;
      Vector cross(m - 1);
      Matrix block(m - 1, m - 1);
      for (Index i = 0, ri = 0; i < m; ++i) {
        if (i == l) continue;
        double gi = moments.spec.gamma(i, p);
        cross(ri) = r(i, l) + kp * gl * gi;
        for (Index j = 0, ci = 0; j < m; ++j) {
          if (j == l) continue;
          block(ri, ci) = r(i, j) + kp * gi * moments.spec.gamma(j, p);
          ++ci;
        }
        ++ri;
      }
      double explained = cross.dot(block.ldlt().solve(cross));
      double residual = total - explained;
      if (!(residual > 0.0))
        throw numerical_error(
            "diagnostics: auxiliary regression for VIF is degenerate");
      return total / residual;
    }
    case PenaltyMatrix::Kind::general: {
      Matrix gram = r + moments.spec.gamma * k.values().asDiagonal() *
                            moments.spec.gamma.transpose();
      return vif_from_gram(gram, l);
    }
  }
  throw invalid_input("diagnostics: unknown penalty kind");
}

Vector vif_all(const ModelMoments& moments, const PenaltyMatrix& k) {
  Vector out(moments.m());
  for (Index l = 0; l < moments.m(); ++l) out(l) = vif(moments, k, l);
  return out;
}

double condition_number(const SpectralDecomposition& spec,
                        const PenaltyMatrix& k) {
  if (k.m() != spec.m())
    throw invalid_input("diagnostics: penalty dimension mismatch");
  Vector mu = spec.lambda + k.values();
  double lo = mu.minCoeff();
  if (!(lo > 0.0))
    throw numerical_error("diagnostics: non-positive augmented eigenvalue");
  return std::sqrt(mu.maxCoeff() / lo);
}

DiagnosticsReport diagnose(const ModelMoments& moments,
                           const PenaltyMatrix& k) {
  validate_pair(moments, k);
  DiagnosticsReport report;
  report.eigenvalues = moments.spec.lambda;
  report.condition_number = condition_number(moments.spec, k);
  report.det_correlation = moments.correlation.determinant();
  report.vifs = vif_all(moments, k);
  report.cvs.resize(moments.m());
  for (Index l = 0; l < moments.m(); ++l) report.cvs(l) = cv(moments, k, l);
  AugmentedCorrelation aug = corr_augmented(moments, k);
  report.augmented_correlation = aug.correlation;
  report.det_augmented = aug.det;
  report.penalty = k.values();
  report.names = moments.names;
  Index nonzero = 0;
  for (Index j = 0; j < k.m(); ++j)
    if (k.values()(j) != 0.0) ++nonzero;
  report.convention_sensitive = nonzero >= 2;
  return report;
}

}  // namespace grr
