#include "grr/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace grr {
namespace {

constexpr double kRankFloor = 1e-14;

void validate_symmetric(const Matrix& a, const char* what) {
  if (a.rows() != a.cols())
    throw invalid_input(std::string("spectral: ") + what +
                        " must be square, got " + std::to_string(a.rows()) +
                        "x" + std::to_string(a.cols()));
  double skew = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (skew > 1e-8)
    throw invalid_input(std::string("spectral: ") + what +
                        " is not symmetric (max asymmetry " +
                        std::to_string(skew) + ")");
}

}  // namespace

SpectralDecomposition eigendecompose(const Matrix& correlation) {
  validate_symmetric(correlation, "correlation matrix");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(correlation);
  if (solver.info() != Eigen::Success)
    throw numerical_error("spectral: eigendecomposition failed to converge");

  const Index m = correlation.rows();
  SpectralDecomposition spec;
  spec.lambda.resize(m);
  spec.gamma.resize(m, m);
  // Eigen returns eigenvalues ascending; store them descending. A stable
  // reorder keeps tied eigenvalues in their original column order, so an
  // identity input comes back as gamma = I.
  std::vector<Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return solver.eigenvalues()(a) > solver.eigenvalues()(b);
  });
  for (Index j = 0; j < m; ++j) {
    spec.lambda(j) = solver.eigenvalues()(order[static_cast<std::size_t>(j)]);
    spec.gamma.col(j) =
        solver.eigenvectors().col(order[static_cast<std::size_t>(j)]);
  }
  if (spec.lambda(m - 1) <= kRankFloor)
    throw numerical_error(
        "spectral: correlation matrix is rank deficient (smallest eigenvalue " +
        std::to_string(spec.lambda(m - 1)) + ")");

  // Deterministic signs: largest-magnitude entry of each column positive,
  // ties resolved toward the lowest row index.
  for (Index j = 0; j < m; ++j) {
    Index pivot = 0;
    double best = -1.0;
    for (Index i = 0; i < m; ++i) {
      double mag = std::abs(spec.gamma(i, j));
      if (mag > best) {
        best = mag;
        pivot = i;
      }
    }
    if (spec.gamma(pivot, j) < 0.0) spec.gamma.col(j) = -spec.gamma.col(j);
  }

  spec.ascending.resize(static_cast<std::size_t>(m));
  std::iota(spec.ascending.begin(), spec.ascending.end(), Index{0});
  std::reverse(spec.ascending.begin(), spec.ascending.end());
  return spec;
}

PenaltyMatrix::PenaltyMatrix(Kind kind, Vector values, Index single_index)
    : kind_(kind), values_(std::move(values)), single_index_(single_index) {
  for (Index j = 0; j < values_.size(); ++j) {
    if (!std::isfinite(values_(j)) || values_(j) < 0.0)
      throw invalid_input("spectral: penalty entries must be finite and >= 0");
    if (kind_ == Kind::single && j != single_index_ && values_(j) != 0.0)
      throw invalid_input(
          "spectral: single-direction penalty has an off-index entry");
  }
}

PenaltyMatrix PenaltyMatrix::zero(Index m) { return uniform(m, 0.0); }

PenaltyMatrix PenaltyMatrix::uniform(Index m, double k) {
  if (m < 1) throw invalid_input("spectral: penalty needs dimension >= 1");
  return PenaltyMatrix(Kind::uniform, Vector::Constant(m, k), -1);
}

PenaltyMatrix PenaltyMatrix::single(Index m, Index l, double k) {
  if (m < 1) throw invalid_input("spectral: penalty needs dimension >= 1");
  if (l < 0 || l >= m)
    throw invalid_input("spectral: penalty index " + std::to_string(l) +
                        " out of range for dimension " + std::to_string(m));
  Vector values = Vector::Zero(m);
  values(l) = k;
  return PenaltyMatrix(Kind::single, std::move(values), l);
}

PenaltyMatrix PenaltyMatrix::general(Vector values) {
  if (values.size() < 1)
    throw invalid_input("spectral: penalty needs dimension >= 1");
  return PenaltyMatrix(Kind::general, std::move(values), -1);
}

Index PenaltyMatrix::single_index() const {
  if (kind_ != Kind::single)
    throw invalid_input(
        "spectral: single_index() on a non-single-direction penalty");
  return single_index_;
}

std::pair<Matrix, Vector> augmented_design(const StandardizedModel& model,
                                           const SpectralDecomposition& spec,
                                           const PenaltyMatrix& k) {
  const Index n = model.n();
  const Index m = model.m();
  if (spec.m() != m || k.m() != m)
    throw invalid_input("spectral: dimension mismatch in augmented design");
  Matrix xa(n + m, m);
  xa.topRows(n) = model.x;
  xa.bottomRows(m) =
      k.values().array().sqrt().matrix().asDiagonal() * spec.gamma.transpose();
  Vector ya = Vector::Zero(n + m);
  ya.head(n) = model.y;
  return {std::move(xa), std::move(ya)};
}

}  // namespace grr
