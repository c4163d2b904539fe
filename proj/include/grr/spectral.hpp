#pragma once

#include <utility>
#include <vector>

#include "grr/common.hpp"
#include "grr/dataset.hpp"

namespace grr {

// Eigendecomposition R = Gamma diag(lambda) Gamma^t of a correlation matrix,
// eigenvalues sorted descending. Eigenvector signs are fixed
// deterministically: in each column the entry of largest magnitude is made
// positive (ties broken by lowest row index).
struct SpectralDecomposition {
  Vector lambda;                 // descending
  Matrix gamma;                  // column j pairs with lambda[j]
  std::vector<Index> ascending;  // ascending[i] = column holding the
                                 // (i+1)-th smallest eigenvalue
  Index m() const { return lambda.size(); }
  double lambda_max() const { return lambda(0); }
  double lambda_min() const { return lambda(m() - 1); }
};

SpectralDecomposition eigendecompose(const Matrix& correlation);

// Diagonal penalty K = diag(k_1..k_m) expressed in the eigenvector basis.
// Three shapes cover everything the estimator and diagnostics need:
//   uniform  k_j = k for all j,
//   single   only index l may be nonzero (l fixed even when k = 0),
//   general  arbitrary nonnegative diagonal.
// Index l is zero-based in the API; the CLI accepts one-based positions.
class PenaltyMatrix {
 public:
  enum class Kind { uniform, single, general };

  // empty placeholder so result structs can default-construct; any real
  // penalty comes from the factories below
  PenaltyMatrix() : PenaltyMatrix(Kind::uniform, Vector(), -1) {}

  static PenaltyMatrix zero(Index m);  // uniform with k = 0
  static PenaltyMatrix uniform(Index m, double k);
  static PenaltyMatrix single(Index m, Index l, double k);
  static PenaltyMatrix general(Vector values);

  Kind kind() const { return kind_; }
  const Vector& values() const { return values_; }
  Index m() const { return values_.size(); }
  Index single_index() const;  // only valid for Kind::single
  bool is_zero() const { return values_.isZero(0.0); }

 private:
  PenaltyMatrix(Kind kind, Vector values, Index single_index);
  Kind kind_;
  Vector values_;
  Index single_index_;
};

// Stacks K^{1/2} Gamma^t under the standardized design and pads y with m
// zeros, so that OLS on the result reproduces the penalized estimator:
//   x_a^t x_a = x^t x + Gamma K Gamma^t,   x_a^t y_a = x^t y.
std::pair<Matrix, Vector> augmented_design(const StandardizedModel& model,
                                           const SpectralDecomposition& spec,
                                           const PenaltyMatrix& k);

}  // namespace grr
