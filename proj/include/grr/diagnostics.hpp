#pragma once

#include <vector>

#include "grr/common.hpp"
#include "grr/estimator.hpp"
#include "grr/spectral.hpp"

namespace grr {

// Reference threshold below which a raw variable's coefficient of variation
// signals near-constancy (nonessential collinearity with the intercept).
// Augmented columns always satisfy cv^2 >= n/m, so this only matters for
// diagnostics on unstandardized inputs; exposed for callers that report it.
inline constexpr double troubling_cv_threshold = 0.1002506;

// Coefficient of variation of augmented column l (the standardized column
// extended with its m penalty rows). Returns +infinity when the augmented
// mean vanishes (in particular at K = 0, where every column is centered).
double cv(const ModelMoments& moments, const PenaltyMatrix& k, Index l);

// Pairwise correlations of the augmented columns, computed from moments (the
// augmented columns are not centered, so these are the moment expansions, not
// a centered-data shortcut). Also returns the determinant of that matrix.
struct AugmentedCorrelation {
  Matrix correlation;
  double det = 0.0;
};
AugmentedCorrelation corr_augmented(const ModelMoments& moments,
                                    const PenaltyMatrix& k);

// Variance inflation factor of augmented column l. Closed forms are used for
// uniform penalties and for penalties confined to a single eigen-direction;
// any other penalty goes through the generic Gram-matrix route
// (R + Gamma K Gamma^t).
double vif(const ModelMoments& moments, const PenaltyMatrix& k, Index l);
Vector vif_all(const ModelMoments& moments, const PenaltyMatrix& k);

/// sqrt(mu_max / mu_min) with mu_j = lambda_j + k_j: condition number of the
// augmented design.
double condition_number(const SpectralDecomposition& spec,
                        const PenaltyMatrix& k);

struct DiagnosticsReport {
  Vector eigenvalues;            // descending
  double condition_number = 0.0;
  double det_correlation = 0.0;
  Vector vifs;
  Vector cvs;
  Matrix augmented_correlation;
  double det_augmented = 0.0;
  Vector penalty;
  // CV and the augmented correlations depend on eigenvector signs when the
  // penalty is not confined to a single direction (the convention here:
  // largest-magnitude entry per column positive). VIF and the condition
  // number never do.
  bool convention_sensitive = false;
  std::vector<std::string> names;
};

DiagnosticsReport diagnose(const ModelMoments& moments,
                           const PenaltyMatrix& k);

}  // namespace grr
