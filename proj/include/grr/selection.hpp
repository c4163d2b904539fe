#pragma once

#include <optional>
#include <string>

#include "grr/common.hpp"
#include "grr/estimator.hpp"
#include "grr/spectral.hpp"

namespace grr {

// Evenly spaced candidate penalties lower, lower+step, ..., up to upper.
struct GridSpec {
  double lower = 0.0;
  double upper = 1.0;
  double step = 1e-5;
  void validate() const;
  Index size() const;            // number of grid points
  double value(Index i) const;   // lower + i * step
};

// Which one-parameter penalty family a grid search sweeps.
struct PenaltySweep {
  enum class Kind { uniform, single };
  static PenaltySweep uniform() { return {Kind::uniform, -1}; }
  static PenaltySweep single(Index l) { return {Kind::single, l}; }
  PenaltyMatrix at(Index m, double k) const;
  Kind kind;
  Index index;                   // eigen-direction for Kind::single
};

struct Plateau {
  double lower = 0.0;            // interval of penalties k_l (exclusive ends)
  double upper = 0.0;
  double cn = 0.0;               // constant condition number on the interval
  Index index = 0;               // direction of the smallest eigenvalue
};

struct SelectionResult {
  std::string rule;
  bool found = true;             // false when a grid search never satisfies
  PenaltyMatrix k;               //   its criterion
  double objective = 0.0;        // value of the quantity the rule targets
  std::optional<Plateau> plateau;
};

// m sigma^2 / (beta^t beta): uniform-penalty rule of thumb.
double k_hkb(Index m, double sigma2, const Vector& beta);

// sigma^2 / max_j xi_j^2: uniform-penalty rule keyed to the largest
// eigen-basis coefficient.
double k_hk(double sigma2, const Vector& xi);

// Penalty on direction l minimizing the scalar mean squared error: grid
// argmin refined by deterministic bracket shrinking to near machine
// precision.
SelectionResult k_min_single(const SpectralDecomposition& spec,
                             const Plugins& plugins, Index l,
                             const GridSpec& grid = {});

// Uniform-penalty scalar-MSE argmin at grid resolution (deliberately not
// refined: reported at the grid's granularity).
SelectionResult k_min_uniform(const SpectralDecomposition& spec,
                              const Plugins& plugins,
                              const GridSpec& grid = {});

// First grid penalty whose condition number falls below `threshold`.
SelectionResult cn_threshold_search(const SpectralDecomposition& spec,
                                    const PenaltySweep& sweep,
                                    double threshold,
                                    const GridSpec& grid = {});

// Largest grid penalty before the scalar mean squared error first exceeds
// the OLS value.
SelectionResult mse_crossing_search(const SpectralDecomposition& spec,
                                    const Plugins& plugins,
                                    const PenaltySweep& sweep,
                                    const GridSpec& grid = {});

// Penalizing only the smallest-eigenvalue direction, the condition number
// falls until k_l = lambda_(2) - lambda_min, stays flat at
// sqrt(lambda_max / lambda_(2)) until lambda_max - lambda_min, then rises:
// the flat stretch, with its midpoint as the representative penalty.
SelectionResult min_cn_plateau(const SpectralDecomposition& spec);

}  // namespace grr
