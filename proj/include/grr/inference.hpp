#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "grr/common.hpp"
#include "grr/dataset.hpp"
#include "grr/spectral.hpp"

namespace grr {

struct BootstrapReport {
  Vector point_estimates;        // penalized fit on the full sample
  double point_gof = 0.0;
  std::vector<std::pair<double, double>> intervals;  // per coefficient
  std::pair<double, double> gof_interval{0.0, 0.0};
  double level = 0.95;
  int replicates = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> names;
  std::string dependent_name;
};

// Case-resampling percentile intervals for the penalized coefficients and
// the penalized goodness of fit. Rows of the raw dataset are resampled with
// replacement; each replicate is re-standardized and re-decomposed, with the
// penalty diagonal held fixed at `k`. Replicate r draws from a stream seeded
// by (seed, r) only, so results are independent of evaluation order;
// replicates with a degenerate column or rank-deficient correlation are
// redrawn (at most 10 times each).
BootstrapReport bootstrap(const RawDataset& raw, const PenaltyMatrix& k,
                          int replicates = 1000, std::uint64_t seed = 0,
                          double level = 0.95);

}  // namespace grr
