#include "grr/inference.hpp"

#include <algorithm>
#include <cmath>

#include "grr/estimator.hpp"

namespace grr {
namespace {

// splitmix64; replicate r draws only from a stream keyed by (seed, r), so
// results cannot depend on evaluation order.
struct Stream {
  std::uint64_t state;
  Stream(std::uint64_t seed, std::uint64_t index)
      : state(seed + 0x9E3779B97F4A7C15ull * (index + 1)) {
    next();
    next();
  }
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  // Unbiased draw from {0..bound-1} by rejection; avoids the
  // implementation-defined std::uniform_int_distribution.
  Index draw(std::uint64_t bound) {
    std::uint64_t floor = (~std::uint64_t{0} % bound + 1) % bound;
    for (;;) {
      std::uint64_t raw = next();
      if (raw >= floor) return static_cast<Index>(raw % bound);
    }
  }
};

double quantile_sorted(const std::vector<double>& sorted, double q) {
  double h = static_cast<double>(sorted.size() - 1) * q;
  std::size_t lo = static_cast<std::size_t>(std::floor(h));
  std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::pair<double, double> percentile_interval(std::vector<double>& draws,
                                              double level) {
  std::sort(draws.begin(), draws.end());
  double tail = (1.0 - level) / 2.0;
  return {quantile_sorted(draws, tail), quantile_sorted(draws, 1.0 - tail)};
}

}  // namespace

BootstrapReport bootstrap(const RawDataset& raw, const PenaltyMatrix& k,
                          int replicates, std::uint64_t seed, double level) {
  if (replicates < 2)
    throw invalid_input("inference: need at least two replicates");
  if (!(level > 0.0 && level < 1.0))
    throw invalid_input("inference: confidence level must be in (0, 1)");

  StandardizedModel model = standardize(raw);
  ModelMoments moments = make_moments(model);
  const Index m = moments.m();
  if (k.m() != m) throw invalid_input("inference: penalty dimension mismatch");
  OlsResult base = ols(moments);
  EstimateReport point = gr_estimate(moments, k, base.plugins());

  const Index n = raw.n();
  Matrix coefficient_draws(replicates, m);
  std::vector<double> gof_draws(static_cast<std::size_t>(replicates));

  for (int r = 0; r < replicates; ++r) {
    Stream stream(seed, static_cast<std::uint64_t>(r));
    RawDataset resampled;
    resampled.names = raw.names;
    resampled.columns.resize(n, raw.p());
    bool done = false;
    for (int attempt = 0; attempt < 10 && !done; ++attempt) {
      for (Index i = 0; i < n; ++i)
        resampled.columns.row(i) =
            raw.columns.row(stream.draw(static_cast<std::uint64_t>(n)));
      try {
        StandardizedModel replicate_model = standardize(resampled);
        ModelMoments replicate_moments = make_moments(replicate_model);
        OlsResult replicate_ols = ols(replicate_moments);
        EstimateReport estimate =
            gr_estimate(replicate_moments, k, replicate_ols.plugins());
        coefficient_draws.row(r) = estimate.coefficients;
        gof_draws[static_cast<std::size_t>(r)] = estimate.gof;
        done = true;
      } catch (const numerical_error&) {
        // degenerate column or rank-deficient resample: redraw
      }
    }
    if (!done)
      throw numerical_error("inference: replicate " + std::to_string(r) +
                            " stayed degenerate after 10 redraws");
  }

  BootstrapReport report;
  report.point_estimates = point.coefficients;
  report.point_gof = point.gof;
  report.level = level;
  report.replicates = replicates;
  report.seed = seed;
  report.names = model.names;
  report.dependent_name = model.dependent_name;
  for (Index j = 0; j < m; ++j) {
    std::vector<double> column(coefficient_draws.col(j).data(),
                               coefficient_draws.col(j).data() + replicates);
    report.intervals.push_back(percentile_interval(column, level));
  }
  report.gof_interval = percentile_interval(gof_draws, level);
  return report;
}

}  // namespace grr
