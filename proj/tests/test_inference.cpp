#include <doctest.h>

#include <cmath>

#include "grr/dataset.hpp"
#include "grr/inference.hpp"
#include "grr/selection.hpp"
#include "grr/serialize.hpp"
#include "support/checkers.h"
#include "support/expected_longley.h"
#include "support/oracles.h"

using namespace grr;

namespace {

RawDataset longley_raw() { return load_csv(longley::kCsv, longley::kDependent); }

// y = x1 + 0.5 x2 + noise, reproducible for a given seed.
RawDataset synthetic_raw(std::uint64_t seed, Index n) {
  TestRng rng(seed);
  RawDataset raw;
  raw.columns.resize(n, 3);
  for (Index i = 0; i < n; ++i) {
    double x1 = rng.uniform(), x2 = rng.uniform();
    raw.columns(i, 0) = x1;
    raw.columns(i, 1) = x2;
    raw.columns(i, 2) = x1 + 0.5 * x2 + 0.3 * rng.uniform();
  }
  raw.names = {"x1", "x2", "y"};
  return raw;
}

double total_width(const BootstrapReport& report) {
  double w = 0.0;
  for (const auto& [lo, hi] : report.intervals) w += hi - lo;
  return w;
}

}  // namespace

TEST_SUITE("inference") {

TEST_CASE("report structure and the full-sample point estimate") {
  RawDataset raw = longley_raw();
  PenaltyMatrix k = PenaltyMatrix::uniform(5, 0.01);
  BootstrapReport report = bootstrap(raw, k, 200, 7);

  CHECK(report.replicates == 200);
  CHECK(report.seed == 7);
  CHECK(report.level == 0.95);
  CHECK(report.names.size() == 5);
  CHECK(report.dependent_name == "Employed");
  CHECK(report.intervals.size() == 5);

  ModelMoments moments = make_moments(standardize(raw));
  EstimateReport point = gr_estimate(moments, k, ols(moments).plugins());
  CHECK((report.point_estimates - point.coefficients).cwiseAbs().maxCoeff() ==
        0.0);
  CHECK(report.point_gof == point.gof);

  for (const auto& [lo, hi] : report.intervals) {
    CHECK(std::isfinite(lo));
    CHECK(std::isfinite(hi));
    CHECK(lo <= hi);
  }
  CHECK(report.gof_interval.first <= report.gof_interval.second);
  CHECK(std::isfinite(report.gof_interval.first));
}

TEST_CASE("identical seeds give identical bytes, new seeds move the intervals") {
  RawDataset raw = longley_raw();
  PenaltyMatrix k = PenaltyMatrix::uniform(5, 0.01);
  BootstrapReport first = bootstrap(raw, k, 150, 42);
  BootstrapReport second = bootstrap(raw, k, 150, 42);
  CHECK(to_json(first) == to_json(second));

  BootstrapReport other = bootstrap(raw, k, 150, 43);
  CHECK(to_json(first) != to_json(other));
}

TEST_CASE("narrower confidence level gives a narrower interval") {
  RawDataset raw = synthetic_raw(5, 40);
  PenaltyMatrix k = PenaltyMatrix::uniform(2, 0.05);
  BootstrapReport wide = bootstrap(raw, k, 300, 1, 0.99);
  BootstrapReport narrow = bootstrap(raw, k, 300, 1, 0.80);
  CHECK(total_width(narrow) < total_width(wide));
}

TEST_CASE("intervals shrink with sample size") {
  int shrank = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RawDataset big = synthetic_raw(900 + seed, 80);
    RawDataset small = big;
    small.columns = big.columns.topRows(40);
    PenaltyMatrix k = PenaltyMatrix::uniform(2, 0.05);
    double w_small = total_width(bootstrap(small, k, 200, seed));
    double w_big = total_width(bootstrap(big, k, 200, seed));
    if (w_big < w_small) ++shrank;
  }
  CHECK(shrank >= 15);
}

TEST_CASE("the armed-forces effect stays negative under resampling") {
  RawDataset raw = longley_raw();
  BootstrapReport report = bootstrap(raw, PenaltyMatrix::zero(5), 1000, 0);
  auto [lo, hi] = report.intervals[3];  // Armed Forces
  CHECK(hi < 0.0);
}

TEST_CASE("intervals usually contain the full-sample point estimate") {
  RawDataset raw = longley_raw();
  PenaltyMatrix k = PenaltyMatrix::zero(5);
  std::vector<int> misses(5, 0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    BootstrapReport report = bootstrap(raw, k, 300, seed);
    for (Index j = 0; j < 5; ++j) {
      auto [lo, hi] = report.intervals[j];
      double point = report.point_estimates(j);
      if (point < lo || point > hi) ++misses[j];
    }
  }
  for (int count : misses) CHECK(count <= 1);  // at most 5% of the seeds
}

TEST_CASE("degenerate resamples are redrawn") {
  // a regressor that is zero outside two rows: many resamples miss both and
  // produce a constant column, which forces a redraw
  TestRng rng(61);
  RawDataset raw;
  raw.columns.resize(10, 3);
  for (Index i = 0; i < 10; ++i) {
    raw.columns(i, 0) = rng.uniform();
    raw.columns(i, 1) = i < 2 ? 1.0 : 0.0;
    raw.columns(i, 2) = raw.columns(i, 0) + 0.2 * raw.columns(i, 1) +
                        0.1 * rng.uniform();
  }
  raw.names = {"a", "spike", "y"};
  BootstrapReport report =
      bootstrap(raw, PenaltyMatrix::uniform(2, 0.02), 100, 3);
  CHECK(report.intervals.size() == 2);
  for (const auto& [lo, hi] : report.intervals) CHECK(lo <= hi);
  // still reproducible despite the redraw path
  CHECK(to_json(report) ==
        to_json(bootstrap(raw, PenaltyMatrix::uniform(2, 0.02), 100, 3)));
}

TEST_CASE("input validation") {
  RawDataset raw = synthetic_raw(9, 20);
  PenaltyMatrix k = PenaltyMatrix::uniform(2, 0.05);
  CHECK_THROWS_AS(bootstrap(raw, k, 1, 0), invalid_input);
  CHECK_THROWS_AS(bootstrap(raw, k, 100, 0, 0.0), invalid_input);
  CHECK_THROWS_AS(bootstrap(raw, k, 100, 0, 1.0), invalid_input);
  CHECK_THROWS_AS(bootstrap(raw, PenaltyMatrix::uniform(3, 0.05), 100, 0),
                  invalid_input);

  RawDataset degenerate = raw;
  degenerate.columns.col(0).setConstant(2.5);
  CHECK_THROWS_AS(bootstrap(degenerate, k, 100, 0), numerical_error);
}

}  // TEST_SUITE
