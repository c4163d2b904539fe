#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "grr/common.hpp"
#include "grr/diagnostics.hpp"
#include "grr/estimator.hpp"
#include "grr/inference.hpp"
#include "grr/selection.hpp"

namespace grr {

// One diagnostics row per grid penalty.
struct TraceRow {
  double k = 0.0;
  double cn = 0.0;
  Vector vifs;
  Vector cvs;                    // +infinity allowed
  Vector correlations;           // augmented pairwise, upper triangle (i < j)
  double det = 0.0;              // determinant of the augmented correlation
  double mse = 0.0;
  double gof = 0.0;
};

struct TraceReport {
  std::vector<TraceRow> rows;
  std::vector<std::string> names;
  PenaltySweep sweep = PenaltySweep::uniform();
};

TraceReport make_trace(const ModelMoments& moments, const Plugins& plugins,
                       const PenaltySweep& sweep, const GridSpec& grid);

struct RunConfig {
  enum class Command { diagnose, estimate, select, trace, bootstrap };
  enum class Format { json, tsv };
  enum class PenaltyKind { zero, uniform, single, general };

  Command command = Command::diagnose;

  // Input, either a raw CSV ...
  std::string csv_path;
  std::string dependent;
  // ... or published summary statistics.
  std::string correlation_path;
  Vector beta_ols;
  double sigma2 = -1.0;
  Index n = 0;

  PenaltyKind penalty_kind = PenaltyKind::zero;
  double penalty_value = 0.0;
  Index penalty_index = 0;       // zero-based by the time it is stored here
  Vector penalty_diagonal;

  std::string rule;              // select
  double threshold = 20.0;       // select --rule cn-threshold
  PenaltySweep sweep = PenaltySweep::uniform();  // select / trace
  GridSpec grid;

  int replicates = 1000;         // bootstrap
  std::uint64_t seed = 0;
  double level = 0.95;

  Format format = Format::json;
  std::string output_path;       // empty = stdout
};

// Parses argv into a RunConfig. Throws invalid_input on bad usage; returns
// false when the invocation only asked for help (already printed).
bool parse_args(int argc, const char* const* argv, RunConfig& config,
                std::ostream& out);

// Executes one command and writes the serialized report to `out` in a single
// pass. Exceptions propagate to the caller.
void run(const RunConfig& config, std::ostream& out);

// parse + run + exception-to-exit-status mapping:
// 0 success, 1 invalid input, 2 numerical failure.
int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err);

}  // namespace grr
