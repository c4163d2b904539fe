#include "grr/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "grr/serialize.hpp"

namespace grr {

TraceReport make_trace(const ModelMoments& moments, const Plugins& plugins,
                       const PenaltySweep& sweep, const GridSpec& grid) {
  grid.validate();
  TraceReport report;
  report.names = moments.names;
  report.sweep = sweep;
  report.rows.reserve(static_cast<std::size_t>(grid.size()));
  for (Index i = 0; i < grid.size(); ++i) {
    PenaltyMatrix k = sweep.at(moments.m(), grid.value(i));
    EstimateReport estimate = gr_estimate(moments, k, plugins);
    TraceRow row;
    row.k = grid.value(i);
    row.cn = estimate.condition_number;
    row.vifs = vif_all(moments, k);
    row.cvs.resize(moments.m());
    for (Index l = 0; l < moments.m(); ++l) row.cvs(l) = cv(moments, k, l);
    AugmentedCorrelation aug = corr_augmented(moments, k);
    row.correlations.resize(moments.m() * (moments.m() - 1) / 2);
    for (Index a = 0, c = 0; a < moments.m(); ++a)
      for (Index b = a + 1; b < moments.m(); ++b)
        row.correlations(c++) = aug.correlation(a, b);
    row.det = aug.det;
    row.mse = estimate.mse;
    row.gof = estimate.gof;
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

std::vector<double> parse_number_list(const std::string& text,
                                      const std::string& flag) {
  std::vector<double> out;
  std::stringstream stream(text);
  std::string cell;
  while (std::getline(stream, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      while (used < cell.size() &&
             (cell[used] == ' ' || cell[used] == '\t'))
        ++used;
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw invalid_input("cli: " + flag + ": \"" + cell +
                          "\" is not a number");
    }
  }
  if (out.empty()) throw invalid_input("cli: " + flag + ": empty list");
  return out;
}

std::vector<std::string> parse_name_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream stream(text);
  std::string cell;
  while (std::getline(stream, cell, ',')) out.push_back(cell);
  return out;
}

PenaltySweep parse_sweep(const std::string& text) {
  if (text == "uniform") return PenaltySweep::uniform();
  if (text.rfind("single:", 0) == 0) {
    long l = 0;
    try {
      l = std::stol(text.substr(7));
    } catch (const std::exception&) {
      throw invalid_input("cli: bad sweep \"" + text + "\"");
    }
    if (l < 1) throw invalid_input("cli: sweep index must be >= 1");
    return PenaltySweep::single(static_cast<Index>(l - 1));
  }
  throw invalid_input("cli: sweep must be \"uniform\" or \"single:<index>\"");
}

GridSpec parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string cell;
  while (std::getline(stream, cell, ':')) parts.push_back(cell);
  if (parts.size() != 3)
    throw invalid_input("cli: grid must be <lower>:<upper>:<step>");
  GridSpec grid;
  try {
    grid.lower = std::stod(parts[0]);
    grid.upper = std::stod(parts[1]);
    grid.step = std::stod(parts[2]);
  } catch (const std::exception&) {
    throw invalid_input("cli: grid must be numeric <lower>:<upper>:<step>");
  }
  grid.validate();
  return grid;
}

// Square numeric CSV, optionally preceded by a header row of column names.
Matrix load_correlation_csv(const std::string& path,
                            std::vector<std::string>& names) {
  std::ifstream file(path);
  if (!file) throw invalid_input("cli: cannot open \"" + path + "\"");
  std::vector<std::vector<std::string>> lines;
  std::string line;
  while (std::getline(file, line)) {
    std::string trimmed = line;
    while (!trimmed.empty() &&
           (trimmed.back() == '\r' || trimmed.back() == ' '))
      trimmed.pop_back();
    if (trimmed.empty()) continue;
    lines.push_back(parse_name_list(trimmed));
  }
  if (lines.empty()) throw invalid_input("cli: \"" + path + "\" is empty");

  auto numeric = [](const std::string& cell) {
    try {
      std::size_t used = 0;
      std::stod(cell, &used);
      return used == cell.size();
    } catch (const std::exception&) {
      return false;
    }
  };
  std::size_t first_row = 0;
  bool header = false;
  for (const auto& cell : lines[0])
    if (!numeric(cell)) header = true;
  if (header) {
    names = lines[0];
    first_row = 1;
  }

  std::size_t m = lines.size() - first_row;
  if (m == 0) throw invalid_input("cli: no matrix rows in \"" + path + "\"");
  Matrix r(static_cast<Index>(m), static_cast<Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    if (lines[first_row + i].size() != m)
      throw invalid_input("cli: correlation matrix in \"" + path +
                          "\" is not square");
    for (std::size_t j = 0; j < m; ++j) {
      const std::string& cell = lines[first_row + i][j];
      if (!numeric(cell))
        throw invalid_input("cli: correlation cell \"" + cell +
                            "\" is not a number");
      r(static_cast<Index>(i), static_cast<Index>(j)) = std::stod(cell);
    }
  }
  if (header && names.size() != m)
    throw invalid_input("cli: header of \"" + path + "\" has " +
                        std::to_string(names.size()) + " names for " +
                        std::to_string(m) + " columns");
  return r;
}

struct RawOptions {
  std::string beta_ols;
  std::string names;
  std::string k_single;
  std::string k_diag;
  std::string sweep;
  std::string grid;
  std::string rule;
  std::string format = "json";
  double k_uniform = -1.0;
};

void add_input_options(CLI::App* cmd, RunConfig& config, RawOptions& raw) {
  cmd->add_option("--csv", config.csv_path,
                  "raw data CSV with a header row");
  cmd->add_option("--dependent", config.dependent,
                  "name of the response column in --csv");
  cmd->add_option("--correlation-matrix", config.correlation_path,
                  "regressor correlation matrix CSV (summary-input mode)");
  cmd->add_option("--beta-ols", raw.beta_ols,
                  "comma-separated OLS coefficients (summary-input mode)");
  cmd->add_option("--sigma2", config.sigma2,
                  "residual variance plug-in (summary-input mode)");
  cmd->add_option("--n", config.n,
                  "number of observations (summary-input mode)");
  cmd->add_option("--names", raw.names,
                  "comma-separated regressor names (optional override)");
  cmd->add_option("--output", config.output_path,
                  "write the report here instead of stdout");
  cmd->add_option("--format", raw.format, "json (default) or tsv");
}

void add_penalty_options(CLI::App* cmd, RawOptions& raw) {
  cmd->add_option("--k", raw.k_uniform, "uniform penalty value");
  cmd->add_option("--k-single", raw.k_single,
                  "<index>:<value> penalty on one eigen-direction (1-based)");
  cmd->add_option("--k-diag", raw.k_diag,
                  "comma-separated penalty diagonal");
}

void finalize(RunConfig& config, const RawOptions& raw) {
  bool csv_mode = !config.csv_path.empty();
  bool summary_mode = !config.correlation_path.empty();
  if (csv_mode == summary_mode)
    throw invalid_input(
        "cli: give exactly one of --csv or --correlation-matrix");
  if (csv_mode && config.dependent.empty())
    throw invalid_input("cli: --csv needs --dependent");
  if (summary_mode) {
    if (raw.beta_ols.empty() || config.sigma2 < 0.0 || config.n <= 0)
      throw invalid_input(
          "cli: --correlation-matrix needs --beta-ols, --sigma2 and --n");
    std::vector<double> entries = parse_number_list(raw.beta_ols, "--beta-ols");
    config.beta_ols =
        Eigen::Map<const Vector>(entries.data(),
                                 static_cast<Index>(entries.size()));
  }

  int penalty_flags = (raw.k_uniform >= 0.0 ? 1 : 0) +
                      (raw.k_single.empty() ? 0 : 1) +
                      (raw.k_diag.empty() ? 0 : 1);
  if (penalty_flags > 1)
    throw invalid_input("cli: give at most one of --k, --k-single, --k-diag");
  if (raw.k_uniform >= 0.0) {
    config.penalty_kind = RunConfig::PenaltyKind::uniform;
    config.penalty_value = raw.k_uniform;
  } else if (!raw.k_single.empty()) {
    auto colon = raw.k_single.find(':');
    if (colon == std::string::npos)
      throw invalid_input("cli: --k-single wants <index>:<value>");
    long index = 0;
    double value = 0.0;
    try {
      index = std::stol(raw.k_single.substr(0, colon));
      value = std::stod(raw.k_single.substr(colon + 1));
    } catch (const std::exception&) {
      throw invalid_input("cli: --k-single wants <index>:<value>");
    }
    if (index < 1) throw invalid_input("cli: --k-single index must be >= 1");
    config.penalty_kind = RunConfig::PenaltyKind::single;
    config.penalty_index = static_cast<Index>(index - 1);
    config.penalty_value = value;
  } else if (!raw.k_diag.empty()) {
    std::vector<double> entries = parse_number_list(raw.k_diag, "--k-diag");
    config.penalty_kind = RunConfig::PenaltyKind::general;
    config.penalty_diagonal =
        Eigen::Map<const Vector>(entries.data(),
                                 static_cast<Index>(entries.size()));
  }

  if (!raw.sweep.empty()) config.sweep = parse_sweep(raw.sweep);
  if (!raw.grid.empty()) config.grid = parse_grid(raw.grid);

  if (raw.format == "json")
    config.format = RunConfig::Format::json;
  else if (raw.format == "tsv")
    config.format = RunConfig::Format::tsv;
  else
    throw invalid_input("cli: --format must be json or tsv");
  if (config.format == RunConfig::Format::tsv &&
      config.command != RunConfig::Command::trace)
    throw invalid_input("cli: tsv output is only available for trace");

  if (config.command == RunConfig::Command::select) {
    const std::string& rule = raw.rule;
    bool known = rule == "hkb" || rule == "hk" || rule == "cn-threshold" ||
                 rule == "mse-crossing" || rule == "plateau" ||
                 rule.rfind("min-single:", 0) == 0;
    if (!known)
      throw invalid_input(
          "cli: --rule must be hkb, hk, min-single:<index>, cn-threshold, "
          "mse-crossing or plateau");
    config.rule = rule;
    if (!(config.threshold >= 1.0))
      throw invalid_input("cli: --threshold must be >= 1");
  }
  if (config.command == RunConfig::Command::bootstrap) {
    if (!csv_mode)
      throw invalid_input("cli: bootstrap needs raw data (--csv)");
    if (config.replicates < 2)
      throw invalid_input("cli: --replicates must be >= 2");
    if (!(config.level > 0.0 && config.level < 1.0))
      throw invalid_input("cli: --level must be in (0, 1)");
  }
}

struct ResolvedInput {
  ModelMoments moments;
  Plugins plugins;
  RawDataset raw;        // csv mode only
  bool has_raw = false;
};

ResolvedInput resolve_input(const RunConfig& config) {
  ResolvedInput input;
  if (!config.csv_path.empty()) {
    input.raw = load_csv(config.csv_path, config.dependent);
    input.has_raw = true;
    StandardizedModel model = standardize(input.raw);
    input.moments = make_moments(model);
    input.plugins = ols(input.moments).plugins();
  } else {
    std::vector<std::string> names;
    Matrix r = load_correlation_csv(config.correlation_path, names);
    input.moments = moments_from_correlation(
        r, config.beta_ols, config.n, std::move(names), config.dependent);
    input.plugins = {config.sigma2, config.beta_ols};
  }
  return input;
}

PenaltyMatrix build_penalty(const RunConfig& config, Index m) {
  switch (config.penalty_kind) {
    case RunConfig::PenaltyKind::zero:
      return PenaltyMatrix::zero(m);
    case RunConfig::PenaltyKind::uniform:
      return PenaltyMatrix::uniform(m, config.penalty_value);
    case RunConfig::PenaltyKind::single:
      return PenaltyMatrix::single(m, config.penalty_index,
                                   config.penalty_value);
    case RunConfig::PenaltyKind::general:
      if (config.penalty_diagonal.size() != m)
        throw invalid_input("cli: --k-diag has " +
                            std::to_string(config.penalty_diagonal.size()) +
                            " entries for " + std::to_string(m) +
                            " regressors");
      return PenaltyMatrix::general(config.penalty_diagonal);
  }
  throw invalid_input("cli: unknown penalty kind");
}

std::string run_select(const RunConfig& config, const ResolvedInput& input) {
  const SpectralDecomposition& spec = input.moments.spec;
  const Index m = input.moments.m();
  SelectionResult result;
  if (config.rule == "hkb") {
    double k = k_hkb(m, input.plugins.sigma2, input.plugins.beta);
    result.rule = "hkb";
    result.k = PenaltyMatrix::uniform(m, k);
    result.objective = scalar_mse(spec, result.k, input.plugins);
  } else if (config.rule == "hk") {
    Vector xi = spec.gamma.transpose() * input.plugins.beta;
    double k = k_hk(input.plugins.sigma2, xi);
    result.rule = "hk";
    result.k = PenaltyMatrix::uniform(m, k);
    result.objective = scalar_mse(spec, result.k, input.plugins);
  } else if (config.rule.rfind("min-single:", 0) == 0) {
    long l = 0;
    try {
      l = std::stol(config.rule.substr(11));
    } catch (const std::exception&) {
      throw invalid_input("cli: bad rule \"" + config.rule + "\"");
    }
    if (l < 1 || l > static_cast<long>(m))
      throw invalid_input("cli: min-single index out of range");
    result = k_min_single(spec, input.plugins, static_cast<Index>(l - 1),
                          config.grid);
  } else if (config.rule == "cn-threshold") {
    result = cn_threshold_search(spec, config.sweep, config.threshold,
                                 config.grid);
  } else if (config.rule == "mse-crossing") {
    result = mse_crossing_search(spec, input.plugins, config.sweep,
                                 config.grid);
  } else {
    result = min_cn_plateau(spec);
  }
  return to_json(result, input.moments.names);
}

}  // namespace

bool parse_args(int argc, const char* const* argv, RunConfig& config,
                std::ostream& out) {
  CLI::App app{"generalized ridge regression with collinearity diagnostics",
               "grr"};
  app.require_subcommand(1);
  RawOptions raw;

  CLI::App* diagnose_cmd = app.add_subcommand(
      "diagnose", "collinearity diagnostics at a fixed penalty");
  add_input_options(diagnose_cmd, config, raw);
  add_penalty_options(diagnose_cmd, raw);

  CLI::App* estimate_cmd =
      app.add_subcommand("estimate", "OLS and penalized fits");
  add_input_options(estimate_cmd, config, raw);
  add_penalty_options(estimate_cmd, raw);

  CLI::App* select_cmd =
      app.add_subcommand("select", "choose a penalty by rule");
  add_input_options(select_cmd, config, raw);
  select_cmd->add_option(
      "--rule", raw.rule,
      "hkb | hk | min-single:<index> | cn-threshold | mse-crossing | plateau");
  select_cmd->add_option("--threshold", config.threshold,
                         "target condition number for cn-threshold");
  select_cmd->add_option("--sweep,--kind", raw.sweep,
                         "uniform (default) or single:<index>");
  select_cmd->add_option("--grid", raw.grid,
                         "<lower>:<upper>:<step>, default 0:1:1e-5");

  CLI::App* trace_cmd = app.add_subcommand(
      "trace", "diagnostics along a penalty grid");
  add_input_options(trace_cmd, config, raw);
  trace_cmd->add_option("--sweep,--kind", raw.sweep,
                        "uniform (default) or single:<index>");
  trace_cmd->add_option("--grid", raw.grid,
                        "<lower>:<upper>:<step>, default 0:1:1e-5");

  CLI::App* bootstrap_cmd = app.add_subcommand(
      "bootstrap", "case-resampling confidence intervals");
  add_input_options(bootstrap_cmd, config, raw);
  add_penalty_options(bootstrap_cmd, raw);
  bootstrap_cmd->add_option("--replicates", config.replicates,
                            "number of resamples (default 1000)");
  bootstrap_cmd->add_option("--seed", config.seed, "RNG seed (default 0)");
  bootstrap_cmd->add_option("--level", config.level,
                            "confidence level (default 0.95)");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return false;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return false;
  } catch (const CLI::ParseError& e) {
    throw invalid_input(std::string("cli: ") + e.what());
  }

  if (diagnose_cmd->parsed())
    config.command = RunConfig::Command::diagnose;
  else if (estimate_cmd->parsed())
    config.command = RunConfig::Command::estimate;
  else if (select_cmd->parsed())
    config.command = RunConfig::Command::select;
  else if (trace_cmd->parsed())
    config.command = RunConfig::Command::trace;
  else if (bootstrap_cmd->parsed())
    config.command = RunConfig::Command::bootstrap;

  if (select_cmd->parsed() && raw.rule.empty())
    throw invalid_input("cli: select needs --rule");
  finalize(config, raw);
  return true;
}

void run(const RunConfig& config, std::ostream& out) {
  ResolvedInput input = resolve_input(config);
  const Index m = input.moments.m();

  switch (config.command) {
    case RunConfig::Command::diagnose: {
      out << to_json(diagnose(input.moments, build_penalty(config, m)));
      return;
    }
    case RunConfig::Command::estimate: {
      OlsResult base = input.has_raw
                           ? ols(input.moments)
                           : ols_from_plugins(input.moments, input.plugins);
      PenaltyMatrix k = build_penalty(config, m);
      if (k.is_zero())
        out << to_json(base, input.moments.names,
                       input.moments.dependent_name);
      else
        out << to_json(base, gr_estimate(input.moments, k, input.plugins),
                       input.moments.names, input.moments.dependent_name);
      return;
    }
    case RunConfig::Command::select: {
      out << run_select(config, input);
      return;
    }
    case RunConfig::Command::trace: {
      TraceReport report =
          make_trace(input.moments, input.plugins, config.sweep, config.grid);
      out << (config.format == RunConfig::Format::tsv ? to_tsv(report)
                                                      : to_json(report));
      return;
    }
    case RunConfig::Command::bootstrap: {
      out << to_json(bootstrap(input.raw, build_penalty(config, m),
                               config.replicates, config.seed, config.level));
      return;
    }
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  try {
    RunConfig config;
    if (!parse_args(argc, argv, config, out)) return 0;
    std::ostringstream buffer;
    run(config, buffer);
    if (config.output_path.empty()) {
      out << buffer.str();
    } else {
      std::string tmp = config.output_path + ".tmp";
      {
        std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
        if (!file)
          throw invalid_input("cli: cannot write \"" + tmp + "\"");
        file << buffer.str();
      }
      if (std::rename(tmp.c_str(), config.output_path.c_str()) != 0)
        throw invalid_input("cli: cannot move report into \"" +
                            config.output_path + "\"");
    }
    return 0;
  } catch (const invalid_input& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const numerical_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace grr
