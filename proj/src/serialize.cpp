#include "grr/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>

namespace grr {
namespace {

using nlohmann::json;

// Numbers are clipped to 10 significant digits before insertion so that the
// emitted literal parses back to exactly the stored double (canonical form).
json canon(double v) {
  if (std::isnan(v))
    throw numerical_error("serialize: NaN has no canonical representation");
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return json::parse(buf);
}

json canon(const Vector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(canon(v(i)));
  return arr;
}

json canon(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(canon(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

std::string render(const json& j) { return j.dump(2) + "\n"; }

json estimate_block(const EstimateReport& rep) {
  json out;
  out["coefficients"] = canon(rep.coefficients);
  out["std_errors"] = canon(rep.std_errors);
  out["penalty"] = canon(rep.penalty);
  out["mse"] = canon(rep.mse);
  out["gof"] = canon(rep.gof);
  out["norm"] = canon(rep.norm);
  out["condition_number"] = canon(rep.condition_number);
  return out;
}

json ols_block(const OlsResult& result) {
  json out = estimate_block(result.report);
  out.erase("penalty");
  out["sigma2"] = canon(result.sigma2_hat);
  out["r_squared"] = canon(result.r_squared);
  out["p_values"] = canon(result.p_values);
  return out;
}

json model_block(const std::vector<std::string>& names,
                 const std::string& dependent) {
  json out;
  out["names"] = names;
  out["dependent"] = dependent;
  return out;
}

const char* format_number(char (&buf)[40], double v) {
  if (std::isnan(v))
    throw numerical_error("serialize: NaN has no canonical representation");
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::string to_json(const DiagnosticsReport& report) {
  json out;
  out["eigenvalues"] = canon(report.eigenvalues);
  out["condition_number"] = canon(report.condition_number);
  out["det_correlation"] = canon(report.det_correlation);
  out["vifs"] = canon(report.vifs);
  out["cvs"] = canon(report.cvs);
  out["augmented_correlation"] = canon(report.augmented_correlation);
  out["det_augmented"] = canon(report.det_augmented);
  out["penalty"] = canon(report.penalty);
  out["convention_sensitive"] = report.convention_sensitive;
  out["names"] = report.names;
  return render(out);
}

std::string to_json(const OlsResult& result,
                    const std::vector<std::string>& names,
                    const std::string& dependent) {
  json out;
  out["model"] = model_block(names, dependent);
  out["ols"] = ols_block(result);
  return render(out);
}

std::string to_json(const OlsResult& base, const EstimateReport& penalized,
                    const std::vector<std::string>& names,
                    const std::string& dependent) {
  json out;
  out["model"] = model_block(names, dependent);
  out["ols"] = ols_block(base);
  out["penalized"] = estimate_block(penalized);
  return render(out);
}

std::string to_json(const SelectionResult& result,
                    const std::vector<std::string>& names) {
  json out;
  out["rule"] = result.rule;
  out["found"] = result.found;
  out["penalty"] = canon(result.k.values());
  switch (result.k.kind()) {
    case PenaltyMatrix::Kind::uniform:
      out["penalty_kind"] = "uniform";
      break;
    case PenaltyMatrix::Kind::single:
      out["penalty_kind"] = "single";
      out["penalty_index"] = result.k.single_index() + 1;
      break;
    case PenaltyMatrix::Kind::general:
      out["penalty_kind"] = "general";
      break;
  }
  out["objective"] = canon(result.objective);
  if (result.plateau) {
    json p;
    p["lower"] = canon(result.plateau->lower);
    p["upper"] = canon(result.plateau->upper);
    p["cn"] = canon(result.plateau->cn);
    p["index"] = result.plateau->index + 1;
    out["plateau"] = p;
  }
  out["names"] = names;
  return render(out);
}

std::string to_json(const BootstrapReport& report) {
  json out;
  out["model"] = model_block(report.names, report.dependent_name);
  out["level"] = canon(report.level);
  out["replicates"] = report.replicates;
  out["seed"] = report.seed;
  out["point_estimates"] = canon(report.point_estimates);
  out["point_gof"] = canon(report.point_gof);
  json intervals = json::array();
  for (const auto& [lo, hi] : report.intervals)
    intervals.push_back(json::array({canon(lo), canon(hi)}));
  out["intervals"] = intervals;
  out["gof_interval"] =
      json::array({canon(report.gof_interval.first),
                   canon(report.gof_interval.second)});
  return render(out);
}

std::string to_json(const TraceReport& report) {
  json out;
  json sweep;
  sweep["kind"] =
      report.sweep.kind == PenaltySweep::Kind::uniform ? "uniform" : "single";
  if (report.sweep.kind == PenaltySweep::Kind::single)
    sweep["index"] = report.sweep.index + 1;
  out["sweep"] = sweep;
  out["names"] = report.names;
  json rows = json::array();
  for (const TraceRow& r : report.rows) {
    json row;
    row["k"] = canon(r.k);
    row["cn"] = canon(r.cn);
    row["vifs"] = canon(r.vifs);
    row["cvs"] = canon(r.cvs);
    row["correlations"] = canon(r.correlations);
    row["det"] = canon(r.det);
    row["mse"] = canon(r.mse);
    row["gof"] = canon(r.gof);
    rows.push_back(row);
  }
  out["rows"] = rows;
  return render(out);
}

std::string to_tsv(const TraceReport& report) {
  std::string out = "k\tcn";
  for (const auto& name : report.names) out += "\tvif:" + name;
  for (const auto& name : report.names) out += "\tcv:" + name;
  for (std::size_t a = 0; a < report.names.size(); ++a)
    for (std::size_t b = a + 1; b < report.names.size(); ++b)
      out += "\tcorr:" + report.names[a] + "|" + report.names[b];
  out += "\tdet\tmse\tgof\n";
  char buf[40];
  auto append = [&](double v) {
    out += '\t';
    out += format_number(buf, v);
  };
  for (const TraceRow& r : report.rows) {
    out += format_number(buf, r.k);
    append(r.cn);
    for (Index j = 0; j < r.vifs.size(); ++j) append(r.vifs(j));
    for (Index j = 0; j < r.cvs.size(); ++j) append(r.cvs(j));
    for (Index j = 0; j < r.correlations.size(); ++j)
      append(r.correlations(j));
    append(r.det);
    append(r.mse);
    append(r.gof);
    out += '\n';
  }
  return out;
}

}  // namespace grr
