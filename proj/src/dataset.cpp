#include "grr/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace grr {
namespace {

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream stream(line);
  while (std::getline(stream, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

double parse_cell(const std::string& cell, Index row,
                  const std::string& column) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = first + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw invalid_input("dataset: cell \"" + cell + "\" in row " +
                        std::to_string(row + 1) + ", column \"" + column +
                        "\" is not a finite number");
  }
  return value;
}

}  // namespace

RawDataset load_csv(const std::string& path, const std::string& dependent) {
  std::ifstream file(path);
  if (!file) throw invalid_input("dataset: cannot open \"" + path + "\"");

  std::string line;
  if (!std::getline(file, line))
    throw invalid_input("dataset: \"" + path + "\" is empty");
  std::vector<std::string> names = split_line(line);
  if (names.size() < 2)
    throw invalid_input("dataset: need at least two columns in \"" + path +
                        "\"");
  std::set<std::string> seen;
  for (const auto& name : names) {
    if (name.empty())
      throw invalid_input("dataset: empty column name in header of \"" + path +
                          "\"");
    if (!seen.insert(name).second)
      throw invalid_input("dataset: duplicate column name \"" + name + "\"");
  }

  std::vector<std::vector<double>> rows;
  while (std::getline(file, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split_line(line);
    if (cells.size() != names.size())
      throw invalid_input("dataset: row " + std::to_string(rows.size() + 1) +
                          " has " + std::to_string(cells.size()) +
                          " cells, expected " + std::to_string(names.size()));
    std::vector<double> row(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j)
      row[j] = parse_cell(cells[j], static_cast<Index>(rows.size()), names[j]);
    rows.push_back(std::move(row));
  }
  if (rows.size() < 3)
    throw invalid_input("dataset: need at least three data rows, got " +
                        std::to_string(rows.size()));

  auto pos = std::find(names.begin(), names.end(), dependent);
  if (pos == names.end())
    throw invalid_input("dataset: dependent column \"" + dependent +
                        "\" not found");
  std::size_t dep = static_cast<std::size_t>(pos - names.begin());

  RawDataset raw;
  raw.columns.resize(static_cast<Index>(rows.size()),
                     static_cast<Index>(names.size()));
  std::vector<std::size_t> order;
  for (std::size_t j = 0; j < names.size(); ++j)
    if (j != dep) order.push_back(j);
  order.push_back(dep);
  for (std::size_t j = 0; j < order.size(); ++j) {
    raw.names.push_back(names[order[j]]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      raw.columns(static_cast<Index>(i), static_cast<Index>(j)) =
          rows[i][order[j]];
  }
  return raw;
}

StandardizedModel standardize(const RawDataset& raw, double variance_floor) {
  const Index n = raw.n();
  const Index p = raw.p();
  if (p < 2) throw invalid_input("dataset: need at least one regressor");
  if (n < 3) throw invalid_input("dataset: need at least three rows");

  Matrix scaled(n, p);
  for (Index j = 0; j < p; ++j) {
    Vector col = raw.columns.col(j);
    double mean = col.mean();
    Vector centered = col.array() - mean;
    double variance = centered.squaredNorm() / static_cast<double>(n);
    if (variance <= variance_floor)
      throw numerical_error("dataset: column \"" + raw.names[j] +
                            "\" is (near-)constant, variance " +
                            std::to_string(variance));
    scaled.col(j) = centered / std::sqrt(static_cast<double>(n) * variance);
  }

  StandardizedModel model;
  model.x = scaled.leftCols(p - 1);
  model.y = scaled.col(p - 1);
  model.names.assign(raw.names.begin(), raw.names.end() - 1);
  model.dependent_name = raw.names.back();
  return model;
}

Matrix correlation_matrix(const StandardizedModel& model) {
  Matrix r = model.x.transpose() * model.x;
  r = ((r + r.transpose()) / 2.0).eval();
  r.diagonal().setOnes();
  return r;
}

double determinant(const Matrix& correlation) {
  if (correlation.rows() != correlation.cols())
    throw invalid_input("dataset: determinant needs a square matrix");
  return correlation.determinant();
}

}  // namespace grr
