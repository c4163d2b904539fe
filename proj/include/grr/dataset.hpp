#pragma once

#include <string>
#include <vector>

#include "grr/common.hpp"

namespace grr {

// A numeric table as read from disk, before any centering or scaling.
struct RawDataset {
  Matrix columns;                       // n x (p regressors + 1 dependent)
  std::vector<std::string> names;       // column names, dependent last
  Index n() const { return columns.rows(); }
  Index p() const { return columns.cols(); }
};

// Unit-length standardized design: each column of x is centered and divided
// by sqrt(n * population variance), so every column has sum of squares 1 and
// x^t x is the correlation matrix of the regressors. y gets the same
// treatment, hence y^t y == 1.
struct StandardizedModel {
  Matrix x;                             // n x m
  Vector y;                             // n
  std::vector<std::string> names;       // regressor names (size m)
  std::string dependent_name;
  Index n() const { return x.rows(); }
  Index m() const { return x.cols(); }
};

// Reads a CSV with a header row; every non-header cell must parse as a
// number. `dependent` names the response column (moved last internally).
RawDataset load_csv(const std::string& path, const std::string& dependent);

// Splits off the dependent column, centers everything and scales each column
// to unit sum of squares. Columns with variance below `variance_floor` are
// rejected as degenerate.
StandardizedModel standardize(const RawDataset& raw,
                              double variance_floor = 1e-14);

// x^t x of the standardized design == Pearson correlation of the regressors.
Matrix correlation_matrix(const StandardizedModel& model);

// Determinant of a correlation matrix (near 0 = severe collinearity).
double determinant(const Matrix& correlation);

}  // namespace grr
