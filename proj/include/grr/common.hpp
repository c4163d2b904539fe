#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace grr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Bad user input: malformed files, out-of-range arguments, shape mismatches.
// Mapped to CLI exit status 1.
class invalid_input : public std::runtime_error {
 public:
  explicit invalid_input(const std::string& msg) : std::runtime_error(msg) {}
};

// Input is well-formed but numerically unusable: rank-deficient correlation
// matrix, degenerate column, non-positive variance plug-in. CLI exit status 2.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace grr
