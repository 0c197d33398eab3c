#pragma once

#include <Eigen/Dense>

#include "robusthd/errors.hpp"

namespace robusthd {

using Index = Eigen::Index;

// n x d data matrix, one observation per row, one coordinate per column.
// Stored column-major so per-coordinate passes touch contiguous memory.
struct SampleMatrix {
  Eigen::MatrixXd values;

  SampleMatrix() = default;
  explicit SampleMatrix(Eigen::MatrixXd v) : values(std::move(v)) {}

  Index n() const { return values.rows(); }
  Index d() const { return values.cols(); }

  bool all_finite() const { return values.allFinite(); }

  // Entry-level validation; theory-facing operations additionally require
  // n > 3 (and d >= 2 for the rate diagnostics).
  void validate() const {
    if (n() < 1 || d() < 1) throw ArgumentError("SampleMatrix: empty matrix");
    if (!all_finite()) throw DataError("SampleMatrix: non-finite entry");
  }
};

}  // namespace robusthd
