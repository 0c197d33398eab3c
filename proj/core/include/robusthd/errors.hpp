#pragma once

#include <stdexcept>
#include <string>

namespace robusthd {

// Bad argument values (domain violations, malformed parameters).
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

// An operation was invoked in a state it does not support, e.g. an
// estimator called with an infeasible winsorization schedule.
class PreconditionError : public std::logic_error {
 public:
  explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

// A scale estimate is zero (or negative); quotients involving it are
// left undefined rather than floored.
class DegenerateScaleError : public std::runtime_error {
 public:
  explicit DegenerateScaleError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure, e.g. a covariance factorization that does not
// succeed even after a jitter retry.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input data (non-numeric CSV fields, NaN entries, ...).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace robusthd
