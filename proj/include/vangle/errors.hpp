#pragma once

#include <stdexcept>
#include <string>

namespace vangle {

/// Argument outside the mathematical domain of a function or metric.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller misuse: missing parameters, dimension mismatch, malformed input.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation of a Moebius map at its pole (the image is the point at infinity).
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Coincident points where a well-defined configuration is required.
class DegenerateInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Metric requested on a domain it is not implemented for.
class UnsupportedDomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested value cannot be reached (metric radius, sampling radius).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// An iterative solver hit its iteration cap. Carries the best value found.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_value)
      : std::runtime_error(what), best_value_(best_value) {}

  double best_value() const noexcept { return best_value_; }

 private:
  double best_value_;
};

}  // namespace vangle
