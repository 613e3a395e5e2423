#pragma once

#include <stdexcept>

namespace brownq {

// Bad parameter value (non-positive rate, mismatched grids, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operator called outside its domain, e.g. L_f(g) with f(0) < g(0).
class PreconditionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed external data (arrival CSV files).
class InputDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Statistic undefined for the given sample (zero variance, ...).
class DegenerateInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace brownq
