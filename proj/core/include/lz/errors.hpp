#pragma once

#include <stdexcept>
#include <string>

namespace lz {

// A closed-form formula was evaluated outside the coupling/threshold regime
// where its defining root or logarithm exists.
class RegimeError : public std::domain_error {
 public:
  explicit RegimeError(const std::string& msg) : std::domain_error(msg) {}
};

// An adaptive integration could not proceed (step-size underflow, step budget
// exhausted, or a guard band hit before the requested horizon).  `where` is
// the value of the independent variable at the failure point.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& msg, double where_)
      : std::runtime_error(msg), where(where_) {}
  double where;
};

// A numeric measurement needed more trace than it was given: the oscillation
// amplitude never fell below the requested floor within the trace horizon.
class HorizonError : public std::runtime_error {
 public:
  explicit HorizonError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lz
