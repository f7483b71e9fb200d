#pragma once

#include <stdexcept>
#include <string>

namespace rsp {

/// Bad input: malformed qubit lists, unnormalized targets, out-of-range
/// noise parameters, attack parameters violating their constraints.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A tensor product would exceed the configured register size.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A forced measurement branch has (numerically) zero probability.
class ImpossibleBranchError : public std::runtime_error {
 public:
  ImpossibleBranchError(const std::string& what, double probability)
      : std::runtime_error(what), probability_(probability) {}
  double probability() const noexcept { return probability_; }

 private:
  double probability_;
};

/// Outcome key outside the sixteen rows the recovery table supports.
class UnknownOutcomeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A valid request that the chosen model cannot serve, e.g. the truncated
/// noise model on a subset of the register.
class UnsupportedConfigurationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rsp
