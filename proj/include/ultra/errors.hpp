#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ultra {

// Input text could not be parsed (bad JSON, malformed rational, ...).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally well-formed input that violates an interface contract
// (unknown label, shape mismatch, out-of-range argument, ...).
struct ArgError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Request exceeds a documented resource bound.
struct LimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A solver precondition failed on otherwise valid input.  Carries the
// name of the violated law and a concrete witness (point indices).
struct PreconditionError : std::runtime_error {
  PreconditionError(std::string law_, std::vector<long> witness_, const std::string& msg)
      : std::runtime_error(msg), law(std::move(law_)), witness(std::move(witness_)) {}

  std::string law;
  std::vector<long> witness;
};

}  // namespace ultra
