#pragma once

#include <string>
#include <vector>

namespace ultra {

/// One violated law together with the lexicographically smallest witness,
/// given as indices into the offending structure.
struct Violation {
  std::string law;
  std::vector<long> witness;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string law, std::vector<long> witness, std::string detail) {
    violations.push_back({std::move(law), std::move(witness), std::move(detail)});
  }
};

}  // namespace ultra
