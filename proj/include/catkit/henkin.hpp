#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "catkit/eval.hpp"
#include "catkit/schemas.hpp"
#include "catkit/structure.hpp"

namespace catkit::semantics {

struct ClosureFailure {
  std::size_t instance = 0;  // index into the instance set
  Assignment witness;        // parameter values under which closure fails
  RelTable missing;          // the defined relation absent from the family
  bool reverified = false;   // the instance core is false under the witness
};

struct ClosureReport {
  std::vector<bool> verdicts;          // per instance
  std::vector<ClosureFailure> failures;
  std::vector<std::string> preflight;  // interpretations missing from the families

  bool all_pass() const {
    if (!preflight.empty()) return false;
    for (bool v : verdicts)
      if (!v) return false;
    return true;
  }
};

std::string write_report(const ClosureReport& report, const FiniteStructure& base);

// Evaluates comprehension instances over the structure's families. Each
// instance must have the generated shape: a universal parameter prefix,
// one existential relation variable, the tuple prefix, and the defining
// biconditional with the comprehended atom on the left. As a preflight the
// interpretations of the base vocabulary must themselves belong to the
// families.
ClosureReport check_closure(const HenkinStructure& h,
                            const transforms::TheoryInstanceSet& instances,
                            const EvalOptions& opts = {});

}  // namespace catkit::semantics
