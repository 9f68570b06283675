#pragma once

#include <string>
#include <vector>

#include "catkit/ast.hpp"
#include "catkit/schemas.hpp"
#include "catkit/vocabulary.hpp"

namespace catkit::arith {

// First-order prover exchange file: one fof(...) entry per axiom, in
// theory order, then the conjecture. Second-order constructs are rejected.
std::string write_tptp(const transforms::TheoryInstanceSet& axioms, const FormulaPtr& conjecture);

struct TptpEntry {
  std::string name;
  std::string role;  // axiom | conjecture
  FormulaPtr formula;
};

// Reads back the subset of fof syntax the writer emits.
std::vector<TptpEntry> read_tptp(const std::string& text, const Vocabulary& vocab);

struct ProverResult {
  std::string problem;
  std::string status;  // an SZS status word
};

// `<problem-name> <szs-status-word>` lines.
std::vector<ProverResult> parse_prover_results(const std::string& text);

}  // namespace catkit::arith
