#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catkit/ast.hpp"
#include "catkit/eval.hpp"
#include "catkit/isomorphism.hpp"
#include "catkit/transforms.hpp"

namespace catkit::categoricity {

enum class Verdict { Categorical, NonCategorical, Vacuous };

std::string verdict_name(Verdict v);

struct IsoClass {
  FiniteStructure rep;            // lexicographically least member
  std::uint64_t members = 0;      // labeled models in this class at this size
  std::optional<IsomorphismCertificate> sample;  // first non-representative member -> rep
};

struct SizeCensus {
  int size = 0;
  std::uint64_t model_count = 0;  // labeled models of this size
  std::vector<IsoClass> classes;
};

struct CategoricityReport {
  Verdict verdict = Verdict::Vacuous;
  int kappa = 0;
  std::vector<SizeCensus> census;  // one entry per size 1..kappa
  // Filled for non-categorical verdicts: two non-isomorphic models.
  std::optional<std::pair<FiniteStructure, FiniteStructure>> witness;
  bool witness_same_size = false;
  std::uint64_t structures_enumerated = 0;
  std::uint64_t models_found = 0;
};

std::string write_report(const CategoricityReport& report);

// Enumerates every model of f of size <= kappa, reduces them to
// isomorphism classes, and reports. Following the strict reading of
// categoricity, models of two different sizes already defeat it.
CategoricityReport categorical_up_to(const FormulaPtr& f, const Vocabulary& vocab, int kappa,
                                     const EvalOptions& opts = {}, int jobs = 1);

// Truth value of the categoricity sentence of f on the bare domain of size
// kappa (empty vocabulary).
bool cat_truth(const FormulaPtr& f, const Vocabulary& vocab, int kappa,
               const EvalOptions& opts = {},
               transforms::IsoMode mode = transforms::IsoMode::Guarded);

struct LemmaEqReport {
  CategoricityReport bounded;
  bool bounded_categorical = false;  // categorical or vacuous up to kappa
  bool cat_truth_value = false;
  bool cat_plus_valid = false;
  bool agree = false;
  std::optional<FiniteStructure> counterexample;  // cat_plus failure, if any
};

std::string write_report(const LemmaEqReport& report, int kappa);

// Computes bounded categoricity, the truth of the categoricity sentence at
// kappa, and the validity of its open form over all structures of size
// kappa in the extended vocabulary; the three verdicts must agree.
LemmaEqReport lemma_eq_check(const FormulaPtr& f, const Vocabulary& vocab, int kappa,
                             const EvalOptions& opts = {}, int jobs = 1);

struct PairIsoCount {
  int first_size = 0;
  int second_size = 0;
  std::uint64_t isomorphisms = 0;
};

struct UniqueIsoReport {
  CategoricityReport base;
  std::vector<PairIsoCount> pairs;  // over class representatives, self-pairs included
  bool all_unique = false;
};

std::string write_report(const UniqueIsoReport& report);

// Counts isomorphisms between the models found by categorical_up_to;
// distinguishes rigid sentences (exactly one isomorphism per pair) from
// those with many.
UniqueIsoReport unique_isomorphism(const FormulaPtr& f, const Vocabulary& vocab, int kappa,
                                   const EvalOptions& opts = {});

}  // namespace catkit::categoricity
