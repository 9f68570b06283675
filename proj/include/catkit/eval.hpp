#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "catkit/ast.hpp"
#include "catkit/structure.hpp"

namespace catkit {

struct EvalOptions {
  // Maximum number of candidate interpretations a single second-order
  // quantifier may range over before evaluation refuses.
  std::uint64_t so_capacity = std::uint64_t{1} << 24;
};

// Values for the free variables of a formula.
struct Assignment {
  std::map<std::string, int> fo;
  std::map<std::string, RelTable> rels;
  std::map<std::string, FunTable> funs;
};

// A formula resolved against a fixed vocabulary: symbol and variable
// lookups are done once, so the same compiled formula can be evaluated
// against many structures. Immutable after construction and safe to share
// across threads.
class CompiledFormula {
 public:
  CompiledFormula(const FormulaPtr& f, const Vocabulary& vocab);
  ~CompiledFormula();
  CompiledFormula(CompiledFormula&&) noexcept;
  CompiledFormula& operator=(CompiledFormula&&) noexcept;

  // Full semantics: second-order quantifiers range over every relation /
  // every total function of the matching arity.
  bool eval(const FiniteStructure& m, const Assignment& a = {},
            const EvalOptions& opts = {}) const;

  // Henkin semantics: second-order quantifiers range over the structure's
  // families only.
  bool eval(const HenkinStructure& h, const Assignment& a = {},
            const EvalOptions& opts = {}) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool eval_full(const FiniteStructure& m, const FormulaPtr& f, const Assignment& a = {},
               const EvalOptions& opts = {});
bool eval_henkin(const HenkinStructure& h, const FormulaPtr& f, const Assignment& a = {},
                 const EvalOptions& opts = {});

// Every relation (resp. total function) of the given arity, in the
// evaluator's deterministic enumeration order.
std::vector<RelTable> all_relations(int n, int arity, std::uint64_t capacity = EvalOptions{}.so_capacity);
std::vector<FunTable> all_functions(int n, int arity, std::uint64_t capacity = EvalOptions{}.so_capacity);

// Wraps a structure into a Henkin structure with power-set families for
// the requested arities.
HenkinStructure full_family(FiniteStructure base, const std::set<int>& rel_arities,
                            const std::set<int>& fun_arities,
                            const EvalOptions& opts = {});

}  // namespace catkit
