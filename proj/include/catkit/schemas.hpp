#pragma once

#include <optional>
#include <string>
#include <vector>

#include "catkit/ast.hpp"
#include "catkit/vocabulary.hpp"

namespace catkit::transforms {

// An ordered, named set of sentences produced by a schema generator.
struct TheoryInstanceSet {
  std::string name;
  int depth = 0;  // generation depth; 0 for user-supplied pools
  std::vector<FormulaPtr> sentences;
};

// `theory <name>` / `param depth <d>` / one `axiom <formula>` line per
// sentence, in generation order.
std::string write_theory(const TheoryInstanceSet& theory);
TheoryInstanceSet parse_theory(const std::string& text, const Vocabulary& vocab);

// Comprehension instances: for each pool formula phi, the universal closure
// of  exists X forall y1..ym ( X(y1,...,ym) <-> phi ).  The tuple variables
// are y1..ym; every other free variable of phi is closed over as a
// parameter. The comprehended variable is X<m>, freshened when phi already
// uses that name; passing `bound_name` pins it instead, and it is an error
// for a pinned name to occur free in phi.
TheoryInstanceSet comprehension_instances(const Vocabulary& vocab,
                                          const std::vector<FormulaPtr>& pool, int arity,
                                          std::optional<std::string> bound_name = std::nullopt);

// One induction instance: the designated variable steps from zero via
// successor. Zero and one are not vocabulary constants; they are expanded
// as the identity elements of the two operations through existential
// definitions at each use site.
FormulaPtr induction_instance(const FormulaPtr& phi, const std::string& induction_var,
                              const std::string& add_sym, const std::string& mul_sym);

// The finitely axiomatized arithmetic core over {add_sym, mul_sym}.
std::vector<FormulaPtr> peano_base(const std::string& add_sym, const std::string& mul_sym);

// Canonical induction pool over the doubled vocabulary: all equalities
// between distinct terms over the induction variable, built from the four
// operations up to the given nesting depth.
std::vector<FormulaPtr> induction_pool(int depth);

extern const char* const kAddSym;    // "add"
extern const char* const kMulSym;    // "mul"
extern const char* const kAddPSym;   // "add_p"
extern const char* const kMulPSym;   // "mul_p"

Vocabulary doubled_arith_vocabulary();

// Both arithmetic cores plus induction instances for both operation pairs;
// pool formulas may mention all four operations.
TheoryInstanceSet peano_doubled(const std::vector<FormulaPtr>& pool,
                                const std::vector<FormulaPtr>& pool_primed, int depth = 0);

// Set-theory base axioms over one binary membership symbol.
std::vector<FormulaPtr> zfc_base(const std::string& eps);

// The base axioms for `eps` plus Separation instances (element variable
// z1) and Replacement instances (source x1, target y1) drawn from pools
// over {eps, eps_other}.
TheoryInstanceSet zfc_extended(const std::string& eps, const std::string& eps_other,
                               const std::vector<FormulaPtr>& separation_pool,
                               const std::vector<FormulaPtr>& replacement_pool);

}  // namespace catkit::transforms
