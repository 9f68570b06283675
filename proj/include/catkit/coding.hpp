#pragma once

#include "catkit/arith.hpp"
#include "catkit/ast.hpp"

namespace catkit::transforms {

// The bounded formula psi(x, u, v): x codes, through residue extraction
// with + and *, the chain f with f(0) = 0', f(y+1) = f(y) +' 1' on the
// initial segment up to u, with f(u) = v. All quantifiers carry bounds in
// terms of x and u.
arith::BoundedFormula psi_bounded();

struct GraphFormulas {
  FormulaPtr psi;  // psi(x, u, v), bounds erased to explicit guards
  FormulaPtr phi;  // exists x psi(x, u, v)
};

GraphFormulas build_graph_formula();

// First-order sentence over the doubled arithmetic vocabulary: the graph
// of phi is a total, injective, surjective function commuting with both
// operation pairs.
FormulaPtr isom_statement();

}  // namespace catkit::transforms
