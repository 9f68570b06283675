#pragma once

#include <string>

#include "catkit/ast.hpp"

namespace catkit {

// Deterministic, fully parenthesized rendering. parse_formula(render_formula(f))
// is structurally identical to f for every well-formed f.
std::string render_term(const TermPtr& t);
std::string render_formula(const FormulaPtr& f);

}  // namespace catkit
