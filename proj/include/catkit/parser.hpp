#pragma once

#include <string>

#include "catkit/ast.hpp"
#include "catkit/vocabulary.hpp"

namespace catkit {

// Parses a formula in the toolkit grammar:
//
//   quantifiers   !x  ?x  (first order)   !X2  ?X2  (relation variable,
//                 arity from the trailing digit tag)   !F1f  ?F1f
//                 (function variable)
//   connectives   ~  &  |  ->  <->     precedence  ~ > & > | > -> > <->,
//                 -> and <-> associate to the right; & and | parse as
//                 n-ary nodes; a quantifier scopes over the smallest
//                 following formula
//   atoms         R(t1, ..., tk)   t1 = t2
//   terms         variables [a-z][a-z0-9_]*, applications f(t1, ..., tk),
//                 constants written bare or as c()
//   comments      # to end of line
//
// Free variables are permitted unless `require_sentence` is set.
FormulaPtr parse_formula(const std::string& text, const Vocabulary& vocab,
                         bool require_sentence = false);

// `rel <name> <arity>` / `fun <name> <arity>`, one per line.
Vocabulary parse_vocabulary(const std::string& text);

// A formula file: optional vocabulary declaration lines (same syntax as a
// vocabulary file) followed by the formula text.
struct FormulaFile {
  Vocabulary vocab;
  FormulaPtr formula;  // null when the file declares a vocabulary only
};
FormulaFile parse_formula_file(const std::string& text, bool require_sentence = false);

}  // namespace catkit
