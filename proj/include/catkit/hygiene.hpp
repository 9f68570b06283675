#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "catkit/ast.hpp"

namespace catkit {

struct SOVarRef {
  std::string name;
  bool is_function = false;
  int arity = 0;
  auto operator<=>(const SOVarRef&) const = default;
};

struct FreeProfile {
  std::set<std::string> symbols;  // vocabulary symbols used anywhere in the formula
  std::set<std::string> fo_vars;  // free first-order variables
  std::set<SOVarRef> so_vars;     // free second-order variables
};

FreeProfile free_symbols(const FormulaPtr& f);

bool is_sentence(const FormulaPtr& f);
bool uses_symbol(const FormulaPtr& f, const std::string& symbol);

// Every identifier occurring in the formula: symbols, bound and free
// variables. Useful as a freshness base.
std::set<std::string> all_names(const FormulaPtr& f);

// Fresh-name generators; the returned name is inserted into `used`.
std::string fresh_fo_name(const std::string& base, std::set<std::string>& used);
std::string fresh_so_name(const std::string& base, std::set<std::string>& used);

// Alpha-renames so that no bound variable of the result is in `avoid`.
// Distinct binders that need renaming receive distinct fresh names.
FormulaPtr rename_bound(const FormulaPtr& f, const std::set<std::string>& avoid);

// Capture-avoiding substitution of first-order variables by terms.
FormulaPtr substitute_fo(const FormulaPtr& f, const std::map<std::string, TermPtr>& subst);
TermPtr substitute_fo(const TermPtr& t, const std::map<std::string, TermPtr>& subst);

// Replaces vocabulary symbols by vocabulary symbols (arity-preserving use
// is the caller's responsibility at the vocabulary level).
FormulaPtr rename_symbols(const FormulaPtr& f, const std::map<std::string, std::string>& map);

// Replaces vocabulary symbols by second-order variables: relation symbols
// by relation variables, function symbols by function variables. A nullary
// function symbol may instead be replaced by a first-order variable.
struct SymbolToVarMap {
  std::map<std::string, std::string> relations;      // symbol -> relation variable
  std::map<std::string, std::string> functions;      // symbol -> function variable
  std::map<std::string, std::string> constants_fo;   // nullary symbol -> first-order variable
};
FormulaPtr symbols_to_variables(const FormulaPtr& f, const SymbolToVarMap& map);

// A formula with one designated relation-variable hole. Instantiation
// replaces every hole atom H(t1, ..., tm) by phi[slots := t1, ..., tm],
// capture-avoidingly.
class SchemaTemplate {
 public:
  SchemaTemplate(FormulaPtr body, std::string hole, std::vector<std::string> slots);

  const FormulaPtr& body() const { return body_; }
  const std::string& hole() const { return hole_; }
  int hole_arity() const { return static_cast<int>(slots_.size()); }

  FormulaPtr instantiate(const FormulaPtr& phi) const;

 private:
  FormulaPtr body_;
  std::string hole_;
  std::vector<std::string> slots_;
};

}  // namespace catkit
