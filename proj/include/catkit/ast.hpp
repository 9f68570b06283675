#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace catkit {

struct Term;
struct Formula;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;

// Second-order variable names carry their arity as a trailing decimal tag:
//   relation variables  — uppercase start, trailing digits give the arity
//                         (X2, Y1, Edge2); arity >= 1.
//   function variables  — same, with a final 'f' (F1f, G0f); arity >= 0.
// First-order variables start with a lowercase letter (x, y1, a_p).
// These helpers classify a token and decode its arity tag.
bool is_fo_variable_name(const std::string& name);
bool is_so_relation_variable_name(const std::string& name);
bool is_so_function_variable_name(const std::string& name);
std::optional<int> so_name_arity(const std::string& name);

enum class TermKind {
  Variable,     // first-order variable
  Function,     // vocabulary function symbol applied to args (arity = args.size())
  FunctionVar,  // second-order function variable applied to args
};

struct Term {
  TermKind kind;
  std::string name;
  std::vector<TermPtr> args;

  static TermPtr var(const std::string& name);
  static TermPtr fn(const std::string& symbol, std::vector<TermPtr> args = {});
  static TermPtr fvar(const std::string& name, std::vector<TermPtr> args = {});

  int arity() const { return static_cast<int>(args.size()); }
};

bool equal(const TermPtr& a, const TermPtr& b);

enum class FormulaKind {
  Equal,      // terms[0] = terms[1]
  Rel,        // relation symbol atom: name(terms...)
  RelVar,     // relation variable atom: name(terms...)
  Not,        // kids[0]
  And,        // kids (n >= 2)
  Or,         // kids (n >= 2)
  Implies,    // kids[0] -> kids[1]
  Iff,        // kids[0] <-> kids[1]
  Forall,     // first-order; var = name, body = kids[0]
  Exists,     //
  ForallRel,  // second-order relation variable; arity decoded from name
  ExistsRel,  //
  ForallFun,  // second-order function variable
  ExistsFun,  //
};

struct Formula {
  FormulaKind kind;
  std::string name;  // atom symbol / variable name / bound variable name
  int arity = 0;     // arity of RelVar atoms and of second-order binders
  std::vector<TermPtr> terms;
  std::vector<FormulaPtr> kids;

  static FormulaPtr eq(TermPtr lhs, TermPtr rhs);
  static FormulaPtr rel(const std::string& symbol, std::vector<TermPtr> args);
  static FormulaPtr relvar(const std::string& name, std::vector<TermPtr> args);
  static FormulaPtr negate(FormulaPtr f);
  static FormulaPtr conj(std::vector<FormulaPtr> kids);
  static FormulaPtr disj(std::vector<FormulaPtr> kids);
  static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
  static FormulaPtr iff(FormulaPtr a, FormulaPtr b);
  static FormulaPtr forall(const std::string& var, FormulaPtr body);
  static FormulaPtr exists(const std::string& var, FormulaPtr body);
  static FormulaPtr forall_rel(const std::string& var, FormulaPtr body);
  static FormulaPtr exists_rel(const std::string& var, FormulaPtr body);
  static FormulaPtr forall_fun(const std::string& var, FormulaPtr body);
  static FormulaPtr exists_fun(const std::string& var, FormulaPtr body);

  // Conjunction that degrades gracefully: empty -> "true" is not
  // representable, so the caller must not pass an empty list; a single
  // conjunct is returned as-is.
  static FormulaPtr conj_of(std::vector<FormulaPtr> kids);

  bool is_quantifier() const {
    return kind >= FormulaKind::Forall && kind <= FormulaKind::ExistsFun;
  }
  bool is_second_order_binder() const {
    return kind >= FormulaKind::ForallRel && kind <= FormulaKind::ExistsFun;
  }
};

bool equal(const FormulaPtr& a, const FormulaPtr& b);

}  // namespace catkit
