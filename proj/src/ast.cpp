#include "catkit/ast.hpp"

#include <cctype>

#include "catkit/errors.hpp"

namespace catkit {

namespace {

bool is_ident_char(char c) {
  return std::islower(static_cast<unsigned char>(c)) || std::isupper(static_cast<unsigned char>(c)) ||
         std::isdigit(static_cast<unsigned char>(c)) || c == '_';
}

bool all_ident_chars(const std::string& s) {
  for (char c : s)
    if (!is_ident_char(c)) return false;
  return !s.empty();
}

// Splits a second-order name into (stem, arity) when it matches the
// convention, stripping a final 'f' first if `function_form`.
std::optional<int> decode_arity_tag(const std::string& name, bool function_form) {
  if (name.empty() || !std::isupper(static_cast<unsigned char>(name[0]))) return std::nullopt;
  std::string body = name;
  if (function_form) {
    if (body.size() < 2 || body.back() != 'f') return std::nullopt;
    body.pop_back();
  }
  std::size_t end = body.size();
  std::size_t begin = end;
  while (begin > 0 && std::isdigit(static_cast<unsigned char>(body[begin - 1]))) --begin;
  if (begin == end || begin == 0) return std::nullopt;  // no digits, or digits only
  if (end - begin > 6) return std::nullopt;             // absurd arity
  return std::stoi(body.substr(begin));
}

}  // namespace

bool is_fo_variable_name(const std::string& name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) return false;
  return all_ident_chars(name);
}

bool is_so_relation_variable_name(const std::string& name) {
  if (!all_ident_chars(name)) return false;
  auto k = decode_arity_tag(name, /*function_form=*/false);
  // A trailing 'f' right after digits is reserved for function variables.
  if (decode_arity_tag(name, /*function_form=*/true)) return false;
  return k.has_value() && *k >= 1;
}

bool is_so_function_variable_name(const std::string& name) {
  if (!all_ident_chars(name)) return false;
  return decode_arity_tag(name, /*function_form=*/true).has_value();
}

std::optional<int> so_name_arity(const std::string& name) {
  if (auto k = decode_arity_tag(name, /*function_form=*/true)) return k;
  return decode_arity_tag(name, /*function_form=*/false);
}

TermPtr Term::var(const std::string& name) {
  if (!is_fo_variable_name(name))
    throw SemanticError("invalid first-order variable name '" + name + "'");
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Variable;
  t->name = name;
  return t;
}

TermPtr Term::fn(const std::string& symbol, std::vector<TermPtr> args) {
  if (!all_ident_chars(symbol)) throw SemanticError("invalid function symbol name '" + symbol + "'");
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Function;
  t->name = symbol;
  t->args = std::move(args);
  return t;
}

TermPtr Term::fvar(const std::string& name, std::vector<TermPtr> args) {
  if (!is_so_function_variable_name(name))
    throw SemanticError("invalid function variable name '" + name + "'");
  if (*so_name_arity(name) != static_cast<int>(args.size()))
    throw SemanticError("function variable '" + name + "' applied to " +
                        std::to_string(args.size()) + " arguments");
  auto t = std::make_shared<Term>();
  t->kind = TermKind::FunctionVar;
  t->name = name;
  t->args = std::move(args);
  return t;
}

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name || a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

namespace {

std::shared_ptr<Formula> blank(FormulaKind kind) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  return f;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw SemanticError(what);
}

}  // namespace

FormulaPtr Formula::eq(TermPtr lhs, TermPtr rhs) {
  require(lhs && rhs, "equality needs two terms");
  auto f = blank(FormulaKind::Equal);
  f->terms = {std::move(lhs), std::move(rhs)};
  return f;
}

FormulaPtr Formula::rel(const std::string& symbol, std::vector<TermPtr> args) {
  require(!args.empty(), "relation atom '" + symbol + "' needs at least one argument");
  auto f = blank(FormulaKind::Rel);
  f->name = symbol;
  f->arity = static_cast<int>(args.size());
  f->terms = std::move(args);
  return f;
}

FormulaPtr Formula::relvar(const std::string& name, std::vector<TermPtr> args) {
  require(is_so_relation_variable_name(name), "invalid relation variable name '" + name + "'");
  require(*so_name_arity(name) == static_cast<int>(args.size()),
          "relation variable '" + name + "' applied to " + std::to_string(args.size()) +
              " arguments");
  auto f = blank(FormulaKind::RelVar);
  f->name = name;
  f->arity = static_cast<int>(args.size());
  f->terms = std::move(args);
  return f;
}

FormulaPtr Formula::negate(FormulaPtr g) {
  require(static_cast<bool>(g), "negation of null formula");
  auto f = blank(FormulaKind::Not);
  f->kids = {std::move(g)};
  return f;
}

FormulaPtr Formula::conj(std::vector<FormulaPtr> kids) {
  require(kids.size() >= 2, "conjunction needs at least two conjuncts");
  auto f = blank(FormulaKind::And);
  f->kids = std::move(kids);
  return f;
}

FormulaPtr Formula::disj(std::vector<FormulaPtr> kids) {
  require(kids.size() >= 2, "disjunction needs at least two disjuncts");
  auto f = blank(FormulaKind::Or);
  f->kids = std::move(kids);
  return f;
}

FormulaPtr Formula::conj_of(std::vector<FormulaPtr> kids) {
  require(!kids.empty(), "empty conjunction");
  if (kids.size() == 1) return kids[0];
  return conj(std::move(kids));
}

FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) {
  require(a && b, "implication needs two formulas");
  auto f = blank(FormulaKind::Implies);
  f->kids = {std::move(a), std::move(b)};
  return f;
}

FormulaPtr Formula::iff(FormulaPtr a, FormulaPtr b) {
  require(a && b, "biconditional needs two formulas");
  auto f = blank(FormulaKind::Iff);
  f->kids = {std::move(a), std::move(b)};
  return f;
}

namespace {

FormulaPtr quantifier(FormulaKind kind, const std::string& var, FormulaPtr body) {
  require(static_cast<bool>(body), "quantifier over null body");
  auto f = blank(kind);
  f->name = var;
  f->kids = {std::move(body)};
  switch (kind) {
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      require(is_fo_variable_name(var), "invalid first-order variable '" + var + "'");
      break;
    case FormulaKind::ForallRel:
    case FormulaKind::ExistsRel:
      require(is_so_relation_variable_name(var), "invalid relation variable '" + var + "'");
      f->arity = *so_name_arity(var);
      break;
    case FormulaKind::ForallFun:
    case FormulaKind::ExistsFun:
      require(is_so_function_variable_name(var), "invalid function variable '" + var + "'");
      f->arity = *so_name_arity(var);
      break;
    default:
      throw InternalError("not a quantifier kind");
  }
  return f;
}

}  // namespace

FormulaPtr Formula::forall(const std::string& var, FormulaPtr body) {
  return quantifier(FormulaKind::Forall, var, std::move(body));
}
FormulaPtr Formula::exists(const std::string& var, FormulaPtr body) {
  return quantifier(FormulaKind::Exists, var, std::move(body));
}
FormulaPtr Formula::forall_rel(const std::string& var, FormulaPtr body) {
  return quantifier(FormulaKind::ForallRel, var, std::move(body));
}
FormulaPtr Formula::exists_rel(const std::string& var, FormulaPtr body) {
  return quantifier(FormulaKind::ExistsRel, var, std::move(body));
}
FormulaPtr Formula::forall_fun(const std::string& var, FormulaPtr body) {
  return quantifier(FormulaKind::ForallFun, var, std::move(body));
}
FormulaPtr Formula::exists_fun(const std::string& var, FormulaPtr body) {
  return quantifier(FormulaKind::ExistsFun, var, std::move(body));
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name || a->arity != b->arity) return false;
  if (a->terms.size() != b->terms.size() || a->kids.size() != b->kids.size()) return false;
  for (std::size_t i = 0; i < a->terms.size(); ++i)
    if (!equal(a->terms[i], b->terms[i])) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!equal(a->kids[i], b->kids[i])) return false;
  return true;
}

}  // namespace catkit
