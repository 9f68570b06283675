#include "catkit/hygiene.hpp"

#include <functional>

#include "catkit/errors.hpp"

namespace catkit {

namespace {

void walk_term(const TermPtr& t, const std::set<std::string>& bound, FreeProfile& out) {
  switch (t->kind) {
    case TermKind::Variable:
      if (!bound.count(t->name)) out.fo_vars.insert(t->name);
      return;
    case TermKind::Function:
      out.symbols.insert(t->name);
      break;
    case TermKind::FunctionVar:
      if (!bound.count(t->name)) out.so_vars.insert({t->name, true, t->arity()});
      break;
  }
  for (const auto& a : t->args) walk_term(a, bound, out);
}

void walk(const FormulaPtr& f, std::set<std::string>& bound, FreeProfile& out) {
  switch (f->kind) {
    case FormulaKind::Equal:
      walk_term(f->terms[0], bound, out);
      walk_term(f->terms[1], bound, out);
      return;
    case FormulaKind::Rel:
      out.symbols.insert(f->name);
      for (const auto& t : f->terms) walk_term(t, bound, out);
      return;
    case FormulaKind::RelVar:
      if (!bound.count(f->name)) out.so_vars.insert({f->name, false, f->arity});
      for (const auto& t : f->terms) walk_term(t, bound, out);
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
    case FormulaKind::ForallRel:
    case FormulaKind::ExistsRel:
    case FormulaKind::ForallFun:
    case FormulaKind::ExistsFun: {
      bool inserted = bound.insert(f->name).second;
      walk(f->kids[0], bound, out);
      if (inserted) bound.erase(f->name);
      return;
    }
    default:
      for (const auto& k : f->kids) walk(k, bound, out);
      return;
  }
}

}  // namespace

FreeProfile free_symbols(const FormulaPtr& f) {
  FreeProfile out;
  std::set<std::string> bound;
  walk(f, bound, out);
  return out;
}

bool is_sentence(const FormulaPtr& f) {
  FreeProfile p = free_symbols(f);
  return p.fo_vars.empty() && p.so_vars.empty();
}

bool uses_symbol(const FormulaPtr& f, const std::string& symbol) {
  return free_symbols(f).symbols.count(symbol) > 0;
}

namespace {

void collect_term_names(const TermPtr& t, std::set<std::string>& out) {
  out.insert(t->name);
  for (const auto& a : t->args) collect_term_names(a, out);
}

void collect_names(const FormulaPtr& f, std::set<std::string>& out) {
  if (!f->name.empty()) out.insert(f->name);
  for (const auto& t : f->terms) collect_term_names(t, out);
  for (const auto& k : f->kids) collect_names(k, out);
}

}  // namespace

std::set<std::string> all_names(const FormulaPtr& f) {
  std::set<std::string> out;
  collect_names(f, out);
  return out;
}

std::string fresh_fo_name(const std::string& base, std::set<std::string>& used) {
  std::string stem = base.empty() ? "x" : base;
  for (int i = 0;; ++i) {
    std::string cand = stem + std::to_string(i);
    if (!used.count(cand)) {
      used.insert(cand);
      return cand;
    }
  }
}

namespace {

std::string letters(int n) {
  std::string s;
  do {
    s.insert(s.begin(), static_cast<char>('a' + n % 26));
    n = n / 26 - 1;
  } while (n >= 0);
  return s;
}

}  // namespace

std::string fresh_so_name(const std::string& base, std::set<std::string>& used) {
  // Keep the arity tag (and 'f' suffix) intact: X2 -> Xa2, Xb2, ...
  std::string suffix;
  std::string stem = base;
  if (!stem.empty() && stem.back() == 'f' && is_so_function_variable_name(stem)) {
    suffix = "f";
    stem.pop_back();
  }
  std::size_t cut = stem.size();
  while (cut > 0 && std::isdigit(static_cast<unsigned char>(stem[cut - 1]))) --cut;
  suffix = stem.substr(cut) + suffix;
  stem = stem.substr(0, cut);
  for (int i = 0;; ++i) {
    std::string cand = stem + letters(i) + suffix;
    if (!used.count(cand)) {
      used.insert(cand);
      return cand;
    }
  }
}

namespace {

class BoundRenamer {
 public:
  BoundRenamer(const std::set<std::string>& avoid, std::set<std::string> used)
      : avoid_(avoid), used_(std::move(used)) {}

  FormulaPtr rename(const FormulaPtr& f, std::map<std::string, std::string>& env) {
    switch (f->kind) {
      case FormulaKind::Equal:
        return Formula::eq(rename_term(f->terms[0], env), rename_term(f->terms[1], env));
      case FormulaKind::Rel: {
        return Formula::rel(f->name, rename_args(f->terms, env));
      }
      case FormulaKind::RelVar: {
        auto it = env.find(f->name);
        return Formula::relvar(it == env.end() ? f->name : it->second, rename_args(f->terms, env));
      }
      case FormulaKind::Not:
        return Formula::negate(rename(f->kids[0], env));
      case FormulaKind::And:
      case FormulaKind::Or: {
        std::vector<FormulaPtr> kids;
        kids.reserve(f->kids.size());
        for (const auto& k : f->kids) kids.push_back(rename(k, env));
        return f->kind == FormulaKind::And ? Formula::conj(std::move(kids))
                                           : Formula::disj(std::move(kids));
      }
      case FormulaKind::Implies:
        return Formula::implies(rename(f->kids[0], env), rename(f->kids[1], env));
      case FormulaKind::Iff:
        return Formula::iff(rename(f->kids[0], env), rename(f->kids[1], env));
      case FormulaKind::Forall:
      case FormulaKind::Exists:
      case FormulaKind::ForallRel:
      case FormulaKind::ExistsRel:
      case FormulaKind::ForallFun:
      case FormulaKind::ExistsFun: {
        std::string name = f->name;
        std::map<std::string, std::string> inner = env;
        if (avoid_.count(name)) {
          std::string fresh = (f->kind == FormulaKind::Forall || f->kind == FormulaKind::Exists)
                                  ? fresh_fo_name(name, used_)
                                  : fresh_so_name(name, used_);
          inner[name] = fresh;
          name = fresh;
        } else {
          inner.erase(name);  // shadowing: inner occurrences refer to this binder
        }
        FormulaPtr body = rename(f->kids[0], inner);
        auto g = std::make_shared<Formula>();
        g->kind = f->kind;
        g->name = name;
        g->arity = f->arity;
        g->kids = {std::move(body)};
        return g;
      }
    }
    throw InternalError("unhandled formula kind in rename_bound");
  }

 private:
  std::vector<TermPtr> rename_args(const std::vector<TermPtr>& args,
                                   const std::map<std::string, std::string>& env) {
    std::vector<TermPtr> out;
    out.reserve(args.size());
    for (const auto& a : args) out.push_back(rename_term(a, env));
    return out;
  }

  TermPtr rename_term(const TermPtr& t, const std::map<std::string, std::string>& env) {
    switch (t->kind) {
      case TermKind::Variable: {
        auto it = env.find(t->name);
        return it == env.end() ? t : Term::var(it->second);
      }
      case TermKind::Function:
        return Term::fn(t->name, rename_args(t->args, env));
      case TermKind::FunctionVar: {
        auto it = env.find(t->name);
        return Term::fvar(it == env.end() ? t->name : it->second, rename_args(t->args, env));
      }
    }
    throw InternalError("unhandled term kind in rename_bound");
  }

  const std::set<std::string>& avoid_;
  std::set<std::string> used_;
};

}  // namespace

FormulaPtr rename_bound(const FormulaPtr& f, const std::set<std::string>& avoid) {
  std::set<std::string> used = all_names(f);
  used.insert(avoid.begin(), avoid.end());
  BoundRenamer renamer(avoid, std::move(used));
  std::map<std::string, std::string> env;
  return renamer.rename(f, env);
}

TermPtr substitute_fo(const TermPtr& t, const std::map<std::string, TermPtr>& subst) {
  switch (t->kind) {
    case TermKind::Variable: {
      auto it = subst.find(t->name);
      return it == subst.end() ? t : it->second;
    }
    case TermKind::Function:
    case TermKind::FunctionVar: {
      std::vector<TermPtr> args;
      args.reserve(t->args.size());
      for (const auto& a : t->args) args.push_back(substitute_fo(a, subst));
      return t->kind == TermKind::Function ? Term::fn(t->name, std::move(args))
                                           : Term::fvar(t->name, std::move(args));
    }
  }
  throw InternalError("unhandled term kind in substitute_fo");
}

namespace {

std::set<std::string> substitution_names(const std::map<std::string, TermPtr>& subst) {
  std::set<std::string> out;
  for (const auto& [_, t] : subst) collect_term_names(t, out);
  return out;
}

FormulaPtr substitute_rec(const FormulaPtr& f, std::map<std::string, TermPtr> subst,
                          const std::set<std::string>& term_names) {
  switch (f->kind) {
    case FormulaKind::Equal:
      return Formula::eq(substitute_fo(f->terms[0], subst), substitute_fo(f->terms[1], subst));
    case FormulaKind::Rel:
    case FormulaKind::RelVar: {
      std::vector<TermPtr> args;
      args.reserve(f->terms.size());
      for (const auto& t : f->terms) args.push_back(substitute_fo(t, subst));
      return f->kind == FormulaKind::Rel ? Formula::rel(f->name, std::move(args))
                                         : Formula::relvar(f->name, std::move(args));
    }
    case FormulaKind::Not:
      return Formula::negate(substitute_rec(f->kids[0], subst, term_names));
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<FormulaPtr> kids;
      kids.reserve(f->kids.size());
      for (const auto& k : f->kids) kids.push_back(substitute_rec(k, subst, term_names));
      return f->kind == FormulaKind::And ? Formula::conj(std::move(kids))
                                         : Formula::disj(std::move(kids));
    }
    case FormulaKind::Implies:
      return Formula::implies(substitute_rec(f->kids[0], subst, term_names),
                              substitute_rec(f->kids[1], subst, term_names));
    case FormulaKind::Iff:
      return Formula::iff(substitute_rec(f->kids[0], subst, term_names),
                          substitute_rec(f->kids[1], subst, term_names));
    case FormulaKind::Forall:
    case FormulaKind::Exists:
    case FormulaKind::ForallRel:
    case FormulaKind::ExistsRel:
    case FormulaKind::ForallFun:
    case FormulaKind::ExistsFun: {
      FormulaPtr target = f;
      // Avoid capturing free variables of the replacement terms.
      if (term_names.count(f->name)) {
        target = rename_bound(f, term_names);
      }
      std::map<std::string, TermPtr> inner = subst;
      inner.erase(target->name);
      if (inner.empty()) return target;
      FormulaPtr body = substitute_rec(target->kids[0], inner, term_names);
      auto g = std::make_shared<Formula>();
      g->kind = target->kind;
      g->name = target->name;
      g->arity = target->arity;
      g->kids = {std::move(body)};
      return g;
    }
  }
  throw InternalError("unhandled formula kind in substitute_fo");
}

}  // namespace

FormulaPtr substitute_fo(const FormulaPtr& f, const std::map<std::string, TermPtr>& subst) {
  if (subst.empty()) return f;
  return substitute_rec(f, subst, substitution_names(subst));
}

namespace {

TermPtr map_term_symbols(const TermPtr& t, const std::map<std::string, std::string>& map) {
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) args.push_back(map_term_symbols(a, map));
  switch (t->kind) {
    case TermKind::Variable:
      return t;
    case TermKind::Function: {
      auto it = map.find(t->name);
      return Term::fn(it == map.end() ? t->name : it->second, std::move(args));
    }
    case TermKind::FunctionVar:
      return Term::fvar(t->name, std::move(args));
  }
  throw InternalError("unhandled term kind in rename_symbols");
}

}  // namespace

FormulaPtr rename_symbols(const FormulaPtr& f, const std::map<std::string, std::string>& map) {
  switch (f->kind) {
    case FormulaKind::Equal:
      return Formula::eq(map_term_symbols(f->terms[0], map), map_term_symbols(f->terms[1], map));
    case FormulaKind::Rel: {
      std::vector<TermPtr> args;
      args.reserve(f->terms.size());
      for (const auto& t : f->terms) args.push_back(map_term_symbols(t, map));
      auto it = map.find(f->name);
      return Formula::rel(it == map.end() ? f->name : it->second, std::move(args));
    }
    case FormulaKind::RelVar: {
      std::vector<TermPtr> args;
      args.reserve(f->terms.size());
      for (const auto& t : f->terms) args.push_back(map_term_symbols(t, map));
      return Formula::relvar(f->name, std::move(args));
    }
    default: {
      auto g = std::make_shared<Formula>();
      g->kind = f->kind;
      g->name = f->name;
      g->arity = f->arity;
      for (const auto& k : f->kids) g->kids.push_back(rename_symbols(k, map));
      return g;
    }
  }
}

namespace {

TermPtr term_symbols_to_vars(const TermPtr& t, const SymbolToVarMap& map) {
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) args.push_back(term_symbols_to_vars(a, map));
  switch (t->kind) {
    case TermKind::Variable:
      return t;
    case TermKind::FunctionVar:
      return Term::fvar(t->name, std::move(args));
    case TermKind::Function: {
      if (auto it = map.constants_fo.find(t->name); it != map.constants_fo.end()) {
        if (!t->args.empty())
          throw SemanticError("symbol '" + t->name + "' mapped to a variable but has arguments");
        return Term::var(it->second);
      }
      if (auto it = map.functions.find(t->name); it != map.functions.end())
        return Term::fvar(it->second, std::move(args));
      return Term::fn(t->name, std::move(args));
    }
  }
  throw InternalError("unhandled term kind in symbols_to_variables");
}

}  // namespace

FormulaPtr symbols_to_variables(const FormulaPtr& f, const SymbolToVarMap& map) {
  switch (f->kind) {
    case FormulaKind::Equal:
      return Formula::eq(term_symbols_to_vars(f->terms[0], map),
                         term_symbols_to_vars(f->terms[1], map));
    case FormulaKind::Rel: {
      std::vector<TermPtr> args;
      args.reserve(f->terms.size());
      for (const auto& t : f->terms) args.push_back(term_symbols_to_vars(t, map));
      if (auto it = map.relations.find(f->name); it != map.relations.end())
        return Formula::relvar(it->second, std::move(args));
      return Formula::rel(f->name, std::move(args));
    }
    case FormulaKind::RelVar: {
      std::vector<TermPtr> args;
      args.reserve(f->terms.size());
      for (const auto& t : f->terms) args.push_back(term_symbols_to_vars(t, map));
      return Formula::relvar(f->name, std::move(args));
    }
    default: {
      auto g = std::make_shared<Formula>();
      g->kind = f->kind;
      g->name = f->name;
      g->arity = f->arity;
      for (const auto& k : f->kids) g->kids.push_back(symbols_to_variables(k, map));
      return g;
    }
  }
}

SchemaTemplate::SchemaTemplate(FormulaPtr body, std::string hole, std::vector<std::string> slots)
    : body_(std::move(body)), hole_(std::move(hole)), slots_(std::move(slots)) {
  if (!is_so_relation_variable_name(hole_))
    throw SemanticError("schema hole '" + hole_ + "' must be a relation-variable-shaped name");
  if (*so_name_arity(hole_) != static_cast<int>(slots_.size()))
    throw SemanticError("schema hole arity does not match slot count");
  // The hole may occur only in atom position; RelVar atoms with the hole
  // name are exactly that, and arity agreement is enforced by the AST.
}

namespace {

FormulaPtr fill_hole(const FormulaPtr& f, const std::string& hole,
                     const std::vector<std::string>& slots, const FormulaPtr& phi) {
  switch (f->kind) {
    case FormulaKind::Equal:
    case FormulaKind::Rel:
      return f;
    case FormulaKind::RelVar: {
      if (f->name != hole) return f;
      std::map<std::string, TermPtr> subst;
      for (std::size_t i = 0; i < slots.size(); ++i) subst[slots[i]] = f->terms[i];
      return substitute_fo(phi, subst);
    }
    case FormulaKind::ForallRel:
    case FormulaKind::ExistsRel:
      if (f->name == hole) return f;  // shadowed below this binder
      [[fallthrough]];
    default: {
      auto g = std::make_shared<Formula>();
      g->kind = f->kind;
      g->name = f->name;
      g->arity = f->arity;
      g->terms = f->terms;
      for (const auto& k : f->kids) g->kids.push_back(fill_hole(k, hole, slots, phi));
      return g;
    }
  }
}

}  // namespace

FormulaPtr SchemaTemplate::instantiate(const FormulaPtr& phi) const {
  // Bound variables of the template must not capture free variables of
  // phi, except for the slot variables: capturing those is the point.
  FreeProfile frees = free_symbols(phi);
  std::set<std::string> avoid = frees.fo_vars;
  for (const auto& v : frees.so_vars) avoid.insert(v.name);
  for (const auto& s : slots_) avoid.erase(s);
  FormulaPtr body = rename_bound(body_, avoid);
  return fill_hole(body, hole_, slots_, phi);
}

}  // namespace catkit
