#include "catkit/transforms.hpp"

#include <set>

#include "catkit/errors.hpp"
#include "catkit/hygiene.hpp"

namespace catkit::transforms {

namespace {

std::vector<std::string> numbered_vars(const std::string& stem, int count) {
  std::vector<std::string> out;
  for (int i = 1; i <= count; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

std::vector<TermPtr> vars_as_terms(const std::vector<std::string>& names) {
  std::vector<TermPtr> out;
  out.reserve(names.size());
  for (const auto& v : names) out.push_back(Term::var(v));
  return out;
}

FormulaPtr guard_all(const std::string& upred, const std::vector<std::string>& vars) {
  std::vector<FormulaPtr> atoms;
  atoms.reserve(vars.size());
  for (const auto& v : vars) atoms.push_back(Formula::rel(upred, {Term::var(v)}));
  return Formula::conj_of(std::move(atoms));
}

FormulaPtr close_forall(const std::vector<std::string>& vars, FormulaPtr body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    body = Formula::forall(*it, std::move(body));
  return body;
}

}  // namespace

VocabularyRenaming::VocabularyRenaming(const Vocabulary& source,
                                       std::map<std::string, std::string> map)
    : source_(source), map_(std::move(map)) {
  for (const auto& r : source.relations()) {
    auto it = map_.find(r.name);
    if (it == map_.end()) throw SemanticError("renaming misses symbol '" + r.name + "'");
    target_.add_relation(it->second, r.arity);
  }
  for (const auto& f : source.functions()) {
    auto it = map_.find(f.name);
    if (it == map_.end()) throw SemanticError("renaming misses symbol '" + f.name + "'");
    target_.add_function(it->second, f.arity);
  }
  if (map_.size() != source.size()) throw SemanticError("renaming mentions unknown symbols");
  for (const auto& [from, to] : map_)
    if (source.contains(to))
      throw SemanticError("renamed symbol '" + to + "' clashes with the source vocabulary");
}

VocabularyRenaming VocabularyRenaming::primes(const Vocabulary& source) {
  std::map<std::string, std::string> map;
  std::set<std::string> taken;
  for (const auto& r : source.relations()) taken.insert(r.name);
  for (const auto& f : source.functions()) taken.insert(f.name);
  auto rename = [&taken](const std::string& name) {
    std::string cand = name + "_p";
    int i = 1;
    while (taken.count(cand)) cand = name + "_p" + std::to_string(i++);
    taken.insert(cand);
    return cand;
  };
  for (const auto& r : source.relations()) map[r.name] = rename(r.name);
  for (const auto& f : source.functions()) map[f.name] = rename(f.name);
  return VocabularyRenaming(source, std::move(map));
}

const std::string& VocabularyRenaming::at(const std::string& symbol) const {
  auto it = map_.find(symbol);
  if (it == map_.end()) throw SemanticError("symbol '" + symbol + "' missing from the renaming");
  return it->second;
}

FormulaPtr res_sentence(const Vocabulary& vocab, const std::string& upred) {
  if (vocab.contains(upred))
    throw SemanticError("'" + upred + "' clashes with the vocabulary");
  std::vector<FormulaPtr> conjuncts;
  conjuncts.push_back(
      Formula::exists("x1", Formula::rel(upred, {Term::var("x1")})));
  for (const auto& f : vocab.functions()) {
    std::vector<std::string> vars = numbered_vars("x", f.arity);
    FormulaPtr closed = Formula::rel(upred, {Term::fn(f.name, vars_as_terms(vars))});
    if (f.arity == 0) {
      conjuncts.push_back(std::move(closed));
      continue;
    }
    conjuncts.push_back(
        close_forall(vars, Formula::implies(guard_all(upred, vars), std::move(closed))));
  }
  return Formula::conj_of(std::move(conjuncts));
}

namespace {

class Relativizer {
 public:
  Relativizer(std::string upred, std::set<std::string> used)
      : upred_(std::move(upred)), used_(std::move(used)) {}

  FormulaPtr apply(const FormulaPtr& f) {
    switch (f->kind) {
      case FormulaKind::Equal:
      case FormulaKind::Rel:
      case FormulaKind::RelVar:
        return f;
      case FormulaKind::Not:
        return Formula::negate(apply(f->kids[0]));
      case FormulaKind::And:
      case FormulaKind::Or: {
        std::vector<FormulaPtr> kids;
        kids.reserve(f->kids.size());
        for (const auto& k : f->kids) kids.push_back(apply(k));
        return f->kind == FormulaKind::And ? Formula::conj(std::move(kids))
                                           : Formula::disj(std::move(kids));
      }
      case FormulaKind::Implies:
        return Formula::implies(apply(f->kids[0]), apply(f->kids[1]));
      case FormulaKind::Iff:
        return Formula::iff(apply(f->kids[0]), apply(f->kids[1]));
      case FormulaKind::Forall:
        return Formula::forall(
            f->name, Formula::implies(Formula::rel(upred_, {Term::var(f->name)}),
                                      apply(f->kids[0])));
      case FormulaKind::Exists:
        return Formula::exists(
            f->name,
            Formula::conj({Formula::rel(upred_, {Term::var(f->name)}), apply(f->kids[0])}));
      case FormulaKind::ForallRel:
        return Formula::forall_rel(
            f->name, Formula::implies(rel_guard(f->name, f->arity), apply(f->kids[0])));
      case FormulaKind::ExistsRel:
        return Formula::exists_rel(
            f->name, Formula::conj({rel_guard(f->name, f->arity), apply(f->kids[0])}));
      case FormulaKind::ForallFun:
        return Formula::forall_fun(
            f->name, Formula::implies(fun_guard(f->name, f->arity), apply(f->kids[0])));
      case FormulaKind::ExistsFun:
        return Formula::exists_fun(
            f->name, Formula::conj({fun_guard(f->name, f->arity), apply(f->kids[0])}));
    }
    throw InternalError("unhandled formula kind in relativize");
  }

 private:
  // X included in upred^k: !y1 ... !yk (X(y1,...,yk) -> (U(y1) & ... & U(yk)))
  FormulaPtr rel_guard(const std::string& var, int arity) {
    std::vector<std::string> vars = fresh_vars(arity);
    FormulaPtr body = Formula::implies(Formula::relvar(var, vars_as_terms(vars)),
                                       guard_all(upred_, vars));
    return close_forall(vars, std::move(body));
  }

  // F maps upred^k into upred: !y1 ... !yk ((U(y1) & ... & U(yk)) -> U(F(y)))
  // A nullary F degenerates to U(F).
  FormulaPtr fun_guard(const std::string& var, int arity) {
    std::vector<std::string> vars = fresh_vars(arity);
    FormulaPtr applied = Formula::rel(upred_, {Term::fvar(var, vars_as_terms(vars))});
    if (arity == 0) return applied;
    return close_forall(vars, Formula::implies(guard_all(upred_, vars), std::move(applied)));
  }

  std::vector<std::string> fresh_vars(int count) {
    std::vector<std::string> out;
    for (int i = 0; i < count; ++i) out.push_back(fresh_fo_name("y", used_));
    return out;
  }

  std::string upred_;
  std::set<std::string> used_;
};

}  // namespace

FormulaPtr relativize(const FormulaPtr& f, const std::string& upred) {
  if (uses_symbol(f, upred))
    throw SemanticError("'" + upred + "' already occurs in the formula");
  std::set<std::string> used = all_names(f);
  used.insert(upred);
  Relativizer rel(upred, std::move(used));
  return rel.apply(f);
}

FormulaPtr prime(const FormulaPtr& f, const VocabularyRenaming& ren) {
  for (const auto& symbol : free_symbols(f).symbols)
    if (!ren.map().count(symbol))
      throw SemanticError("symbol '" + symbol + "' missing from the renaming");
  return rename_symbols(f, ren.map());
}

namespace {

TermPtr apply_fn(const IsoFunction& fn, TermPtr arg) {
  if (fn.is_variable) return Term::fvar(fn.name, {std::move(arg)});
  return Term::fn(fn.name, {std::move(arg)});
}

}  // namespace

FormulaPtr iso_sentence(const Vocabulary& vocab, const VocabularyRenaming& ren,
                        const IsoFunction& fn, const std::string& upred,
                        const std::string& upred2, IsoMode mode) {
  if (fn.is_variable) {
    if (!is_so_function_variable_name(fn.name) || *so_name_arity(fn.name) != 1)
      throw SemanticError("isomorphism variable '" + fn.name +
                          "' must be a unary function variable");
  }
  Vocabulary both = Vocabulary::merged(vocab, ren.target());
  for (const std::string& name : {upred, upred2, fn.name})
    if (both.contains(name)) throw SemanticError("'" + name + "' clashes with the vocabulary");
  if (upred == upred2 || upred == fn.name || upred2 == fn.name)
    throw SemanticError("upred, upred2 and the mapping name must be distinct");
  const bool guarded = mode == IsoMode::Guarded;

  auto u = [&upred](const std::string& v) { return Formula::rel(upred, {Term::var(v)}); };
  auto u2 = [&upred2](const std::string& v) { return Formula::rel(upred2, {Term::var(v)}); };

  std::vector<FormulaPtr> conjuncts;

  // U maps into U' under F.
  conjuncts.push_back(Formula::forall(
      "x1", Formula::implies(u("x1"), Formula::rel(upred2, {apply_fn(fn, Term::var("x1"))}))));

  // Injectivity.
  {
    FormulaPtr core = Formula::implies(
        Formula::eq(apply_fn(fn, Term::var("x1")), apply_fn(fn, Term::var("x2"))),
        Formula::eq(Term::var("x1"), Term::var("x2")));
    if (guarded) core = Formula::implies(Formula::conj({u("x1"), u("x2")}), std::move(core));
    conjuncts.push_back(close_forall({"x1", "x2"}, std::move(core)));
  }

  // Surjectivity onto U'.
  conjuncts.push_back(Formula::forall(
      "x1",
      Formula::implies(u2("x1"), Formula::exists("x2", Formula::conj({u("x2"),
                           Formula::eq(apply_fn(fn, Term::var("x2")), Term::var("x1"))})))));

  // Relation preservation.
  for (const auto& r : vocab.relations()) {
    std::vector<std::string> vars = numbered_vars("x", r.arity);
    std::vector<TermPtr> args = vars_as_terms(vars);
    std::vector<TermPtr> mapped;
    for (const auto& v : vars) mapped.push_back(apply_fn(fn, Term::var(v)));
    FormulaPtr core = Formula::iff(Formula::rel(r.name, args),
                                   Formula::rel(ren.at(r.name), std::move(mapped)));
    if (guarded) core = Formula::implies(guard_all(upred, vars), std::move(core));
    conjuncts.push_back(close_forall(vars, std::move(core)));
  }

  // Function commutation.
  for (const auto& f : vocab.functions()) {
    std::vector<std::string> vars = numbered_vars("x", f.arity);
    std::vector<TermPtr> mapped;
    for (const auto& v : vars) mapped.push_back(apply_fn(fn, Term::var(v)));
    FormulaPtr core =
        Formula::eq(apply_fn(fn, Term::fn(f.name, vars_as_terms(vars))),
                    Term::fn(ren.at(f.name), std::move(mapped)));
    if (f.arity == 0) {
      conjuncts.push_back(std::move(core));
      continue;
    }
    if (guarded) core = Formula::implies(guard_all(upred, vars), std::move(core));
    conjuncts.push_back(close_forall(vars, std::move(core)));
  }

  return Formula::conj_of(std::move(conjuncts));
}

CatNames default_cat_names(const Vocabulary& vocab, const VocabularyRenaming& ren) {
  Vocabulary both = Vocabulary::merged(vocab, ren.target());
  CatNames names;
  int i = 0;
  auto next_upred = [&both, &i]() {
    while (both.contains("u" + std::to_string(i))) ++i;
    return "u" + std::to_string(i++);
  };
  names.upred = next_upred();
  names.upred2 = next_upred();
  std::set<std::string> taken;
  for (const auto& r : both.relations()) taken.insert(r.name);
  for (const auto& f : both.functions()) taken.insert(f.name);
  if (taken.count("F1f")) names.fvar = fresh_so_name("F1f", taken);
  return names;
}

namespace {

void check_sentence_over(const FormulaPtr& f, const Vocabulary& vocab) {
  FreeProfile frees = free_symbols(f);
  if (!frees.fo_vars.empty() || !frees.so_vars.empty())
    throw SemanticError("a sentence is required");
  for (const auto& s : frees.symbols)
    if (!vocab.contains(s))
      throw SemanticError("symbol '" + s + "' is not in the declared vocabulary");
}

}  // namespace

FormulaPtr cat_plus(const FormulaPtr& f, const Vocabulary& vocab, const VocabularyRenaming& ren,
                    const CatNames& names, IsoMode mode) {
  check_sentence_over(f, vocab);
  FormulaPtr primed = prime(f, ren);
  FormulaPtr antecedent = Formula::conj({
      res_sentence(vocab, names.upred),
      res_sentence(ren.target(), names.upred2),
      relativize(f, names.upred),
      relativize(primed, names.upred2),
  });
  FormulaPtr iso =
      iso_sentence(vocab, ren, IsoFunction{names.fvar, true}, names.upred, names.upred2, mode);
  return Formula::implies(std::move(antecedent),
                          Formula::exists_fun(names.fvar, std::move(iso)));
}

FormulaPtr cat_plus(const FormulaPtr& f, const Vocabulary& vocab, IsoMode mode) {
  VocabularyRenaming ren = VocabularyRenaming::primes(vocab);
  return cat_plus(f, vocab, ren, default_cat_names(vocab, ren), mode);
}

Vocabulary cat_plus_vocabulary(const Vocabulary& vocab, const VocabularyRenaming& ren,
                               const CatNames& names) {
  Vocabulary out;
  out.add_relation(names.upred, 1);
  out.add_relation(names.upred2, 1);
  for (const auto& r : vocab.relations()) out.add_relation(r.name, r.arity);
  for (const auto& r : ren.target().relations()) out.add_relation(r.name, r.arity);
  for (const auto& f : vocab.functions()) out.add_function(f.name, f.arity);
  for (const auto& f : ren.target().functions()) out.add_function(f.name, f.arity);
  return out;
}

namespace {

std::string rel_var_name(const Symbol& symbol) {
  return "X" + symbol.name + "_" + std::to_string(symbol.arity);
}

std::string fun_var_name(const Symbol& symbol) {
  return "F" + symbol.name + "_" + std::to_string(symbol.arity) + "f";
}

}  // namespace

FormulaPtr cat_sentence(const FormulaPtr& f, const Vocabulary& vocab, IsoMode mode) {
  VocabularyRenaming ren = VocabularyRenaming::primes(vocab);
  CatNames names = default_cat_names(vocab, ren);
  FormulaPtr plus = cat_plus(f, vocab, ren, names, mode);

  // Quantifier prefix: U, U', relations, renamed relations, functions,
  // renamed functions.
  struct Binder {
    std::string var;
    bool function;
  };
  std::vector<Binder> prefix;
  SymbolToVarMap map;
  std::set<std::string> generated;
  auto add_rel = [&](const Symbol& s) {
    std::string var = rel_var_name(s);
    map.relations[s.name] = var;
    prefix.push_back({var, false});
    generated.insert(var);
  };
  auto add_fun = [&](const Symbol& s) {
    std::string var = fun_var_name(s);
    map.functions[s.name] = var;
    prefix.push_back({var, true});
    generated.insert(var);
  };
  add_rel({names.upred, 1});
  add_rel({names.upred2, 1});
  for (const auto& r : vocab.relations()) add_rel(r);
  for (const auto& r : ren.target().relations()) add_rel(r);
  for (const auto& fs : vocab.functions()) add_fun(fs);
  for (const auto& fs : ren.target().functions()) add_fun(fs);

  // Bound variables inside cat_plus must not capture the new variables.
  FormulaPtr body = symbols_to_variables(rename_bound(plus, generated), map);
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    body = it->function ? Formula::forall_fun(it->var, std::move(body))
                        : Formula::forall_rel(it->var, std::move(body));
  return body;
}

}  // namespace catkit::transforms
