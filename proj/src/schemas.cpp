#include "catkit/schemas.hpp"

#include <algorithm>
#include <sstream>

#include "catkit/errors.hpp"
#include "catkit/hygiene.hpp"
#include "catkit/parser.hpp"
#include "catkit/printer.hpp"

namespace catkit::transforms {

const char* const kAddSym = "add";
const char* const kMulSym = "mul";
const char* const kAddPSym = "add_p";
const char* const kMulPSym = "mul_p";

Vocabulary doubled_arith_vocabulary() {
  Vocabulary v;
  v.add_function(kAddSym, 2);
  v.add_function(kMulSym, 2);
  v.add_function(kAddPSym, 2);
  v.add_function(kMulPSym, 2);
  return v;
}

std::string write_theory(const TheoryInstanceSet& theory) {
  std::ostringstream os;
  os << "theory " << theory.name << "\n";
  os << "param depth " << theory.depth << "\n";
  for (const auto& s : theory.sentences) os << "axiom " << render_formula(s) << "\n";
  return os.str();
}

TheoryInstanceSet parse_theory(const std::string& text, const Vocabulary& vocab) {
  TheoryInstanceSet out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool named = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string stripped = line.substr(0, line.find('#'));
    std::istringstream ls(stripped);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "theory") {
      if (!(ls >> out.name)) throw SyntaxError("expected 'theory <name>'", lineno, 1);
      named = true;
    } else if (kw == "param") {
      std::string what;
      if (!(ls >> what >> out.depth) || what != "depth")
        throw SyntaxError("expected 'param depth <d>'", lineno, 1);
    } else if (kw == "axiom") {
      std::string rest;
      std::getline(ls, rest);
      out.sentences.push_back(parse_formula(rest, vocab, /*require_sentence=*/true));
    } else {
      throw SyntaxError("unexpected keyword '" + kw + "' in theory file", lineno, 1);
    }
  }
  if (!named) throw SyntaxError("theory file misses a 'theory <name>' header", lineno, 1);
  return out;
}

namespace {

std::vector<std::string> sorted(const std::set<std::string>& names) {
  return {names.begin(), names.end()};
}

}  // namespace

TheoryInstanceSet comprehension_instances(const Vocabulary& vocab,
                                          const std::vector<FormulaPtr>& pool, int arity,
                                          std::optional<std::string> bound_name) {
  if (arity < 1) throw SemanticError("comprehension arity must be >= 1");
  TheoryInstanceSet out;
  out.name = "comprehension";

  std::vector<std::string> slots;
  for (int i = 1; i <= arity; ++i) slots.push_back("y" + std::to_string(i));

  for (const FormulaPtr& phi : pool) {
    FreeProfile frees = free_symbols(phi);
    for (const auto& s : frees.symbols)
      if (!vocab.contains(s))
        throw SemanticError("pool formula uses undeclared symbol '" + s + "'");

    std::string canonical = "X" + std::to_string(arity);
    std::string bound;
    if (bound_name) {
      bound = *bound_name;
      if (!is_so_relation_variable_name(bound) || *so_name_arity(bound) != arity)
        throw SemanticError("'" + bound + "' is not a relation variable of arity " +
                            std::to_string(arity));
      for (const auto& v : frees.so_vars)
        if (v.name == bound)
          throw SemanticError("comprehended variable '" + bound +
                              "' occurs free in a pool formula");
    } else {
      std::set<std::string> taken = all_names(phi);
      for (const auto& r : vocab.relations()) taken.insert(r.name);
      for (const auto& f : vocab.functions()) taken.insert(f.name);
      bound = taken.count(canonical) ? fresh_so_name(canonical, taken) : canonical;
    }

    // exists X forall y1..ym (X(y) <-> hole(y)), instantiated with phi.
    std::vector<TermPtr> args;
    for (const auto& s : slots) args.push_back(Term::var(s));
    std::string hole = "H" + std::to_string(arity);
    if (hole == bound) hole = "Ha" + std::to_string(arity);
    FormulaPtr core = Formula::iff(Formula::relvar(bound, args), Formula::relvar(hole, args));
    for (auto it = slots.rbegin(); it != slots.rend(); ++it)
      core = Formula::forall(*it, std::move(core));
    core = Formula::exists_rel(bound, std::move(core));
    SchemaTemplate schema(core, hole, slots);
    FormulaPtr instance = schema.instantiate(phi);

    // Universal closure over the parameters: first-order ones, then
    // second-order ones, each alphabetically.
    std::set<std::string> fo_params = frees.fo_vars;
    for (const auto& s : slots) fo_params.erase(s);
    std::vector<std::string> so_params;
    for (const auto& v : frees.so_vars) so_params.push_back(v.name);
    std::sort(so_params.begin(), so_params.end());
    for (auto it = so_params.rbegin(); it != so_params.rend(); ++it) {
      if (is_so_function_variable_name(*it))
        instance = Formula::forall_fun(*it, std::move(instance));
      else
        instance = Formula::forall_rel(*it, std::move(instance));
    }
    std::vector<std::string> fo_sorted = sorted(fo_params);
    for (auto it = fo_sorted.rbegin(); it != fo_sorted.rend(); ++it)
      instance = Formula::forall(*it, std::move(instance));

    out.sentences.push_back(std::move(instance));
  }
  return out;
}

namespace {

TermPtr app2(const std::string& f, TermPtr a, TermPtr b) {
  return Term::fn(f, {std::move(a), std::move(b)});
}

// exists z (z + z = z  &  body(z))
FormulaPtr with_zero(const std::string& add_sym, const std::string& z, FormulaPtr body) {
  FormulaPtr def = Formula::eq(app2(add_sym, Term::var(z), Term::var(z)), Term::var(z));
  return Formula::exists(z, Formula::conj({std::move(def), std::move(body)}));
}

// exists o ((o * o = o & ~(o + o = o)) & body(o))
FormulaPtr with_one(const std::string& add_sym, const std::string& mul_sym, const std::string& o,
                    FormulaPtr body) {
  FormulaPtr idem = Formula::eq(app2(mul_sym, Term::var(o), Term::var(o)), Term::var(o));
  FormulaPtr nonzero =
      Formula::negate(Formula::eq(app2(add_sym, Term::var(o), Term::var(o)), Term::var(o)));
  return Formula::exists(
      o, Formula::conj({Formula::conj({std::move(idem), std::move(nonzero)}), std::move(body)}));
}

}  // namespace

FormulaPtr induction_instance(const FormulaPtr& phi, const std::string& induction_var,
                              const std::string& add_sym, const std::string& mul_sym) {
  FreeProfile frees = free_symbols(phi);
  if (!frees.fo_vars.count(induction_var))
    throw SemanticError("induction variable '" + induction_var + "' is not free in the formula");

  std::set<std::string> used = all_names(phi);
  used.insert(induction_var);
  used.insert(add_sym);
  used.insert(mul_sym);
  std::string z = fresh_fo_name("z", used);
  std::string o = fresh_fo_name("o", used);

  // phi(0): exists z (zero(z) & phi[var := z])
  FormulaPtr base = with_zero(add_sym, z, substitute_fo(phi, {{induction_var, Term::var(z)}}));

  // forall var (phi -> exists o (one(o) & phi[var := var + o]))
  FormulaPtr stepped = substitute_fo(
      phi, {{induction_var, app2(add_sym, Term::var(induction_var), Term::var(o))}});
  FormulaPtr step = Formula::forall(
      induction_var, Formula::implies(phi, with_one(add_sym, mul_sym, o, std::move(stepped))));

  FormulaPtr conclusion = Formula::forall(induction_var, phi);
  FormulaPtr instance = Formula::implies(Formula::conj({std::move(base), std::move(step)}),
                                         std::move(conclusion));

  std::set<std::string> params = frees.fo_vars;
  params.erase(induction_var);
  std::vector<std::string> ordered = sorted(params);
  for (auto it = ordered.rbegin(); it != ordered.rend(); ++it)
    instance = Formula::forall(*it, std::move(instance));
  return instance;
}

std::vector<FormulaPtr> peano_base(const std::string& add_sym, const std::string& mul_sym) {
  auto v = [](const std::string& n) { return Term::var(n); };
  auto add = [&](TermPtr a, TermPtr b) { return app2(add_sym, std::move(a), std::move(b)); };
  auto mul = [&](TermPtr a, TermPtr b) { return app2(mul_sym, std::move(a), std::move(b)); };
  auto forall3 = [](FormulaPtr body) {
    return Formula::forall(
        "x1", Formula::forall("x2", Formula::forall("x3", std::move(body))));
  };
  auto forall2 = [](FormulaPtr body) {
    return Formula::forall("x1", Formula::forall("x2", std::move(body)));
  };

  std::vector<FormulaPtr> axioms;
  // Commutativity and associativity of both operations, distributivity.
  axioms.push_back(forall2(Formula::eq(add(v("x1"), v("x2")), add(v("x2"), v("x1")))));
  axioms.push_back(forall3(
      Formula::eq(add(add(v("x1"), v("x2")), v("x3")), add(v("x1"), add(v("x2"), v("x3"))))));
  axioms.push_back(forall2(Formula::eq(mul(v("x1"), v("x2")), mul(v("x2"), v("x1")))));
  axioms.push_back(forall3(
      Formula::eq(mul(mul(v("x1"), v("x2")), v("x3")), mul(v("x1"), mul(v("x2"), v("x3"))))));
  axioms.push_back(forall3(Formula::eq(mul(v("x1"), add(v("x2"), v("x3"))),
                                       add(mul(v("x1"), v("x2")), mul(v("x1"), v("x3"))))));
  // Identity elements exist.
  axioms.push_back(
      Formula::exists("x1", Formula::forall("x2", Formula::eq(add(v("x2"), v("x1")), v("x2")))));
  axioms.push_back(
      Formula::exists("x1", Formula::forall("x2", Formula::eq(mul(v("x2"), v("x1")), v("x2")))));
  // Additive cancellation.
  axioms.push_back(forall3(Formula::implies(
      Formula::eq(add(v("x1"), v("x3")), add(v("x2"), v("x3"))), Formula::eq(v("x1"), v("x2")))));
  // Zero is not a successor.
  axioms.push_back(with_zero(
      add_sym, "z1",
      with_one(add_sym, mul_sym, "o1",
               Formula::forall(
                   "x1", Formula::negate(Formula::eq(add(v("x1"), v("o1")), v("z1")))))));
  // Every element is zero or a successor.
  axioms.push_back(with_zero(
      add_sym, "z1",
      with_one(add_sym, mul_sym, "o1",
               Formula::forall(
                   "x1", Formula::disj({Formula::eq(v("x1"), v("z1")),
                                        Formula::exists("x2", Formula::eq(add(v("x2"), v("o1")),
                                                                          v("x1")))})))));
  return axioms;
}

std::vector<FormulaPtr> induction_pool(int depth) {
  if (depth < 0) throw SemanticError("depth must be >= 0");
  std::vector<TermPtr> terms{Term::var("y1")};
  std::vector<std::string> ops{kAddSym, kMulSym, kAddPSym, kMulPSym};
  std::vector<TermPtr> frontier = terms;
  for (int d = 0; d < depth; ++d) {
    std::vector<TermPtr> next;
    for (const auto& op : ops)
      for (const auto& a : frontier)
        for (const auto& b : frontier) next.push_back(app2(op, a, b));
    // Deduplicate structurally while keeping generation order.
    for (const auto& t : next) {
      bool seen = false;
      for (const auto& u : terms)
        if (equal(t, u)) seen = true;
      if (!seen) terms.push_back(t);
    }
    frontier = terms;
  }
  std::vector<FormulaPtr> pool;
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j)
      pool.push_back(Formula::eq(terms[i], terms[j]));
  return pool;
}

TheoryInstanceSet peano_doubled(const std::vector<FormulaPtr>& pool,
                                const std::vector<FormulaPtr>& pool_primed, int depth) {
  TheoryInstanceSet out;
  out.name = "pa_doubled";
  out.depth = depth;
  for (auto& s : peano_base(kAddSym, kMulSym)) out.sentences.push_back(std::move(s));
  for (auto& s : peano_base(kAddPSym, kMulPSym)) out.sentences.push_back(std::move(s));
  for (const auto& phi : pool)
    out.sentences.push_back(induction_instance(phi, "y1", kAddSym, kMulSym));
  for (const auto& phi : pool_primed)
    out.sentences.push_back(induction_instance(phi, "y1", kAddPSym, kMulPSym));
  return out;
}

namespace {

FormulaPtr in(const std::string& eps, const std::string& a, const std::string& b) {
  return Formula::rel(eps, {Term::var(a), Term::var(b)});
}

}  // namespace

std::vector<FormulaPtr> zfc_base(const std::string& eps) {
  auto member = [&eps](const std::string& a, const std::string& b) { return in(eps, a, b); };
  std::vector<FormulaPtr> axioms;

  // Extensionality.
  axioms.push_back(Formula::forall(
      "x1", Formula::forall(
                "x2", Formula::implies(
                          Formula::forall("x3", Formula::iff(member("x3", "x1"),
                                                             member("x3", "x2"))),
                          Formula::eq(Term::var("x1"), Term::var("x2"))))));
  // Pairing.
  axioms.push_back(Formula::forall(
      "x1",
      Formula::forall(
          "x2", Formula::exists(
                    "x3", Formula::forall(
                              "x4", Formula::iff(member("x4", "x3"),
                                                 Formula::disj(
                                                     {Formula::eq(Term::var("x4"), Term::var("x1")),
                                                      Formula::eq(Term::var("x4"),
                                                                  Term::var("x2"))})))))));
  // Union.
  axioms.push_back(Formula::forall(
      "x1", Formula::exists(
                "x2", Formula::forall(
                          "x3", Formula::iff(member("x3", "x2"),
                                             Formula::exists(
                                                 "x4", Formula::conj({member("x4", "x1"),
                                                                      member("x3", "x4")})))))));
  // Power set.
  axioms.push_back(Formula::forall(
      "x1", Formula::exists(
                "x2", Formula::forall(
                          "x3", Formula::iff(member("x3", "x2"),
                                             Formula::forall(
                                                 "x4", Formula::implies(member("x4", "x3"),
                                                                        member("x4", "x1"))))))));
  // Infinity: some set contains an empty set and is closed under x -> x u {x}.
  axioms.push_back(Formula::exists(
      "x1",
      Formula::conj(
          {Formula::exists("x2", Formula::conj({member("x2", "x1"),
                                                Formula::forall("x3", Formula::negate(member(
                                                                          "x3", "x2")))})),
           Formula::forall(
               "x2",
               Formula::implies(
                   member("x2", "x1"),
                   Formula::exists(
                       "x3",
                       Formula::conj(
                           {member("x3", "x1"),
                            Formula::forall(
                                "x4",
                                Formula::iff(member("x4", "x3"),
                                             Formula::disj(
                                                 {member("x4", "x2"),
                                                  Formula::eq(Term::var("x4"),
                                                              Term::var("x2"))})))}))))})));
  // Foundation.
  axioms.push_back(Formula::forall(
      "x1",
      Formula::implies(
          Formula::exists("x2", member("x2", "x1")),
          Formula::exists(
              "x2", Formula::conj({member("x2", "x1"),
                                   Formula::negate(Formula::exists(
                                       "x3", Formula::conj({member("x3", "x1"),
                                                            member("x3", "x2")})))})))));
  // Choice: every family of nonempty pairwise disjoint sets has a selector.
  axioms.push_back(Formula::forall(
      "x1",
      Formula::implies(
          Formula::conj(
              {Formula::forall("x2", Formula::implies(member("x2", "x1"),
                                                      Formula::exists("x3", member("x3", "x2")))),
               Formula::forall(
                   "x2",
                   Formula::forall(
                       "x3",
                       Formula::implies(
                           Formula::conj({member("x2", "x1"), member("x3", "x1"),
                                          Formula::negate(
                                              Formula::eq(Term::var("x2"), Term::var("x3")))}),
                           Formula::negate(Formula::exists(
                               "x4", Formula::conj({member("x4", "x2"),
                                                    member("x4", "x3")}))))))}),
          Formula::exists(
              "x4",
              Formula::forall(
                  "x2",
                  Formula::implies(
                      member("x2", "x1"),
                      Formula::exists(
                          "x3",
                          Formula::conj(
                              {member("x3", "x2"), member("x3", "x4"),
                               Formula::forall(
                                   "x5",
                                   Formula::implies(
                                       Formula::conj({member("x5", "x2"), member("x5", "x4")}),
                                       Formula::eq(Term::var("x5"), Term::var("x3"))))}))))))));
  return axioms;
}

TheoryInstanceSet zfc_extended(const std::string& eps, const std::string& eps_other,
                               const std::vector<FormulaPtr>& separation_pool,
                               const std::vector<FormulaPtr>& replacement_pool) {
  TheoryInstanceSet out;
  out.name = "zfc_" + eps;
  auto check_pool = [&](const FormulaPtr& phi) {
    for (const auto& s : free_symbols(phi).symbols)
      if (s != eps && s != eps_other)
        throw SemanticError("pool formula uses symbol '" + s + "' outside the membership pair");
  };

  for (auto& s : zfc_base(eps)) out.sentences.push_back(std::move(s));

  // Separation: the pool formula's element variable is z1.
  for (const auto& phi : separation_pool) {
    check_pool(phi);
    FreeProfile frees = free_symbols(phi);
    std::set<std::string> used = all_names(phi);
    used.insert({eps, eps_other, "z1"});
    std::string a = fresh_fo_name("a", used);
    std::string b = fresh_fo_name("b", used);
    FormulaPtr core = Formula::forall(
        "z1", Formula::iff(in(eps, "z1", b),
                           Formula::conj({in(eps, "z1", a), phi})));
    FormulaPtr instance = Formula::forall(a, Formula::exists(b, std::move(core)));
    std::set<std::string> params = frees.fo_vars;
    params.erase("z1");
    std::vector<std::string> ordered = sorted(params);
    for (auto it = ordered.rbegin(); it != ordered.rend(); ++it)
      instance = Formula::forall(*it, std::move(instance));
    out.sentences.push_back(std::move(instance));
  }

  // Replacement: source x1, target y1.
  for (const auto& phi : replacement_pool) {
    check_pool(phi);
    FreeProfile frees = free_symbols(phi);
    std::set<std::string> used = all_names(phi);
    used.insert({eps, eps_other, "x1", "y1"});
    std::string a = fresh_fo_name("a", used);
    std::string b = fresh_fo_name("b", used);
    std::string y2 = fresh_fo_name("y", used);
    FormulaPtr functional = Formula::forall(
        "x1",
        Formula::forall(
            "y1", Formula::forall(y2, Formula::implies(
                                           Formula::conj({phi, substitute_fo(
                                                                   phi, {{"y1", Term::var(y2)}})}),
                                           Formula::eq(Term::var("y1"), Term::var(y2))))));
    FormulaPtr image = Formula::forall(
        a, Formula::exists(
               b, Formula::forall(
                      "y1", Formula::iff(in(eps, "y1", b),
                                         Formula::exists(
                                             "x1", Formula::conj({in(eps, "x1", a), phi}))))));
    FormulaPtr instance = Formula::implies(std::move(functional), std::move(image));
    std::set<std::string> params = frees.fo_vars;
    params.erase("x1");
    params.erase("y1");
    std::vector<std::string> ordered = sorted(params);
    for (auto it = ordered.rbegin(); it != ordered.rend(); ++it)
      instance = Formula::forall(*it, std::move(instance));
    out.sentences.push_back(std::move(instance));
  }
  return out;
}

}  // namespace catkit::transforms
