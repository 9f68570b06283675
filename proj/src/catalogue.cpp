#include "catkit/catalogue.hpp"

#include "catkit/errors.hpp"
#include "catkit/hygiene.hpp"
#include "catkit/transforms.hpp"

namespace catkit::catalogue {

namespace {

TermPtr v(const std::string& name) { return Term::var(name); }

// Successor arithmetic, second order: injectivity of s, freshness of 0,
// and the induction axiom.
CatalogueEntry make_n2() {
  CatalogueEntry e;
  e.key = "N2";
  e.note = "second-order successor arithmetic (injective successor, fresh zero, induction)";
  e.vocab.add_function("s", 1);
  e.vocab.add_function("0", 0);
  auto s = [](TermPtr t) { return Term::fn("s", {std::move(t)}); };
  auto zero = []() { return Term::fn("0", {}); };

  FormulaPtr injective = Formula::forall(
      "x1", Formula::forall("x2", Formula::implies(Formula::eq(s(v("x1")), s(v("x2"))),
                                                   Formula::eq(v("x1"), v("x2")))));
  FormulaPtr fresh_zero =
      Formula::forall("x1", Formula::negate(Formula::eq(s(v("x1")), zero())));
  FormulaPtr induction = Formula::forall_rel(
      "X1",
      Formula::implies(
          Formula::conj({Formula::relvar("X1", {zero()}),
                         Formula::forall("x1", Formula::implies(
                                                   Formula::relvar("X1", {v("x1")}),
                                                   Formula::relvar("X1", {s(v("x1"))})))}),
          Formula::forall("x1", Formula::relvar("X1", {v("x1")}))));
  e.sentence = Formula::conj({injective, fresh_zero, induction});
  return e;
}

// The countably-infinite-domain sentence: the successor structure exists.
CatalogueEntry make_i2() {
  CatalogueEntry e;
  e.key = "I2";
  e.note = "existence of a successor structure; pins the countably infinite domain";
  // The constant becomes a first-order variable, so bound occurrences of
  // its name must be renamed away first.
  FormulaPtr n2 = rename_bound(make_n2().sentence, {"x1", "F1f"});
  SymbolToVarMap map;
  map.functions["s"] = "F1f";
  map.constants_fo["0"] = "x1";
  FormulaPtr body = symbols_to_variables(n2, map);
  e.sentence = Formula::exists_fun("F1f", Formula::exists("x1", body));
  return e;
}

// Power-set structure over a successor base: the base carrier R holds a
// copy of the successor structure, eps is an extensional membership
// relation into the remaining elements, and every subset of R is realized.
CatalogueEntry make_p2() {
  CatalogueEntry e;
  e.key = "P2";
  e.note = "second-order power-set structure over the countable carrier";
  e.vocab.add_relation("R", 1);
  e.vocab.add_relation("eps", 2);
  auto eps = [](TermPtr a, TermPtr b) {
    return Formula::rel("eps", {std::move(a), std::move(b)});
  };
  auto carrier = [](TermPtr a) { return Formula::rel("R", {std::move(a)}); };

  FormulaPtr infinite_carrier = transforms::relativize(make_i2().sentence, "R");
  FormulaPtr members_in_carrier = Formula::forall(
      "x1", Formula::forall("x2", Formula::implies(eps(v("x1"), v("x2")), carrier(v("x1")))));
  FormulaPtr extensional = Formula::forall(
      "x1",
      Formula::forall(
          "x2", Formula::implies(Formula::forall("x3", Formula::iff(eps(v("x3"), v("x1")),
                                                                    eps(v("x3"), v("x2")))),
                                 Formula::eq(v("x1"), v("x2")))));
  FormulaPtr subsets_realized = Formula::forall_rel(
      "X1", Formula::exists(
                "x1", Formula::forall(
                          "x2", Formula::implies(
                                    carrier(v("x2")),
                                    Formula::iff(Formula::relvar("X1", {v("x2")}),
                                                 eps(v("x2"), v("x1")))))));
  e.sentence = Formula::conj(
      {infinite_carrier, members_in_carrier, extensional, subsets_realized});
  return e;
}

// Completely ordered field: the fifteen ordered-field axioms plus the
// least-upper-bound principle.
CatalogueEntry make_r2() {
  CatalogueEntry e;
  e.key = "R2";
  e.note = "complete ordered field (ordered-field axioms and least upper bounds)";
  e.vocab.add_relation("less", 2);
  e.vocab.add_function("add", 2);
  e.vocab.add_function("mul", 2);
  e.vocab.add_function("zero", 0);
  e.vocab.add_function("one", 0);
  auto add = [](TermPtr a, TermPtr b) { return Term::fn("add", {std::move(a), std::move(b)}); };
  auto mul = [](TermPtr a, TermPtr b) { return Term::fn("mul", {std::move(a), std::move(b)}); };
  auto less = [](TermPtr a, TermPtr b) {
    return Formula::rel("less", {std::move(a), std::move(b)});
  };
  auto zero = []() { return Term::fn("zero", {}); };
  auto one = []() { return Term::fn("one", {}); };
  auto all1 = [](FormulaPtr f) { return Formula::forall("x1", std::move(f)); };
  auto all2 = [&all1](FormulaPtr f) {
    return all1(Formula::forall("x2", std::move(f)));
  };
  auto all3 = [&all2](FormulaPtr f) {
    return all2(Formula::forall("x3", std::move(f)));
  };
  auto leq = [&less](TermPtr a, TermPtr b) {
    return Formula::disj({less(a, b), Formula::eq(a, b)});
  };

  std::vector<FormulaPtr> ax;
  ax.push_back(all3(Formula::eq(add(add(v("x1"), v("x2")), v("x3")),
                                add(v("x1"), add(v("x2"), v("x3"))))));
  ax.push_back(all2(Formula::eq(add(v("x1"), v("x2")), add(v("x2"), v("x1")))));
  ax.push_back(all1(Formula::eq(add(v("x1"), zero()), v("x1"))));
  ax.push_back(all1(Formula::exists("x2", Formula::eq(add(v("x1"), v("x2")), zero()))));
  ax.push_back(all3(Formula::eq(mul(mul(v("x1"), v("x2")), v("x3")),
                                mul(v("x1"), mul(v("x2"), v("x3"))))));
  ax.push_back(all2(Formula::eq(mul(v("x1"), v("x2")), mul(v("x2"), v("x1")))));
  ax.push_back(all1(Formula::eq(mul(v("x1"), one()), v("x1"))));
  ax.push_back(all1(Formula::implies(
      Formula::negate(Formula::eq(v("x1"), zero())),
      Formula::exists("x2", Formula::eq(mul(v("x1"), v("x2")), one())))));
  ax.push_back(all3(Formula::eq(mul(v("x1"), add(v("x2"), v("x3"))),
                                add(mul(v("x1"), v("x2")), mul(v("x1"), v("x3"))))));
  ax.push_back(Formula::negate(Formula::eq(zero(), one())));
  ax.push_back(all1(Formula::negate(less(v("x1"), v("x1")))));
  ax.push_back(all3(Formula::implies(
      Formula::conj({less(v("x1"), v("x2")), less(v("x2"), v("x3"))}),
      less(v("x1"), v("x3")))));
  ax.push_back(all2(Formula::implies(Formula::negate(Formula::eq(v("x1"), v("x2"))),
                                     Formula::disj({less(v("x1"), v("x2")),
                                                    less(v("x2"), v("x1"))}))));
  ax.push_back(all3(Formula::implies(less(v("x1"), v("x2")),
                                     less(add(v("x1"), v("x3")), add(v("x2"), v("x3"))))));
  ax.push_back(all2(Formula::implies(
      Formula::conj({less(zero(), v("x1")), less(zero(), v("x2"))}),
      less(zero(), mul(v("x1"), v("x2"))))));

  // Least upper bound principle for nonempty bounded sets.
  FormulaPtr nonempty = Formula::exists("x1", Formula::relvar("X1", {v("x1")}));
  FormulaPtr bounded = Formula::exists(
      "x2", Formula::forall("x1", Formula::implies(Formula::relvar("X1", {v("x1")}),
                                                   less(v("x1"), v("x2")))));
  FormulaPtr is_ub = Formula::forall(
      "x1", Formula::implies(Formula::relvar("X1", {v("x1")}), leq(v("x1"), v("x2"))));
  FormulaPtr is_ub_x3 = Formula::forall(
      "x1", Formula::implies(Formula::relvar("X1", {v("x1")}), leq(v("x1"), v("x3"))));
  FormulaPtr least = Formula::forall("x3", Formula::implies(is_ub_x3, leq(v("x2"), v("x3"))));
  FormulaPtr lub = Formula::forall_rel(
      "X1", Formula::implies(Formula::conj({nonempty, bounded}),
                             Formula::exists("x2", Formula::conj({is_ub, least}))));
  ax.push_back(lub);
  e.sentence = Formula::conj(std::move(ax));
  return e;
}

CatalogueEntry make_zfc2() {
  CatalogueEntry e;
  e.key = "ZFC2-templates";
  e.note = "set-theory axioms with second-order separation and replacement";
  e.vocab.add_relation("eps", 2);
  transforms::TheoryInstanceSet theory;
  theory.name = "zfc2";
  theory.sentences = transforms::zfc_base("eps");
  auto eps = [](TermPtr a, TermPtr b) {
    return Formula::rel("eps", {std::move(a), std::move(b)});
  };
  // Second-order separation.
  theory.sentences.push_back(Formula::forall_rel(
      "X1",
      Formula::forall(
          "x1", Formula::exists(
                    "x2", Formula::forall(
                              "x3", Formula::iff(eps(v("x3"), v("x2")),
                                                 Formula::conj({eps(v("x3"), v("x1")),
                                                                Formula::relvar(
                                                                    "X1", {v("x3")})})))))));
  // Second-order replacement for functional class relations.
  theory.sentences.push_back(Formula::forall_rel(
      "X2",
      Formula::implies(
          Formula::forall(
              "x1", Formula::forall(
                        "x2", Formula::forall(
                                  "x3", Formula::implies(
                                            Formula::conj(
                                                {Formula::relvar("X2", {v("x1"), v("x2")}),
                                                 Formula::relvar("X2", {v("x1"), v("x3")})}),
                                            Formula::eq(v("x2"), v("x3")))))),
          Formula::forall(
              "x1", Formula::exists(
                        "x2", Formula::forall(
                                  "x3", Formula::iff(
                                            eps(v("x3"), v("x2")),
                                            Formula::exists(
                                                "x4", Formula::conj(
                                                          {eps(v("x4"), v("x1")),
                                                           Formula::relvar(
                                                               "X2",
                                                               {v("x4"), v("x3")})})))))))));
  e.theory = std::move(theory);
  return e;
}

CatalogueEntry make_pa_base() {
  CatalogueEntry e;
  e.key = "PA-base";
  e.note = "arithmetic core over addition and multiplication";
  e.vocab.add_function(transforms::kAddSym, 2);
  e.vocab.add_function(transforms::kMulSym, 2);
  transforms::TheoryInstanceSet theory;
  theory.name = "pa_base";
  theory.sentences = transforms::peano_base(transforms::kAddSym, transforms::kMulSym);
  e.theory = std::move(theory);
  return e;
}

CatalogueEntry make_pa_doubled() {
  CatalogueEntry e;
  e.key = "PA-doubled-template";
  e.note = "two arithmetic cores over disjoint operation pairs, induction pools open";
  e.vocab = transforms::doubled_arith_vocabulary();
  e.theory = transforms::peano_doubled({}, {});
  return e;
}

}  // namespace

std::vector<std::string> keys() {
  return {"N2", "I2", "P2", "R2", "ZFC2-templates", "PA-base", "PA-doubled-template"};
}

CatalogueEntry get(const std::string& key) {
  if (key == "N2") return make_n2();
  if (key == "I2") return make_i2();
  if (key == "P2") return make_p2();
  if (key == "R2") return make_r2();
  if (key == "ZFC2-templates") return make_zfc2();
  if (key == "PA-base") return make_pa_base();
  if (key == "PA-doubled-template") return make_pa_doubled();
  throw SemanticError("unknown catalogue key '" + key + "'");
}

}  // namespace catkit::catalogue
