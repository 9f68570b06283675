#include "catkit/coding.hpp"

#include "catkit/errors.hpp"
#include "catkit/hygiene.hpp"
#include "catkit/schemas.hpp"

namespace catkit::transforms {

namespace {

using arith::BFormula;
using arith::BFormulaPtr;

TermPtr v(const std::string& name) { return Term::var(name); }
TermPtr add(TermPtr a, TermPtr b) { return Term::fn(kAddSym, {std::move(a), std::move(b)}); }
TermPtr mul(TermPtr a, TermPtr b) { return Term::fn(kMulSym, {std::move(a), std::move(b)}); }
TermPtr add_p(TermPtr a, TermPtr b) { return Term::fn(kAddPSym, {std::move(a), std::move(b)}); }
TermPtr mul_p(TermPtr a, TermPtr b) { return Term::fn(kMulPSym, {std::move(a), std::move(b)}); }

// The modulus for position `idx`: idx*d + d + o, i.e. (idx+1)*d + 1 with o
// playing the defined one.
TermPtr modulus(TermPtr idx, const std::string& d, const std::string& o) {
  return add(add(mul(std::move(idx), v(d)), v(d)), v(o));
}

// The coded sequence has `val` at position `idx`:  val < modulus  and
// x = q*modulus + val for some q. The remainder conjunct binds e with
// val + e = modulus and e nonzero (z names the defined zero).
BFormulaPtr value_at(const std::string& x, const std::string& d, const std::string& z,
                     const std::string& o, TermPtr idx, TermPtr val) {
  TermPtr m1 = modulus(idx, d, o);
  BFormulaPtr in_range = BFormula::exists(
      "e", m1,
      BFormula::conj({BFormula::eq(add(val, v("e")), m1),
                      BFormula::negate(BFormula::eq(v("e"), v(z)))}));
  BFormulaPtr residue =
      BFormula::exists("q", v(x), BFormula::eq(add(mul(v("q"), m1), val), v(x)));
  return BFormula::conj({std::move(in_range), std::move(residue)});
}

}  // namespace

arith::BoundedFormula psi_bounded() {
  const std::string x = "x", u = "u", vv = "v";

  // f(0) = 0'
  BFormulaPtr start = value_at(x, "d", "z", "o", v("z"), v("zp"));
  // every step adds the primed one
  BFormulaPtr step = BFormula::forall(
      "i", v(u),
      BFormula::implies(
          BFormula::negate(BFormula::eq(v("i"), v(u))),
          BFormula::exists(
              "a", v(x),
              BFormula::conj({value_at(x, "d", "z", "o", v("i"), v("a")),
                              value_at(x, "d", "z", "o", add(v("i"), v("o")),
                                       add_p(v("a"), v("op")))}))));
  // f(u) = v
  BFormulaPtr finish = value_at(x, "d", "z", "o", v(u), v(vv));

  BFormulaPtr zero_def = BFormula::eq(add(v("z"), v("z")), v("z"));
  BFormulaPtr one_def =
      BFormula::conj({BFormula::eq(mul(v("o"), v("o")), v("o")),
                      BFormula::negate(BFormula::eq(add(v("o"), v("o")), v("o")))});
  BFormulaPtr zero_p_def = BFormula::eq(add_p(v("zp"), v("zp")), v("zp"));
  BFormulaPtr one_p_def =
      BFormula::conj({BFormula::eq(mul_p(v("op"), v("op")), v("op")),
                      BFormula::negate(BFormula::eq(add_p(v("op"), v("op")), v("op")))});

  BFormulaPtr body = BFormula::conj({one_p_def, start, step, finish});
  body = BFormula::exists("op", v(x), std::move(body));
  body = BFormula::exists("zp", v(x), BFormula::conj({zero_p_def, std::move(body)}));
  body = BFormula::exists("o", v(x), BFormula::conj({one_def, std::move(body)}));
  body = BFormula::exists("z", v(x), BFormula::conj({zero_def, std::move(body)}));
  body = BFormula::exists("d", v(x), std::move(body));

  return arith::BoundedFormula::verify(std::move(body), doubled_arith_vocabulary());
}

GraphFormulas build_graph_formula() {
  GraphFormulas out;
  out.psi = psi_bounded().to_formula(kAddSym);
  out.phi = Formula::exists("x", out.psi);
  return out;
}

namespace {

// phi with its two free variables instantiated.
FormulaPtr phi_at(const FormulaPtr& phi, const std::string& a, const std::string& b) {
  return substitute_fo(phi, {{"u", Term::var(a)}, {"v", Term::var(b)}});
}

}  // namespace

FormulaPtr isom_statement() {
  FormulaPtr phi = build_graph_formula().phi;

  std::vector<FormulaPtr> conjuncts;
  // Totality and functionality.
  conjuncts.push_back(Formula::forall("u1", Formula::exists("v1", phi_at(phi, "u1", "v1"))));
  conjuncts.push_back(Formula::forall(
      "u1", Formula::forall(
                "v1", Formula::forall(
                          "v2", Formula::implies(
                                    Formula::conj({phi_at(phi, "u1", "v1"),
                                                   phi_at(phi, "u1", "v2")}),
                                    Formula::eq(Term::var("v1"), Term::var("v2")))))));
  // Injectivity and surjectivity.
  conjuncts.push_back(Formula::forall(
      "u1", Formula::forall(
                "u2", Formula::forall(
                          "v1", Formula::implies(
                                    Formula::conj({phi_at(phi, "u1", "v1"),
                                                   phi_at(phi, "u2", "v1")}),
                                    Formula::eq(Term::var("u1"), Term::var("u2")))))));
  conjuncts.push_back(Formula::forall("v1", Formula::exists("u1", phi_at(phi, "u1", "v1"))));

  // Homomorphism clauses for both operation pairs.
  auto hom = [&phi](const std::string& op, const std::string& op_primed) {
    FormulaPtr graph_all =
        Formula::conj({phi_at(phi, "h1", "g1"), phi_at(phi, "h2", "g2"),
                       phi_at(phi, "h3", "g3")});
    FormulaPtr inner = Formula::implies(
        std::move(graph_all),
        Formula::eq(Term::fn(op_primed, {Term::var("g1"), Term::var("g2")}), Term::var("g3")));
    for (const char* g : {"g3", "g2", "g1"}) inner = Formula::forall(g, std::move(inner));
    FormulaPtr core = Formula::implies(
        Formula::eq(Term::fn(op, {Term::var("h1"), Term::var("h2")}), Term::var("h3")),
        std::move(inner));
    for (const char* h : {"h3", "h2", "h1"}) core = Formula::forall(h, std::move(core));
    return core;
  };
  conjuncts.push_back(hom(kAddSym, kAddPSym));
  conjuncts.push_back(hom(kMulSym, kMulPSym));

  return Formula::conj(std::move(conjuncts));
}

}  // namespace catkit::transforms
