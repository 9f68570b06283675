#include <doctest.h>

#include <map>

#include "catkit/arith.hpp"
#include "catkit/coding.hpp"
#include "catkit/errors.hpp"
#include "catkit/hygiene.hpp"
#include "catkit/parser.hpp"
#include "catkit/printer.hpp"
#include "catkit/schemas.hpp"
#include "catkit/tptp.hpp"
#include "gen.hpp"

using namespace catkit;
using namespace catkit::arith;

namespace {

TermPtr v(const std::string& n) { return Term::var(n); }
TermPtr add(TermPtr a, TermPtr b) {
  return Term::fn(transforms::kAddSym, {std::move(a), std::move(b)});
}
TermPtr mul(TermPtr a, TermPtr b) {
  return Term::fn(transforms::kMulSym, {std::move(a), std::move(b)});
}

// Straight recursive evaluator over the bounded tree, independent of the
// compiled machine in the library.
bool naive_eval(const StandardDoubledModel& m, const BFormulaPtr& f,
                std::map<std::string, std::uint64_t>& env) {
  auto term = [&](const TermPtr& t) { return eval_term(m, t, env); };
  switch (f->kind) {
    case BKind::Equal:
      return term(f->lhs) == term(f->rhs);
    case BKind::Not:
      return !naive_eval(m, f->kids[0], env);
    case BKind::And:
      for (const auto& k : f->kids)
        if (!naive_eval(m, k, env)) return false;
      return true;
    case BKind::Or:
      for (const auto& k : f->kids)
        if (naive_eval(m, k, env)) return true;
      return false;
    case BKind::Implies:
      return !naive_eval(m, f->kids[0], env) || naive_eval(m, f->kids[1], env);
    case BKind::Exists:
    case BKind::Forall: {
      std::uint64_t limit = term(f->bound);
      bool universal = f->kind == BKind::Forall;
      auto saved = env.find(f->var) != env.end()
                       ? std::optional<std::uint64_t>(env[f->var])
                       : std::nullopt;
      for (std::uint64_t x = 0; x <= limit; ++x) {
        env[f->var] = x;
        bool value = naive_eval(m, f->kids[0], env);
        if (value != universal) {
          if (saved)
            env[f->var] = *saved;
          else
            env.erase(f->var);
          return !universal;
        }
      }
      if (saved)
        env[f->var] = *saved;
      else
        env.erase(f->var);
      return universal;
    }
  }
  return false;
}

// Random bounded formulas whose quantifier bounds are variables or sums of
// variables in scope, keeping every loop short.
BFormulaPtr random_bounded(testgen::Rng& rng, std::vector<std::string>& scope, int depth,
                           int& quantifiers) {
  auto random_term = [&](auto&& self, int d) -> TermPtr {
    if (d <= 0 || rng.below(3) == 0)
      return v(scope[static_cast<std::size_t>(rng.below(static_cast<int>(scope.size())))]);
    TermPtr a = self(self, d - 1);
    TermPtr b = self(self, d - 1);
    return rng.coin() ? add(std::move(a), std::move(b)) : mul(std::move(a), std::move(b));
  };
  if (depth <= 0 || rng.below(4) == 0)
    return BFormula::eq(random_term(random_term, 1), random_term(random_term, 1));
  switch (rng.below(5)) {
    case 0:
      return BFormula::negate(random_bounded(rng, scope, depth - 1, quantifiers));
    case 1:
      return BFormula::conj({random_bounded(rng, scope, depth - 1, quantifiers),
                             random_bounded(rng, scope, depth - 1, quantifiers)});
    case 2:
      return BFormula::implies(random_bounded(rng, scope, depth - 1, quantifiers),
                               random_bounded(rng, scope, depth - 1, quantifiers));
    default: {
      if (quantifiers >= 3)
        return BFormula::eq(random_term(random_term, 1), random_term(random_term, 1));
      ++quantifiers;
      std::string var = "q" + std::to_string(scope.size());
      TermPtr bound =
          rng.coin() ? v(scope[static_cast<std::size_t>(rng.below(static_cast<int>(scope.size())))])
                     : add(v(scope[static_cast<std::size_t>(rng.below(
                               static_cast<int>(scope.size())))]),
                           v(scope[static_cast<std::size_t>(rng.below(
                               static_cast<int>(scope.size())))]));
      scope.push_back(var);
      BFormulaPtr body = random_bounded(rng, scope, depth - 1, quantifiers);
      scope.pop_back();
      return rng.coin() ? BFormula::exists(var, bound, body)
                        : BFormula::forall(var, bound, body);
    }
  }
}

}  // namespace

TEST_CASE("eval_bounded: basic facts of standard arithmetic") {
  auto m = StandardDoubledModel::standard();
  Vocabulary vocab = transforms::doubled_arith_vocabulary();
  // exists x <= u (x + x = u): u is even.
  BFormulaPtr even =
      BFormula::exists("x", v("u"), BFormula::eq(add(v("x"), v("x")), v("u")));
  auto bf = BoundedFormula::verify(even, vocab);
  CHECK(eval_bounded(m, bf, {{"u", 2}}));
  CHECK(!eval_bounded(m, bf, {{"u", 3}}));
  // forall x <= u (x * z = z) with z = 0.
  BFormulaPtr zero = BFormula::forall("x", v("u"), BFormula::eq(mul(v("x"), v("z")), v("z")));
  CHECK(eval_bounded(m, BoundedFormula::verify(zero, vocab), {{"u", 50}, {"z", 0}}));
}

TEST_CASE("eval_bounded: capacity and environment errors") {
  auto m = StandardDoubledModel::standard(100);
  Vocabulary vocab = transforms::doubled_arith_vocabulary();
  BFormulaPtr f = BFormula::exists("x", v("u"), BFormula::eq(v("x"), v("u")));
  auto bf = BoundedFormula::verify(f, vocab);
  CHECK_THROWS_AS(eval_bounded(m, bf, {{"u", 101}}), CapacityError);
  CHECK_THROWS_AS(eval_bounded(m, bf, {}), SemanticError);
}

TEST_CASE("BoundedFormula verification rejects ill-formed trees") {
  Vocabulary vocab = transforms::doubled_arith_vocabulary();
  // Unbounded quantifier.
  auto unbounded = std::make_shared<BFormula>();
  unbounded->kind = BKind::Exists;
  unbounded->var = "x";
  unbounded->kids = {BFormula::eq(v("x"), v("x"))};
  CHECK_THROWS_AS(BoundedFormula::verify(unbounded, vocab), SemanticError);
  // Unknown symbol.
  CHECK_THROWS_AS(
      BoundedFormula::verify(BFormula::eq(Term::fn("weird", {v("x"), v("x")}), v("x")), vocab),
      SemanticError);
  // Free variables are reported.
  auto ok = BoundedFormula::verify(
      BFormula::exists("x", v("u"), BFormula::eq(v("x"), v("u"))), vocab);
  CHECK(ok.free_vars() == std::set<std::string>{"u"});
}

TEST_CASE("property: eval_bounded agrees with a naive evaluator") {
  auto m = StandardDoubledModel::standard();
  Vocabulary vocab = transforms::doubled_arith_vocabulary();
  testgen::Rng rng(1234321);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<std::string> scope{"u", "w"};
    int quantifiers = 0;
    BFormulaPtr f = random_bounded(rng, scope, 4, quantifiers);
    auto bf = BoundedFormula::verify(f, vocab);
    std::map<std::string, std::uint64_t> env{{"u", static_cast<std::uint64_t>(rng.below(11))},
                                             {"w", static_cast<std::uint64_t>(rng.below(11))}};
    BEnv benv(env.begin(), env.end());
    CHECK(eval_bounded(m, bf, benv) == naive_eval(m, f, env));
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("bound erasure keeps the bounded reading") {
  Vocabulary vocab = transforms::doubled_arith_vocabulary();
  BFormulaPtr even =
      BFormula::exists("x", v("u"), BFormula::eq(add(v("x"), v("x")), v("u")));
  FormulaPtr erased = BoundedFormula::verify(even, vocab).to_formula(transforms::kAddSym);
  CHECK(render_formula(erased) ==
        "(?x ((?w0 (add(x, w0) = u)) & (add(x, x) = u)))");
  CHECK(equal(parse_formula(render_formula(erased), vocab), erased));
}

TEST_CASE("identity discovery on standard and conjugated models") {
  auto std_model = StandardDoubledModel::standard();
  CHECK(primed_zero(std_model) == 0);
  CHECK(primed_one(std_model) == 1);
  CHECK(chain_value(std_model, 7) == 7);

  // Swap 4 and 5 beyond the checked range of 0..3.
  auto sigma = [](std::uint64_t k) { return k == 4 ? 5 : k == 5 ? 4 : k; };
  auto conj = StandardDoubledModel::conjugated(sigma, sigma);
  CHECK(primed_zero(conj) == 0);
  CHECK(primed_one(conj) == 1);
  CHECK(chain_value(conj, 3) == 3);
  CHECK(chain_value(conj, 4) == 5);  // the bijection value
  CHECK(chain_value(conj, 5) == 4);
}

TEST_CASE("phi decision matches the identity oracle on the standard model") {
  auto m = StandardDoubledModel::standard();
  for (std::uint64_t a = 0; a <= 20; ++a)
    for (std::uint64_t b = 0; b <= 20; ++b)
      CHECK(decide_phi(m, a, b) == (a == b));  // independent identity-map oracle
}

TEST_CASE("constructed witnesses satisfy psi at the formula level") {
  auto m = StandardDoubledModel::standard(std::uint64_t{1} << 62);
  BoundedFormula psi = transforms::psi_bounded();
  for (std::uint64_t a : {0ull, 1ull, 5ull, 8ull}) {
    PhiWitness w = construct_phi_witness(m, a);
    CHECK(eval_bounded(m, psi, {{"x", w.x}, {"u", a}, {"v", w.values.back()}}));
    // A wrong endpoint must fail on the same code.
    CHECK(!eval_bounded(m, psi, {{"x", w.x}, {"u", a}, {"v", w.values.back() + 1}}));
  }
  // The base pair (0, 0') has a small code.
  PhiWitness base = construct_phi_witness(m, 0);
  CHECK(base.values == std::vector<std::uint64_t>{0});
  CHECK(eval_bounded(m, psi, {{"x", base.x}, {"u", 0}, {"v", 0}}));
}

TEST_CASE("micro brute force: exists-x reading of phi agrees with the decision") {
  // For tiny arguments, scan all codes x <= 200 through the formula and
  // compare with the decision procedure.
  auto m = StandardDoubledModel::standard(std::uint64_t{1} << 62);
  BoundedFormula psi = transforms::psi_bounded();
  for (std::uint64_t a = 0; a <= 2; ++a) {
    for (std::uint64_t b = 0; b <= 2; ++b) {
      bool witnessed = false;
      for (std::uint64_t x = 0; x <= 200 && !witnessed; ++x)
        witnessed = eval_bounded(m, psi, {{"x", x}, {"u", a}, {"v", b}});
      CHECK(witnessed == decide_phi(m, a, b));
    }
  }
}

TEST_CASE("verify_phi_graph: standard model up to 20") {
  auto m = StandardDoubledModel::standard(std::uint64_t{1} << 62);
  PhiGraphReport report = verify_phi_graph(m, 20, 8);
  CHECK(report.total);
  CHECK(report.unique);
  CHECK(report.identity);
  CHECK(report.add_hom);
  CHECK(report.mul_hom);
  CHECK(report.psi_validated);
  CHECK(report.map.size() == 21);
}

TEST_CASE("verify_phi_graph: bound 0 checks only the base pair") {
  auto m = StandardDoubledModel::standard(std::uint64_t{1} << 62);
  PhiGraphReport report = verify_phi_graph(m, 0, 0);
  CHECK(report.ok());
  CHECK(report.map == std::vector<std::uint64_t>{0});
}

TEST_CASE("verify_phi_graph: conjugated copy reports the bijection") {
  auto sigma = [](std::uint64_t k) { return k == 9 ? 10 : k == 10 ? 9 : k; };
  auto m = StandardDoubledModel::conjugated(sigma, sigma, std::uint64_t{1} << 62);
  PhiGraphReport report = verify_phi_graph(m, 12, 6);
  CHECK(report.total);
  CHECK(report.unique);
  CHECK(report.add_hom);
  CHECK(report.mul_hom);
  CHECK(report.psi_validated);
  CHECK(!report.identity);
  CHECK(report.map[9] == 10);
  CHECK(report.map[10] == 9);
  CHECK(report.map[3] == 3);  // fixed on the initial segment
}

TEST_CASE("export_prover: deterministic bytes and round trip") {
  auto theory = transforms::peano_doubled(transforms::induction_pool(1),
                                          transforms::induction_pool(1), 1);
  FormulaPtr isom = transforms::isom_statement();
  std::string text = write_tptp(theory, isom);
  CHECK(text == write_tptp(theory, isom));
  CHECK(text.find("fof(pa_doubled_ax1, axiom,") == 0);
  CHECK(text.rfind("fof(conjecture_1, conjecture,") != std::string::npos);

  auto entries = read_tptp(text, transforms::doubled_arith_vocabulary());
  REQUIRE(entries.size() == theory.sentences.size() + 1);
  for (std::size_t i = 0; i < theory.sentences.size(); ++i) {
    CHECK(entries[i].role == "axiom");
    CHECK(equal(entries[i].formula, theory.sentences[i]));
  }
  CHECK(entries.back().role == "conjecture");
  CHECK(equal(entries.back().formula, isom));
}

TEST_CASE("export_prover: single conjecture and quoting") {
  transforms::TheoryInstanceSet empty_axioms;
  empty_axioms.name = "empty";
  Vocabulary v;
  v.add_function("0", 0);
  FormulaPtr conj = parse_formula("!x x = 0", v);
  std::string text = write_tptp(empty_axioms, conj);
  CHECK(text == "fof(conjecture_1, conjecture, ! [X] : (X = '0')).\n");
  auto back = read_tptp(text, v);
  REQUIRE(back.size() == 1);
  CHECK(equal(back[0].formula, conj));
}

TEST_CASE("export_prover rejects second-order input") {
  transforms::TheoryInstanceSet axioms;
  axioms.name = "so";
  axioms.sentences.push_back(parse_formula("?X1 !x X1(x)", Vocabulary{}));
  CHECK_THROWS_AS(write_tptp(axioms, parse_formula("!x x = x", Vocabulary{})), SemanticError);
}

TEST_CASE("prover result ingestion") {
  auto results = parse_prover_results("pa_doubled Theorem\nother CounterSatisfiable\n# note\n");
  REQUIRE(results.size() == 2);
  CHECK(results[0].problem == "pa_doubled");
  CHECK(results[0].status == "Theorem");
  CHECK_THROWS_AS(parse_prover_results("justaproblem\n"), SyntaxError);
}
