#include <doctest.h>

#include "catkit/catalogue.hpp"
#include "catkit/categoricity.hpp"
#include "catkit/errors.hpp"
#include "catkit/eval.hpp"
#include "catkit/hygiene.hpp"
#include "catkit/parser.hpp"
#include "catkit/printer.hpp"
#include "catkit/transforms.hpp"

using namespace catkit;
using catkit::catalogue::get;

TEST_CASE("catalogue keys are stable") {
  auto k = catalogue::keys();
  CHECK(k == std::vector<std::string>{"N2", "I2", "P2", "R2", "ZFC2-templates", "PA-base",
                                      "PA-doubled-template"});
  CHECK_THROWS_AS(get("nope"), SemanticError);
}

TEST_CASE("N2: vocabulary and conjunct shapes") {
  auto e = get("N2");
  CHECK(e.vocab.function_arity("s") == 1);
  CHECK(e.vocab.function_arity("0") == 0);
  CHECK(e.vocab.size() == 2);
  REQUIRE(e.sentence->kind == FormulaKind::And);
  REQUIRE(e.sentence->kids.size() == 3);
  CHECK(equal(e.sentence->kids[1],
              parse_formula("!x1 ~(s(x1) = 0)", e.vocab)));
  CHECK(equal(e.sentence->kids[2],
              parse_formula("!X1 ((X1(0) & !x1 (X1(x1) -> X1(s(x1)))) -> !x1 X1(x1))", e.vocab)));
}

TEST_CASE("I2: equals the independently quantified successor sentence") {
  auto n2 = get("N2");
  auto i2 = get("I2");
  CHECK(i2.vocab.empty());
  // Rebuild by hand: quantify the function symbol and the constant away,
  // renaming bound occurrences of the new variable first.
  SymbolToVarMap map;
  map.functions["s"] = "F1f";
  map.constants_fo["0"] = "x1";
  FormulaPtr expected = Formula::exists_fun(
      "F1f", Formula::exists("x1", symbols_to_variables(
                                        rename_bound(n2.sentence, {"x1", "F1f"}), map)));
  CHECK(equal(i2.sentence, expected));
  // The capture case that motivates the renaming: the freshness conjunct
  // must relate the hidden constant, not each element to itself.
  std::string text = render_formula(i2.sentence);
  CHECK(text.find("(~(F1f(x11) = x1))") != std::string::npos);
  FreeProfile frees = free_symbols(i2.sentence);
  CHECK(frees.symbols.empty());
  CHECK(frees.fo_vars.empty());
  CHECK(frees.so_vars.empty());
}

TEST_CASE("P2: extensionality conjunct and the relativized carrier") {
  auto p2 = get("P2");
  REQUIRE(p2.sentence->kind == FormulaKind::And);
  REQUIRE(p2.sentence->kids.size() == 4);
  CHECK(equal(p2.sentence->kids[2],
              parse_formula("!x1 !x2 (!x3 (eps(x3, x1) <-> eps(x3, x2)) -> x1 = x2)", p2.vocab)));
  // The first conjunct is literally the relativization of I2 to R.
  CHECK(equal(p2.sentence->kids[0], transforms::relativize(get("I2").sentence, "R")));
}

TEST_CASE("R2: ordered-field axioms plus the upper bound principle") {
  auto r2 = get("R2");
  REQUIRE(r2.sentence->kind == FormulaKind::And);
  CHECK(r2.sentence->kids.size() == 16);  // 15 first-order axioms + completeness
  CHECK(free_symbols(r2.sentence).symbols ==
        std::set<std::string>{"add", "less", "mul", "one", "zero"});
}

TEST_CASE("theory entries carry the expected instance counts") {
  auto zfc = get("ZFC2-templates");
  REQUIRE(zfc.theory);
  CHECK(zfc.theory->sentences.size() == 9);  // 7 base + separation + replacement
  auto pa = get("PA-base");
  REQUIRE(pa.theory);
  CHECK(pa.theory->sentences.size() == 10);
  auto doubled = get("PA-doubled-template");
  REQUIRE(doubled.theory);
  CHECK(doubled.theory->sentences.size() == 20);
}

TEST_CASE("every entry re-parses from its rendered form over its vocabulary") {
  for (const auto& key : catalogue::keys()) {
    auto e = get(key);
    if (e.sentence) {
      CHECK(equal(parse_formula(render_formula(e.sentence), e.vocab), e.sentence));
      FreeProfile frees = free_symbols(e.sentence);
      CHECK(frees.fo_vars.empty());
      CHECK(frees.so_vars.empty());
      for (const auto& s : frees.symbols) CHECK(e.vocab.contains(s));
    }
    if (e.theory) {
      for (const auto& s : e.theory->sentences) {
        CHECK(equal(parse_formula(render_formula(s), e.vocab), s));
        CHECK(is_sentence(s));
      }
    }
  }
}

TEST_CASE("finite unsatisfiability at the smallest scales") {
  // Full exhaustive bounds run in the acceptance suite; this pins the
  // small cases for fast feedback.
  auto n2 = get("N2");
  auto n2_report = categoricity::categorical_up_to(n2.sentence, n2.vocab, 3);
  CHECK(n2_report.verdict == categoricity::Verdict::Vacuous);

  auto i2 = get("I2");
  auto i2_report = categoricity::categorical_up_to(i2.sentence, i2.vocab, 3);
  CHECK(i2_report.verdict == categoricity::Verdict::Vacuous);

  auto p2 = get("P2");
  auto p2_report = categoricity::categorical_up_to(p2.sentence, p2.vocab, 2);
  CHECK(p2_report.verdict == categoricity::Verdict::Vacuous);
}
