#include <doctest.h>

#include <algorithm>

#include "catkit/categoricity.hpp"
#include "catkit/enumerate.hpp"
#include "catkit/errors.hpp"
#include "catkit/isomorphism.hpp"
#include "catkit/parser.hpp"
#include "gen.hpp"

using namespace catkit;
using namespace catkit::categoricity;

namespace {

Vocabulary binary_vocab() {
  Vocabulary v;
  v.add_relation("E", 2);
  return v;
}

FiniteStructure two_cycle() {
  FiniteStructure m(binary_vocab(), 2);
  RelTable e = empty_relation(2, 2);
  e.bits[tuple_rank({0, 1}, 2)] = true;
  e.bits[tuple_rank({1, 0}, 2)] = true;
  m.set_relation("E", e);
  return m;
}

FiniteStructure two_loops() {
  FiniteStructure m(binary_vocab(), 2);
  RelTable e = empty_relation(2, 2);
  e.bits[tuple_rank({0, 0}, 2)] = true;
  e.bits[tuple_rank({1, 1}, 2)] = true;
  m.set_relation("E", e);
  return m;
}

}  // namespace

TEST_CASE("enumerate_structures: counts and determinism") {
  Vocabulary unary;
  unary.add_relation("R", 1);
  CHECK(enumerate_structures(unary, 2, 1 << 20).size() == 4);

  Vocabulary fn;
  fn.add_function("f", 1);
  CHECK(enumerate_structures(fn, 2, 1 << 20).size() == 4);

  CHECK(enumerate_structures(binary_vocab(), 2, 1 << 20).size() == 16);
  CHECK(interpretation_count(binary_vocab(), 3, 1 << 20) == 512);
  CHECK_THROWS_AS(interpretation_count(binary_vocab(), 5, 1 << 20), CapacityError);

  // Streaming agrees with random access.
  StructureEnumerator en(binary_vocab(), 2, 1 << 20);
  std::size_t i = 0;
  while (auto m = en.next()) {
    CHECK(*m == structure_at(binary_vocab(), 2, i));
    ++i;
  }
  CHECK(i == 16);
}

TEST_CASE("enumerate_up_to_iso: class counts by brute-force dedup") {
  // Independent oracle: group all labeled structures by pairwise
  // isomorphism, then compare counts.
  for (int n = 1; n <= 3; ++n) {
    auto all = enumerate_structures(binary_vocab(), n, 1 << 20);
    std::vector<FiniteStructure> reps_oracle;
    std::vector<std::uint64_t> class_sizes;
    for (const auto& m : all) {
      bool placed = false;
      for (std::size_t c = 0; c < reps_oracle.size(); ++c)
        if (find_isomorphism(m, reps_oracle[c])) {
          ++class_sizes[c];
          placed = true;
          break;
        }
      if (!placed) {
        reps_oracle.push_back(m);
        class_sizes.push_back(1);
      }
    }
    auto reps = enumerate_up_to_iso(binary_vocab(), n, 1 << 20);
    CHECK(reps.size() == reps_oracle.size());
    // Class count times average class size recovers the labeled total.
    std::uint64_t total = 0;
    for (std::uint64_t s : class_sizes) total += s;
    CHECK(total == all.size());
  }
  CHECK(enumerate_up_to_iso(binary_vocab(), 2, 1 << 20).size() == 10);
  CHECK(enumerate_up_to_iso(binary_vocab(), 3, 1 << 20).size() == 104);
}

TEST_CASE("find_isomorphism: identity, hand-checked pair, and least witness") {
  FiniteStructure a = two_cycle();
  auto self = find_isomorphism(a, a);
  REQUIRE(self);
  CHECK(self->map == std::vector<int>{0, 1});  // identity is the least
  CHECK(self->checked);
  CHECK(self->verify(a, a));

  CHECK(!find_isomorphism(two_cycle(), two_loops()));

  // Empty vocabulary, equal sizes: the identity bijection.
  FiniteStructure b1(Vocabulary{}, 3), b2(Vocabulary{}, 3);
  auto bare = find_isomorphism(b1, b2);
  REQUIRE(bare);
  CHECK(bare->map == std::vector<int>{0, 1, 2});

  // Size mismatch is immediate, vocabulary mismatch is an error.
  CHECK(!find_isomorphism(b1, FiniteStructure(Vocabulary{}, 2)));
  CHECK_THROWS_AS(find_isomorphism(b1, two_cycle()), SemanticError);
}

TEST_CASE("isomorphism is an equivalence on sampled triples") {
  testgen::Rng rng(246810);
  auto all = enumerate_structures(binary_vocab(), 3, 1 << 20);
  for (int i = 0; i < 40; ++i) {
    const auto& a = all[static_cast<std::size_t>(rng.below(static_cast<int>(all.size())))];
    // Reflexivity.
    auto self = find_isomorphism(a, a);
    REQUIRE(self);
    CHECK(self->verify(a, a));
    // Symmetry: invert the certificate.
    const auto& b = all[static_cast<std::size_t>(rng.below(static_cast<int>(all.size())))];
    auto ab = find_isomorphism(a, b);
    auto ba = find_isomorphism(b, a);
    CHECK(ab.has_value() == ba.has_value());
    if (ab) {
      IsomorphismCertificate inverse;
      inverse.map.assign(ab->map.size(), 0);
      for (std::size_t s = 0; s < ab->map.size(); ++s)
        inverse.map[static_cast<std::size_t>(ab->map[s])] = static_cast<int>(s);
      CHECK(inverse.verify(b, a));
    }
    // Transitivity: compose certificates.
    const auto& c = all[static_cast<std::size_t>(rng.below(static_cast<int>(all.size())))];
    auto bc = find_isomorphism(b, c);
    if (ab && bc) {
      IsomorphismCertificate comp;
      comp.map.assign(ab->map.size(), 0);
      for (std::size_t s = 0; s < ab->map.size(); ++s)
        comp.map[s] = bc->map[static_cast<std::size_t>(ab->map[s])];
      CHECK(comp.verify(a, c));
    }
  }
}

TEST_CASE("categorical_up_to: the three spec verdicts") {
  Vocabulary empty;
  auto singleton = categorical_up_to(parse_formula("!x !y x = y", empty), empty, 4);
  CHECK(singleton.verdict == Verdict::Categorical);
  CHECK(singleton.census[0].model_count == 1);
  CHECK(singleton.census[1].model_count == 0);

  auto trivial = categorical_up_to(parse_formula("!x x = x", empty), empty, 2);
  CHECK(trivial.verdict == Verdict::NonCategorical);
  REQUIRE(trivial.witness);
  CHECK(!trivial.witness_same_size);
  CHECK(trivial.witness->first.size() == 1);
  CHECK(trivial.witness->second.size() == 2);

  auto vacuous = categorical_up_to(parse_formula("?x ~(x = x)", empty), empty, 3);
  CHECK(vacuous.verdict == Verdict::Vacuous);

  // Strict linear order with exactly two elements: categorical at 4.
  Vocabulary v = binary_vocab();
  FormulaPtr order = parse_formula(
      "!x ~E(x, x) & !x !y !z ((E(x, y) & E(y, z)) -> E(x, z)) & "
      "!x !y (~(x = y) -> (E(x, y) | E(y, x))) & "
      "?x ?y (~(x = y) & !z (z = x | z = y))",
      v);
  auto chain = categorical_up_to(order, v, 4);
  CHECK(chain.verdict == Verdict::Categorical);
  CHECK(chain.census[1].model_count == 2);  // the two labelings of the 2-chain
  CHECK(chain.census[1].classes.size() == 1);
  REQUIRE(chain.census[1].classes[0].sample);
  CHECK(chain.census[1].classes[0].sample->checked);
}

TEST_CASE("report witnesses re-verify and serialize deterministically") {
  Vocabulary v = binary_vocab();
  FormulaPtr sym = parse_formula("!x !y (E(x, y) -> E(y, x))", v);
  auto report = categorical_up_to(sym, v, 2);
  CHECK(report.verdict == Verdict::NonCategorical);
  REQUIRE(report.witness);
  CHECK(!find_isomorphism(report.witness->first, report.witness->second).has_value());
  CHECK(eval_full(report.witness->first, sym));
  CHECK(eval_full(report.witness->second, sym));
  std::string text = write_report(report);
  CHECK(text == write_report(categorical_up_to(sym, v, 2)));
  CHECK(text.find("verdict non-categorical") == 0);
}

TEST_CASE("census: class members sum to the labeled model count") {
  Vocabulary v = binary_vocab();
  FormulaPtr refl = parse_formula("!x E(x, x)", v);
  auto report = categorical_up_to(refl, v, 3);
  for (const auto& census : report.census) {
    std::uint64_t members = 0;
    for (const auto& cls : census.classes) members += cls.members;
    CHECK(members == census.model_count);
  }
}

TEST_CASE("cat_truth: the spec's three examples") {
  Vocabulary empty;
  CHECK(cat_truth(parse_formula("!x !y x = y", empty), empty, 3));
  CHECK(!cat_truth(parse_formula("!x x = x", empty), empty, 2));
  CHECK(cat_truth(parse_formula("?x ~(x = x)", empty), empty, 2));  // vacuous
}

TEST_CASE("jobs parameter does not change reports") {
  Vocabulary v = binary_vocab();
  FormulaPtr refl = parse_formula("!x E(x, x)", v);
  auto seq = categorical_up_to(refl, v, 3, {}, 1);
  auto par = categorical_up_to(refl, v, 3, {}, 4);
  CHECK(write_report(seq) == write_report(par));
}

TEST_CASE("lemma_eq_check agrees on the spec trio") {
  Vocabulary empty;
  auto one = lemma_eq_check(parse_formula("!x !y x = y", empty), empty, 2);
  CHECK(one.agree);
  CHECK(one.bounded_categorical);
  CHECK(one.cat_truth_value);
  CHECK(one.cat_plus_valid);

  auto valid = lemma_eq_check(parse_formula("?X1 !x X1(x)", empty), empty, 2);
  CHECK(valid.agree);
  CHECK(!valid.bounded_categorical);  // sizes 1 and 2 are both modeled
  REQUIRE(valid.counterexample);
  // The counterexample structure refutes the open categoricity sentence.
  transforms::VocabularyRenaming ren = transforms::VocabularyRenaming::primes(empty);
  auto names = transforms::default_cat_names(empty, ren);
  FormulaPtr plus = transforms::cat_plus(parse_formula("?X1 !x X1(x)", empty), empty, ren, names);
  CHECK(!eval_full(*valid.counterexample, plus));

  auto unsat = lemma_eq_check(parse_formula("?x ~(x = x)", empty), empty, 2);
  CHECK(unsat.agree);
  CHECK(unsat.bounded_categorical);  // vacuously
}

TEST_CASE("unique_isomorphism separates rigid and floppy sentences") {
  Vocabulary empty;
  FormulaPtr two = parse_formula("?x ?y (~(x = y) & !z (z = x | z = y))", empty);
  auto floppy = unique_isomorphism(two, empty, 2);
  CHECK(floppy.base.verdict == Verdict::Categorical);
  REQUIRE(floppy.pairs.size() == 1);
  CHECK(floppy.pairs[0].isomorphisms == 2);
  CHECK(!floppy.all_unique);

  Vocabulary v = binary_vocab();
  FormulaPtr chain = parse_formula(
      "!x ~E(x, x) & !x !y !z ((E(x, y) & E(y, z)) -> E(x, z)) & "
      "!x !y (~(x = y) -> (E(x, y) | E(y, x))) & "
      "?x ?y (~(x = y) & !z (z = x | z = y))",
      v);
  auto rigid = unique_isomorphism(chain, v, 2);
  REQUIRE(rigid.pairs.size() == 1);
  CHECK(rigid.pairs[0].isomorphisms == 1);
  CHECK(rigid.all_unique);

  FormulaPtr one = parse_formula("!x !y x = y", empty);
  auto tiny = unique_isomorphism(one, empty, 3);
  CHECK(tiny.all_unique);
  CHECK(tiny.pairs[0].isomorphisms == 1);
}
