#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "catkit/ast.hpp"
#include "catkit/vocabulary.hpp"

namespace catkit::arith {

// First-order arithmetic formulas in which every quantifier carries an
// explicit term bound: the range of the variable is {0..bound}.
enum class BKind { Equal, Not, And, Or, Implies, Exists, Forall };

struct BFormula;
using BFormulaPtr = std::shared_ptr<const BFormula>;

struct BFormula {
  BKind kind;
  TermPtr lhs, rhs;  // Equal
  std::vector<BFormulaPtr> kids;
  std::string var;  // quantifiers
  TermPtr bound;    // quantifiers

  static BFormulaPtr eq(TermPtr a, TermPtr b);
  static BFormulaPtr negate(BFormulaPtr f);
  static BFormulaPtr conj(std::vector<BFormulaPtr> kids);
  static BFormulaPtr disj(std::vector<BFormulaPtr> kids);
  static BFormulaPtr implies(BFormulaPtr a, BFormulaPtr b);
  static BFormulaPtr exists(const std::string& var, TermPtr bound, BFormulaPtr body);
  static BFormulaPtr forall(const std::string& var, TermPtr bound, BFormulaPtr body);
};

// A verified bounded formula: terms mention only the vocabulary's function
// symbols and first-order variables, and every quantifier bound is a term
// over variables in scope at that point.
class BoundedFormula {
 public:
  static BoundedFormula verify(BFormulaPtr root, Vocabulary vocab);

  const BFormulaPtr& root() const { return root_; }
  const Vocabulary& vocab() const { return vocab_; }
  const std::set<std::string>& free_vars() const { return free_; }

  // The plain formula: each bound becomes an explicit guard
  //   exists w (add(v, w) = bound)
  // so the erased formula keeps exactly the bounded-quantifier reading.
  FormulaPtr to_formula(const std::string& add_sym) const;

 private:
  BoundedFormula() = default;
  BFormulaPtr root_;
  Vocabulary vocab_;
  std::set<std::string> free_;
};

// Two arithmetic operation pairs on the naturals, given as computable
// functions, with an evaluation capacity B. Operation results saturate at
// 2^63; saturation never equals a value within capacity, so comparisons
// against genuine values stay sound.
struct StandardDoubledModel {
  std::map<std::string, std::function<std::uint64_t(std::uint64_t, std::uint64_t)>> ops;
  std::uint64_t capacity = 1'000'000;

  static StandardDoubledModel standard(std::uint64_t capacity = 1'000'000);
  // The primed pair conjugated by a bijection sigma: a +' b =
  // sigma(inv(a) + inv(b)), and likewise for multiplication.
  static StandardDoubledModel conjugated(std::function<std::uint64_t(std::uint64_t)> sigma,
                                         std::function<std::uint64_t(std::uint64_t)> sigma_inv,
                                         std::uint64_t capacity = 1'000'000);
};

constexpr std::uint64_t kSaturated = std::uint64_t{1} << 63;

using BEnv = std::map<std::string, std::uint64_t>;

std::uint64_t eval_term(const StandardDoubledModel& m, const TermPtr& t, const BEnv& env);

// Decidable evaluation; every quantifier ranges over {0..bound}, and a
// bound exceeding the model's capacity raises CapacityError.
bool eval_bounded(const StandardDoubledModel& m, const BoundedFormula& f, const BEnv& env);

// The identity elements of the primed pair, found by scanning; the scan is
// capped by the model capacity.
std::uint64_t primed_zero(const StandardDoubledModel& m);
std::uint64_t primed_one(const StandardDoubledModel& m);

// f(a) where f(0) = 0' and f(i+1) = f(i) +' 1'.
std::uint64_t chain_value(const StandardDoubledModel& m, std::uint64_t a);

// A code x together with the modulus step d witnessing that the chain
// values f(0..a) are the residues x mod ((i+1)d + 1).
struct PhiWitness {
  std::uint64_t x = 0;
  std::uint64_t d = 0;
  std::vector<std::uint64_t> values;
};

// Builds the witness for (a, f(a)) by residue coding; fails with
// CapacityError when no code fits in the supported range.
PhiWitness construct_phi_witness(const StandardDoubledModel& m, std::uint64_t a);

// Decision procedure for the coded-graph formula on a computable model:
// phi(a, b) holds exactly when b is the chain value of a.
bool decide_phi(const StandardDoubledModel& m, std::uint64_t a, std::uint64_t b);

struct PhiGraphReport {
  int bound = 0;
  int psi_check_bound = 0;
  std::vector<std::uint64_t> map;  // chain values for 0..bound
  bool total = false;
  bool unique = false;
  bool identity = false;
  bool add_hom = false;
  bool mul_hom = false;
  bool psi_validated = false;  // formula-level checks up to psi_check_bound
  bool ok() const { return total && unique && add_hom && mul_hom && psi_validated; }
};

std::string write_report(const PhiGraphReport& report);

// Checks totality and uniqueness of the coded graph, both homomorphism
// clauses on all in-range triples, and validates the coding formula itself
// against constructed witnesses up to psi_check_bound (the residue codes
// grow too fast for formula-level evaluation at larger arguments).
PhiGraphReport verify_phi_graph(const StandardDoubledModel& m, int bound,
                                int psi_check_bound = 10);

}  // namespace catkit::arith
