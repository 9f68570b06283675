#pragma once

// Deterministic generators shared by the property suites and the
// acceptance criteria. A hand-rolled xorshift keeps the streams identical
// across platforms and standard libraries.

#include <cstdint>
#include <string>
#include <vector>

#include "catkit/ast.hpp"
#include "catkit/eval.hpp"
#include "catkit/structure.hpp"
#include "catkit/vocabulary.hpp"

namespace catkit::testgen {

struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }

  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
  bool coin() { return next() & 1; }
};

struct GenOptions {
  Vocabulary vocab;
  int max_depth = 6;
  bool allow_so = true;
  // Product cap over the candidate spaces of nested second-order
  // quantifiers, estimated at domain size 3; keeps full evaluation cheap.
  std::uint64_t so_product_cap = 4096;
  int so_nesting_cap = 2;
};

class FormulaGen {
 public:
  FormulaGen(Rng& rng, const GenOptions& opt) : rng_(rng), opt_(opt) {}

  FormulaPtr sentence() {
    fo_.clear();
    so_rel_.clear();
    so_fun_.clear();
    so_product_ = 1;
    so_nesting_ = 0;
    fresh_ = 0;
    // Start under one first-order binder so atoms always have a term source.
    std::string var = fresh_fo();
    fo_.push_back(var);
    FormulaPtr body = formula(opt_.max_depth - 1);
    fo_.pop_back();
    return rng_.coin() ? Formula::forall(var, body) : Formula::exists(var, body);
  }

  FormulaPtr formula(int depth) {
    if (depth <= 0) return atom();
    switch (rng_.below(8)) {
      case 0:
        return atom();
      case 1:
        return Formula::negate(formula(depth - 1));
      case 2: {
        std::vector<FormulaPtr> kids;
        int count = 2 + rng_.below(2);
        for (int i = 0; i < count; ++i) kids.push_back(formula(depth - 1));
        return Formula::conj(std::move(kids));
      }
      case 3: {
        std::vector<FormulaPtr> kids;
        int count = 2 + rng_.below(2);
        for (int i = 0; i < count; ++i) kids.push_back(formula(depth - 1));
        return Formula::disj(std::move(kids));
      }
      case 4:
        return Formula::implies(formula(depth - 1), formula(depth - 1));
      case 5:
        return Formula::iff(formula(depth - 1), formula(depth - 1));
      case 6: {
        std::string var = fresh_fo();
        fo_.push_back(var);
        FormulaPtr body = formula(depth - 1);
        fo_.pop_back();
        return rng_.coin() ? Formula::forall(var, body) : Formula::exists(var, body);
      }
      default:
        return so_quantifier(depth);
    }
  }

 private:
  FormulaPtr so_quantifier(int depth) {
    if (!opt_.allow_so || so_nesting_ >= opt_.so_nesting_cap) return formula(depth - 1);
    // Candidate spaces at domain 3: arity-1 relations 8, arity-2 relations
    // 512, nullary functions 3, unary functions 27.
    struct Choice {
      bool function;
      int arity;
      std::uint64_t cost;
    };
    static const Choice kChoices[] = {{false, 1, 8}, {false, 2, 512}, {true, 0, 3}, {true, 1, 27}};
    std::vector<Choice> viable;
    for (const auto& c : kChoices)
      if (so_product_ * c.cost <= opt_.so_product_cap) viable.push_back(c);
    if (viable.empty()) return formula(depth - 1);
    Choice c = viable[static_cast<std::size_t>(rng_.below(static_cast<int>(viable.size())))];
    std::string var = c.function
                          ? "G" + std::to_string(fresh_++) + "_" + std::to_string(c.arity) + "f"
                          : "Y" + std::to_string(fresh_++) + "_" + std::to_string(c.arity);
    so_product_ *= c.cost;
    ++so_nesting_;
    if (c.function)
      so_fun_.push_back({var, c.arity});
    else
      so_rel_.push_back({var, c.arity});
    FormulaPtr body = formula(depth - 1);
    if (c.function)
      so_fun_.pop_back();
    else
      so_rel_.pop_back();
    --so_nesting_;
    so_product_ /= c.cost;
    bool universal = rng_.coin();
    if (c.function)
      return universal ? Formula::forall_fun(var, body) : Formula::exists_fun(var, body);
    return universal ? Formula::forall_rel(var, body) : Formula::exists_rel(var, body);
  }

  FormulaPtr atom() {
    // Collect the relation-shaped options: vocabulary relations and
    // relation variables in scope; fall back to equality.
    struct RelOpt {
      bool variable;
      std::string name;
      int arity;
    };
    std::vector<RelOpt> rels;
    for (const auto& r : opt_.vocab.relations()) rels.push_back({false, r.name, r.arity});
    for (const auto& [name, arity] : so_rel_) rels.push_back({true, name, arity});
    if (!rels.empty() && rng_.below(3) != 0) {
      RelOpt r = rels[static_cast<std::size_t>(rng_.below(static_cast<int>(rels.size())))];
      std::vector<TermPtr> args;
      for (int i = 0; i < r.arity; ++i) args.push_back(term(1));
      return r.variable ? Formula::relvar(r.name, std::move(args))
                        : Formula::rel(r.name, std::move(args));
    }
    return Formula::eq(term(1), term(1));
  }

  TermPtr term(int depth) {
    struct FunOpt {
      bool variable;
      std::string name;
      int arity;
    };
    std::vector<FunOpt> funs;
    for (const auto& f : opt_.vocab.functions()) funs.push_back({false, f.name, f.arity});
    for (const auto& [name, arity] : so_fun_) funs.push_back({true, name, arity});
    bool can_var = !fo_.empty();
    if (depth > 0 && !funs.empty() && (!can_var || rng_.coin())) {
      FunOpt f = funs[static_cast<std::size_t>(rng_.below(static_cast<int>(funs.size())))];
      std::vector<TermPtr> args;
      for (int i = 0; i < f.arity; ++i) args.push_back(term(depth - 1));
      return f.variable ? Term::fvar(f.name, std::move(args))
                        : Term::fn(f.name, std::move(args));
    }
    if (can_var)
      return Term::var(fo_[static_cast<std::size_t>(rng_.below(static_cast<int>(fo_.size())))]);
    // No variable in scope: fall back to a constant-like application.
    for (const auto& f : funs)
      if (f.arity == 0 && !f.variable) return Term::fn(f.name, {});
    // The generator always opens a binder before atoms, so this is
    // unreachable for sane options.
    return Term::fn(funs.front().name, {});
  }

  std::string fresh_fo() { return "v" + std::to_string(fresh_++); }

  Rng& rng_;
  const GenOptions& opt_;
  std::vector<std::string> fo_;
  std::vector<std::pair<std::string, int>> so_rel_;
  std::vector<std::pair<std::string, int>> so_fun_;
  std::uint64_t so_product_ = 1;
  int so_nesting_ = 0;
  int fresh_ = 0;
};

inline FiniteStructure random_structure(Rng& rng, const Vocabulary& vocab, int n) {
  FiniteStructure m(vocab, n);
  for (const auto& r : vocab.relations()) {
    RelTable t = empty_relation(n, r.arity);
    for (std::size_t i = 0; i < t.bits.size(); ++i) t.bits[i] = rng.coin();
    m.set_relation(r.name, std::move(t));
  }
  for (const auto& f : vocab.functions()) {
    FunTable t = constant_function(n, f.arity);
    for (auto& v : t.vals) v = rng.below(n);
    m.set_function(f.name, std::move(t));
  }
  return m;
}

// A nonempty subset closed under every function of the structure.
inline std::vector<bool> random_closed_subset(Rng& rng, const FiniteStructure& m) {
  int n = m.size();
  std::vector<bool> in(static_cast<std::size_t>(n), false);
  in[static_cast<std::size_t>(rng.below(n))] = true;
  for (int i = 0; i < n; ++i)
    if (rng.below(3) == 0) in[static_cast<std::size_t>(i)] = true;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& f : m.vocab().functions()) {
      const FunTable& table = m.function(f.name);
      std::uint64_t cells = tuple_count(n, f.arity);
      for (std::uint64_t rank = 0; rank < cells; ++rank) {
        std::vector<int> tuple = tuple_at(rank, n, f.arity);
        bool inside = true;
        for (int v : tuple)
          if (!in[static_cast<std::size_t>(v)]) inside = false;
        if (!inside) continue;
        int value = table.at(rank);
        if (!in[static_cast<std::size_t>(value)]) {
          in[static_cast<std::size_t>(value)] = true;
          grew = true;
        }
      }
    }
  }
  return in;
}

}  // namespace catkit::testgen
