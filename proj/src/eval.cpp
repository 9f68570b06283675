#include "catkit/eval.hpp"

#include <algorithm>
#include <numeric>

#include "catkit/errors.hpp"

namespace catkit {

namespace {

enum class SlotKind { FirstOrder, Relation, Function };

struct CTerm {
  TermKind kind;
  int index = -1;  // variable slot or function symbol index
  std::vector<CTerm> args;
};

struct CNode {
  FormulaKind kind;
  int index = -1;  // atom symbol index / variable slot / binder slot
  int arity = 0;
  std::vector<CTerm> terms;
  std::vector<CNode> kids;
  std::vector<int> order;  // evaluation order of And/Or children (cheap first)
  std::uint64_t cost = 1;
};

// Rough evaluation-cost estimate used only to order conjuncts and
// disjuncts; any deterministic choice is sound because the connectives
// are commutative. Estimated at a nominal domain size of 3, saturating.
std::uint64_t estimate(const CNode& node) {
  constexpr std::uint64_t kCap = std::uint64_t{1} << 60;
  auto sat_mul = [](std::uint64_t a, std::uint64_t b) {
    if (b != 0 && a > kCap / b) return kCap;
    return a * b;
  };
  auto sat_pow = [&sat_mul](std::uint64_t base, std::uint64_t exp) {
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i < exp && v < kCap; ++i) v = sat_mul(v, base);
    return v;
  };
  switch (node.kind) {
    case FormulaKind::Equal:
    case FormulaKind::Rel:
    case FormulaKind::RelVar:
      return 1;
    case FormulaKind::Not:
      return 1 + node.kids[0].cost;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff: {
      std::uint64_t sum = 1;
      for (const auto& k : node.kids) sum = std::min(kCap, sum + k.cost);
      return sum;
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      return 1 + sat_mul(3, node.kids[0].cost);
    case FormulaKind::ForallRel:
    case FormulaKind::ExistsRel:
      return 1 + sat_mul(sat_pow(2, sat_pow(3, static_cast<std::uint64_t>(node.arity))),
                         node.kids[0].cost);
    case FormulaKind::ForallFun:
    case FormulaKind::ExistsFun:
      return 1 + sat_mul(sat_pow(3, sat_pow(3, static_cast<std::uint64_t>(node.arity))),
                         node.kids[0].cost);
  }
  return 1;
}

struct FreeSlot {
  std::string name;
  SlotKind kind;
  int arity;
  int slot;
};

class Compiler {
 public:
  explicit Compiler(const Vocabulary& vocab) : vocab_(vocab) {}

  CNode compile(const FormulaPtr& f) {
    CNode node;
    node.kind = f->kind;
    node.arity = f->arity;
    switch (f->kind) {
      case FormulaKind::Equal:
      case FormulaKind::Rel:
      case FormulaKind::RelVar:
        if (f->kind == FormulaKind::Rel) {
          node.index = relation_symbol(f->name, f->arity);
        } else if (f->kind == FormulaKind::RelVar) {
          node.index = lookup_var(f->name, SlotKind::Relation, f->arity);
        }
        for (const auto& t : f->terms) node.terms.push_back(compile_term(t));
        break;
      case FormulaKind::Not:
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Implies:
      case FormulaKind::Iff:
        for (const auto& k : f->kids) node.kids.push_back(compile(k));
        if (f->kind == FormulaKind::And || f->kind == FormulaKind::Or) {
          node.order.resize(node.kids.size());
          std::iota(node.order.begin(), node.order.end(), 0);
          std::stable_sort(node.order.begin(), node.order.end(),
                           [&](int a, int b) { return node.kids[a].cost < node.kids[b].cost; });
        }
        break;
      case FormulaKind::Forall:
      case FormulaKind::Exists:
        node.index = push_bound(f->name, SlotKind::FirstOrder, 0);
        node.kids.push_back(compile(f->kids[0]));
        pop_bound(f->name);
        break;
      case FormulaKind::ForallRel:
      case FormulaKind::ExistsRel:
        node.index = push_bound(f->name, SlotKind::Relation, f->arity);
        node.kids.push_back(compile(f->kids[0]));
        pop_bound(f->name);
        break;
      case FormulaKind::ForallFun:
      case FormulaKind::ExistsFun:
        node.index = push_bound(f->name, SlotKind::Function, f->arity);
        node.kids.push_back(compile(f->kids[0]));
        pop_bound(f->name);
        break;
    }
    node.cost = estimate(node);
    return node;
  }

  CTerm compile_term(const TermPtr& t) {
    CTerm out;
    out.kind = t->kind;
    switch (t->kind) {
      case TermKind::Variable:
        out.index = lookup_var(t->name, SlotKind::FirstOrder, 0);
        break;
      case TermKind::Function: {
        auto k = vocab_.function_arity(t->name);
        if (!k || *k != t->arity())
          throw SemanticError("uninterpreted symbol '" + t->name + "'");
        out.index = 0;
        for (const auto& f : vocab_.functions()) {
          if (f.name == t->name) break;
          ++out.index;
        }
        break;
      }
      case TermKind::FunctionVar:
        out.index = lookup_var(t->name, SlotKind::Function, t->arity());
        break;
    }
    for (const auto& a : t->args) out.args.push_back(compile_term(a));
    return out;
  }

  int relation_symbol(const std::string& name, int arity) {
    auto k = vocab_.relation_arity(name);
    if (!k || *k != arity) throw SemanticError("uninterpreted symbol '" + name + "'");
    int index = 0;
    for (const auto& r : vocab_.relations()) {
      if (r.name == name) break;
      ++index;
    }
    return index;
  }

  int push_bound(const std::string& name, SlotKind kind, int arity) {
    int slot = next_slot(kind);
    bound_.push_back({name, kind, arity, slot});
    return slot;
  }

  void pop_bound(const std::string& name) {
    if (bound_.empty() || bound_.back().name != name) throw InternalError("scope mismatch");
    bound_.pop_back();
  }

  int lookup_var(const std::string& name, SlotKind kind, int arity) {
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it) {
      if (it->name != name) continue;
      if (it->kind != kind || (kind != SlotKind::FirstOrder && it->arity != arity))
        throw SemanticError("variable '" + name + "' used with mismatched kind or arity");
      return it->slot;
    }
    for (const auto& fs : frees_) {
      if (fs.name != name) continue;
      if (fs.kind != kind || (kind != SlotKind::FirstOrder && fs.arity != arity))
        throw SemanticError("free variable '" + name + "' used inconsistently");
      return fs.slot;
    }
    int slot = next_slot(kind);
    frees_.push_back({name, kind, arity, slot});
    return slot;
  }

  int next_slot(SlotKind kind) {
    switch (kind) {
      case SlotKind::FirstOrder: return fo_slots_++;
      case SlotKind::Relation: return rel_slots_++;
      case SlotKind::Function: return fun_slots_++;
    }
    throw InternalError("unreachable slot kind");
  }

  // Live bindings during compilation; frees_ collects variables that were
  // never bound and must come from the Assignment.
  std::vector<FreeSlot> bound_;
  std::vector<FreeSlot> frees_;
  const Vocabulary& vocab_;
  int fo_slots_ = 0;
  int rel_slots_ = 0;
  int fun_slots_ = 0;
};

struct Env {
  std::vector<int> fo;
  std::vector<const RelTable*> rels;
  std::vector<const FunTable*> funs;
};

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap,
                          const char* what) {
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && v > cap / base)
      throw CapacityError(std::string(what) + " search space exceeds capacity");
    v *= base;
    if (v > cap) throw CapacityError(std::string(what) + " search space exceeds capacity");
  }
  return v;
}

class Machine {
 public:
  Machine(const FiniteStructure& m, const HenkinStructure* henkin, const EvalOptions& opts)
      : m_(m), henkin_(henkin), opts_(opts), n_(m.size()) {}

  bool run(const CNode& node, Env& env) const {
    switch (node.kind) {
      case FormulaKind::Equal:
        return term(node.terms[0], env) == term(node.terms[1], env);
      case FormulaKind::Rel:
        return m_.relation_tables()[static_cast<std::size_t>(node.index)].test(
            rank_terms(node.terms, env));
      case FormulaKind::RelVar:
        return env.rels[static_cast<std::size_t>(node.index)]->test(rank_terms(node.terms, env));
      case FormulaKind::Not:
        return !run(node.kids[0], env);
      case FormulaKind::And:
        for (int i : node.order)
          if (!run(node.kids[static_cast<std::size_t>(i)], env)) return false;
        return true;
      case FormulaKind::Or:
        for (int i : node.order)
          if (run(node.kids[static_cast<std::size_t>(i)], env)) return true;
        return false;
      case FormulaKind::Implies:
        return !run(node.kids[0], env) || run(node.kids[1], env);
      case FormulaKind::Iff:
        return run(node.kids[0], env) == run(node.kids[1], env);
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        const bool universal = node.kind == FormulaKind::Forall;
        for (int v = 0; v < n_; ++v) {
          env.fo[static_cast<std::size_t>(node.index)] = v;
          if (run(node.kids[0], env) != universal) return !universal;
        }
        return universal;
      }
      case FormulaKind::ForallRel:
      case FormulaKind::ExistsRel:
        return relation_quantifier(node, env);
      case FormulaKind::ForallFun:
      case FormulaKind::ExistsFun:
        return function_quantifier(node, env);
    }
    throw InternalError("unhandled node kind in evaluator");
  }

 private:
  int term(const CTerm& t, Env& env) const {
    switch (t.kind) {
      case TermKind::Variable:
        return env.fo[static_cast<std::size_t>(t.index)];
      case TermKind::Function: {
        const FunTable& table = m_.function_tables()[static_cast<std::size_t>(t.index)];
        return table.at(rank_terms(t.args, env));
      }
      case TermKind::FunctionVar:
        return env.funs[static_cast<std::size_t>(t.index)]->at(rank_terms(t.args, env));
    }
    throw InternalError("unhandled term kind in evaluator");
  }

  std::uint64_t rank_terms(const std::vector<CTerm>& args, Env& env) const {
    std::uint64_t r = 0;
    for (const auto& a : args)
      r = r * static_cast<std::uint64_t>(n_) + static_cast<std::uint64_t>(term(a, env));
    return r;
  }

  bool relation_quantifier(const CNode& node, Env& env) const {
    const bool universal = node.kind == FormulaKind::ForallRel;
    if (henkin_) {
      auto it = henkin_->rel_families.find(node.arity);
      if (it == henkin_->rel_families.end())
        throw SemanticError("Henkin structure has no relation family of arity " +
                            std::to_string(node.arity));
      for (const RelTable& member : it->second) {
        env.rels[static_cast<std::size_t>(node.index)] = &member;
        if (run(node.kids[0], env) != universal) return !universal;
      }
      return universal;
    }
    std::uint64_t cells = tuple_count(n_, node.arity);
    std::uint64_t candidates =
        checked_pow(2, cells, opts_.so_capacity, "relation quantifier");
    RelTable buffer = empty_relation(n_, node.arity);
    env.rels[static_cast<std::size_t>(node.index)] = &buffer;
    // Ascending order of the characteristic vector (first tuple most
    // significant), so the first witness is lexicographically least.
    for (std::uint64_t mask = 0; mask < candidates; ++mask) {
      for (std::uint64_t c = 0; c < cells; ++c)
        buffer.bits[c] = (mask >> (cells - 1 - c)) & 1;
      if (run(node.kids[0], env) != universal) return !universal;
    }
    return universal;
  }

  bool function_quantifier(const CNode& node, Env& env) const {
    const bool universal = node.kind == FormulaKind::ForallFun;
    if (henkin_) {
      auto it = henkin_->fun_families.find(node.arity);
      if (it == henkin_->fun_families.end())
        throw SemanticError("Henkin structure has no function family of arity " +
                            std::to_string(node.arity));
      for (const FunTable& member : it->second) {
        env.funs[static_cast<std::size_t>(node.index)] = &member;
        if (run(node.kids[0], env) != universal) return !universal;
      }
      return universal;
    }
    std::uint64_t cells = tuple_count(n_, node.arity);
    checked_pow(static_cast<std::uint64_t>(n_), cells, opts_.so_capacity, "function quantifier");
    FunTable buffer = constant_function(n_, node.arity);
    env.funs[static_cast<std::size_t>(node.index)] = &buffer;
    // Odometer with the last cell cycling fastest: tables ascend
    // lexicographically with the first cell most significant.
    while (true) {
      if (run(node.kids[0], env) != universal) return !universal;
      int i = static_cast<int>(cells) - 1;
      while (i >= 0 && buffer.vals[static_cast<std::size_t>(i)] == n_ - 1) {
        buffer.vals[static_cast<std::size_t>(i)] = 0;
        --i;
      }
      if (i < 0) return universal;
      ++buffer.vals[static_cast<std::size_t>(i)];
    }
  }

  const FiniteStructure& m_;
  const HenkinStructure* henkin_;
  const EvalOptions& opts_;
  int n_;
};

}  // namespace

struct CompiledFormula::Impl {
  CNode root;
  std::vector<FreeSlot> frees;
  int fo_slots = 0;
  int rel_slots = 0;
  int fun_slots = 0;
  Vocabulary vocab;

  Env seed(const Assignment& a, int n) const {
    Env env;
    env.fo.assign(static_cast<std::size_t>(fo_slots), 0);
    env.rels.assign(static_cast<std::size_t>(rel_slots), nullptr);
    env.funs.assign(static_cast<std::size_t>(fun_slots), nullptr);
    for (const auto& fs : frees) {
      switch (fs.kind) {
        case SlotKind::FirstOrder: {
          auto it = a.fo.find(fs.name);
          if (it == a.fo.end())
            throw SemanticError("free variable '" + fs.name + "' not covered by the assignment");
          if (it->second < 0 || it->second >= n)
            throw SemanticError("assignment for '" + fs.name + "' outside the domain");
          env.fo[static_cast<std::size_t>(fs.slot)] = it->second;
          break;
        }
        case SlotKind::Relation: {
          auto it = a.rels.find(fs.name);
          if (it == a.rels.end())
            throw SemanticError("free variable '" + fs.name + "' not covered by the assignment");
          if (it->second.arity != fs.arity ||
              it->second.bits.size() != tuple_count(n, fs.arity))
            throw SemanticError("assignment for '" + fs.name + "' has the wrong shape");
          env.rels[static_cast<std::size_t>(fs.slot)] = &it->second;
          break;
        }
        case SlotKind::Function: {
          auto it = a.funs.find(fs.name);
          if (it == a.funs.end())
            throw SemanticError("free variable '" + fs.name + "' not covered by the assignment");
          if (it->second.arity != fs.arity ||
              it->second.vals.size() != tuple_count(n, fs.arity))
            throw SemanticError("assignment for '" + fs.name + "' has the wrong shape");
          for (int v : it->second.vals)
            if (v < 0 || v >= n)
              throw SemanticError("assignment for '" + fs.name + "' outside the domain");
          env.funs[static_cast<std::size_t>(fs.slot)] = &it->second;
          break;
        }
      }
    }
    return env;
  }
};

CompiledFormula::CompiledFormula(const FormulaPtr& f, const Vocabulary& vocab)
    : impl_(std::make_unique<Impl>()) {
  Compiler compiler(vocab);
  impl_->root = compiler.compile(f);
  impl_->frees = compiler.frees_;
  impl_->fo_slots = compiler.fo_slots_;
  impl_->rel_slots = compiler.rel_slots_;
  impl_->fun_slots = compiler.fun_slots_;
  impl_->vocab = vocab;
}

CompiledFormula::~CompiledFormula() = default;
CompiledFormula::CompiledFormula(CompiledFormula&&) noexcept = default;
CompiledFormula& CompiledFormula::operator=(CompiledFormula&&) noexcept = default;

bool CompiledFormula::eval(const FiniteStructure& m, const Assignment& a,
                           const EvalOptions& opts) const {
  if (!(m.vocab() == impl_->vocab))
    throw SemanticError("structure vocabulary differs from the compiled formula's vocabulary");
  Env env = impl_->seed(a, m.size());
  Machine machine(m, nullptr, opts);
  return machine.run(impl_->root, env);
}

bool CompiledFormula::eval(const HenkinStructure& h, const Assignment& a,
                           const EvalOptions& opts) const {
  if (!(h.base.vocab() == impl_->vocab))
    throw SemanticError("structure vocabulary differs from the compiled formula's vocabulary");
  Env env = impl_->seed(a, h.base.size());
  Machine machine(h.base, &h, opts);
  return machine.run(impl_->root, env);
}

bool eval_full(const FiniteStructure& m, const FormulaPtr& f, const Assignment& a,
               const EvalOptions& opts) {
  CompiledFormula compiled(f, m.vocab());
  return compiled.eval(m, a, opts);
}

bool eval_henkin(const HenkinStructure& h, const FormulaPtr& f, const Assignment& a,
                 const EvalOptions& opts) {
  CompiledFormula compiled(f, h.base.vocab());
  return compiled.eval(h, a, opts);
}

std::vector<RelTable> all_relations(int n, int arity, std::uint64_t capacity) {
  std::uint64_t cells = tuple_count(n, arity);
  std::uint64_t count = checked_pow(2, cells, capacity, "relation family");
  std::vector<RelTable> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    RelTable t = empty_relation(n, arity);
    for (std::uint64_t c = 0; c < cells; ++c) t.bits[c] = (mask >> (cells - 1 - c)) & 1;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<FunTable> all_functions(int n, int arity, std::uint64_t capacity) {
  std::uint64_t cells = tuple_count(n, arity);
  std::uint64_t count = checked_pow(static_cast<std::uint64_t>(n), cells, capacity, "function family");
  std::vector<FunTable> out;
  out.reserve(static_cast<std::size_t>(count));
  FunTable t = constant_function(n, arity);
  for (std::uint64_t i = 0; i < count; ++i) {
    out.push_back(t);
    int c = static_cast<int>(cells) - 1;
    while (c >= 0 && t.vals[static_cast<std::size_t>(c)] == n - 1) {
      t.vals[static_cast<std::size_t>(c)] = 0;
      --c;
    }
    if (c >= 0) ++t.vals[static_cast<std::size_t>(c)];
  }
  return out;
}

HenkinStructure full_family(FiniteStructure base, const std::set<int>& rel_arities,
                            const std::set<int>& fun_arities, const EvalOptions& opts) {
  HenkinStructure h;
  int n = base.size();
  h.base = std::move(base);
  for (int k : rel_arities) h.rel_families[k] = all_relations(n, k, opts.so_capacity);
  for (int k : fun_arities) h.fun_families[k] = all_functions(n, k, opts.so_capacity);
  return h;
}

}  // namespace catkit
