#include "catkit/arith.hpp"

#include <sstream>

#include "catkit/coding.hpp"
#include "catkit/errors.hpp"
#include "catkit/hygiene.hpp"
#include "catkit/schemas.hpp"

namespace catkit::arith {

namespace {

std::shared_ptr<BFormula> blank(BKind kind) {
  auto f = std::make_shared<BFormula>();
  f->kind = kind;
  return f;
}

}  // namespace

BFormulaPtr BFormula::eq(TermPtr a, TermPtr b) {
  auto f = blank(BKind::Equal);
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}

BFormulaPtr BFormula::negate(BFormulaPtr g) {
  auto f = blank(BKind::Not);
  f->kids = {std::move(g)};
  return f;
}

BFormulaPtr BFormula::conj(std::vector<BFormulaPtr> kids) {
  if (kids.size() < 2) throw SemanticError("conjunction needs at least two conjuncts");
  auto f = blank(BKind::And);
  f->kids = std::move(kids);
  return f;
}

BFormulaPtr BFormula::disj(std::vector<BFormulaPtr> kids) {
  if (kids.size() < 2) throw SemanticError("disjunction needs at least two disjuncts");
  auto f = blank(BKind::Or);
  f->kids = std::move(kids);
  return f;
}

BFormulaPtr BFormula::implies(BFormulaPtr a, BFormulaPtr b) {
  auto f = blank(BKind::Implies);
  f->kids = {std::move(a), std::move(b)};
  return f;
}

BFormulaPtr BFormula::exists(const std::string& var, TermPtr bound, BFormulaPtr body) {
  if (!is_fo_variable_name(var)) throw SemanticError("invalid variable '" + var + "'");
  auto f = blank(BKind::Exists);
  f->var = var;
  f->bound = std::move(bound);
  f->kids = {std::move(body)};
  return f;
}

BFormulaPtr BFormula::forall(const std::string& var, TermPtr bound, BFormulaPtr body) {
  auto f = std::const_pointer_cast<BFormula>(exists(var, std::move(bound), std::move(body)));
  f->kind = BKind::Forall;
  return f;
}

namespace {

void check_term(const TermPtr& t, const Vocabulary& vocab, const std::set<std::string>& scope,
                std::set<std::string>& free) {
  switch (t->kind) {
    case TermKind::Variable:
      if (!scope.count(t->name)) free.insert(t->name);
      return;
    case TermKind::FunctionVar:
      throw SemanticError("bounded formulas are first-order; '" + t->name + "' is not allowed");
    case TermKind::Function: {
      auto k = vocab.function_arity(t->name);
      if (!k || *k != t->arity())
        throw SemanticError("unknown or misapplied symbol '" + t->name + "'");
      for (const auto& a : t->args) check_term(a, vocab, scope, free);
      return;
    }
  }
}

void check_node(const BFormulaPtr& f, const Vocabulary& vocab, std::set<std::string>& scope,
                std::set<std::string>& free) {
  switch (f->kind) {
    case BKind::Equal:
      check_term(f->lhs, vocab, scope, free);
      check_term(f->rhs, vocab, scope, free);
      return;
    case BKind::Not:
    case BKind::And:
    case BKind::Or:
    case BKind::Implies:
      for (const auto& k : f->kids) check_node(k, vocab, scope, free);
      return;
    case BKind::Exists:
    case BKind::Forall: {
      if (!f->bound) throw SemanticError("unbounded quantifier over '" + f->var + "'");
      check_term(f->bound, vocab, scope, free);  // bound uses outer scope only
      bool inserted = scope.insert(f->var).second;
      check_node(f->kids[0], vocab, scope, free);
      if (inserted) scope.erase(f->var);
      return;
    }
  }
  throw InternalError("unhandled bounded-formula kind");
}

}  // namespace

BoundedFormula BoundedFormula::verify(BFormulaPtr root, Vocabulary vocab) {
  BoundedFormula out;
  std::set<std::string> scope;
  std::set<std::string> free;
  check_node(root, vocab, scope, free);
  out.root_ = std::move(root);
  out.vocab_ = std::move(vocab);
  out.free_ = std::move(free);
  return out;
}

namespace {

void collect_bnames(const BFormulaPtr& f, std::set<std::string>& out);

void collect_tnames(const TermPtr& t, std::set<std::string>& out) {
  out.insert(t->name);
  for (const auto& a : t->args) collect_tnames(a, out);
}

void collect_bnames(const BFormulaPtr& f, std::set<std::string>& out) {
  if (f->lhs) collect_tnames(f->lhs, out);
  if (f->rhs) collect_tnames(f->rhs, out);
  if (f->bound) collect_tnames(f->bound, out);
  if (!f->var.empty()) out.insert(f->var);
  for (const auto& k : f->kids) collect_bnames(k, out);
}

FormulaPtr erase_bounds(const BFormulaPtr& f, const std::string& add_sym,
                        std::set<std::string>& used) {
  switch (f->kind) {
    case BKind::Equal:
      return Formula::eq(f->lhs, f->rhs);
    case BKind::Not:
      return Formula::negate(erase_bounds(f->kids[0], add_sym, used));
    case BKind::And:
    case BKind::Or: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : f->kids) kids.push_back(erase_bounds(k, add_sym, used));
      return f->kind == BKind::And ? Formula::conj(std::move(kids))
                                   : Formula::disj(std::move(kids));
    }
    case BKind::Implies:
      return Formula::implies(erase_bounds(f->kids[0], add_sym, used),
                              erase_bounds(f->kids[1], add_sym, used));
    case BKind::Exists:
    case BKind::Forall: {
      std::string w = fresh_fo_name("w", used);
      FormulaPtr guard = Formula::exists(
          w, Formula::eq(Term::fn(add_sym, {Term::var(f->var), Term::var(w)}), f->bound));
      FormulaPtr body = erase_bounds(f->kids[0], add_sym, used);
      if (f->kind == BKind::Exists)
        return Formula::exists(f->var, Formula::conj({std::move(guard), std::move(body)}));
      return Formula::forall(f->var, Formula::implies(std::move(guard), std::move(body)));
    }
  }
  throw InternalError("unhandled bounded-formula kind");
}

}  // namespace

FormulaPtr BoundedFormula::to_formula(const std::string& add_sym) const {
  std::set<std::string> used;
  collect_bnames(root_, used);
  used.insert(add_sym);
  return erase_bounds(root_, add_sym, used);
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  if (a >= kSaturated || b >= kSaturated || a + b >= kSaturated) return kSaturated;
  return a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a >= kSaturated || b >= kSaturated) return kSaturated;
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  if (p >= kSaturated) return kSaturated;
  return static_cast<std::uint64_t>(p);
}

}  // namespace

StandardDoubledModel StandardDoubledModel::standard(std::uint64_t capacity) {
  StandardDoubledModel m;
  m.capacity = capacity;
  m.ops[transforms::kAddSym] = sat_add;
  m.ops[transforms::kMulSym] = sat_mul;
  m.ops[transforms::kAddPSym] = sat_add;
  m.ops[transforms::kMulPSym] = sat_mul;
  return m;
}

StandardDoubledModel StandardDoubledModel::conjugated(
    std::function<std::uint64_t(std::uint64_t)> sigma,
    std::function<std::uint64_t(std::uint64_t)> sigma_inv, std::uint64_t capacity) {
  StandardDoubledModel m = standard(capacity);
  auto conj = [sigma, sigma_inv](std::uint64_t (*op)(std::uint64_t, std::uint64_t)) {
    return [sigma, sigma_inv, op](std::uint64_t a, std::uint64_t b) {
      std::uint64_t r = op(sigma_inv(a), sigma_inv(b));
      return r >= kSaturated ? kSaturated : sigma(r);
    };
  };
  m.ops[transforms::kAddPSym] = conj(sat_add);
  m.ops[transforms::kMulPSym] = conj(sat_mul);
  return m;
}

std::uint64_t eval_term(const StandardDoubledModel& m, const TermPtr& t, const BEnv& env) {
  switch (t->kind) {
    case TermKind::Variable: {
      auto it = env.find(t->name);
      if (it == env.end()) throw SemanticError("variable '" + t->name + "' not in environment");
      return it->second;
    }
    case TermKind::Function: {
      auto it = m.ops.find(t->name);
      if (it == m.ops.end() || t->args.size() != 2)
        throw SemanticError("model has no binary operation '" + t->name + "'");
      return it->second(eval_term(m, t->args[0], env), eval_term(m, t->args[1], env));
    }
    case TermKind::FunctionVar:
      throw SemanticError("function variable in a bounded formula");
  }
  throw InternalError("unhandled term kind");
}

namespace {

// Compiled form of a bounded formula: variables become slots, operation
// symbols become direct function references.
struct CompiledTerm {
  int slot = -1;  // >= 0 for variables
  const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>* op = nullptr;
  std::vector<CompiledTerm> args;
};

struct CompiledBNode {
  BKind kind;
  CompiledTerm lhs, rhs;
  CompiledTerm bound;
  int slot = -1;
  std::vector<CompiledBNode> kids;
};

class BCompiler {
 public:
  explicit BCompiler(const StandardDoubledModel& m) : m_(m) {}

  CompiledBNode compile(const BFormulaPtr& f) {
    CompiledBNode out;
    out.kind = f->kind;
    switch (f->kind) {
      case BKind::Equal:
        out.lhs = term(f->lhs);
        out.rhs = term(f->rhs);
        break;
      case BKind::Not:
      case BKind::And:
      case BKind::Or:
      case BKind::Implies:
        for (const auto& k : f->kids) out.kids.push_back(compile(k));
        break;
      case BKind::Exists:
      case BKind::Forall: {
        out.bound = term(f->bound);
        std::optional<int> shadowed;
        if (auto it = slot_of_.find(f->var); it != slot_of_.end()) shadowed = it->second;
        out.slot = static_cast<int>(slots_.size());
        slots_.push_back(f->var);
        slot_of_[f->var] = out.slot;
        out.kids.push_back(compile(f->kids[0]));
        if (shadowed)
          slot_of_[f->var] = *shadowed;
        else
          slot_of_.erase(f->var);
        break;
      }
    }
    return out;
  }

  CompiledTerm term(const TermPtr& t) {
    CompiledTerm out;
    if (t->kind == TermKind::Variable) {
      auto it = slot_of_.find(t->name);
      if (it == slot_of_.end()) {
        out.slot = static_cast<int>(slots_.size());
        slots_.push_back(t->name);
        slot_of_[t->name] = out.slot;
        frees_.insert(t->name);
      } else {
        out.slot = it->second;
      }
      return out;
    }
    auto it = m_.ops.find(t->name);
    if (it == m_.ops.end()) throw SemanticError("model has no operation '" + t->name + "'");
    out.op = &it->second;
    for (const auto& a : t->args) out.args.push_back(term(a));
    return out;
  }

  const StandardDoubledModel& m_;
  std::vector<std::string> slots_;
  std::map<std::string, int> slot_of_;
  std::set<std::string> frees_;
};

class BMachine {
 public:
  BMachine(const StandardDoubledModel& m, std::vector<std::uint64_t>& env)
      : m_(m), env_(env) {}

  std::uint64_t term(const CompiledTerm& t) const {
    if (t.slot >= 0) return env_[static_cast<std::size_t>(t.slot)];
    return (*t.op)(term(t.args[0]), term(t.args[1]));
  }

  bool run(const CompiledBNode& f) const {
    switch (f.kind) {
      case BKind::Equal:
        return term(f.lhs) == term(f.rhs);
      case BKind::Not:
        return !run(f.kids[0]);
      case BKind::And:
        for (const auto& k : f.kids)
          if (!run(k)) return false;
        return true;
      case BKind::Or:
        for (const auto& k : f.kids)
          if (run(k)) return true;
        return false;
      case BKind::Implies:
        return !run(f.kids[0]) || run(f.kids[1]);
      case BKind::Exists:
      case BKind::Forall: {
        std::uint64_t limit = term(f.bound);
        if (limit >= kSaturated || limit > m_.capacity)
          throw CapacityError("quantifier bound " + std::to_string(limit) +
                              " exceeds the model capacity");
        const bool universal = f.kind == BKind::Forall;
        for (std::uint64_t v = 0; v <= limit; ++v) {
          env_[static_cast<std::size_t>(f.slot)] = v;
          if (run(f.kids[0]) != universal) return !universal;
        }
        return universal;
      }
    }
    throw InternalError("unhandled bounded-formula kind");
  }

 private:
  const StandardDoubledModel& m_;
  std::vector<std::uint64_t>& env_;
};

}  // namespace

bool eval_bounded(const StandardDoubledModel& m, const BoundedFormula& f, const BEnv& env) {
  BCompiler compiler(m);
  CompiledBNode root = compiler.compile(f.root());
  std::vector<std::uint64_t> slots(compiler.slots_.size(), 0);
  for (const auto& name : compiler.frees_) {
    auto it = env.find(name);
    if (it == env.end())
      throw SemanticError("free variable '" + name + "' not covered by the environment");
    if (it->second > m.capacity)
      throw CapacityError("environment value for '" + name + "' exceeds the model capacity");
    slots[static_cast<std::size_t>(compiler.slot_of_[name])] = it->second;
  }
  BMachine machine(m, slots);
  return machine.run(root);
}

namespace {

const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& op_of(
    const StandardDoubledModel& m, const char* name) {
  auto it = m.ops.find(name);
  if (it == m.ops.end()) throw SemanticError(std::string("model has no operation '") + name + "'");
  return it->second;
}

}  // namespace

std::uint64_t primed_zero(const StandardDoubledModel& m) {
  const auto& addp = op_of(m, transforms::kAddPSym);
  for (std::uint64_t k = 0; k <= m.capacity; ++k)
    if (addp(k, k) == k) return k;
  throw CapacityError("no additive identity of the primed pair within capacity");
}

std::uint64_t primed_one(const StandardDoubledModel& m) {
  const auto& addp = op_of(m, transforms::kAddPSym);
  const auto& mulp = op_of(m, transforms::kMulPSym);
  for (std::uint64_t k = 0; k <= m.capacity; ++k)
    if (mulp(k, k) == k && addp(k, k) != k) return k;
  throw CapacityError("no multiplicative identity of the primed pair within capacity");
}

std::uint64_t chain_value(const StandardDoubledModel& m, std::uint64_t a) {
  const auto& addp = op_of(m, transforms::kAddPSym);
  std::uint64_t v = primed_zero(m);
  std::uint64_t one = primed_one(m);
  for (std::uint64_t i = 0; i < a; ++i) {
    v = addp(v, one);
    if (v >= kSaturated) throw CapacityError("chain value overflow");
  }
  return v;
}

namespace {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// x = a (mod m) combined with x = b (mod n); all arithmetic in 128 bits,
// failing over capacity.
bool crt_merge(std::uint64_t& a, std::uint64_t& m, std::uint64_t b, std::uint64_t n,
               std::uint64_t cap) {
  std::uint64_t g = gcd_u64(m, n);
  std::uint64_t diff = b >= a ? b - a : a - b;
  if (diff % g != 0) return false;
  unsigned __int128 lcm = static_cast<unsigned __int128>(m) / g * n;
  if (lcm > cap) throw CapacityError("residue-code modulus exceeds capacity");
  // Solve a + m*t = b (mod n)  =>  t = (b - a)/g * inv(m/g) (mod n/g).
  std::uint64_t n_g = n / g;
  std::uint64_t m_g = (m / g) % n_g;
  // Extended Euclid for the inverse of m_g mod n_g.
  std::int64_t r0 = static_cast<std::int64_t>(n_g), r1 = static_cast<std::int64_t>(m_g);
  std::int64_t s0 = 0, s1 = 1;
  while (r1) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
  }
  if (n_g == 1) {
    // Congruences already agree modulo n.
    m = static_cast<std::uint64_t>(lcm);
    return true;
  }
  std::int64_t inv = s0 % static_cast<std::int64_t>(n_g);
  if (inv < 0) inv += static_cast<std::int64_t>(n_g);
  unsigned __int128 delta =
      (static_cast<unsigned __int128>(b % n) + n - a % n) % n / g % n_g *
      static_cast<unsigned __int128>(inv) % n_g;
  unsigned __int128 x = a + delta * m;
  x %= lcm;
  a = static_cast<std::uint64_t>(x);
  m = static_cast<std::uint64_t>(lcm);
  return true;
}

}  // namespace

PhiWitness construct_phi_witness(const StandardDoubledModel& m, std::uint64_t a) {
  PhiWitness w;
  std::uint64_t zero = primed_zero(m);
  std::uint64_t one = primed_one(m);
  const auto& addp = op_of(m, transforms::kAddPSym);
  w.values.push_back(zero);
  for (std::uint64_t i = 0; i < a; ++i) {
    std::uint64_t next = addp(w.values.back(), one);
    if (next >= kSaturated) throw CapacityError("chain value overflow");
    w.values.push_back(next);
  }

  constexpr std::uint64_t kCodeCap = std::uint64_t{1} << 62;
  for (std::uint64_t d = 1; d <= 1u << 20; ++d) {
    bool fits = true;
    for (std::uint64_t i = 0; i <= a && fits; ++i)
      if (w.values[static_cast<std::size_t>(i)] >= (i + 1) * d + 1) fits = false;
    if (!fits) continue;
    std::uint64_t x = 0, mod = 1;
    bool consistent = true;
    try {
      for (std::uint64_t i = 0; i <= a && consistent; ++i)
        consistent = crt_merge(x, mod, w.values[static_cast<std::size_t>(i)], (i + 1) * d + 1,
                               kCodeCap);
    } catch (const CapacityError&) {
      consistent = false;
    }
    if (!consistent) continue;
    // Keep every tagged bound satisfiable: d, the identities and all chain
    // values must lie below x.
    std::uint64_t needed = std::max<std::uint64_t>({2, d, zero, one});
    for (std::uint64_t v : w.values) needed = std::max(needed, v);
    while (x < needed) {
      if (x + mod < x || x + mod > kCodeCap) break;
      x += mod;
    }
    if (x < needed) continue;
    w.x = x;
    w.d = d;
    return w;
  }
  throw CapacityError("no residue code for the chain up to " + std::to_string(a));
}

bool decide_phi(const StandardDoubledModel& m, std::uint64_t a, std::uint64_t b) {
  return chain_value(m, a) == b;
}

PhiGraphReport verify_phi_graph(const StandardDoubledModel& m, int bound, int psi_check_bound) {
  if (bound < 0) throw SemanticError("bound must be >= 0");
  PhiGraphReport report;
  report.bound = bound;
  report.psi_check_bound = std::min(bound, psi_check_bound);

  const auto& add = op_of(m, transforms::kAddSym);
  const auto& mul = op_of(m, transforms::kMulSym);
  const auto& addp = op_of(m, transforms::kAddPSym);
  const auto& mulp = op_of(m, transforms::kMulPSym);

  for (std::uint64_t a = 0; a <= static_cast<std::uint64_t>(bound); ++a)
    report.map.push_back(chain_value(m, a));

  // Totality: a residue code exists for every argument, and it decodes to
  // the chain values.
  report.total = true;
  for (std::uint64_t a = 0; a <= static_cast<std::uint64_t>(bound); ++a) {
    PhiWitness w = construct_phi_witness(m, a);
    for (std::uint64_t i = 0; i <= a; ++i) {
      std::uint64_t mi = (i + 1) * w.d + 1;
      if (w.x % mi != w.values[static_cast<std::size_t>(i)]) report.total = false;
    }
    if (w.values.back() != report.map[static_cast<std::size_t>(a)]) report.total = false;
  }

  // Uniqueness: the chain recursion is deterministic, so each argument has
  // exactly one value; cross-checked against the decision procedure.
  report.unique = true;
  for (std::uint64_t a = 0; a <= static_cast<std::uint64_t>(bound); ++a) {
    std::uint64_t hits = 0;
    for (std::uint64_t b = 0; b <= static_cast<std::uint64_t>(bound); ++b)
      if (decide_phi(m, a, b)) ++hits;
    std::uint64_t expected =
        report.map[static_cast<std::size_t>(a)] <= static_cast<std::uint64_t>(bound) ? 1 : 0;
    if (hits != expected) report.unique = false;
  }

  report.identity = true;
  for (std::uint64_t a = 0; a <= static_cast<std::uint64_t>(bound); ++a)
    if (report.map[static_cast<std::size_t>(a)] != a) report.identity = false;

  report.add_hom = true;
  report.mul_hom = true;
  for (std::uint64_t x = 0; x <= static_cast<std::uint64_t>(bound); ++x) {
    for (std::uint64_t y = 0; y <= static_cast<std::uint64_t>(bound); ++y) {
      std::uint64_t s = add(x, y);
      if (s <= static_cast<std::uint64_t>(bound) &&
          addp(report.map[static_cast<std::size_t>(x)], report.map[static_cast<std::size_t>(y)]) !=
              report.map[static_cast<std::size_t>(s)])
        report.add_hom = false;
      std::uint64_t p = mul(x, y);
      if (p <= static_cast<std::uint64_t>(bound) &&
          mulp(report.map[static_cast<std::size_t>(x)], report.map[static_cast<std::size_t>(y)]) !=
              report.map[static_cast<std::size_t>(p)])
        report.mul_hom = false;
    }
  }

  // Formula-level validation against the constructed witnesses.
  report.psi_validated = true;
  BoundedFormula psi = transforms::psi_bounded();
  for (std::uint64_t a = 0; a <= static_cast<std::uint64_t>(report.psi_check_bound); ++a) {
    PhiWitness w = construct_phi_witness(m, a);
    BEnv env{{"x", w.x}, {"u", a}, {"v", w.values.back()}};
    if (!eval_bounded(m, psi, env)) report.psi_validated = false;
  }
  return report;
}

std::string write_report(const PhiGraphReport& report) {
  std::ostringstream os;
  os << "bound " << report.bound << "\n";
  os << "psi-check-bound " << report.psi_check_bound << "\n";
  auto flag = [&os](const char* name, bool v) { os << name << " " << (v ? "pass" : "fail") << "\n"; };
  flag("total", report.total);
  flag("unique", report.unique);
  flag("add-hom", report.add_hom);
  flag("mul-hom", report.mul_hom);
  flag("psi-validated", report.psi_validated);
  os << "identity " << (report.identity ? "true" : "false") << "\n";
  os << "map";
  for (std::uint64_t v : report.map) os << " " << v;
  os << "\n";
  return os.str();
}

}  // namespace catkit::arith
