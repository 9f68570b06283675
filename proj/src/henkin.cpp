#include "catkit/henkin.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "catkit/errors.hpp"
#include "catkit/printer.hpp"

namespace catkit::semantics {

namespace {

struct Binder {
  enum Kind { FO, Rel, Fun } kind;
  std::string name;
  int arity;
};

// The generated comprehension shape, destructured.
struct InstanceShape {
  std::vector<Binder> params;
  std::string bound;  // the comprehended relation variable
  int arity = 0;
  std::vector<std::string> slots;
  FormulaPtr body;     // the defining formula phi
  FormulaPtr core;     // exists X forall y (X(y) <-> phi)
};

InstanceShape destructure(const FormulaPtr& instance) {
  InstanceShape shape;
  FormulaPtr at = instance;
  while (true) {
    if (at->kind == FormulaKind::Forall) {
      shape.params.push_back({Binder::FO, at->name, 0});
    } else if (at->kind == FormulaKind::ForallRel) {
      shape.params.push_back({Binder::Rel, at->name, at->arity});
    } else if (at->kind == FormulaKind::ForallFun) {
      shape.params.push_back({Binder::Fun, at->name, at->arity});
    } else {
      break;
    }
    at = at->kids[0];
  }
  if (at->kind != FormulaKind::ExistsRel) throw SemanticError("malformed comprehension instance");
  shape.core = at;
  shape.bound = at->name;
  shape.arity = at->arity;
  at = at->kids[0];
  for (int i = 0; i < shape.arity; ++i) {
    if (at->kind != FormulaKind::Forall) throw SemanticError("malformed comprehension instance");
    shape.slots.push_back(at->name);
    at = at->kids[0];
  }
  if (at->kind != FormulaKind::Iff || at->kids[0]->kind != FormulaKind::RelVar ||
      at->kids[0]->name != shape.bound)
    throw SemanticError("malformed comprehension instance");
  const auto& atom = at->kids[0];
  for (int i = 0; i < shape.arity; ++i) {
    const TermPtr& t = atom->terms[static_cast<std::size_t>(i)];
    if (t->kind != TermKind::Variable || t->name != shape.slots[static_cast<std::size_t>(i)])
      throw SemanticError("malformed comprehension instance");
  }
  shape.body = at->kids[1];
  return shape;
}

}  // namespace

ClosureReport check_closure(const HenkinStructure& h,
                            const transforms::TheoryInstanceSet& instances,
                            const EvalOptions& opts) {
  ClosureReport report;
  const FiniteStructure& base = h.base;
  int n = base.size();

  // Preflight: the interpretations of the vocabulary symbols must be in
  // the families.
  for (const auto& r : base.vocab().relations()) {
    auto it = h.rel_families.find(r.arity);
    if (it == h.rel_families.end() ||
        std::find(it->second.begin(), it->second.end(), base.relation(r.name)) ==
            it->second.end())
      report.preflight.push_back("interpretation of '" + r.name +
                                 "' is not in the relation family of arity " +
                                 std::to_string(r.arity));
  }
  for (const auto& f : base.vocab().functions()) {
    auto it = h.fun_families.find(f.arity);
    if (it == h.fun_families.end() ||
        std::find(it->second.begin(), it->second.end(), base.function(f.name)) ==
            it->second.end())
      report.preflight.push_back("interpretation of '" + f.name +
                                 "' is not in the function family of arity " +
                                 std::to_string(f.arity));
  }

  for (std::size_t index = 0; index < instances.sentences.size(); ++index) {
    InstanceShape shape = destructure(instances.sentences[index]);
    auto family = h.rel_families.find(shape.arity);
    if (family == h.rel_families.end())
      throw SemanticError("Henkin structure has no relation family of arity " +
                          std::to_string(shape.arity));

    bool pass = true;
    Assignment assignment;
    std::function<void(std::size_t)> sweep = [&](std::size_t at) {
      if (!pass) return;  // report the first failure only
      if (at == shape.params.size()) {
        // Compute the defined relation under the current parameters.
        RelTable defined = empty_relation(n, shape.arity);
        Assignment inner = assignment;
        CompiledFormula body(shape.body, base.vocab());
        for (std::uint64_t rank = 0; rank < defined.bits.size(); ++rank) {
          std::vector<int> tuple = tuple_at(rank, n, shape.arity);
          for (int i = 0; i < shape.arity; ++i)
            inner.fo[shape.slots[static_cast<std::size_t>(i)]] =
                tuple[static_cast<std::size_t>(i)];
          defined.bits[rank] = body.eval(h, inner, opts);
        }
        if (std::find(family->second.begin(), family->second.end(), defined) !=
            family->second.end())
          return;
        pass = false;
        ClosureFailure failure;
        failure.instance = index;
        failure.witness = assignment;
        failure.missing = defined;
        CompiledFormula core(shape.core, base.vocab());
        failure.reverified = !core.eval(h, assignment, opts);
        report.failures.push_back(std::move(failure));
        return;
      }
      const Binder& b = shape.params[at];
      switch (b.kind) {
        case Binder::FO:
          for (int v = 0; v < n && pass; ++v) {
            assignment.fo[b.name] = v;
            sweep(at + 1);
          }
          assignment.fo.erase(b.name);
          return;
        case Binder::Rel: {
          auto fam = h.rel_families.find(b.arity);
          if (fam == h.rel_families.end())
            throw SemanticError("Henkin structure has no relation family of arity " +
                                std::to_string(b.arity));
          for (const auto& member : fam->second) {
            if (!pass) break;
            assignment.rels[b.name] = member;
            sweep(at + 1);
          }
          assignment.rels.erase(b.name);
          return;
        }
        case Binder::Fun: {
          auto fam = h.fun_families.find(b.arity);
          if (fam == h.fun_families.end())
            throw SemanticError("Henkin structure has no function family of arity " +
                                std::to_string(b.arity));
          for (const auto& member : fam->second) {
            if (!pass) break;
            assignment.funs[b.name] = member;
            sweep(at + 1);
          }
          assignment.funs.erase(b.name);
          return;
        }
      }
    };
    sweep(0);
    report.verdicts.push_back(pass);
  }
  return report;
}

std::string write_report(const ClosureReport& report, const FiniteStructure& base) {
  std::ostringstream os;
  os << "verdict " << (report.all_pass() ? "closed" : "not-closed") << "\n";
  for (const auto& msg : report.preflight) os << "preflight " << msg << "\n";
  for (std::size_t i = 0; i < report.verdicts.size(); ++i)
    os << "instance " << i << " " << (report.verdicts[i] ? "pass" : "fail") << "\n";
  for (const auto& f : report.failures) {
    os << "failure instance " << f.instance << (f.reverified ? " reverified" : " unverified")
       << "\n";
    for (const auto& [name, value] : f.witness.fo) os << "param " << name << " " << value << "\n";
    os << "missing rel " << f.missing.arity << "\n";
    for (std::uint64_t rank = 0; rank < f.missing.bits.size(); ++rank) {
      if (!f.missing.bits[rank]) continue;
      os << "t";
      for (int v : tuple_at(rank, base.size(), f.missing.arity)) os << " " << v;
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace catkit::semantics
