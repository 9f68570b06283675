#include "catkit/vocabulary.hpp"

#include "catkit/errors.hpp"

namespace catkit {

Vocabulary::Vocabulary(std::vector<Symbol> relations, std::vector<Symbol> functions) {
  for (const auto& r : relations) add_relation(r.name, r.arity);
  for (const auto& f : functions) add_function(f.name, f.arity);
}

void Vocabulary::check_fresh(const std::string& name) const {
  if (contains(name)) throw SemanticError("duplicate symbol '" + name + "' in vocabulary");
}

void Vocabulary::add_relation(const std::string& name, int arity) {
  if (name.empty()) throw SemanticError("empty relation symbol name");
  if (arity < 1) throw SemanticError("relation symbol '" + name + "' must have arity >= 1");
  check_fresh(name);
  relations_.push_back({name, arity});
}

void Vocabulary::add_function(const std::string& name, int arity) {
  if (name.empty()) throw SemanticError("empty function symbol name");
  if (arity < 0) throw SemanticError("function symbol '" + name + "' must have arity >= 0");
  check_fresh(name);
  functions_.push_back({name, arity});
}

bool Vocabulary::contains(const std::string& name) const {
  return relation_arity(name).has_value() || function_arity(name).has_value();
}

std::optional<int> Vocabulary::relation_arity(const std::string& name) const {
  for (const auto& r : relations_)
    if (r.name == name) return r.arity;
  return std::nullopt;
}

std::optional<int> Vocabulary::function_arity(const std::string& name) const {
  for (const auto& f : functions_)
    if (f.name == name) return f.arity;
  return std::nullopt;
}

bool Vocabulary::includes(const Vocabulary& sub) const {
  for (const auto& r : sub.relations())
    if (relation_arity(r.name) != r.arity) return false;
  for (const auto& f : sub.functions())
    if (function_arity(f.name) != f.arity) return false;
  return true;
}

Vocabulary Vocabulary::merged(const Vocabulary& a, const Vocabulary& b) {
  Vocabulary out = a;
  for (const auto& r : b.relations()) {
    if (auto k = out.relation_arity(r.name)) {
      if (*k != r.arity) throw SemanticError("symbol clash on '" + r.name + "'");
      continue;
    }
    if (out.function_arity(r.name)) throw SemanticError("symbol clash on '" + r.name + "'");
    out.add_relation(r.name, r.arity);
  }
  for (const auto& f : b.functions()) {
    if (auto k = out.function_arity(f.name)) {
      if (*k != f.arity) throw SemanticError("symbol clash on '" + f.name + "'");
      continue;
    }
    if (out.relation_arity(f.name)) throw SemanticError("symbol clash on '" + f.name + "'");
    out.add_function(f.name, f.arity);
  }
  return out;
}

}  // namespace catkit
