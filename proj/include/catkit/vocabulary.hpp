#pragma once

#include <optional>
#include <string>
#include <vector>

namespace catkit {

enum class SymbolKind { Relation, Function };

struct Symbol {
  std::string name;
  int arity = 0;

  bool operator==(const Symbol&) const = default;
};

// A finite vocabulary: relation symbols (arity >= 1) and function symbols
// (arity >= 0; nullary functions serve as constants). Declaration order is
// kept and is significant for every deterministic enumeration in the toolkit.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<Symbol> relations, std::vector<Symbol> functions);

  void add_relation(const std::string& name, int arity);
  void add_function(const std::string& name, int arity);

  const std::vector<Symbol>& relations() const { return relations_; }
  const std::vector<Symbol>& functions() const { return functions_; }

  bool contains(const std::string& name) const;
  std::optional<int> relation_arity(const std::string& name) const;
  std::optional<int> function_arity(const std::string& name) const;

  bool empty() const { return relations_.empty() && functions_.empty(); }
  std::size_t size() const { return relations_.size() + functions_.size(); }

  // True when every symbol of `sub` is declared here with the same kind
  // and arity.
  bool includes(const Vocabulary& sub) const;

  // Set union; clashing names must agree on kind and arity.
  static Vocabulary merged(const Vocabulary& a, const Vocabulary& b);

  bool operator==(const Vocabulary& other) const = default;

 private:
  void check_fresh(const std::string& name) const;

  std::vector<Symbol> relations_;
  std::vector<Symbol> functions_;
};

}  // namespace catkit
