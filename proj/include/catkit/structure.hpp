#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "catkit/vocabulary.hpp"

namespace catkit {

// Number of k-tuples over a domain of size n, with a capacity guard.
std::uint64_t tuple_count(int n, int arity);

// Row-major rank of a tuple: the first component is most significant, so
// ascending rank is lexicographic tuple order.
std::uint64_t tuple_rank(const std::vector<int>& tuple, int n);
std::vector<int> tuple_at(std::uint64_t rank, int n, int arity);

// Interpretation of a relation symbol or value of a relation variable:
// the characteristic vector of a tuple set, indexed by tuple rank.
struct RelTable {
  int arity = 1;
  std::vector<bool> bits;

  bool operator==(const RelTable&) const = default;
  bool test(std::uint64_t rank) const { return bits[rank]; }
  std::uint64_t count() const;
};

// Total function table, indexed by tuple rank. A nullary table has one cell.
struct FunTable {
  int arity = 0;
  std::vector<int> vals;

  bool operator==(const FunTable&) const = default;
  int at(std::uint64_t rank) const { return vals[rank]; }
};

RelTable empty_relation(int n, int arity);
RelTable full_relation(int n, int arity);
FunTable constant_function(int n, int arity, int value = 0);

// A finite structure: domain {0..n-1} plus one table per vocabulary symbol.
class FiniteStructure {
 public:
  FiniteStructure() = default;
  FiniteStructure(Vocabulary vocab, int n);

  int size() const { return n_; }
  const Vocabulary& vocab() const { return vocab_; }

  const RelTable& relation(const std::string& name) const;
  const FunTable& function(const std::string& name) const;
  void set_relation(const std::string& name, RelTable table);
  void set_function(const std::string& name, FunTable table);

  const std::vector<RelTable>& relation_tables() const { return rels_; }
  const std::vector<FunTable>& function_tables() const { return funs_; }
  RelTable& relation_table(std::size_t i) { return rels_[i]; }
  FunTable& function_table(std::size_t i) { return funs_[i]; }

  int relation_index(const std::string& name) const;
  int function_index(const std::string& name) const;

  bool operator==(const FiniteStructure&) const = default;

 private:
  Vocabulary vocab_;
  int n_ = 0;
  std::vector<RelTable> rels_;  // parallel to vocab_.relations()
  std::vector<FunTable> funs_;  // parallel to vocab_.functions()
};

// Same structure over a sub-vocabulary.
FiniteStructure reduct(const FiniteStructure& m, const Vocabulary& sub);

// Re-keys the interpretation tables along a symbol renaming (the renamed
// vocabulary keeps declaration order).
FiniteStructure rename_structure(const FiniteStructure& m,
                                 const std::map<std::string, std::string>& map);

// The substructure induced by the unary predicate `upred`, whose extension
// must be nonempty and closed under every function symbol. Elements are
// re-indexed by increasing original index; `upred` itself is dropped from
// the result's vocabulary.
FiniteStructure relativized_substructure(const FiniteStructure& m, const std::string& upred);

// A structure paired with explicit second-order quantifier ranges, keyed
// by arity.
struct HenkinStructure {
  FiniteStructure base;
  std::map<int, std::vector<RelTable>> rel_families;
  std::map<int, std::vector<FunTable>> fun_families;
};

// Text format:
//   domain <n>
//   rel <name> <arity>   followed by `t i1 ... ik` rows
//   fun <name> <arity>   followed by `m i1 ... ik -> v` rows (total)
//   family rel <arity> / family fun <arity>, each member between
//   `begin` / `end` using the same row syntax
FiniteStructure parse_structure(const std::string& text);
HenkinStructure parse_henkin_structure(const std::string& text);
std::string write_structure(const FiniteStructure& m);
std::string write_henkin_structure(const HenkinStructure& h);

}  // namespace catkit
