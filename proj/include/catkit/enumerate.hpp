#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "catkit/structure.hpp"

namespace catkit::categoricity {

// Number of interpretations of `vocab` on a domain of the given size;
// throws CapacityError beyond `capacity`.
std::uint64_t interpretation_count(const Vocabulary& vocab, int n, std::uint64_t capacity);

// The `index`-th interpretation in the deterministic order: symbols in
// declaration order (relations first) form a mixed-radix odometer whose
// first symbol is most significant; relation tables are ordered by their
// characteristic vector, function tables lexicographically.
FiniteStructure structure_at(const Vocabulary& vocab, int n, std::uint64_t index);

// Streams every interpretation exactly once, in index order.
class StructureEnumerator {
 public:
  StructureEnumerator(Vocabulary vocab, int n, std::uint64_t capacity);

  std::optional<FiniteStructure> next();
  std::uint64_t total() const { return total_; }

 private:
  Vocabulary vocab_;
  int n_;
  std::uint64_t total_;
  std::uint64_t index_ = 0;
};

std::vector<FiniteStructure> enumerate_structures(const Vocabulary& vocab, int n,
                                                  std::uint64_t capacity);

// One representative per isomorphism class: the member whose index is
// smallest, equivalently whose table encoding is lexicographically least
// under relabeling.
std::vector<FiniteStructure> enumerate_up_to_iso(const Vocabulary& vocab, int n,
                                                 std::uint64_t capacity);

// Relabels a structure along a permutation of the domain (element i of the
// input becomes perm[i] of the output).
FiniteStructure apply_permutation(const FiniteStructure& m, const std::vector<int>& perm);

}  // namespace catkit::categoricity
