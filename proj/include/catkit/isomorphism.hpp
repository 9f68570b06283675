#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "catkit/structure.hpp"

namespace catkit::categoricity {

struct IsomorphismCertificate {
  std::vector<int> map;  // element i of the first structure maps to map[i]
  bool checked = false;

  // Re-verifies against the raw tables of both structures.
  bool verify(const FiniteStructure& a, const FiniteStructure& b) const;
};

// The lexicographically least bijection preserving every relation (both
// directions) and commuting with every function, or nullopt. Structures of
// different sizes yield nullopt immediately; differing vocabularies are an
// error.
std::optional<IsomorphismCertificate> find_isomorphism(const FiniteStructure& a,
                                                       const FiniteStructure& b);

std::uint64_t count_isomorphisms(const FiniteStructure& a, const FiniteStructure& b);

}  // namespace catkit::categoricity
