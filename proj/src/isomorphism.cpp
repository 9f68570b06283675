#include "catkit/isomorphism.hpp"

#include <functional>

#include "catkit/errors.hpp"

namespace catkit::categoricity {

namespace {

// Per-element invariants preserved by isomorphism: positional incidence
// counts per relation, diagonal membership, image multiplicity and
// diagonal fixedness per function. Cheap degree-style pruning for the
// backtracking search.
std::vector<std::vector<int>> element_profiles(const FiniteStructure& m) {
  int n = m.size();
  std::vector<std::vector<int>> profile(static_cast<std::size_t>(n));
  for (const auto& r : m.vocab().relations()) {
    const RelTable& t = m.relation(r.name);
    std::vector<std::vector<int>> counts(static_cast<std::size_t>(n),
                                         std::vector<int>(static_cast<std::size_t>(r.arity) + 1, 0));
    for (std::uint64_t rank = 0; rank < t.bits.size(); ++rank) {
      if (!t.bits[rank]) continue;
      std::vector<int> tuple = tuple_at(rank, n, r.arity);
      bool diagonal = true;
      for (int p = 0; p < r.arity; ++p) {
        counts[static_cast<std::size_t>(tuple[static_cast<std::size_t>(p)])]
              [static_cast<std::size_t>(p)]++;
        if (tuple[static_cast<std::size_t>(p)] != tuple[0]) diagonal = false;
      }
      if (diagonal) counts[static_cast<std::size_t>(tuple[0])][static_cast<std::size_t>(r.arity)]++;
    }
    for (int e = 0; e < n; ++e)
      profile[static_cast<std::size_t>(e)].insert(profile[static_cast<std::size_t>(e)].end(),
                                                  counts[static_cast<std::size_t>(e)].begin(),
                                                  counts[static_cast<std::size_t>(e)].end());
  }
  for (const auto& f : m.vocab().functions()) {
    const FunTable& t = m.function(f.name);
    std::vector<int> preimages(static_cast<std::size_t>(n), 0);
    for (int v : t.vals) preimages[static_cast<std::size_t>(v)]++;
    for (int e = 0; e < n; ++e) {
      profile[static_cast<std::size_t>(e)].push_back(preimages[static_cast<std::size_t>(e)]);
      std::vector<int> diag(static_cast<std::size_t>(f.arity), e);
      profile[static_cast<std::size_t>(e)].push_back(
          t.at(tuple_rank(diag, n)) == e ? 1 : 0);
    }
  }
  return profile;
}

bool tables_match(const FiniteStructure& a, const FiniteStructure& b,
                  const std::vector<int>& map) {
  int n = a.size();
  for (const auto& r : a.vocab().relations()) {
    const RelTable& ta = a.relation(r.name);
    const RelTable& tb = b.relation(r.name);
    for (std::uint64_t rank = 0; rank < ta.bits.size(); ++rank) {
      std::vector<int> tuple = tuple_at(rank, n, r.arity);
      for (int& v : tuple) v = map[static_cast<std::size_t>(v)];
      if (ta.bits[rank] != tb.test(tuple_rank(tuple, n))) return false;
    }
  }
  for (const auto& f : a.vocab().functions()) {
    const FunTable& ta = a.function(f.name);
    const FunTable& tb = b.function(f.name);
    for (std::uint64_t rank = 0; rank < ta.vals.size(); ++rank) {
      std::vector<int> tuple = tuple_at(rank, n, f.arity);
      for (int& v : tuple) v = map[static_cast<std::size_t>(v)];
      if (map[static_cast<std::size_t>(ta.vals[rank])] != tb.at(tuple_rank(tuple, n)))
        return false;
    }
  }
  return true;
}

// Consistency of the partial map on binary relations and unary functions;
// higher arities are verified at the leaves.
bool partial_consistent(const FiniteStructure& a, const FiniteStructure& b,
                        const std::vector<int>& map, int placed) {
  int n = a.size();
  for (const auto& r : a.vocab().relations()) {
    if (r.arity > 2) continue;
    const RelTable& ta = a.relation(r.name);
    const RelTable& tb = b.relation(r.name);
    if (r.arity == 1) {
      if (ta.bits[static_cast<std::size_t>(placed)] !=
          tb.bits[static_cast<std::size_t>(map[static_cast<std::size_t>(placed)])])
        return false;
      continue;
    }
    for (int j = 0; j <= placed; ++j) {
      if (map[static_cast<std::size_t>(j)] < 0) continue;
      int mj = map[static_cast<std::size_t>(j)];
      int mp = map[static_cast<std::size_t>(placed)];
      if (ta.test(tuple_rank({placed, j}, n)) != tb.test(tuple_rank({mp, mj}, n))) return false;
      if (ta.test(tuple_rank({j, placed}, n)) != tb.test(tuple_rank({mj, mp}, n))) return false;
    }
  }
  for (const auto& f : a.vocab().functions()) {
    if (f.arity != 1) continue;
    const FunTable& ta = a.function(f.name);
    const FunTable& tb = b.function(f.name);
    for (int j = 0; j <= placed; ++j) {
      if (map[static_cast<std::size_t>(j)] < 0) continue;
      int image = ta.at(static_cast<std::uint64_t>(j));
      if (map[static_cast<std::size_t>(image)] < 0) continue;
      if (map[static_cast<std::size_t>(image)] !=
          tb.at(static_cast<std::uint64_t>(map[static_cast<std::size_t>(j)])))
        return false;
    }
  }
  return true;
}

enum class SearchMode { First, CountAll };

std::uint64_t search(const FiniteStructure& a, const FiniteStructure& b, SearchMode mode,
                     std::vector<int>* found) {
  if (!(a.vocab() == b.vocab())) throw SemanticError("isomorphism check needs equal vocabularies");
  if (a.size() != b.size()) return 0;
  int n = a.size();
  std::vector<std::vector<int>> pa = element_profiles(a);
  std::vector<std::vector<int>> pb = element_profiles(b);

  std::vector<int> map(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::uint64_t count = 0;

  std::function<bool(int)> place = [&](int i) -> bool {
    if (i == n) {
      if (!tables_match(a, b, map)) return false;
      ++count;
      if (mode == SearchMode::First && found) {
        *found = map;
        return true;
      }
      return false;
    }
    for (int cand = 0; cand < n; ++cand) {
      if (used[static_cast<std::size_t>(cand)]) continue;
      if (pa[static_cast<std::size_t>(i)] != pb[static_cast<std::size_t>(cand)]) continue;
      map[static_cast<std::size_t>(i)] = cand;
      used[static_cast<std::size_t>(cand)] = true;
      if (partial_consistent(a, b, map, i) && place(i + 1)) return true;
      used[static_cast<std::size_t>(cand)] = false;
      map[static_cast<std::size_t>(i)] = -1;
    }
    return false;
  };
  place(0);
  return count;
}

}  // namespace

bool IsomorphismCertificate::verify(const FiniteStructure& a, const FiniteStructure& b) const {
  if (a.size() != b.size() || static_cast<int>(map.size()) != a.size()) return false;
  if (!(a.vocab() == b.vocab())) return false;
  std::vector<bool> seen(map.size(), false);
  for (int v : map) {
    if (v < 0 || v >= a.size() || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return tables_match(a, b, map);
}

std::optional<IsomorphismCertificate> find_isomorphism(const FiniteStructure& a,
                                                       const FiniteStructure& b) {
  std::vector<int> map;
  if (search(a, b, SearchMode::First, &map) == 0 || map.empty()) return std::nullopt;
  IsomorphismCertificate cert{map, false};
  cert.checked = cert.verify(a, b);
  if (!cert.checked) throw InternalError("isomorphism search produced an invalid certificate");
  return cert;
}

std::uint64_t count_isomorphisms(const FiniteStructure& a, const FiniteStructure& b) {
  return search(a, b, SearchMode::CountAll, nullptr);
}

}  // namespace catkit::categoricity
