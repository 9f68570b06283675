#include "catkit/enumerate.hpp"

#include <algorithm>

#include "catkit/errors.hpp"

namespace catkit::categoricity {

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && v > cap / base) throw CapacityError("structure space exceeds capacity");
    v *= base;
    if (v > cap) throw CapacityError("structure space exceeds capacity");
  }
  return v;
}

std::vector<std::uint64_t> symbol_counts(const Vocabulary& vocab, int n, std::uint64_t capacity) {
  std::vector<std::uint64_t> counts;
  for (const auto& r : vocab.relations())
    counts.push_back(checked_pow(2, tuple_count(n, r.arity), capacity));
  for (const auto& f : vocab.functions())
    counts.push_back(
        checked_pow(static_cast<std::uint64_t>(n), tuple_count(n, f.arity), capacity));
  return counts;
}

}  // namespace

std::uint64_t interpretation_count(const Vocabulary& vocab, int n, std::uint64_t capacity) {
  std::uint64_t total = 1;
  for (std::uint64_t c : symbol_counts(vocab, n, capacity)) {
    if (c != 0 && total > capacity / c) throw CapacityError("structure space exceeds capacity");
    total *= c;
  }
  return total;
}

FiniteStructure structure_at(const Vocabulary& vocab, int n, std::uint64_t index) {
  FiniteStructure m(vocab, n);
  std::vector<std::uint64_t> counts = symbol_counts(vocab, n, ~std::uint64_t{0});
  // Decode a mixed-radix number, first symbol most significant.
  std::vector<std::uint64_t> digits(counts.size());
  for (std::size_t i = counts.size(); i-- > 0;) {
    digits[i] = index % counts[i];
    index /= counts[i];
  }
  std::size_t pos = 0;
  for (const auto& r : vocab.relations()) {
    std::uint64_t cells = tuple_count(n, r.arity);
    RelTable t = empty_relation(n, r.arity);
    for (std::uint64_t c = 0; c < cells; ++c) t.bits[c] = (digits[pos] >> (cells - 1 - c)) & 1;
    m.set_relation(r.name, std::move(t));
    ++pos;
  }
  for (const auto& f : vocab.functions()) {
    std::uint64_t cells = tuple_count(n, f.arity);
    FunTable t = constant_function(n, f.arity);
    std::uint64_t v = digits[pos];
    for (std::uint64_t c = cells; c-- > 0;) {
      t.vals[c] = static_cast<int>(v % static_cast<std::uint64_t>(n));
      v /= static_cast<std::uint64_t>(n);
    }
    m.set_function(f.name, std::move(t));
    ++pos;
  }
  return m;
}

StructureEnumerator::StructureEnumerator(Vocabulary vocab, int n, std::uint64_t capacity)
    : vocab_(std::move(vocab)), n_(n), total_(interpretation_count(vocab_, n, capacity)) {}

std::optional<FiniteStructure> StructureEnumerator::next() {
  if (index_ >= total_) return std::nullopt;
  return structure_at(vocab_, n_, index_++);
}

std::vector<FiniteStructure> enumerate_structures(const Vocabulary& vocab, int n,
                                                  std::uint64_t capacity) {
  StructureEnumerator en(vocab, n, capacity);
  std::vector<FiniteStructure> out;
  while (auto m = en.next()) out.push_back(std::move(*m));
  return out;
}

FiniteStructure apply_permutation(const FiniteStructure& m, const std::vector<int>& perm) {
  int n = m.size();
  if (static_cast<int>(perm.size()) != n) throw SemanticError("permutation size mismatch");
  FiniteStructure out(m.vocab(), n);
  for (const auto& r : m.vocab().relations()) {
    const RelTable& src = m.relation(r.name);
    RelTable dst = empty_relation(n, r.arity);
    for (std::uint64_t rank = 0; rank < src.bits.size(); ++rank) {
      if (!src.bits[rank]) continue;
      std::vector<int> tuple = tuple_at(rank, n, r.arity);
      for (int& v : tuple) v = perm[static_cast<std::size_t>(v)];
      dst.bits[tuple_rank(tuple, n)] = true;
    }
    out.set_relation(r.name, std::move(dst));
  }
  for (const auto& f : m.vocab().functions()) {
    const FunTable& src = m.function(f.name);
    FunTable dst = constant_function(n, f.arity);
    for (std::uint64_t rank = 0; rank < src.vals.size(); ++rank) {
      std::vector<int> tuple = tuple_at(rank, n, f.arity);
      for (int& v : tuple) v = perm[static_cast<std::size_t>(v)];
      dst.vals[tuple_rank(tuple, n)] =
          perm[static_cast<std::size_t>(src.vals[rank])];
    }
    out.set_function(f.name, std::move(dst));
  }
  return out;
}

namespace {

// Encoding key used to pick canonical class representatives.
std::vector<std::uint64_t> structure_key(const FiniteStructure& m) {
  std::vector<std::uint64_t> key;
  for (const auto& t : m.relation_tables())
    for (bool b : t.bits) key.push_back(b ? 1 : 0);
  for (const auto& t : m.function_tables())
    for (int v : t.vals) key.push_back(static_cast<std::uint64_t>(v));
  return key;
}

bool is_canonical(const FiniteStructure& m) {
  int n = m.size();
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::vector<std::uint64_t> key = structure_key(m);
  while (std::next_permutation(perm.begin(), perm.end())) {
    if (structure_key(apply_permutation(m, perm)) < key) return false;
  }
  return true;
}

}  // namespace

std::vector<FiniteStructure> enumerate_up_to_iso(const Vocabulary& vocab, int n,
                                                 std::uint64_t capacity) {
  StructureEnumerator en(vocab, n, capacity);
  std::vector<FiniteStructure> out;
  while (auto m = en.next())
    if (is_canonical(*m)) out.push_back(std::move(*m));
  return out;
}

}  // namespace catkit::categoricity
