#include "catkit/structure.hpp"

#include <algorithm>
#include <sstream>

#include "catkit/errors.hpp"

namespace catkit {

namespace {

constexpr std::uint64_t kMaxTableCells = std::uint64_t{1} << 26;

}  // namespace

std::uint64_t tuple_count(int n, int arity) {
  if (n < 1) throw SemanticError("domain must be non-empty");
  if (arity < 0) throw SemanticError("negative arity");
  std::uint64_t count = 1;
  for (int i = 0; i < arity; ++i) {
    count *= static_cast<std::uint64_t>(n);
    if (count > kMaxTableCells)
      throw CapacityError("interpretation table with " + std::to_string(n) + "^" +
                          std::to_string(arity) + " cells exceeds capacity");
  }
  return count;
}

std::uint64_t tuple_rank(const std::vector<int>& tuple, int n) {
  std::uint64_t rank = 0;
  for (int v : tuple) rank = rank * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(v);
  return rank;
}

std::vector<int> tuple_at(std::uint64_t rank, int n, int arity) {
  std::vector<int> tuple(static_cast<std::size_t>(arity));
  for (int i = arity - 1; i >= 0; --i) {
    tuple[static_cast<std::size_t>(i)] = static_cast<int>(rank % static_cast<std::uint64_t>(n));
    rank /= static_cast<std::uint64_t>(n);
  }
  return tuple;
}

std::uint64_t RelTable::count() const {
  return static_cast<std::uint64_t>(std::count(bits.begin(), bits.end(), true));
}

RelTable empty_relation(int n, int arity) {
  RelTable t;
  t.arity = arity;
  t.bits.assign(tuple_count(n, arity), false);
  return t;
}

RelTable full_relation(int n, int arity) {
  RelTable t = empty_relation(n, arity);
  t.bits.assign(t.bits.size(), true);
  return t;
}

FunTable constant_function(int n, int arity, int value) {
  if (value < 0 || value >= n) throw SemanticError("function value outside domain");
  FunTable t;
  t.arity = arity;
  t.vals.assign(tuple_count(n, arity), value);
  return t;
}

FiniteStructure::FiniteStructure(Vocabulary vocab, int n) : vocab_(std::move(vocab)), n_(n) {
  if (n < 1) throw SemanticError("domain must be non-empty");
  for (const auto& r : vocab_.relations()) rels_.push_back(empty_relation(n, r.arity));
  for (const auto& f : vocab_.functions()) funs_.push_back(constant_function(n, f.arity));
}

int FiniteStructure::relation_index(const std::string& name) const {
  const auto& rels = vocab_.relations();
  for (std::size_t i = 0; i < rels.size(); ++i)
    if (rels[i].name == name) return static_cast<int>(i);
  throw SemanticError("relation symbol '" + name + "' not interpreted");
}

int FiniteStructure::function_index(const std::string& name) const {
  const auto& funs = vocab_.functions();
  for (std::size_t i = 0; i < funs.size(); ++i)
    if (funs[i].name == name) return static_cast<int>(i);
  throw SemanticError("function symbol '" + name + "' not interpreted");
}

const RelTable& FiniteStructure::relation(const std::string& name) const {
  return rels_[static_cast<std::size_t>(relation_index(name))];
}

const FunTable& FiniteStructure::function(const std::string& name) const {
  return funs_[static_cast<std::size_t>(function_index(name))];
}

void FiniteStructure::set_relation(const std::string& name, RelTable table) {
  int i = relation_index(name);
  if (table.arity != vocab_.relations()[static_cast<std::size_t>(i)].arity)
    throw SemanticError("arity mismatch for relation '" + name + "'");
  if (table.bits.size() != tuple_count(n_, table.arity))
    throw SemanticError("table size mismatch for relation '" + name + "'");
  rels_[static_cast<std::size_t>(i)] = std::move(table);
}

void FiniteStructure::set_function(const std::string& name, FunTable table) {
  int i = function_index(name);
  if (table.arity != vocab_.functions()[static_cast<std::size_t>(i)].arity)
    throw SemanticError("arity mismatch for function '" + name + "'");
  if (table.vals.size() != tuple_count(n_, table.arity))
    throw SemanticError("table size mismatch for function '" + name + "'");
  for (int v : table.vals)
    if (v < 0 || v >= n_) throw SemanticError("function value outside domain for '" + name + "'");
  funs_[static_cast<std::size_t>(i)] = std::move(table);
}

FiniteStructure reduct(const FiniteStructure& m, const Vocabulary& sub) {
  if (!m.vocab().includes(sub))
    throw SemanticError("reduct vocabulary is not a subset of the structure's vocabulary");
  FiniteStructure out(sub, m.size());
  for (const auto& r : sub.relations()) out.set_relation(r.name, m.relation(r.name));
  for (const auto& f : sub.functions()) out.set_function(f.name, m.function(f.name));
  return out;
}

FiniteStructure rename_structure(const FiniteStructure& m,
                                 const std::map<std::string, std::string>& map) {
  auto mapped = [&map](const std::string& name) {
    auto it = map.find(name);
    return it == map.end() ? name : it->second;
  };
  Vocabulary vocab;
  for (const auto& r : m.vocab().relations()) vocab.add_relation(mapped(r.name), r.arity);
  for (const auto& f : m.vocab().functions()) vocab.add_function(mapped(f.name), f.arity);
  FiniteStructure out(vocab, m.size());
  for (const auto& r : m.vocab().relations()) out.set_relation(mapped(r.name), m.relation(r.name));
  for (const auto& f : m.vocab().functions()) out.set_function(mapped(f.name), m.function(f.name));
  return out;
}

FiniteStructure relativized_substructure(const FiniteStructure& m, const std::string& upred) {
  const RelTable& u = m.relation(upred);
  if (u.arity != 1) throw SemanticError("'" + upred + "' must be unary");
  int n = m.size();
  std::vector<int> to_new(static_cast<std::size_t>(n), -1);
  std::vector<int> members;
  for (int i = 0; i < n; ++i)
    if (u.bits[static_cast<std::size_t>(i)]) {
      to_new[static_cast<std::size_t>(i)] = static_cast<int>(members.size());
      members.push_back(i);
    }
  if (members.empty())
    throw SemanticError("relativization failed: the extension of '" + upred +
                        "' is empty (violates the nonemptiness requirement on '" + upred + "')");

  Vocabulary sub;
  for (const auto& r : m.vocab().relations())
    if (r.name != upred) sub.add_relation(r.name, r.arity);
  for (const auto& f : m.vocab().functions()) sub.add_function(f.name, f.arity);

  // Closure check first, naming the violated closure conjunct.
  for (const auto& f : m.vocab().functions()) {
    const FunTable& table = m.function(f.name);
    std::uint64_t inner = tuple_count(members.size() > 0 ? static_cast<int>(members.size()) : 1,
                                      f.arity);
    for (std::uint64_t r = 0; r < inner; ++r) {
      std::vector<int> sub_tuple = tuple_at(r, static_cast<int>(members.size()), f.arity);
      std::vector<int> orig(sub_tuple.size());
      for (std::size_t i = 0; i < sub_tuple.size(); ++i)
        orig[i] = members[static_cast<std::size_t>(sub_tuple[i])];
      int value = table.at(tuple_rank(orig, n));
      if (to_new[static_cast<std::size_t>(value)] < 0)
        throw SemanticError("relativization failed: '" + upred + "' is not closed under '" +
                            f.name + "' (violates the closure requirement for '" + f.name + "')");
    }
  }

  int nn = static_cast<int>(members.size());
  FiniteStructure out(sub, nn);
  for (const auto& r : sub.relations()) {
    const RelTable& table = m.relation(r.name);
    RelTable restricted = empty_relation(nn, r.arity);
    std::uint64_t inner = tuple_count(nn, r.arity);
    for (std::uint64_t rank = 0; rank < inner; ++rank) {
      std::vector<int> sub_tuple = tuple_at(rank, nn, r.arity);
      std::vector<int> orig(sub_tuple.size());
      for (std::size_t i = 0; i < sub_tuple.size(); ++i)
        orig[i] = members[static_cast<std::size_t>(sub_tuple[i])];
      restricted.bits[rank] = table.test(tuple_rank(orig, n));
    }
    out.set_relation(r.name, std::move(restricted));
  }
  for (const auto& f : sub.functions()) {
    const FunTable& table = m.function(f.name);
    FunTable restricted = constant_function(nn, f.arity);
    std::uint64_t inner = tuple_count(nn, f.arity);
    for (std::uint64_t rank = 0; rank < inner; ++rank) {
      std::vector<int> sub_tuple = tuple_at(rank, nn, f.arity);
      std::vector<int> orig(sub_tuple.size());
      for (std::size_t i = 0; i < sub_tuple.size(); ++i)
        orig[i] = members[static_cast<std::size_t>(sub_tuple[i])];
      restricted.vals[rank] = to_new[static_cast<std::size_t>(table.at(tuple_rank(orig, n)))];
    }
    out.set_function(f.name, std::move(restricted));
  }
  return out;
}

namespace {

struct Line {
  int number;
  std::vector<std::string> words;
};

std::vector<Line> tokenize_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::string stripped = raw.substr(0, raw.find('#'));
    std::istringstream ls(stripped);
    Line line{number, {}};
    std::string w;
    while (ls >> w) line.words.push_back(w);
    if (!line.words.empty()) out.push_back(std::move(line));
  }
  return out;
}

int parse_int(const std::string& word, int line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(word, &used);
    if (used != word.size()) throw std::invalid_argument(word);
    return v;
  } catch (const std::exception&) {
    throw SyntaxError("expected an integer, got '" + word + "'", line, 1);
  }
}

int domain_element(const std::string& word, int n, int line) {
  int v = parse_int(word, line);
  if (v < 0 || v >= n)
    throw SyntaxError("element " + std::to_string(v) + " outside domain of size " +
                          std::to_string(n),
                      line, 1);
  return v;
}

// Shared scanner for the plain-structure part; returns the index where the
// family section starts (or lines.size()).
std::size_t scan_structure(const std::vector<Line>& lines, FiniteStructure& out) {
  if (lines.empty() || lines[0].words[0] != "domain" || lines[0].words.size() != 2)
    throw SyntaxError("structure file must start with 'domain <n>'", lines.empty() ? 1 : lines[0].number, 1);
  int n = parse_int(lines[0].words[1], lines[0].number);
  if (n < 1) throw SyntaxError("domain must have size >= 1", lines[0].number, 1);

  Vocabulary vocab;
  struct Block {
    bool relation;
    std::string name;
    int arity;
    RelTable rel;
    FunTable fun;
    std::vector<bool> specified;
  };
  std::vector<Block> blocks;

  std::size_t i = 1;
  for (; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const std::string& kw = line.words[0];
    if (kw == "family") break;
    if (kw == "rel" || kw == "fun") {
      if (line.words.size() != 3)
        throw SyntaxError("expected '" + kw + " <name> <arity>'", line.number, 1);
      int arity = parse_int(line.words[2], line.number);
      Block b;
      b.relation = (kw == "rel");
      b.name = line.words[1];
      b.arity = arity;
      try {
        if (b.relation) {
          vocab.add_relation(b.name, arity);
          b.rel = empty_relation(n, arity);
        } else {
          vocab.add_function(b.name, arity);
          b.fun = constant_function(n, arity);
          b.specified.assign(b.fun.vals.size(), false);
        }
      } catch (const SemanticError& e) {
        throw SyntaxError(e.what(), line.number, 1);
      }
      blocks.push_back(std::move(b));
      continue;
    }
    if (blocks.empty()) throw SyntaxError("row outside of a rel/fun block", line.number, 1);
    Block& b = blocks.back();
    if (kw == "t") {
      if (!b.relation) throw SyntaxError("'t' row inside a fun block", line.number, 1);
      if (static_cast<int>(line.words.size()) != b.arity + 1)
        throw SyntaxError("tuple row arity mismatch for '" + b.name + "'", line.number, 1);
      std::vector<int> tuple;
      for (std::size_t w = 1; w < line.words.size(); ++w)
        tuple.push_back(domain_element(line.words[w], n, line.number));
      b.rel.bits[tuple_rank(tuple, n)] = true;
    } else if (kw == "m") {
      if (b.relation) throw SyntaxError("'m' row inside a rel block", line.number, 1);
      if (static_cast<int>(line.words.size()) != b.arity + 3 ||
          line.words[line.words.size() - 2] != "->")
        throw SyntaxError("expected 'm i1 ... ik -> v'", line.number, 1);
      std::vector<int> tuple;
      for (int w = 1; w <= b.arity; ++w)
        tuple.push_back(domain_element(line.words[static_cast<std::size_t>(w)], n, line.number));
      int value = domain_element(line.words.back(), n, line.number);
      std::uint64_t rank = tuple_rank(tuple, n);
      b.fun.vals[rank] = value;
      b.specified[rank] = true;
    } else {
      throw SyntaxError("unexpected keyword '" + kw + "' in structure file", line.number, 1);
    }
  }

  for (const Block& b : blocks) {
    if (b.relation) continue;
    for (std::size_t r = 0; r < b.specified.size(); ++r)
      if (!b.specified[r])
        throw SyntaxError("function '" + b.name + "' is not totally specified", lines[0].number, 1);
  }

  out = FiniteStructure(vocab, n);
  for (const Block& b : blocks) {
    if (b.relation)
      out.set_relation(b.name, b.rel);
    else
      out.set_function(b.name, b.fun);
  }
  return i;
}

}  // namespace

FiniteStructure parse_structure(const std::string& text) {
  std::vector<Line> lines = tokenize_lines(text);
  FiniteStructure out;
  std::size_t rest = scan_structure(lines, out);
  if (rest != lines.size())
    throw SyntaxError("family blocks are only allowed in Henkin structure files",
                      lines[rest].number, 1);
  return out;
}

HenkinStructure parse_henkin_structure(const std::string& text) {
  std::vector<Line> lines = tokenize_lines(text);
  HenkinStructure out;
  std::size_t i = scan_structure(lines, out.base);
  int n = out.base.size();

  while (i < lines.size()) {
    const Line& header = lines[i];
    if (header.words[0] != "family" || header.words.size() != 3)
      throw SyntaxError("expected 'family rel <arity>' or 'family fun <arity>'", header.number, 1);
    bool relation = header.words[1] == "rel";
    if (!relation && header.words[1] != "fun")
      throw SyntaxError("expected 'family rel' or 'family fun'", header.number, 1);
    int arity = parse_int(header.words[2], header.number);
    if (arity < 0 || (relation && arity < 1))
      throw SyntaxError("invalid family arity", header.number, 1);
    ++i;
    while (i < lines.size() && lines[i].words[0] == "begin") {
      ++i;
      RelTable rel = relation ? empty_relation(n, arity) : RelTable{};
      FunTable fun;
      std::vector<bool> specified;
      if (!relation) {
        fun = constant_function(n, arity);
        specified.assign(fun.vals.size(), false);
      }
      while (i < lines.size() && lines[i].words[0] != "end") {
        const Line& row = lines[i];
        if (relation) {
          if (row.words[0] != "t" || static_cast<int>(row.words.size()) != arity + 1)
            throw SyntaxError("expected 't i1 ... ik' in relation family member", row.number, 1);
          std::vector<int> tuple;
          for (std::size_t w = 1; w < row.words.size(); ++w)
            tuple.push_back(domain_element(row.words[w], n, row.number));
          rel.bits[tuple_rank(tuple, n)] = true;
        } else {
          if (row.words[0] != "m" || static_cast<int>(row.words.size()) != arity + 3 ||
              row.words[row.words.size() - 2] != "->")
            throw SyntaxError("expected 'm i1 ... ik -> v' in function family member", row.number,
                              1);
          std::vector<int> tuple;
          for (int w = 1; w <= arity; ++w)
            tuple.push_back(domain_element(row.words[static_cast<std::size_t>(w)], n, row.number));
          std::uint64_t rank = tuple_rank(tuple, n);
          fun.vals[rank] = domain_element(row.words.back(), n, row.number);
          specified[rank] = true;
        }
        ++i;
      }
      if (i >= lines.size()) throw SyntaxError("family member without 'end'", header.number, 1);
      ++i;  // consume 'end'
      if (relation) {
        out.rel_families[arity].push_back(std::move(rel));
      } else {
        for (std::size_t r = 0; r < specified.size(); ++r)
          if (!specified[r])
            throw SyntaxError("function family member is not totally specified", header.number, 1);
        out.fun_families[arity].push_back(std::move(fun));
      }
    }
  }
  return out;
}

namespace {

void write_rel_rows(std::ostringstream& os, const RelTable& t, int n) {
  for (std::uint64_t r = 0; r < t.bits.size(); ++r) {
    if (!t.bits[r]) continue;
    os << "t";
    for (int v : tuple_at(r, n, t.arity)) os << " " << v;
    os << "\n";
  }
}

void write_fun_rows(std::ostringstream& os, const FunTable& t, int n) {
  for (std::uint64_t r = 0; r < t.vals.size(); ++r) {
    os << "m";
    for (int v : tuple_at(r, n, t.arity)) os << " " << v;
    os << " -> " << t.vals[r] << "\n";
  }
}

}  // namespace

std::string write_structure(const FiniteStructure& m) {
  std::ostringstream os;
  os << "domain " << m.size() << "\n";
  for (const auto& r : m.vocab().relations()) {
    os << "rel " << r.name << " " << r.arity << "\n";
    write_rel_rows(os, m.relation(r.name), m.size());
  }
  for (const auto& f : m.vocab().functions()) {
    os << "fun " << f.name << " " << f.arity << "\n";
    write_fun_rows(os, m.function(f.name), m.size());
  }
  return os.str();
}

std::string write_henkin_structure(const HenkinStructure& h) {
  std::ostringstream os;
  os << write_structure(h.base);
  for (const auto& [arity, members] : h.rel_families) {
    os << "family rel " << arity << "\n";
    for (const auto& member : members) {
      os << "begin\n";
      std::ostringstream rows;
      write_rel_rows(rows, member, h.base.size());
      os << rows.str() << "end\n";
    }
  }
  for (const auto& [arity, members] : h.fun_families) {
    os << "family fun " << arity << "\n";
    for (const auto& member : members) {
      os << "begin\n";
      std::ostringstream rows;
      write_fun_rows(rows, member, h.base.size());
      os << rows.str() << "end\n";
    }
  }
  return os.str();
}

}  // namespace catkit
