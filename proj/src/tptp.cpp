#include "catkit/tptp.hpp"

#include <cctype>
#include <sstream>

#include "catkit/errors.hpp"

namespace catkit::arith {

namespace {

bool plain_functor(const std::string& name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

std::string functor(const std::string& name) {
  if (plain_functor(name)) return name;
  std::string out = "'";
  for (char c : name) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  out += "'";
  return out;
}

std::string tptp_var(const std::string& name) {
  std::string out = name;
  out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

void put_term(std::string& out, const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Variable:
      out += tptp_var(t->name);
      return;
    case TermKind::FunctionVar:
      throw SemanticError("second-order construct '" + t->name + "' cannot be exported");
    case TermKind::Function:
      out += functor(t->name);
      if (t->args.empty()) return;
      out += '(';
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (i) out += ", ";
        put_term(out, t->args[i]);
      }
      out += ')';
      return;
  }
}

void put_formula(std::string& out, const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Equal:
      out += '(';
      put_term(out, f->terms[0]);
      out += " = ";
      put_term(out, f->terms[1]);
      out += ')';
      return;
    case FormulaKind::Rel: {
      out += functor(f->name);
      out += '(';
      for (std::size_t i = 0; i < f->terms.size(); ++i) {
        if (i) out += ", ";
        put_term(out, f->terms[i]);
      }
      out += ')';
      return;
    }
    case FormulaKind::RelVar:
    case FormulaKind::ForallRel:
    case FormulaKind::ExistsRel:
    case FormulaKind::ForallFun:
    case FormulaKind::ExistsFun:
      throw SemanticError("second-order construct '" + f->name + "' cannot be exported");
    case FormulaKind::Not:
      out += "(~ ";
      put_formula(out, f->kids[0]);
      out += ')';
      return;
    case FormulaKind::And:
    case FormulaKind::Or: {
      const char* op = f->kind == FormulaKind::And ? " & " : " | ";
      out += '(';
      for (std::size_t i = 0; i < f->kids.size(); ++i) {
        if (i) out += op;
        put_formula(out, f->kids[i]);
      }
      out += ')';
      return;
    }
    case FormulaKind::Implies:
    case FormulaKind::Iff:
      out += '(';
      put_formula(out, f->kids[0]);
      out += f->kind == FormulaKind::Implies ? " => " : " <=> ";
      put_formula(out, f->kids[1]);
      out += ')';
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      out += f->kind == FormulaKind::Forall ? "! [" : "? [";
      out += tptp_var(f->name);
      out += "] : ";
      put_formula(out, f->kids[0]);
      return;
  }
  throw InternalError("unhandled formula kind in tptp writer");
}

}  // namespace

std::string write_tptp(const transforms::TheoryInstanceSet& axioms, const FormulaPtr& conjecture) {
  std::ostringstream os;
  int i = 0;
  for (const auto& s : axioms.sentences) {
    std::string body;
    put_formula(body, s);
    os << "fof(" << axioms.name << "_ax" << ++i << ", axiom, " << body << ").\n";
  }
  std::string body;
  put_formula(body, conjecture);
  os << "fof(conjecture_1, conjecture, " << body << ").\n";
  return os.str();
}

namespace {

struct TptpLexer {
  explicit TptpLexer(const std::string& text) : text(text) { next(); }

  std::string tok;
  const std::string& text;
  std::size_t pos = 0;
  int line = 1;

  void next() {
    while (pos < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '%')) {
      if (text[pos] == '%') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
        continue;
      }
      if (text[pos] == '\n') ++line;
      ++pos;
    }
    tok.clear();
    if (pos >= text.size()) return;
    char c = text[pos];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        tok += text[pos++];
      return;
    }
    if (c == '\'') {
      ++pos;
      while (pos < text.size() && text[pos] != '\'') {
        if (text[pos] == '\\') ++pos;
        if (pos < text.size()) tok += text[pos++];
      }
      if (pos >= text.size()) throw SyntaxError("unterminated quoted functor", line, 1);
      ++pos;  // closing quote
      return;
    }
    for (const char* two : {"=>", "<=>", "!="}) {
      std::string t(two);
      if (text.compare(pos, t.size(), t) == 0) {
        tok = t;
        pos += t.size();
        return;
      }
    }
    tok = std::string(1, c);
    ++pos;
  }

  void expect(const std::string& s) {
    if (tok != s) throw SyntaxError("expected '" + s + "', got '" + tok + "'", line, 1);
    next();
  }
};

class TptpParser {
 public:
  TptpParser(const std::string& text, const Vocabulary& vocab) : lex_(text), vocab_(vocab) {}

  std::vector<TptpEntry> run() {
    std::vector<TptpEntry> out;
    while (!lex_.tok.empty()) {
      lex_.expect("fof");
      lex_.expect("(");
      TptpEntry entry;
      entry.name = lex_.tok;
      lex_.next();
      lex_.expect(",");
      entry.role = lex_.tok;
      lex_.next();
      lex_.expect(",");
      entry.formula = formula();
      lex_.expect(")");
      lex_.expect(".");
      out.push_back(std::move(entry));
    }
    return out;
  }

 private:
  bool is_var(const std::string& t) const {
    return !t.empty() && std::isupper(static_cast<unsigned char>(t[0]));
  }

  static std::string unvar(const std::string& t) {
    std::string out = t;
    out[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(out[0])));
    return out;
  }

  FormulaPtr formula() {
    FormulaPtr lhs = unit();
    if (lex_.tok == "&" || lex_.tok == "|") {
      std::string op = lex_.tok;
      std::vector<FormulaPtr> kids{lhs};
      while (lex_.tok == op) {
        lex_.next();
        kids.push_back(unit());
      }
      return op == "&" ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
    if (lex_.tok == "=>") {
      lex_.next();
      return Formula::implies(std::move(lhs), formula());
    }
    if (lex_.tok == "<=>") {
      lex_.next();
      return Formula::iff(std::move(lhs), formula());
    }
    return lhs;
  }

  FormulaPtr unit() {
    if (lex_.tok == "~") {
      lex_.next();
      return Formula::negate(unit());
    }
    if (lex_.tok == "!" || lex_.tok == "?") {
      bool universal = lex_.tok == "!";
      lex_.next();
      lex_.expect("[");
      std::vector<std::string> vars;
      vars.push_back(unvar(lex_.tok));
      lex_.next();
      while (lex_.tok == ",") {
        lex_.next();
        vars.push_back(unvar(lex_.tok));
        lex_.next();
      }
      lex_.expect("]");
      lex_.expect(":");
      FormulaPtr body = unit();
      for (auto it = vars.rbegin(); it != vars.rend(); ++it)
        body = universal ? Formula::forall(*it, std::move(body))
                         : Formula::exists(*it, std::move(body));
      return body;
    }
    if (lex_.tok == "(") {
      lex_.next();
      FormulaPtr f = formula();
      lex_.expect(")");
      // Equality between a parenthesized... not produced by the writer.
      return f;
    }
    // Atom: predicate application or equality between terms.
    TermPtr lhs = term();
    if (lex_.tok == "=") {
      lex_.next();
      return Formula::eq(std::move(lhs), term());
    }
    if (lex_.tok == "!=") {
      lex_.next();
      return Formula::negate(Formula::eq(std::move(lhs), term()));
    }
    // Must be a relation atom; re-interpret the term.
    if (lhs->kind == TermKind::Function && vocab_.relation_arity(lhs->name))
      return Formula::rel(lhs->name, lhs->args);
    throw SyntaxError("expected '=' after term '" + lhs->name + "'", lex_.line, 1);
  }

  TermPtr term() {
    std::string name = lex_.tok;
    if (name.empty()) throw SyntaxError("unexpected end of input in term", lex_.line, 1);
    lex_.next();
    if (is_var(name)) return Term::var(unvar(name));
    std::vector<TermPtr> args;
    if (lex_.tok == "(") {
      lex_.next();
      args.push_back(term());
      while (lex_.tok == ",") {
        lex_.next();
        args.push_back(term());
      }
      lex_.expect(")");
    }
    if (vocab_.relation_arity(name)) {
      // Caller decides; represent transiently as a function application.
      auto t = std::make_shared<Term>();
      t->kind = TermKind::Function;
      t->name = name;
      t->args = std::move(args);
      return t;
    }
    auto arity = vocab_.function_arity(name);
    if (!arity || *arity != static_cast<int>(args.size()))
      throw SyntaxError("unknown or misapplied symbol '" + name + "'", lex_.line, 1);
    return Term::fn(name, std::move(args));
  }

  TptpLexer lex_;
  const Vocabulary& vocab_;
};

}  // namespace

std::vector<TptpEntry> read_tptp(const std::string& text, const Vocabulary& vocab) {
  TptpParser parser(text, vocab);
  return parser.run();
}

std::vector<ProverResult> parse_prover_results(const std::string& text) {
  std::vector<ProverResult> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string stripped = line.substr(0, line.find('#'));
    std::istringstream ls(stripped);
    ProverResult r;
    if (!(ls >> r.problem)) continue;
    if (!(ls >> r.status))
      throw SyntaxError("expected '<problem-name> <szs-status-word>'", lineno, 1);
    std::string extra;
    if (ls >> extra) throw SyntaxError("trailing input after status", lineno, 1);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace catkit::arith
