#include "catkit/parser.hpp"

#include <cctype>
#include <sstream>
#include <vector>

#include "catkit/errors.hpp"
#include "catkit/hygiene.hpp"

namespace catkit {

namespace {

enum class Tok { Ident, Bang, Question, Tilde, Amp, Pipe, Arrow, Iff, LParen, RParen, Comma, Equals, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_space();
    current_.line = line_;
    current_.column = col_;
    if (pos_ >= text_.size()) {
      current_.kind = Tok::End;
      current_.text.clear();
      return;
    }
    char c = text_[pos_];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        bump();
      current_.kind = Tok::Ident;
      current_.text = text_.substr(start, pos_ - start);
      return;
    }
    switch (c) {
      case '!': bump(); current_.kind = Tok::Bang; return;
      case '?': bump(); current_.kind = Tok::Question; return;
      case '~': bump(); current_.kind = Tok::Tilde; return;
      case '&': bump(); current_.kind = Tok::Amp; return;
      case '|': bump(); current_.kind = Tok::Pipe; return;
      case '(': bump(); current_.kind = Tok::LParen; return;
      case ')': bump(); current_.kind = Tok::RParen; return;
      case ',': bump(); current_.kind = Tok::Comma; return;
      case '=': bump(); current_.kind = Tok::Equals; return;
      case '-':
        bump();
        if (pos_ < text_.size() && text_[pos_] == '>') {
          bump();
          current_.kind = Tok::Arrow;
          return;
        }
        throw SyntaxError("expected '>' after '-'", line_, col_);
      case '<':
        bump();
        if (pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>') {
          bump();
          bump();
          current_.kind = Tok::Iff;
          return;
        }
        throw SyntaxError("expected '->' after '<'", line_, col_);
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", line_, col_);
    }
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token current_{};
};

enum class VarKind { FirstOrder, RelationVar, FunctionVar };

class Parser {
 public:
  Parser(const std::string& text, const Vocabulary& vocab) : lex_(text), vocab_(vocab) {}

  FormulaPtr run() {
    FormulaPtr f = formula();
    const Token& t = lex_.peek();
    if (t.kind != Tok::End)
      throw SyntaxError("unexpected trailing input '" + describe(t) + "'", t.line, t.column);
    return f;
  }

 private:
  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::Ident: return t.text;
      case Tok::Bang: return "!";
      case Tok::Question: return "?";
      case Tok::Tilde: return "~";
      case Tok::Amp: return "&";
      case Tok::Pipe: return "|";
      case Tok::Arrow: return "->";
      case Tok::Iff: return "<->";
      case Tok::LParen: return "(";
      case Tok::RParen: return ")";
      case Tok::Comma: return ",";
      case Tok::Equals: return "=";
      case Tok::End: return "end of input";
    }
    return "?";
  }

  [[noreturn]] void fail(const std::string& msg) {
    const Token& t = lex_.peek();
    throw SyntaxError(msg + " (found '" + describe(t) + "')", t.line, t.column);
  }

  void expect(Tok kind, const char* what) {
    if (lex_.peek().kind != kind) fail(std::string("expected ") + what);
    lex_.take();
  }

  FormulaPtr formula() { return iff(); }

  FormulaPtr iff() {
    FormulaPtr lhs = implication();
    if (lex_.peek().kind == Tok::Iff) {
      lex_.take();
      return Formula::iff(std::move(lhs), iff());
    }
    return lhs;
  }

  FormulaPtr implication() {
    FormulaPtr lhs = disjunction();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.take();
      return Formula::implies(std::move(lhs), implication());
    }
    return lhs;
  }

  FormulaPtr disjunction() {
    std::vector<FormulaPtr> kids{conjunction()};
    while (lex_.peek().kind == Tok::Pipe) {
      lex_.take();
      kids.push_back(conjunction());
    }
    return kids.size() == 1 ? kids[0] : Formula::disj(std::move(kids));
  }

  FormulaPtr conjunction() {
    std::vector<FormulaPtr> kids{unary()};
    while (lex_.peek().kind == Tok::Amp) {
      lex_.take();
      kids.push_back(unary());
    }
    return kids.size() == 1 ? kids[0] : Formula::conj(std::move(kids));
  }

  FormulaPtr unary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Tilde:
        lex_.take();
        return Formula::negate(unary());
      case Tok::Bang:
        return quantified(/*universal=*/true);
      case Tok::Question:
        return quantified(/*universal=*/false);
      default:
        return primary();
    }
  }

  FormulaPtr quantified(bool universal) {
    Token q = lex_.take();
    if (lex_.peek().kind != Tok::Ident) fail("expected a variable after quantifier");
    Token v = lex_.take();
    VarKind kind = classify_binder(v);
    scope_.push_back({v.text, kind});
    FormulaPtr body = unary();
    scope_.pop_back();
    switch (kind) {
      case VarKind::FirstOrder:
        return universal ? Formula::forall(v.text, body) : Formula::exists(v.text, body);
      case VarKind::RelationVar:
        return universal ? Formula::forall_rel(v.text, body) : Formula::exists_rel(v.text, body);
      case VarKind::FunctionVar:
        return universal ? Formula::forall_fun(v.text, body) : Formula::exists_fun(v.text, body);
    }
    throw InternalError("unreachable binder kind");
  }

  VarKind classify_binder(const Token& v) {
    if (vocab_.contains(v.text))
      throw SyntaxError("bound variable '" + v.text + "' clashes with a vocabulary symbol",
                        v.line, v.column);
    if (is_fo_variable_name(v.text)) return VarKind::FirstOrder;
    if (is_so_function_variable_name(v.text)) return VarKind::FunctionVar;
    if (is_so_relation_variable_name(v.text)) return VarKind::RelationVar;
    throw SyntaxError("'" + v.text +
                          "' is not a valid variable (second-order variables need a "
                          "trailing arity tag, e.g. X2 or F1f)",
                      v.line, v.column);
  }

  FormulaPtr primary() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::LParen) {
      lex_.take();
      FormulaPtr f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind != Tok::Ident) fail("expected a formula");
    // Relation atom or the left-hand term of an equality.
    if (auto k = vocab_.relation_arity(t.text)) {
      Token r = lex_.take();
      auto args = argument_list(r.text, *k);
      return Formula::rel(r.text, std::move(args));
    }
    if (!vocab_.contains(t.text) && is_so_relation_variable_name(t.text)) {
      Token r = lex_.take();
      auto args = argument_list(r.text, *so_name_arity(r.text));
      return Formula::relvar(r.text, std::move(args));
    }
    TermPtr lhs = term();
    expect(Tok::Equals, "'='");
    TermPtr rhs = term();
    return Formula::eq(std::move(lhs), std::move(rhs));
  }

  std::vector<TermPtr> argument_list(const std::string& who, int arity) {
    expect(Tok::LParen, "'('");
    std::vector<TermPtr> args;
    if (lex_.peek().kind != Tok::RParen) {
      args.push_back(term());
      while (lex_.peek().kind == Tok::Comma) {
        lex_.take();
        args.push_back(term());
      }
    }
    const Token& t = lex_.peek();
    if (t.kind != Tok::RParen)
      throw SyntaxError("expected ')' in argument list of '" + who + "'", t.line, t.column);
    lex_.take();
    if (static_cast<int>(args.size()) != arity)
      throw SyntaxError("'" + who + "' expects " + std::to_string(arity) + " arguments, got " +
                            std::to_string(args.size()),
                        t.line, t.column);
    return args;
  }

  TermPtr term() {
    const Token& t = lex_.peek();
    if (t.kind != Tok::Ident) fail("expected a term");
    Token id = lex_.take();
    if (auto k = vocab_.function_arity(id.text)) {
      if (*k > 0 || lex_.peek().kind == Tok::LParen)
        return Term::fn(id.text, argument_list(id.text, *k));
      return Term::fn(id.text, {});
    }
    if (vocab_.relation_arity(id.text))
      throw SyntaxError("relation symbol '" + id.text + "' used as a term", id.line, id.column);
    if (is_so_function_variable_name(id.text)) {
      int k = *so_name_arity(id.text);
      if (k > 0 || lex_.peek().kind == Tok::LParen)
        return Term::fvar(id.text, argument_list(id.text, k));
      return Term::fvar(id.text, {});
    }
    if (is_fo_variable_name(id.text)) {
      if (lex_.peek().kind == Tok::LParen)
        throw SyntaxError("unknown symbol '" + id.text + "' applied to arguments", id.line,
                          id.column);
      return Term::var(id.text);
    }
    throw SyntaxError("unknown symbol '" + id.text + "'", id.line, id.column);
  }

  struct Binding {
    std::string name;
    VarKind kind;
  };

  Lexer lex_;
  const Vocabulary& vocab_;
  std::vector<Binding> scope_;
};

bool is_decl_line(const std::string& line, std::string& kw) {
  std::istringstream in(line);
  if (!(in >> kw)) return false;
  return kw == "rel" || kw == "fun";
}

}  // namespace

FormulaPtr parse_formula(const std::string& text, const Vocabulary& vocab, bool require_sentence) {
  Parser parser(text, vocab);
  FormulaPtr f = parser.run();
  if (require_sentence) {
    FreeProfile frees = free_symbols(f);
    if (!frees.fo_vars.empty())
      throw SemanticError("unbound variable '" + *frees.fo_vars.begin() + "' (sentence required)");
    if (!frees.so_vars.empty())
      throw SemanticError("unbound variable '" + frees.so_vars.begin()->name +
                          "' (sentence required)");
  }
  return f;
}

Vocabulary parse_vocabulary(const std::string& text) {
  Vocabulary vocab;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string stripped = line.substr(0, line.find('#'));
    std::istringstream ls(stripped);
    std::string kw;
    if (!(ls >> kw)) continue;
    std::string name;
    int arity;
    if ((kw != "rel" && kw != "fun") || !(ls >> name >> arity))
      throw SyntaxError("expected 'rel <name> <arity>' or 'fun <name> <arity>'", lineno, 1);
    std::string extra;
    if (ls >> extra) throw SyntaxError("trailing input after declaration", lineno, 1);
    try {
      if (kw == "rel")
        vocab.add_relation(name, arity);
      else
        vocab.add_function(name, arity);
    } catch (const SemanticError& e) {
      throw SyntaxError(e.what(), lineno, 1);
    }
  }
  return vocab;
}

FormulaFile parse_formula_file(const std::string& text, bool require_sentence) {
  std::istringstream in(text);
  std::string line;
  std::string decls;
  std::string body;
  bool in_body = false;
  int body_offset = 0;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!in_body) {
      std::string stripped = line.substr(0, line.find('#'));
      std::string kw;
      if (is_decl_line(stripped, kw)) {
        decls += line;
        decls += '\n';
        continue;
      }
      std::istringstream probe(stripped);
      std::string any;
      if (!(probe >> any)) continue;  // blank or comment-only line
      in_body = true;
      body_offset = lineno - 1;
    }
    body += line;
    body += '\n';
  }
  FormulaFile out;
  out.vocab = parse_vocabulary(decls);
  std::string probe_all = body;
  bool blank = true;
  for (char c : probe_all)
    if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
  if (blank) return out;
  // Pad so that error positions refer to lines of the original file.
  std::string padded(static_cast<std::size_t>(body_offset), '\n');
  padded += body;
  out.formula = parse_formula(padded, out.vocab, require_sentence);
  return out;
}

}  // namespace catkit
