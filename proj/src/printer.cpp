#include "catkit/printer.hpp"

#include "catkit/errors.hpp"

namespace catkit {

namespace {

void put_term(std::string& out, const TermPtr& t) {
  out += t->name;
  if (t->kind == TermKind::Variable) return;
  if (t->args.empty()) return;  // constants and nullary function variables
  out += '(';
  for (std::size_t i = 0; i < t->args.size(); ++i) {
    if (i) out += ", ";
    put_term(out, t->args[i]);
  }
  out += ')';
}

void put_args(std::string& out, const std::vector<TermPtr>& args) {
  out += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    put_term(out, args[i]);
  }
  out += ')';
}

void put_nary(std::string& out, const std::vector<FormulaPtr>& kids, const char* op);

void put_formula(std::string& out, const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Equal:
      out += '(';
      put_term(out, f->terms[0]);
      out += " = ";
      put_term(out, f->terms[1]);
      out += ')';
      return;
    case FormulaKind::Rel:
    case FormulaKind::RelVar:
      out += f->name;
      put_args(out, f->terms);
      return;
    case FormulaKind::Not:
      out += "(~";
      put_formula(out, f->kids[0]);
      out += ')';
      return;
    case FormulaKind::And:
      put_nary(out, f->kids, " & ");
      return;
    case FormulaKind::Or:
      put_nary(out, f->kids, " | ");
      return;
    case FormulaKind::Implies:
      out += '(';
      put_formula(out, f->kids[0]);
      out += " -> ";
      put_formula(out, f->kids[1]);
      out += ')';
      return;
    case FormulaKind::Iff:
      out += '(';
      put_formula(out, f->kids[0]);
      out += " <-> ";
      put_formula(out, f->kids[1]);
      out += ')';
      return;
    case FormulaKind::Forall:
    case FormulaKind::ForallRel:
    case FormulaKind::ForallFun:
      out += "(!";
      out += f->name;
      out += ' ';
      put_formula(out, f->kids[0]);
      out += ')';
      return;
    case FormulaKind::Exists:
    case FormulaKind::ExistsRel:
    case FormulaKind::ExistsFun:
      out += "(?";
      out += f->name;
      out += ' ';
      put_formula(out, f->kids[0]);
      out += ')';
      return;
  }
  throw InternalError("unhandled formula kind in renderer");
}

void put_nary(std::string& out, const std::vector<FormulaPtr>& kids, const char* op) {
  out += '(';
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (i) out += op;
    put_formula(out, kids[i]);
  }
  out += ')';
}

}  // namespace

std::string render_term(const TermPtr& t) {
  std::string out;
  put_term(out, t);
  return out;
}

std::string render_formula(const FormulaPtr& f) {
  std::string out;
  put_formula(out, f);
  return out;
}

}  // namespace catkit
