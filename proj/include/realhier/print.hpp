#pragma once
// Canonical pretty-printer; print_sentence output re-parses to an equal tree.

#include <sstream>

#include "realhier/ast.hpp"

namespace realhier {

namespace detail {

// precedence: add/sub 1, mul 2, unary- 3, pow 4, leaf 5
inline void print_term_prec(std::ostringstream& os, const Term& t, int want) {
  int prec;
  switch (t->kind) {
    case TermKind::Const: prec = t->value < 0 ? 3 : 5; break;
    case TermKind::Var: prec = 5; break;
    case TermKind::Add:
    case TermKind::Sub: prec = 1; break;
    case TermKind::Mul: prec = 2; break;
    case TermKind::Neg: prec = 3; break;
    case TermKind::Pow: prec = 4; break;
    default: throw Error("print: bad term");
  }
  bool paren = prec < want;
  if (paren) os << "(";
  switch (t->kind) {
    case TermKind::Const: os << rat_str(t->value); break;
    case TermKind::Var: os << t->var; break;
    case TermKind::Add:
      print_term_prec(os, t->a, 1);
      os << " + ";
      print_term_prec(os, t->b, 2);
      break;
    case TermKind::Sub:
      print_term_prec(os, t->a, 1);
      os << " - ";
      print_term_prec(os, t->b, 2);
      break;
    case TermKind::Mul:
      print_term_prec(os, t->a, 2);
      os << "*";
      print_term_prec(os, t->b, 3);
      break;
    case TermKind::Neg:
      // "-3" re-parses as a negative literal, so a Neg node around a
      // constant needs explicit parens to survive the round trip
      os << "-";
      print_term_prec(os, t->a, t->a->kind == TermKind::Const ? 6 : 3);
      break;
    case TermKind::Pow:
      print_term_prec(os, t->a, 5);
      os << "^" << t->exp;
      break;
  }
  if (paren) os << ")";
}

// precedence: -> 1 (right assoc), \/ 2, /\ 3, ~ 4, atom 5
inline void print_formula_prec(std::ostringstream& os, const Formula& f, int want) {
  int prec;
  switch (f->kind) {
    case FKind::Atom: prec = 5; break;
    case FKind::Not: prec = 4; break;
    case FKind::And: prec = 3; break;
    case FKind::Or: prec = 2; break;
    case FKind::Implies: prec = 1; break;
    case FKind::Quant: prec = 0; break;
  }
  bool paren = prec < want;
  if (paren) os << "(";
  switch (f->kind) {
    case FKind::Atom:
      print_term_prec(os, f->lhs, 1);
      os << " " << relop_str(f->op) << " ";
      print_term_prec(os, f->rhs, 1);
      break;
    case FKind::Not:
      os << "~";
      print_formula_prec(os, f->a, 4);
      break;
    case FKind::And:
      print_formula_prec(os, f->a, 3);
      os << " /\\ ";
      print_formula_prec(os, f->b, 4);
      break;
    case FKind::Or:
      print_formula_prec(os, f->a, 2);
      os << " \\/ ";
      print_formula_prec(os, f->b, 3);
      break;
    case FKind::Implies:
      print_formula_prec(os, f->a, 2);
      os << " -> ";
      print_formula_prec(os, f->b, 1);
      break;
    case FKind::Quant: {
      // debugging aid only; embedded quantifiers are not surface syntax
      os << "[" << (f->qkind == QKind::Exists ? "exists" : "forall");
      for (size_t i = 0; i < f->qvars.size(); ++i) os << (i ? ", " : " ") << f->qvars[i];
      os << " . ";
      print_formula_prec(os, f->a, 0);
      os << "]";
      break;
    }
  }
  if (paren) os << ")";
}

}  // namespace detail

inline std::string print_term(const Term& t) {
  std::ostringstream os;
  detail::print_term_prec(os, t, 0);
  return os.str();
}

inline std::string print_formula(const Formula& f) {
  std::ostringstream os;
  detail::print_formula_prec(os, f, 0);
  return os.str();
}

inline std::string print_domain(const Domain& d) {
  switch (d.kind) {
    case Domain::AllReals: return "R";
    case Domain::OpenUnit: return "(-1, 1)";
    case Domain::ClosedUnit: return "[-1, 1]";
    case Domain::Guarded: {
      if (!d.lower || !d.upper || d.lower_strict != d.upper_strict)
        throw Error("domain has no surface syntax; desugar first");
      std::string l = print_term(d.lower), u = print_term(d.upper);
      return d.lower_strict ? "(" + l + ", " + u + ")" : "[" + l + ", " + u + "]";
    }
  }
  throw Error("print_domain: bad kind");
}

inline const char* qkind_keyword(QKind k) {
  switch (k) {
    case QKind::Exists: return "exists";
    case QKind::Forall: return "forall";
    case QKind::ExistsStar: return "existsS";
    case QKind::ForallStar: return "forallS";
    default: return "H";
  }
}

inline std::string print_sentence(const Sentence& s) {
  std::ostringstream os;
  for (const auto& blk : s.prefix) {
    os << qkind_keyword(blk.kind);
    for (size_t i = 0; i < blk.vars.size(); ++i) os << (i ? ", " : " ") << blk.vars[i];
    if (blk.domain.kind != Domain::AllReals) os << " in " << print_domain(blk.domain);
    os << " . ";
  }
  detail::print_formula_prec(os, s.matrix, 0);
  return os.str();
}

}  // namespace realhier
