#pragma once
// SMT-LIB2 (logic NRA) export. Domains become guard implications on forall
// blocks and guard conjunctions on exists blocks.

#include <sstream>

#include "realhier/ast.hpp"

namespace realhier {
namespace detail {

inline std::string smt_symbol(const std::string& name) {
  for (char c : name)
    if (!(isalnum(static_cast<unsigned char>(c)) || c == '_')) return "|" + name + "|";
  return name;
}

inline std::string smt_rational(const Rational& q) {
  Int num = rat_num(q), den = rat_den(q);
  bool neg = num < 0;
  if (neg) num = -num;
  std::string core =
      den == 1 ? num.str() + ".0" : "(/ " + num.str() + ".0 " + den.str() + ".0)";
  return neg ? "(- " + core + ")" : core;
}

inline std::string smt_term(const Term& t) {
  switch (t->kind) {
    case TermKind::Const: return smt_rational(t->value);
    case TermKind::Var: return smt_symbol(t->var);
    case TermKind::Add: return "(+ " + smt_term(t->a) + " " + smt_term(t->b) + ")";
    case TermKind::Sub: return "(- " + smt_term(t->a) + " " + smt_term(t->b) + ")";
    case TermKind::Mul: return "(* " + smt_term(t->a) + " " + smt_term(t->b) + ")";
    case TermKind::Neg: return "(- " + smt_term(t->a) + ")";
    case TermKind::Pow: {
      if (t->exp == 0) return "1.0";
      std::string base = smt_term(t->a);
      if (t->exp == 1) return base;
      std::string r = "(* " + base;
      for (unsigned i = 1; i < t->exp; ++i) r += " " + base;
      return r + ")";
    }
  }
  throw Error("smt_term: bad kind");
}

inline std::vector<std::string> smt_domain_guards(const std::string& var, const Domain& d) {
  std::string x = smt_symbol(var);
  switch (d.kind) {
    case Domain::AllReals: return {};
    case Domain::OpenUnit: return {"(< (- 1.0) " + x + ")", "(< " + x + " 1.0)"};
    case Domain::ClosedUnit: return {"(<= (- 1.0) " + x + ")", "(<= " + x + " 1.0)"};
    case Domain::Guarded: {
      std::vector<std::string> gs;
      if (d.lower)
        gs.push_back("(" + std::string(d.lower_strict ? "<" : "<=") + " " + smt_term(d.lower) +
                     " " + x + ")");
      if (d.upper)
        gs.push_back("(" + std::string(d.upper_strict ? "<" : "<=") + " " + x + " " +
                     smt_term(d.upper) + ")");
      return gs;
    }
  }
  throw Error("smt_domain_guards: bad kind");
}

inline std::string smt_quantified(QKind kind, const std::vector<std::string>& vars,
                                  const Domain& dom, const std::string& body) {
  if (is_exotic(kind)) throw ExoticQuantifierPresent("expand exotic quantifiers before export");
  bool forall = kind == QKind::Forall;
  std::vector<std::string> guards;
  for (const auto& v : vars)
    for (auto& g : smt_domain_guards(v, dom)) guards.push_back(std::move(g));
  std::string inner = body;
  if (!guards.empty()) {
    std::string conj;
    if (guards.size() == 1 && forall) {
      conj = guards[0];
    } else {
      conj = "(and";
      for (const auto& g : guards) conj += " " + g;
      if (forall) conj += ")";
    }
    inner = forall ? "(=> " + conj + " " + body + ")" : conj + " " + body + ")";
  }
  std::string binders;
  for (const auto& v : vars) binders += "(" + smt_symbol(v) + " Real)";
  return "(" + std::string(forall ? "forall" : "exists") + " (" + binders + ") " + inner + ")";
}

inline std::string smt_formula(const Formula& f) {
  switch (f->kind) {
    case FKind::Atom: {
      std::string l = smt_term(f->lhs), r = smt_term(f->rhs);
      switch (f->op) {
        case Relop::LT: return "(< " + l + " " + r + ")";
        case Relop::LE: return "(<= " + l + " " + r + ")";
        case Relop::EQ: return "(= " + l + " " + r + ")";
        case Relop::GE: return "(>= " + l + " " + r + ")";
        case Relop::GT: return "(> " + l + " " + r + ")";
        case Relop::NE: return "(not (= " + l + " " + r + "))";
      }
      throw Error("smt_formula: bad relop");
    }
    case FKind::And: return "(and " + smt_formula(f->a) + " " + smt_formula(f->b) + ")";
    case FKind::Or: return "(or " + smt_formula(f->a) + " " + smt_formula(f->b) + ")";
    case FKind::Not: return "(not " + smt_formula(f->a) + ")";
    case FKind::Implies: return "(=> " + smt_formula(f->a) + " " + smt_formula(f->b) + ")";
    case FKind::Quant: return smt_quantified(f->qkind, f->qvars, f->qdomain, smt_formula(f->a));
  }
  throw Error("smt_formula: bad kind");
}

}  // namespace detail

inline std::string to_smtlib(const Sentence& s) {
  std::string body = detail::smt_formula(s.matrix);
  for (auto it = s.prefix.rbegin(); it != s.prefix.rend(); ++it)
    body = detail::smt_quantified(it->kind, it->vars, it->domain, body);
  std::ostringstream os;
  os << "(set-logic NRA)\n(assert " << body << ")\n(check-sat)\n";
  return os.str();
}

}  // namespace realhier
