#pragma once
// Syntax trees: terms, atoms, formulas, quantifier blocks, sentences.

#include <algorithm>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "realhier/base.hpp"

namespace realhier {

struct SourceSpan {
  size_t start = 0, end = 0;
};

// ---------------------------------------------------------------- terms

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

enum class TermKind { Const, Var, Add, Sub, Mul, Neg, Pow };

struct TermNode {
  TermKind kind;
  Rational value;    // Const
  std::string var;   // Var
  Term a, b;         // children
  unsigned exp = 0;  // Pow
  SourceSpan span;
};

inline Term tconst(const Rational& q) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Const;
  n->value = q;
  return n;
}
inline Term tvar(const std::string& v) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Var;
  n->var = v;
  return n;
}
inline Term tbin(TermKind k, Term a, Term b) {
  auto n = std::make_shared<TermNode>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}
inline Term tadd(Term a, Term b) { return tbin(TermKind::Add, std::move(a), std::move(b)); }
inline Term tsub(Term a, Term b) { return tbin(TermKind::Sub, std::move(a), std::move(b)); }
inline Term tmul(Term a, Term b) { return tbin(TermKind::Mul, std::move(a), std::move(b)); }
inline Term tneg(Term a) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Neg;
  n->a = std::move(a);
  return n;
}
inline Term tpow(Term a, unsigned e) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Pow;
  n->a = std::move(a);
  n->exp = e;
  return n;
}

inline size_t term_size(const Term& t) {
  if (!t) return 0;
  switch (t->kind) {
    case TermKind::Const:
    case TermKind::Var: return 1;
    case TermKind::Neg: return 1 + term_size(t->a);
    case TermKind::Pow: return 1 + term_size(t->a);
    default: return 1 + term_size(t->a) + term_size(t->b);
  }
}

inline void term_vars(const Term& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == TermKind::Var) out.insert(t->var);
  term_vars(t->a, out);
  term_vars(t->b, out);
}

inline bool term_equal(const Term& x, const Term& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case TermKind::Const: return x->value == y->value;
    case TermKind::Var: return x->var == y->var;
    case TermKind::Neg: return term_equal(x->a, y->a);
    case TermKind::Pow: return x->exp == y->exp && term_equal(x->a, y->a);
    default: return term_equal(x->a, y->a) && term_equal(x->b, y->b);
  }
}

inline bool term_is_zero_const(const Term& t) {
  return t && t->kind == TermKind::Const && t->value == 0;
}

// ---------------------------------------------------------------- formulas

enum class Relop { LT, LE, EQ, GE, GT, NE };

inline const char* relop_str(Relop r) {
  switch (r) {
    case Relop::LT: return "<";
    case Relop::LE: return "<=";
    case Relop::EQ: return "=";
    case Relop::GE: return ">=";
    case Relop::GT: return ">";
    default: return "!=";
  }
}

enum class QKind { Exists, Forall, ExistsStar, ForallStar, H };

inline bool is_exotic(QKind k) {
  return k == QKind::ExistsStar || k == QKind::ForallStar || k == QKind::H;
}

// Quantifier domain. Guarded bounds may reference earlier prefix variables.
struct Domain {
  enum Kind { AllReals, OpenUnit, ClosedUnit, Guarded } kind = AllReals;
  Term lower, upper;  // Guarded only; null = unbounded on that side
  bool lower_strict = true, upper_strict = true;

  static Domain all() { return Domain{}; }
  static Domain open_unit() { return Domain{OpenUnit, nullptr, nullptr, true, true}; }
  static Domain closed_unit() { return Domain{ClosedUnit, nullptr, nullptr, false, false}; }
  static Domain guarded(Term lo, Term hi, bool lo_strict, bool hi_strict) {
    // canonicalize the unit intervals so printed forms round-trip structurally
    if (lo && hi && lo->kind == TermKind::Const && hi->kind == TermKind::Const &&
        lo->value == -1 && hi->value == 1) {
      if (lo_strict && hi_strict) return open_unit();
      if (!lo_strict && !hi_strict) return closed_unit();
    }
    return Domain{Guarded, std::move(lo), std::move(hi), lo_strict, hi_strict};
  }
};

inline bool domain_equal(const Domain& x, const Domain& y) {
  if (x.kind != y.kind) return false;
  if (x.kind != Domain::Guarded) return true;
  return x.lower_strict == y.lower_strict && x.upper_strict == y.upper_strict &&
         ((!x.lower && !y.lower) || (x.lower && y.lower && term_equal(x.lower, y.lower))) &&
         ((!x.upper && !y.upper) || (x.upper && y.upper && term_equal(x.upper, y.upper)));
}

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

enum class FKind { Atom, And, Or, Not, Implies, Quant };

struct FormulaNode {
  FKind kind;
  // Atom: canonical form keeps rhs = 0 unless built directly from surface syntax
  Term lhs, rhs;
  Relop op = Relop::EQ;
  Formula a, b;  // children
  // Quant (pre-prenex only)
  QKind qkind = QKind::Exists;
  std::vector<std::string> qvars;
  Domain qdomain;
  SourceSpan span;
};

// canonical atom: moves everything left so rhs is the literal 0
inline Formula fatom(Term lhs, Relop op, Term rhs) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FKind::Atom;
  n->op = op;
  if (term_is_zero_const(rhs) || !rhs)
    n->lhs = std::move(lhs);
  else
    n->lhs = tsub(std::move(lhs), std::move(rhs));
  n->rhs = tconst(0);
  return n;
}
inline Formula fatom0(Term lhs, Relop op) { return fatom(std::move(lhs), op, nullptr); }
inline Formula fbin(FKind k, Formula a, Formula b) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}
inline Formula fand(Formula a, Formula b) { return fbin(FKind::And, std::move(a), std::move(b)); }
inline Formula for_(Formula a, Formula b) { return fbin(FKind::Or, std::move(a), std::move(b)); }
inline Formula fimplies(Formula a, Formula b) { return fbin(FKind::Implies, std::move(a), std::move(b)); }
inline Formula fnot(Formula a) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FKind::Not;
  n->a = std::move(a);
  return n;
}
inline Formula fquant(QKind k, std::vector<std::string> vars, Domain d, Formula body) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FKind::Quant;
  n->qkind = k;
  n->qvars = std::move(vars);
  n->qdomain = std::move(d);
  n->a = std::move(body);
  return n;
}

inline Formula fand_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return fatom0(tconst(1), Relop::GT);  // vacuous truth
  Formula r = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) r = fand(r, fs[i]);
  return r;
}
inline Formula for_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return fatom0(tconst(1), Relop::LT);  // vacuous falsity
  Formula r = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) r = for_(r, fs[i]);
  return r;
}

inline void formula_vars(const Formula& f, std::set<std::string>& out) {
  if (!f) return;
  if (f->kind == FKind::Atom) {
    term_vars(f->lhs, out);
    term_vars(f->rhs, out);
    return;
  }
  formula_vars(f->a, out);
  formula_vars(f->b, out);
}

inline bool formula_equal(const Formula& x, const Formula& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case FKind::Atom:
      return x->op == y->op && term_equal(x->lhs, y->lhs) && term_equal(x->rhs, y->rhs);
    case FKind::Not: return formula_equal(x->a, y->a);
    case FKind::Quant:
      return x->qkind == y->qkind && x->qvars == y->qvars &&
             domain_equal(x->qdomain, y->qdomain) && formula_equal(x->a, y->a);
    default: return formula_equal(x->a, y->a) && formula_equal(x->b, y->b);
  }
}

inline bool is_negation_free(const Formula& f) {
  if (!f) return true;
  if (f->kind == FKind::Not || f->kind == FKind::Implies) return false;
  if (f->kind == FKind::Atom) return true;
  return is_negation_free(f->a) && is_negation_free(f->b);
}

inline bool is_quantifier_free(const Formula& f) {
  if (!f) return true;
  if (f->kind == FKind::Quant) return false;
  if (f->kind == FKind::Atom) return true;
  return is_quantifier_free(f->a) && is_quantifier_free(f->b);
}

// ---------------------------------------------------------------- sentences

struct QuantifierBlock {
  QKind kind = QKind::Exists;
  std::vector<std::string> vars;
  Domain domain;
};

struct Sentence {
  std::vector<QuantifierBlock> prefix;
  Formula matrix;
};

inline bool sentence_equal(const Sentence& x, const Sentence& y) {
  if (x.prefix.size() != y.prefix.size()) return false;
  for (size_t i = 0; i < x.prefix.size(); ++i) {
    const auto &a = x.prefix[i], &b = y.prefix[i];
    if (a.kind != b.kind || a.vars != b.vars || !domain_equal(a.domain, b.domain)) return false;
  }
  return formula_equal(x.matrix, y.matrix);
}

// Duplicate binders and guard scoping; throws on violation.
inline void check_well_formed(const Sentence& s) {
  std::set<std::string> bound;
  for (const auto& blk : s.prefix) {
    if (blk.vars.empty()) throw Error("empty quantifier block");
    if (blk.kind == QKind::H && blk.vars.size() != 1)
      throw Error("H block must bind exactly one variable");
    std::set<std::string> guard_vars;
    if (blk.domain.kind == Domain::Guarded) {
      term_vars(blk.domain.lower, guard_vars);
      term_vars(blk.domain.upper, guard_vars);
    }
    for (const auto& gv : guard_vars)
      if (!bound.count(gv)) throw UnboundVariable("guard variable " + gv + " not in scope");
    for (const auto& v : blk.vars) {
      if (!bound.insert(v).second) throw DuplicateBinder(v);
    }
  }
  std::set<std::string> used;
  formula_vars(s.matrix, used);
  for (const auto& v : used)
    if (!bound.count(v)) throw UnboundVariable(v);
}

// Deterministic fresh names: reserved prefix "_", counter seeded past any
// existing "_" name so pass outputs re-parse and stay collision-free.
class FreshVarGen {
 public:
  explicit FreshVarGen(const Sentence& s) {
    std::set<std::string> vars;
    for (const auto& blk : s.prefix)
      for (const auto& v : blk.vars) vars.insert(v);
    formula_vars(s.matrix, vars);
    seed(vars);
  }
  explicit FreshVarGen(const std::set<std::string>& vars) { seed(vars); }
  FreshVarGen() = default;

  std::string fresh(const std::string& base) {
    std::string name = "_" + base + std::to_string(counter_++);
    while (taken_.count(name)) name = "_" + base + std::to_string(counter_++);
    taken_.insert(name);
    return name;
  }

  // Reserve a caller-chosen name; false if something already uses it.
  bool claim(const std::string& name) { return taken_.insert(name).second; }

 private:
  void seed(const std::set<std::string>& vars) {
    taken_ = vars;
    for (const auto& v : vars) {
      if (v.size() < 2 || v[0] != '_') continue;
      size_t i = v.size();
      while (i > 1 && isdigit(static_cast<unsigned char>(v[i - 1]))) --i;
      if (i < v.size()) counter_ = std::max(counter_, 1 + (unsigned)std::stoul(v.substr(i)));
    }
  }
  std::set<std::string> taken_;
  unsigned counter_ = 0;
};

}  // namespace realhier
