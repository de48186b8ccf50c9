#pragma once
// Collapse a negation-free quantifier-free matrix into one polynomial:
//   exists direction: f(x) <=> exists aux. poly(x,aux) = 0, degree <= 4
//   forall direction: f(x) <=> forall aux. g(x,aux) > 0,  degree <= 8
// Small inputs keep the classic gadgets verbatim (x<=0 -> x+z^2, or -> product);
// anything that would push past degree 4 goes through per-node flattening.

#include <map>

#include "realhier/normalize.hpp"
#include "realhier/poly.hpp"

namespace realhier {

// Closed-form witness for one aux variable, as a function of the original
// point (and earlier aux values). Used by tests to confirm completeness.
struct WitnessExpr {
  enum Kind {
    TermVal,     // exact value of payload
    SqrtNeg,     // payload <= 0 ? sqrt(-payload) : 0
    InvSqrtNeg,  // payload <  0 ? 1/sqrt(-payload) : 0
    PosPart      // payload >  0 ? payload : 0
  } kind = TermVal;
  Term payload;
};

struct TseitinResult {
  Polynomial poly;
  std::vector<std::string> aux;  // in evaluation order for witness_map
  std::map<std::string, WitnessExpr> witness_map;
};

struct ForallEncoding {
  Polynomial poly;
  std::vector<std::string> aux;
};

// ------------------------------------------------ exact algebraic evaluation
// Values of the form a + b*sqrt(s) with a single radicand; every witness the
// encoder emits stays inside this set (radicals only ever appear squared
// across atoms).

struct AlgVal {
  Rational a, b, s;  // a + b*sqrt(s), s >= 0
};

inline AlgVal alg_rat(const Rational& q) { return {q, 0, 0}; }

inline AlgVal alg_sqrt(const Rational& s) {
  if (s < 0) throw Error("alg_sqrt of negative");
  if (s == 0) return alg_rat(0);
  return {0, 1, s};
}

inline AlgVal alg_add(const AlgVal& x, const AlgVal& y) {
  if (x.b == 0) return {x.a + y.a, y.b, y.s};
  if (y.b == 0) return {x.a + y.a, x.b, x.s};
  if (x.s != y.s) throw Error("algebraic add: incompatible radicands");
  Rational b = x.b + y.b;
  return {x.a + y.a, b, b == 0 ? Rational(0) : x.s};
}

inline AlgVal alg_neg(const AlgVal& x) { return {-x.a, -x.b, x.s}; }

inline AlgVal alg_mul(const AlgVal& x, const AlgVal& y) {
  if (x.b != 0 && y.b != 0 && x.s != y.s)
    throw Error("algebraic mul: incompatible radicands");
  Rational s = x.b != 0 ? x.s : y.s;
  Rational a = x.a * y.a + x.b * y.b * s;
  Rational b = x.a * y.b + y.a * x.b;
  return {a, b, b == 0 ? Rational(0) : s};
}

inline AlgVal alg_pow(const AlgVal& x, unsigned e) {
  AlgVal r = alg_rat(1);
  for (unsigned i = 0; i < e; ++i) r = alg_mul(r, x);
  return r;
}

inline bool alg_is_zero(const AlgVal& x) { return x.a == 0 && x.b == 0; }

inline Rational alg_rational(const AlgVal& x) {
  if (x.b != 0) throw Error("algebraic value is irrational");
  return x.a;
}

inline AlgVal eval_term_alg(const Term& t, const std::map<std::string, AlgVal>& env) {
  switch (t->kind) {
    case TermKind::Const: return alg_rat(t->value);
    case TermKind::Var: {
      auto it = env.find(t->var);
      if (it == env.end()) throw UnboundVariable(t->var);
      return it->second;
    }
    case TermKind::Add: return alg_add(eval_term_alg(t->a, env), eval_term_alg(t->b, env));
    case TermKind::Sub:
      return alg_add(eval_term_alg(t->a, env), alg_neg(eval_term_alg(t->b, env)));
    case TermKind::Mul: return alg_mul(eval_term_alg(t->a, env), eval_term_alg(t->b, env));
    case TermKind::Neg: return alg_neg(eval_term_alg(t->a, env));
    case TermKind::Pow: return alg_pow(eval_term_alg(t->a, env), t->exp);
  }
  throw Error("eval_term_alg: bad kind");
}

inline AlgVal eval_witness(const WitnessExpr& w, const std::map<std::string, AlgVal>& env) {
  if (w.kind == WitnessExpr::TermVal) return eval_term_alg(w.payload, env);
  Rational t = alg_rational(eval_term_alg(w.payload, env));
  switch (w.kind) {
    case WitnessExpr::SqrtNeg: return t <= 0 ? alg_sqrt(-t) : alg_rat(0);
    case WitnessExpr::InvSqrtNeg:
      return t < 0 ? AlgVal{0, Rational(1) / (-t), -t} : alg_rat(0);
    case WitnessExpr::PosPart: return alg_rat(t > 0 ? t : Rational(0));
    default: throw Error("eval_witness: bad kind");
  }
}

inline AlgVal eval_poly_alg(const Polynomial& p, const std::map<std::string, AlgVal>& env) {
  AlgVal acc = alg_rat(0);
  for (const auto& [mono, c] : p.terms) {
    AlgVal m = alg_rat(c);
    for (const auto& [v, e] : mono) {
      auto it = env.find(v);
      if (it == env.end()) throw UnboundVariable(v);
      m = alg_mul(m, alg_pow(it->second, e));
    }
    acc = alg_add(acc, m);
  }
  return acc;
}

// ------------------------------------------------------------------ encoder

namespace detail {

inline Formula rewrite_ne_atoms(const Formula& f) {
  switch (f->kind) {
    case FKind::Atom:
      if (f->op == Relop::NE)
        return for_(fatom(f->lhs, Relop::LT, f->rhs), fatom(f->lhs, Relop::GT, f->rhs));
      return f;
    case FKind::And: return fand(rewrite_ne_atoms(f->a), rewrite_ne_atoms(f->b));
    case FKind::Or: return for_(rewrite_ne_atoms(f->a), rewrite_ne_atoms(f->b));
    default: throw NotNegationFree("matrix must be negation-free");
  }
}

inline size_t formula_node_count(const Formula& f) {
  if (!f) return 0;
  if (f->kind == FKind::Atom) return 1 + term_size(f->lhs) + term_size(f->rhs);
  return 1 + formula_node_count(f->a) + formula_node_count(f->b);
}

struct NaiveEnc {
  FreshVarGen gen;
  std::vector<std::string> aux;
  std::map<std::string, WitnessExpr> wit;

  std::string add_aux(const char* base, WitnessExpr w) {
    std::string v = gen.fresh(base);
    aux.push_back(v);
    wit.emplace(v, std::move(w));
    return v;
  }

  static void check4(const Polynomial& p) {
    if (p.total_degree() > 4) throw DegreeTooHigh("naive gadget exceeds degree 4");
  }

  Polynomial encode(const Formula& f) {
    if (f->kind == FKind::And) {
      Polynomial g = encode(f->a), h = encode(f->b);
      Polynomial r = g * g + h * h;
      check4(r);
      return r;
    }
    if (f->kind == FKind::Or) {
      Polynomial r = encode(f->a) * encode(f->b);
      check4(r);
      return r;
    }
    // atom
    Polynomial p = expand(f->lhs);
    bool flip = f->op == Relop::GE || f->op == Relop::GT;
    if (flip) p = -p;
    Relop op = flip ? (f->op == Relop::GE ? Relop::LE : Relop::LT) : f->op;
    if (p.total_degree() == 0) {  // constant atom folds to 0 (true) or 1 (false)
      Rational c = p.terms.empty() ? Rational(0) : p.terms.begin()->second;
      bool truth = op == Relop::EQ ? c == 0 : (op == Relop::LE ? c <= 0 : c < 0);
      return Polynomial::constant(truth ? 0 : 1);
    }
    Term orig = flip ? tneg(f->lhs) : f->lhs;
    Polynomial r;
    switch (op) {
      case Relop::EQ: r = p; break;
      case Relop::LE: {
        std::string z = add_aux("z", {WitnessExpr::SqrtNeg, orig});
        r = p + Polynomial::var(z, 2);
        break;
      }
      case Relop::LT: {
        std::string z = add_aux("z", {WitnessExpr::InvSqrtNeg, orig});
        r = p * Polynomial::var(z, 2) + Polynomial::constant(1);
        break;
      }
      default: throw Error("naive atom: unexpected relop");
    }
    check4(r);
    return r;
  }
};

struct FlatEnc {
  FreshVarGen gen;
  std::vector<std::string> aux;
  std::map<std::string, WitnessExpr> wit;
  std::vector<Polynomial> defs;

  std::string add_aux(const char* base, WitnessExpr w) {
    std::string v = gen.fresh(base);
    aux.push_back(v);
    wit.emplace(v, std::move(w));
    return v;
  }

  struct Rep {
    Polynomial p;  // affine in original + aux variables
    Term orig;     // exact value over original variables
  };

  Rep def_product(const Rep& a, const Rep& b, Term orig) {
    std::string u = add_aux("u", {WitnessExpr::TermVal, orig});
    defs.push_back(Polynomial::var(u) - a.p * b.p);
    return {Polynomial::var(u), std::move(orig)};
  }

  Rep rep_pow(const Rep& base, unsigned e, const Term& base_orig) {
    if (e == 0) return {Polynomial::constant(1), tconst(1)};
    if (e == 1) return base;
    Rep half = rep_pow(base, e / 2, base_orig);
    Rep sq = def_product(half, half, tpow(base_orig, 2 * (e / 2)));
    if (e % 2 == 0) return sq;
    return def_product(sq, base, tpow(base_orig, e));
  }

  Rep flatten(const Term& t) {
    switch (t->kind) {
      case TermKind::Const: return {Polynomial::constant(t->value), t};
      case TermKind::Var: return {Polynomial::var(t->var), t};
      case TermKind::Add: {
        Rep a = flatten(t->a), b = flatten(t->b);
        return {a.p + b.p, t};
      }
      case TermKind::Sub: {
        Rep a = flatten(t->a), b = flatten(t->b);
        return {a.p - b.p, t};
      }
      case TermKind::Neg: {
        Rep a = flatten(t->a);
        return {-a.p, t};
      }
      case TermKind::Mul: {
        Rep a = flatten(t->a), b = flatten(t->b);
        return def_product(a, b, t);
      }
      case TermKind::Pow: {
        Rep a = flatten(t->a);
        return rep_pow(a, t->exp, t->a);
      }
    }
    throw Error("flatten: bad kind");
  }

  std::string encode(const Formula& f) {
    if (f->kind == FKind::And || f->kind == FKind::Or) {
      std::string g = encode(f->a), h = encode(f->b);
      Term gv = tvar(g), hv = tvar(h);
      bool conj = f->kind == FKind::And;
      Term val = conj ? tadd(tpow(gv, 2), tpow(hv, 2)) : tmul(gv, hv);
      std::string u = add_aux("h", {WitnessExpr::TermVal, val});
      Polynomial gp = Polynomial::var(g), hp = Polynomial::var(h);
      defs.push_back(Polynomial::var(u) - (conj ? gp * gp + hp * hp : gp * hp));
      return u;
    }
    // atom
    Rep r = flatten(f->lhs);
    Term orig = r.orig;
    Polynomial rp = r.p;
    Relop op = f->op;
    if (op == Relop::GE || op == Relop::GT) {
      rp = -rp;
      orig = tneg(orig);
      op = op == Relop::GE ? Relop::LE : Relop::LT;
    }
    switch (op) {
      case Relop::EQ: {
        std::string h = add_aux("h", {WitnessExpr::TermVal, orig});
        defs.push_back(Polynomial::var(h) - rp);
        return h;
      }
      case Relop::LE: {
        std::string z = add_aux("z", {WitnessExpr::SqrtNeg, orig});
        std::string h = add_aux("h", {WitnessExpr::PosPart, orig});
        defs.push_back(Polynomial::var(h) - (rp + Polynomial::var(z, 2)));
        return h;
      }
      case Relop::LT: {
        // h = r*z^2 + 1 flattened: w = z^2, q = r*w, h = q + 1
        std::string z = add_aux("z", {WitnessExpr::InvSqrtNeg, orig});
        std::string w = add_aux("w", {WitnessExpr::TermVal, tpow(tvar(z), 2)});
        std::string q = add_aux("q", {WitnessExpr::TermVal, tmul(orig, tvar(w))});
        std::string h = add_aux("h", {WitnessExpr::TermVal, tadd(tvar(q), tconst(1))});
        defs.push_back(Polynomial::var(w) - Polynomial::var(z, 2));
        defs.push_back(Polynomial::var(q) - rp * Polynomial::var(w));
        defs.push_back(Polynomial::var(h) - (Polynomial::var(q) + Polynomial::constant(1)));
        return h;
      }
      default: throw Error("flat atom: unexpected relop");
    }
  }
};

}  // namespace detail

inline TseitinResult encode_exists(const Formula& f,
                                   const std::set<std::string>& reserved = {}) {
  if (!is_quantifier_free(f)) throw WrongShape("encode_exists: matrix must be quantifier-free");
  if (!is_negation_free(f)) throw NotNegationFree("encode_exists: run eliminate_negation first");
  Formula g = detail::rewrite_ne_atoms(f);
  std::set<std::string> vars = reserved;
  formula_vars(g, vars);

  try {
    detail::NaiveEnc ne{FreshVarGen(vars)};
    Polynomial p = ne.encode(g);
    if (p.total_degree() <= 4)
      return {std::move(p), std::move(ne.aux), std::move(ne.wit)};
  } catch (const DegreeTooHigh&) {
    // fall through to the flattened construction
  } catch (const BudgetExceeded&) {
  }

  detail::FlatEnc fe{FreshVarGen(vars)};
  std::string root = fe.encode(g);
  Polynomial p;
  for (const auto& d : fe.defs) p = p + d * d;
  p = p + Polynomial::var(root, 2);
  if (p.total_degree() > 4) throw DegreeTooHigh("tseitin invariant broken: degree > 4");
  size_t limit = 10 * detail::formula_node_count(f);
  if (fe.aux.size() > limit) throw Error("tseitin invariant broken: aux count over budget");
  return {std::move(p), std::move(fe.aux), std::move(fe.wit)};
}

// f(x) <=> forall aux. poly(x,aux) > 0; poly is the square of the exists
// encoding of the negation, degree <= 8.
inline ForallEncoding encode_forall(const Formula& f,
                                    const std::set<std::string>& reserved = {}) {
  if (!is_negation_free(f)) throw NotNegationFree("encode_forall: run eliminate_negation first");
  TseitinResult r = encode_exists(eliminate_negation(fnot(f)), reserved);
  Polynomial g = r.poly * r.poly;
  if (g.total_degree() > 8) throw DegreeTooHigh("tseitin invariant broken: degree > 8");
  return {std::move(g), std::move(r.aux)};
}

}  // namespace realhier
