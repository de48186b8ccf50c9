#pragma once
// Negation elimination (trichotomy flips), prenex conversion, and domain
// desugaring into guard atoms.

#include <map>

#include "realhier/ast.hpp"

namespace realhier {
namespace detail {

inline Formula elim_neg(const Formula& f, bool positive) {
  switch (f->kind) {
    case FKind::Atom: {
      if (positive) {
        if (f->op == Relop::NE)
          return for_(fatom(f->lhs, Relop::LT, f->rhs), fatom(f->lhs, Relop::GT, f->rhs));
        return f;
      }
      switch (f->op) {
        case Relop::LT: return fatom(f->lhs, Relop::GE, f->rhs);
        case Relop::LE: return fatom(f->lhs, Relop::GT, f->rhs);
        case Relop::GE: return fatom(f->lhs, Relop::LT, f->rhs);
        case Relop::GT: return fatom(f->lhs, Relop::LE, f->rhs);
        case Relop::EQ:
          return for_(fatom(f->lhs, Relop::LT, f->rhs), fatom(f->lhs, Relop::GT, f->rhs));
        case Relop::NE: return fatom(f->lhs, Relop::EQ, f->rhs);
      }
      throw Error("elim_neg: bad relop");
    }
    case FKind::And:
      return positive ? fand(elim_neg(f->a, true), elim_neg(f->b, true))
                      : for_(elim_neg(f->a, false), elim_neg(f->b, false));
    case FKind::Or:
      return positive ? for_(elim_neg(f->a, true), elim_neg(f->b, true))
                      : fand(elim_neg(f->a, false), elim_neg(f->b, false));
    case FKind::Not: return elim_neg(f->a, !positive);
    case FKind::Implies:
      return positive ? for_(elim_neg(f->a, false), elim_neg(f->b, true))
                      : fand(elim_neg(f->a, true), elim_neg(f->b, false));
    case FKind::Quant: throw WrongShape("eliminate_negation needs a quantifier-free formula");
  }
  throw Error("elim_neg: bad kind");
}

inline Term rename_term(const Term& t, const std::map<std::string, std::string>& ren) {
  if (!t || ren.empty()) return t;
  switch (t->kind) {
    case TermKind::Const: return t;
    case TermKind::Var: {
      auto it = ren.find(t->var);
      return it == ren.end() ? t : tvar(it->second);
    }
    case TermKind::Neg: {
      Term a = rename_term(t->a, ren);
      return a == t->a ? t : tneg(a);
    }
    case TermKind::Pow: {
      Term a = rename_term(t->a, ren);
      return a == t->a ? t : tpow(a, t->exp);
    }
    default: {
      Term a = rename_term(t->a, ren), b = rename_term(t->b, ren);
      return (a == t->a && b == t->b) ? t : tbin(t->kind, a, b);
    }
  }
}

inline Domain rename_domain(const Domain& d, const std::map<std::string, std::string>& ren) {
  if (d.kind != Domain::Guarded) return d;
  return Domain::guarded(rename_term(d.lower, ren), rename_term(d.upper, ren), d.lower_strict,
                         d.upper_strict);
}

inline void free_formula_vars(const Formula& f, std::set<std::string> bound,
                              std::set<std::string>& out) {
  if (!f) return;
  if (f->kind == FKind::Atom) {
    std::set<std::string> vs;
    term_vars(f->lhs, vs);
    term_vars(f->rhs, vs);
    for (const auto& v : vs)
      if (!bound.count(v)) out.insert(v);
    return;
  }
  if (f->kind == FKind::Quant) {
    std::set<std::string> dv;
    if (f->qdomain.kind == Domain::Guarded) {
      term_vars(f->qdomain.lower, dv);
      term_vars(f->qdomain.upper, dv);
    }
    for (const auto& v : dv)
      if (!bound.count(v)) out.insert(v);
    for (const auto& v : f->qvars) bound.insert(v);
    free_formula_vars(f->a, std::move(bound), out);
    return;
  }
  free_formula_vars(f->a, bound, out);
  free_formula_vars(f->b, std::move(bound), out);
}

struct PrenexCtx {
  std::vector<QuantifierBlock> pulled;
  FreshVarGen gen;
};

inline Formula pull_quants(const Formula& f, bool positive,
                           std::map<std::string, std::string> ren, PrenexCtx& ctx) {
  switch (f->kind) {
    case FKind::Atom: {
      Term l = rename_term(f->lhs, ren), r = rename_term(f->rhs, ren);
      return (l == f->lhs && r == f->rhs) ? f : fatom(l, f->op, r);
    }
    case FKind::And:
      return fand(pull_quants(f->a, positive, ren, ctx), pull_quants(f->b, positive, ren, ctx));
    case FKind::Or:
      return for_(pull_quants(f->a, positive, ren, ctx), pull_quants(f->b, positive, ren, ctx));
    case FKind::Not: return fnot(pull_quants(f->a, !positive, std::move(ren), ctx));
    case FKind::Implies:
      return fimplies(pull_quants(f->a, !positive, ren, ctx),
                      pull_quants(f->b, positive, ren, ctx));
    case FKind::Quant: {
      if (is_exotic(f->qkind))
        throw ExoticInMatrix("exotic quantifier must be in the leading prefix");
      QuantifierBlock blk;
      blk.kind = f->qkind;
      if (!positive) blk.kind = blk.kind == QKind::Exists ? QKind::Forall : QKind::Exists;
      blk.domain = rename_domain(f->qdomain, ren);
      for (const auto& v : f->qvars) {
        if (ctx.gen.claim(v)) {
          blk.vars.push_back(v);
          ren.erase(v);  // inner binder shadows any outer rename
        } else {
          std::string nv = ctx.gen.fresh(v);
          ren[v] = nv;
          blk.vars.push_back(nv);
        }
      }
      ctx.pulled.push_back(std::move(blk));
      return pull_quants(f->a, positive, std::move(ren), ctx);
    }
  }
  throw Error("pull_quants: bad kind");
}

}  // namespace detail

// Quantifier-free f -> equivalent negation-free, implication-free, !=-free formula.
inline Formula eliminate_negation(const Formula& f) { return detail::elim_neg(f, true); }

// Negation-aware prenexing: quantifiers under an odd number of negations are
// dualized on the way out; adjacent same-kind blocks with equal domains merge.
inline Sentence to_prenex(const Sentence& s) {
  std::set<std::string> seen;
  for (const auto& blk : s.prefix) {
    for (const auto& v : blk.vars) seen.insert(v);
    if (blk.domain.kind == Domain::Guarded) {
      term_vars(blk.domain.lower, seen);
      term_vars(blk.domain.upper, seen);
    }
  }
  detail::free_formula_vars(s.matrix, {}, seen);
  detail::PrenexCtx ctx{{}, FreshVarGen(seen)};

  Sentence out;
  out.matrix = detail::pull_quants(s.matrix, true, {}, ctx);
  out.prefix = s.prefix;
  for (auto& blk : ctx.pulled) out.prefix.push_back(std::move(blk));

  // merge adjacent same-kind standard blocks over the same domain
  std::vector<QuantifierBlock> merged;
  for (auto& blk : out.prefix) {
    if (!merged.empty() && !is_exotic(blk.kind) && merged.back().kind == blk.kind &&
        domain_equal(merged.back().domain, blk.domain)) {
      for (auto& v : blk.vars) merged.back().vars.push_back(std::move(v));
    } else {
      merged.push_back(std::move(blk));
    }
  }
  out.prefix = std::move(merged);
  return out;
}

namespace detail {

// v > lo / v >= lo, with constant bounds folded for readable output
inline Term bound_lhs(const std::string& v, const Term& bound) {
  if (bound->kind == TermKind::Const) {
    if (bound->value == 0) return tvar(v);
    if (bound->value < 0) return tadd(tvar(v), tconst(-bound->value));
  }
  return tsub(tvar(v), bound);
}

inline std::vector<Formula> domain_guards(const std::string& v, const Domain& d) {
  Term lo, hi;
  bool los = true, his = true;
  switch (d.kind) {
    case Domain::AllReals: return {};
    case Domain::OpenUnit: lo = tconst(-1), hi = tconst(1); break;
    case Domain::ClosedUnit: lo = tconst(-1), hi = tconst(1), los = his = false; break;
    case Domain::Guarded: lo = d.lower, hi = d.upper, los = d.lower_strict, his = d.upper_strict; break;
  }
  std::vector<Formula> gs;
  if (lo) gs.push_back(fatom0(bound_lhs(v, lo), los ? Relop::GT : Relop::GE));
  if (hi) gs.push_back(fatom0(bound_lhs(v, hi), his ? Relop::LT : Relop::LE));
  return gs;
}

}  // namespace detail

// Replace quantifier domains with guard atoms: exists blocks conjoin the
// guards, forall blocks disjoin the flipped guards. Unit domains are kept
// unless desugar_unit is set; exotic blocks are left for expand_exotic.
inline Sentence desugar_domains(const Sentence& s, bool desugar_unit = false) {
  Sentence out = s;
  for (size_t i = out.prefix.size(); i-- > 0;) {
    auto& blk = out.prefix[i];
    if (is_exotic(blk.kind)) continue;
    if (blk.domain.kind == Domain::AllReals) continue;
    if (!desugar_unit &&
        (blk.domain.kind == Domain::OpenUnit || blk.domain.kind == Domain::ClosedUnit))
      continue;
    std::vector<Formula> gs;
    for (const auto& v : blk.vars)
      for (auto& g : detail::domain_guards(v, blk.domain)) gs.push_back(std::move(g));
    if (blk.kind == QKind::Exists) {
      gs.push_back(out.matrix);
      out.matrix = fand_all(gs);
    } else {
      for (auto& g : gs) g = eliminate_negation(fnot(g));
      gs.push_back(out.matrix);
      out.matrix = for_all(gs);
    }
    blk.domain = Domain::all();
  }
  return out;
}

// Dual sentence: every standard block flips kind, matrix is negated (run
// eliminate_negation afterwards if a negation-free matrix is needed).
inline Sentence negate_sentence(const Sentence& s) {
  Sentence out;
  for (auto blk : s.prefix) {
    if (is_exotic(blk.kind))
      throw ExoticQuantifierPresent("cannot negate across an exotic quantifier");
    blk.kind = blk.kind == QKind::Exists ? QKind::Forall : QKind::Exists;
    out.prefix.push_back(std::move(blk));
  }
  out.matrix = fnot(s.matrix);
  return out;
}

}  // namespace realhier
