#pragma once
// Set and map constructions for geometric decision problems: convexity,
// unboundedness, diameter, radius, denseness, surjectivity, closure
// containment, Hausdorff distance zero, and local support, plus expansion of
// the non-standard quantifiers (H, forall*, exists*) into plain prefixes.

#include <string>
#include <utility>
#include <vector>

#include "realhier/normalize.hpp"
#include "realhier/params.hpp"
#include "realhier/poly.hpp"

namespace realhier {

// A semialgebraic set: ambient dimension plus a negation-free defining
// formula whose free variables are exactly x1..x<dim>.
struct SetDescription {
  size_t ambient_dim = 0;
  Formula defining;
  std::string label;
};

enum class Factor { Reals, ClosedUnit };

// Polynomial map between products of lines and unit intervals. coords names
// the domain coordinates in order; components (one per codomain factor) are
// polynomials over those names.
struct MapDescription {
  std::vector<Factor> domain;
  std::vector<Factor> codomain;
  std::vector<std::string> coords;
  std::vector<Polynomial> components;
};

inline std::string coord_name(size_t i) { return "x" + std::to_string(i); }

namespace detail {

// x_i^2 >= 0: pads a defining formula so untouched ambient coordinates still
// occur in it (the free-variable invariant is "exactly x1..xdim").
inline Formula touch_atom(const std::string& v) {
  return fatom0(tpow(tvar(v), 2), Relop::GE);
}

inline SetDescription make_set(size_t dim, Formula def, std::string label) {
  if (!is_negation_free(def)) throw NotNegationFree(label);
  if (!is_quantifier_free(def)) throw WrongShape(label + ": defining formula must be quantifier-free");
  std::set<std::string> used;
  formula_vars(def, used);
  std::set<std::string> allowed;
  for (size_t i = 1; i <= dim; ++i) allowed.insert(coord_name(i));
  for (const auto& v : used)
    if (!allowed.count(v)) throw UnboundVariable(label + ": stray variable " + v);
  for (size_t i = 1; i <= dim; ++i)
    if (!used.count(coord_name(i))) def = fand(std::move(def), touch_atom(coord_name(i)));
  return SetDescription{dim, std::move(def), std::move(label)};
}

// x^2 OP 1 guards; squared so box membership stays within the atom signature
inline Formula box_atom(const std::string& v, Relop op) {
  return fatom(tpow(tvar(v), 2), op, tconst(1));
}

inline Formula rename_formula(const Formula& f, const std::map<std::string, std::string>& ren) {
  if (!f) return f;
  if (f->kind == FKind::Quant) throw Error("rename_formula: quantifier-free input expected");
  if (f->kind == FKind::Atom)
    return fatom(rename_term(f->lhs, ren), f->op, rename_term(f->rhs, ren));
  auto n = std::make_shared<FormulaNode>();
  n->kind = f->kind;
  n->a = rename_formula(f->a, ren);
  n->b = rename_formula(f->b, ren);
  return n;
}

// NNF negation of a quantifier-free formula (trichotomy flips on atoms)
inline Formula negated(const Formula& f) { return eliminate_negation(fnot(f)); }

inline void check_poly_vars(const Polynomial& f, size_t n, const std::string& who) {
  for (const auto& v : f.variables()) {
    bool ok = false;
    for (size_t i = 1; i <= n && !ok; ++i) ok = v == coord_name(i);
    if (!ok) throw UnboundVariable(who + ": polynomial variable " + v + " outside x1..x" + std::to_string(n));
  }
}

inline Monomial sorted_monomial(const std::map<std::string, unsigned>& exps) {
  Monomial m;
  for (const auto& [v, e] : exps)
    if (e > 0) m.push_back({v, e});
  return m;
}

inline Polynomial rename_poly(const Polynomial& p, const std::map<std::string, std::string>& ren) {
  Polynomial out;
  for (const auto& [mono, c] : p.terms) {
    std::map<std::string, unsigned> exps;
    for (const auto& [v, e] : mono) {
      auto it = ren.find(v);
      exps[it == ren.end() ? v : it->second] += e;
    }
    out.add_term(sorted_monomial(exps), c);
  }
  return out;
}

inline Term sq_dist(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  Term s = nullptr;
  for (size_t i = 0; i < a.size(); ++i) {
    Term d = tpow(tsub(tvar(a[i]), tvar(b[i])), 2);
    s = s ? tadd(s, d) : d;
  }
  return s ? s : tconst(0);
}

}  // namespace detail

// ------------------------------------------------------------- constructions

// S = {x in (-1,1)^n : f(x) > 0} together with the shell of [-1,1]^n; S is
// convex exactly when f > 0 on the whole open box.
inline SetDescription reduce_convexity(const Polynomial& f, size_t n) {
  detail::check_poly_vars(f, n, "reduce_convexity");
  if (n == 0) return detail::make_set(0, for_all({}), "convexity");
  std::vector<Formula> inner, shell_box, faces;
  for (size_t i = 1; i <= n; ++i) {
    inner.push_back(detail::box_atom(coord_name(i), Relop::LT));
    shell_box.push_back(detail::box_atom(coord_name(i), Relop::LE));
    faces.push_back(detail::box_atom(coord_name(i), Relop::EQ));
  }
  inner.push_back(fatom0(poly_to_term(f), Relop::GT));
  Formula S = for_(fand_all(inner), fand(fand_all(shell_box), for_all(faces)));
  return detail::make_set(n, S, "convexity");
}

// S = {(x,y) in (-1,1)^n x R : f(x) = 0}; unbounded exactly when f has a root
// in the open box (the fibre over a root is a full line).
inline SetDescription reduce_unboundedness(const Polynomial& f, size_t n) {
  detail::check_poly_vars(f, n, "reduce_unboundedness");
  std::vector<Formula> parts;
  for (size_t i = 1; i <= n; ++i) parts.push_back(detail::box_atom(coord_name(i), Relop::LT));
  parts.push_back(fatom0(poly_to_term(f), Relop::EQ));
  return detail::make_set(n + 1, fand_all(parts), "unboundedness");
}

// (forall x,y) (phi(x) and phi(y)) -> |x-y|^2 <= d^2, implication desugared
inline Sentence diameter_sentence(const SetDescription& S, const Rational& d) {
  if (d < 0) throw Error("diameter_sentence: d must be nonnegative");
  size_t n = S.ambient_dim;
  std::vector<std::string> xs, ys;
  std::map<std::string, std::string> ren;
  for (size_t i = 1; i <= n; ++i) {
    xs.push_back(coord_name(i));
    ys.push_back("y" + std::to_string(i));
    ren[xs.back()] = ys.back();
  }
  Formula far = fatom(detail::sq_dist(xs, ys), Relop::LE, tconst(d * d));
  Sentence out;
  out.matrix = for_(for_(detail::negated(S.defining),
                         detail::negated(detail::rename_formula(S.defining, ren))),
                    far);
  if (n > 0) {
    QuantifierBlock blk{QKind::Forall, xs, Domain::all()};
    blk.vars.insert(blk.vars.end(), ys.begin(), ys.end());
    out.prefix.push_back(std::move(blk));
  }
  check_well_formed(out);
  return out;
}

// Helly composed with the dual ball condition: d+1 points of S and a convex
// weight vector must keep the weighted pairwise spread below 2r^2.
inline Sentence radius_sentence(const SetDescription& S, const Rational& r) {
  if (r < 0) throw Error("radius_sentence: r must be nonnegative");
  size_t d = S.ambient_dim;
  std::vector<std::vector<std::string>> pts(d + 1);
  std::vector<std::string> zs, all;
  std::vector<Formula> disjuncts;
  for (size_t k = 0; k <= d; ++k) {
    std::map<std::string, std::string> ren;
    for (size_t i = 1; i <= d; ++i) {
      pts[k].push_back("y" + std::to_string(k + 1) + "_" + std::to_string(i));
      ren[coord_name(i)] = pts[k].back();
      all.push_back(pts[k].back());
    }
    disjuncts.push_back(detail::negated(detail::rename_formula(S.defining, ren)));
  }
  Term zsum = nullptr;
  for (size_t k = 0; k <= d; ++k) {
    zs.push_back("z" + std::to_string(k + 1));
    all.push_back(zs.back());
    disjuncts.push_back(fatom0(tvar(zs.back()), Relop::LT));
    zsum = zsum ? tadd(zsum, tvar(zs.back())) : tvar(zs.back());
  }
  disjuncts.push_back(fatom(zsum, Relop::NE, tconst(1)));
  Term spread = nullptr;
  for (size_t k = 0; k <= d; ++k)
    for (size_t l = 0; l <= d; ++l) {
      if (k == l) continue;
      Term t = tmul(tmul(tvar(zs[k]), tvar(zs[l])), detail::sq_dist(pts[k], pts[l]));
      spread = spread ? tadd(spread, t) : t;
    }
  if (!spread) spread = tconst(0);  // d = 0: a single point, zero spread
  disjuncts.push_back(fatom(spread, Relop::LE, tconst(2 * r * r)));
  Sentence out;
  out.prefix.push_back({QKind::Forall, all, Domain::all()});
  out.matrix = for_all(disjuncts);
  check_well_formed(out);
  return out;
}

// Chain set T: 1/4 <= y1 <= 1/2, then y_{k-1}^2/2 <= y_k <= y_{k-1}^2, so
// y_m is pinned inside (4^-alpha, 2^-alpha) with alpha = 2^(m-1) halvings.
inline Formula chain_set_formula(const std::vector<std::string>& ys) {
  std::vector<Formula> parts;
  parts.push_back(fatom(tvar(ys[0]), Relop::GE, tconst(Rational(1, 4))));
  parts.push_back(fatom(tvar(ys[0]), Relop::LE, tconst(Rational(1, 2))));
  for (size_t k = 1; k < ys.size(); ++k) {
    Term prev_sq = tpow(tvar(ys[k - 1]), 2);
    parts.push_back(fatom(tvar(ys[k]), Relop::GE, tmul(tconst(Rational(1, 2)), prev_sq)));
    parts.push_back(fatom(tvar(ys[k]), Relop::LE, prev_sq));
  }
  return fand_all(parts);
}

// S in R^(n+m) whose denseness mirrors (forall x in [-1,1]^n) f(x) > 0.
// The box part keeps f(x) >= y_m over the chain set; the unconditional part
// is the complement of box^n x T, so the only possible hole is
// {x in box, y in T, f(x) < y_m}. literal_complement instead subtracts
// box^n x (box^m - T) as the source text has it; under that reading the
// union swallows the first part and S stops depending on f, so it is kept
// only for reference.
inline std::pair<SetDescription, size_t> reduce_denseness(const Polynomial& f, size_t n,
                                                          const ReductionParams& rp,
                                                          bool literal_complement = false) {
  detail::check_poly_vars(f, n, "reduce_denseness");
  unsigned m = 0;
  if (rp.m_override) {
    m = *rp.m_override;
  } else {
    std::optional<Int> ell = rp.ell;
    if (!ell) {
      Int maxc = 1;
      bool integer = true;
      for (const auto& [mono, c] : f.terms) {
        if (rat_den(c) != 1) integer = false;
        Int a = boost::multiprecision::abs(rat_num(c));
        if (a > maxc) maxc = a;
      }
      if (!integer) throw MissingEll("reduce_denseness: non-integer coefficients need an explicit ell");
      ell = Int(boost::multiprecision::msb(maxc)) + 1;
    }
    Int D = 0;
    for (const auto& v : f.variables()) D = std::max(D, Int(f.degree_in(v)));
    ReductionParams honest = compute_params(Int(n), D, ell, rp.c);
    Int hm = *honest.alpha_exponent + 1;
    if (hm > 1000000) throw Overflow("reduce_denseness: honest chain length is impractical; pass m_override");
    m = unsigned(hm);
  }
  if (m == 0) throw Error("reduce_denseness: chain needs at least one variable");

  std::vector<std::string> ys;
  for (size_t j = 1; j <= m; ++j) ys.push_back(coord_name(n + j));
  Formula chain = chain_set_formula(ys);
  std::vector<Formula> boxed;
  for (size_t i = 1; i <= n; ++i) boxed.push_back(detail::box_atom(coord_name(i), Relop::LE));
  for (const auto& y : ys) boxed.push_back(detail::box_atom(y, Relop::LE));
  boxed.push_back(fatom(poly_to_term(f), Relop::GE, tvar(ys[m - 1])));
  boxed.push_back(chain);

  Formula comp;
  if (literal_complement) {
    std::vector<Formula> out_parts;
    for (size_t i = 1; i <= n; ++i) out_parts.push_back(detail::box_atom(coord_name(i), Relop::GT));
    for (const auto& y : ys) out_parts.push_back(detail::box_atom(y, Relop::GT));
    out_parts.push_back(chain);
    comp = for_all(out_parts);
  } else {
    std::vector<Formula> out_parts;
    for (size_t i = 1; i <= n; ++i) out_parts.push_back(detail::box_atom(coord_name(i), Relop::GT));
    out_parts.push_back(detail::negated(chain));
    comp = for_all(out_parts);
  }

  std::string label = "denseness m=" + std::to_string(m) + (rp.m_override ? " (override)" : "") +
                      (literal_complement ? " literal-complement" : "");
  return {detail::make_set(n + m, for_(fand_all(boxed), comp), label), n + m};
}

// f' = sum_a f_a(x) y0^(d-|a|) y^a with d the top total y-degree; plugging
// y0 = 1 recovers f exactly.
inline Polynomial homogenize(const Polynomial& f, const std::vector<std::string>& yvars,
                             const std::string& y0) {
  std::set<std::string> yset(yvars.begin(), yvars.end());
  if (yset.count(y0) || f.variables().count(y0))
    throw Error("homogenize: y0 must be a fresh variable");
  auto ydeg = [&](const Monomial& mono) {
    unsigned k = 0;
    for (const auto& [v, e] : mono)
      if (yset.count(v)) k += e;
    return k;
  };
  unsigned d = 0;
  for (const auto& [mono, c] : f.terms) d = std::max(d, ydeg(mono));
  Polynomial out;
  for (const auto& [mono, c] : f.terms) {
    unsigned k = ydeg(mono);
    std::map<std::string, unsigned> exps(mono.begin(), mono.end());
    if (d > k) exps[y0] = d - k;
    out.add_term(detail::sorted_monomial(exps), c);
  }
  return out;
}

namespace detail {

// f over x1..xn, y1..ym (a two-block bounded equality source); anything else
// is the wrong shape for the closure/surjectivity constructions.
inline std::pair<size_t, size_t> split_xy(const Polynomial& f, const std::string& who) {
  size_t n = 0, m = 0;
  for (const auto& v : f.variables()) {
    char head = v.empty() ? '?' : v[0];
    bool digits = v.size() > 1;
    for (size_t i = 1; i < v.size(); ++i)
      if (!isdigit(static_cast<unsigned char>(v[i]))) digits = false;
    if (!digits || (head != 'x' && head != 'y'))
      throw WrongShape(who + ": variables must be named x<i>/y<j>, got " + v);
    size_t idx = std::stoul(v.substr(1));
    if (idx == 0) throw WrongShape(who + ": variable indices start at 1");
    (head == 'x' ? n : m) = std::max(head == 'x' ? n : m, idx);
  }
  return {n, m};
}

}  // namespace detail

// Source (forall x in box)(exists y in box) f = 0 becomes the map
// g(x,y,s,t) = (x, s - (s f)^2 - t^2); g onto box^n x R iff the source holds.
inline MapDescription reduce_surjectivity(const Sentence& s) {
  check_well_formed(s);
  const char* who = "reduce_surjectivity";
  if (s.prefix.size() != 2 || s.prefix[0].kind != QKind::Forall ||
      s.prefix[1].kind != QKind::Exists || s.prefix[0].domain.kind != Domain::ClosedUnit ||
      s.prefix[1].domain.kind != Domain::ClosedUnit)
    throw WrongShape(std::string(who) + ": need (forall x in [-1,1]^n)(exists y in [-1,1]^m)");
  if (!s.matrix || s.matrix->kind != FKind::Atom || s.matrix->op != Relop::EQ)
    throw WrongShape(std::string(who) + ": matrix must be a single equality");
  Polynomial f = expand(s.matrix->lhs);
  if (f.total_degree() > 4) throw WrongShape(std::string(who) + ": degree exceeds 4");

  FreshVarGen gen(s);
  std::string sv = gen.claim("s") ? "s" : gen.fresh("s");
  std::string tv = gen.claim("t") ? "t" : gen.fresh("t");
  MapDescription g;
  for (const auto& blk : {s.prefix[0], s.prefix[1]})
    for (const auto& v : blk.vars) {
      g.coords.push_back(v);
      g.domain.push_back(Factor::ClosedUnit);
    }
  g.coords.push_back(sv);
  g.coords.push_back(tv);
  g.domain.push_back(Factor::Reals);
  g.domain.push_back(Factor::Reals);
  for (const auto& v : s.prefix[0].vars) {
    g.codomain.push_back(Factor::ClosedUnit);
    g.components.push_back(Polynomial::var(v));
  }
  g.codomain.push_back(Factor::Reals);
  Polynomial sf = Polynomial::var(sv) * f;
  g.components.push_back(Polynomial::var(sv) - sf * sf - Polynomial::var(tv, 2));
  // the construction's advertised degree cap; holds for sources of degree <= 3
  if (g.components.back().total_degree() > 8)
    throw DegreeTooHigh(std::string(who) + ": map degree exceeds 8");
  return g;
}

// S = box^n x {0}^m x {0} and T = {f' = 0, y0 > 0, |y|^2 <= y0^2} inside
// box^n x box^m x [0,1]; S lands in closure(T) iff every x-slice of f has a
// bounded root. Coordinates: x_i stay, y_j -> x_{n+j}, y0 -> x_{n+m+1}.
inline std::pair<SetDescription, SetDescription> reduce_closure_containment(const Polynomial& f) {
  const char* who = "reduce_closure_containment";
  auto [n, m] = detail::split_xy(f, who);
  if (f.total_degree() > 4) throw WrongShape(std::string(who) + ": degree exceeds 4");
  std::vector<std::string> yvars;
  for (size_t j = 1; j <= m; ++j) yvars.push_back("y" + std::to_string(j));
  std::map<std::string, std::string> ren{{"y0", coord_name(n + m + 1)}};
  for (size_t j = 1; j <= m; ++j) ren["y" + std::to_string(j)] = coord_name(n + j);
  Polynomial fh = detail::rename_poly(homogenize(f, yvars, "y0"), ren);

  size_t dim = n + m + 1;
  const std::string y0 = coord_name(dim);
  std::vector<Formula> sparts, tparts;
  for (size_t i = 1; i <= n; ++i) {
    sparts.push_back(detail::box_atom(coord_name(i), Relop::LE));
    tparts.push_back(detail::box_atom(coord_name(i), Relop::LE));
  }
  Term ynorm = nullptr;
  for (size_t j = 1; j <= m; ++j) {
    const std::string yc = coord_name(n + j);
    sparts.push_back(fatom0(tvar(yc), Relop::EQ));
    tparts.push_back(detail::box_atom(yc, Relop::LE));
    Term sq = tpow(tvar(yc), 2);
    ynorm = ynorm ? tadd(ynorm, sq) : sq;
  }
  sparts.push_back(fatom0(tvar(y0), Relop::EQ));
  tparts.push_back(fatom0(poly_to_term(fh), Relop::EQ));
  tparts.push_back(fatom0(tvar(y0), Relop::GT));  // y0 != 0, valid since y0 in [0,1]
  tparts.push_back(fatom(tvar(y0), Relop::LE, tconst(1)));
  tparts.push_back(fatom(ynorm ? ynorm : tconst(0), Relop::LE, tpow(tvar(y0), 2)));
  return {detail::make_set(dim, fand_all(sparts), "closure-src"),
          detail::make_set(dim, fand_all(tparts), "closure-cone")};
}

// Directed containment as a distance question: S in closure(T) iff the
// Hausdorff distance between S union T and T is zero.
inline std::pair<SetDescription, SetDescription> reduce_hausdorff_zero(const SetDescription& S,
                                                                       const SetDescription& T) {
  if (S.ambient_dim != T.ambient_dim)
    throw DimensionMismatch("reduce_hausdorff_zero: ambient dimensions differ");
  SetDescription u = detail::make_set(S.ambient_dim, for_(S.defining, T.defining),
                                      "union(" + S.label + "," + T.label + ")");
  return {u, T};
}

// Hyperplane {y = 0} against the body {f(x) > 0, y >= 0} in R^(n+1); the
// plane locally supports the body iff f is positive somewhere in the box.
inline std::pair<SetDescription, SetDescription> reduce_local_support(const Polynomial& f,
                                                                      size_t n) {
  detail::check_poly_vars(f, n, "reduce_local_support");
  const std::string y = coord_name(n + 1);
  Formula hyp = fatom0(tvar(y), Relop::EQ);
  std::vector<Formula> body;
  for (size_t i = 1; i <= n; ++i) body.push_back(detail::box_atom(coord_name(i), Relop::LT));
  body.push_back(fatom0(poly_to_term(f), Relop::GT));
  body.push_back(fatom0(tvar(y), Relop::GE));
  return {detail::make_set(n + 1, hyp, "support-plane"),
          detail::make_set(n + 1, fand_all(body), "support-body")};
}

// ------------------------------------------------------ exotic quantifiers

// H/forall*/exists* rewritten by definition:
//   (H e) phi        -> (exists e' in (0,1))(forall e in (0,e')) phi
//   (forall* x) phi  -> (forall x)(forall e in (0,1))(exists x') |x-x'|^2 < e^2 and phi(x')
//   (exists* x) phi  -> (exists x)(exists e in (0,1))(forall x') |x-x'|^2 >= e^2 or phi(x')
// The (0,1) guards stand in for (0,inf): each body is monotone in e, so
// nothing above 1 is ever needed. Ball conditions attach to the matrix, which
// is a sound prenex move because the later blocks never bind x, x', or e.
inline Sentence expand_exotic(const Sentence& s) {
  check_well_formed(s);
  bool any = false;
  for (const auto& blk : s.prefix) any = any || is_exotic(blk.kind);
  if (!any) return s;  // idempotent: a clean sentence passes through untouched

  FreshVarGen gen(s);
  std::vector<QuantifierBlock> prefix = s.prefix;
  Formula matrix = s.matrix;
  Domain eps_dom = Domain::guarded(tconst(0), tconst(1), true, true);
  for (size_t i = 0; i < prefix.size();) {
    if (!is_exotic(prefix[i].kind)) {
      ++i;
      continue;
    }
    QuantifierBlock blk = prefix[i];
    std::vector<QuantifierBlock> repl;
    if (blk.kind == QKind::H) {
      std::string cap = gen.fresh(blk.vars[0]);
      repl.push_back({QKind::Exists, {cap}, eps_dom});
      repl.push_back({QKind::Forall, {blk.vars[0]},
                      Domain::guarded(tconst(0), tvar(cap), true, true)});
    } else {
      bool almost_all = blk.kind == QKind::ForallStar;
      std::string eps = gen.fresh("eps");
      std::vector<std::string> primes;
      std::map<std::string, std::string> ren;
      for (const auto& v : blk.vars) {
        primes.push_back(gen.fresh(v));
        ren[v] = primes.back();
      }
      for (size_t j = i + 1; j < prefix.size(); ++j)
        prefix[j].domain = detail::rename_domain(prefix[j].domain, ren);
      matrix = detail::rename_formula(matrix, ren);
      Term ball = detail::sq_dist(blk.vars, primes);
      Term eps_sq = tpow(tvar(eps), 2);
      if (almost_all) {
        repl.push_back({QKind::Forall, blk.vars, blk.domain});
        repl.push_back({QKind::Forall, {eps}, eps_dom});
        repl.push_back({QKind::Exists, primes, blk.domain});
        matrix = fand(fatom(ball, Relop::LT, eps_sq), matrix);
      } else {
        repl.push_back({QKind::Exists, blk.vars, blk.domain});
        repl.push_back({QKind::Exists, {eps}, eps_dom});
        repl.push_back({QKind::Forall, primes, blk.domain});
        matrix = for_(fatom(ball, Relop::GE, eps_sq), matrix);
      }
    }
    prefix.erase(prefix.begin() + long(i));
    prefix.insert(prefix.begin() + long(i), repl.begin(), repl.end());
    i += repl.size();
  }
  Sentence out{std::move(prefix), std::move(matrix)};
  check_well_formed(out);
  return out;
}

// --------------------------------------------------------------- JSON forms

inline const char* factor_name(Factor f) { return f == Factor::Reals ? "R" : "[-1,1]"; }

inline Factor factor_from_name(const std::string& s) {
  if (s == "R") return Factor::Reals;
  if (s == "[-1,1]") return Factor::ClosedUnit;
  throw Error("factor_from_name: unknown factor '" + s + "'");
}

inline Json set_description_to_json(const SetDescription& s) {
  return Json{{"ambient_dim", s.ambient_dim},
              {"defining", formula_to_json(s.defining)},
              {"label", s.label}};
}

inline SetDescription json_to_set_description(const Json& j) {
  return SetDescription{j.at("ambient_dim").get<size_t>(), json_to_formula(j.at("defining")),
                        j.at("label").get<std::string>()};
}

inline Json map_description_to_json(const MapDescription& m) {
  Json dom = Json::array(), cod = Json::array(), comps = Json::array();
  for (Factor f : m.domain) dom.push_back(factor_name(f));
  for (Factor f : m.codomain) cod.push_back(factor_name(f));
  for (const auto& p : m.components) comps.push_back(term_to_json(poly_to_term(p)));
  return Json{{"domain", dom}, {"codomain", cod}, {"coords", m.coords}, {"components", comps}};
}

inline MapDescription json_to_map_description(const Json& j) {
  MapDescription m;
  for (const auto& f : j.at("domain")) m.domain.push_back(factor_from_name(f.get<std::string>()));
  for (const auto& f : j.at("codomain")) m.codomain.push_back(factor_from_name(f.get<std::string>()));
  for (const auto& c : j.at("coords")) m.coords.push_back(c.get<std::string>());
  for (const auto& c : j.at("components")) m.components.push_back(expand(json_to_term(c)));
  return m;
}

}  // namespace realhier
