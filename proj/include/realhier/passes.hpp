#pragma once
// Truth-preserving sentence transforms: single-polynomial matrices,
// strictification chains, and bounded-universe rewrites.

#include <array>
#include <functional>

#include "realhier/gadgets.hpp"
#include "realhier/normalize.hpp"
#include "realhier/params.hpp"
#include "realhier/tseitin.hpp"

namespace realhier {

namespace detail {

inline unsigned formula_degree(const Formula& f) {
  if (!f) return 0;
  if (f->kind == FKind::Atom) return expand(f->lhs).total_degree();
  return std::max(formula_degree(f->a), formula_degree(f->b));
}

inline size_t prefix_var_count(const Sentence& s) {
  size_t n = 0;
  for (const auto& b : s.prefix) n += b.vars.size();
  return n;
}

inline std::set<std::string> all_names(const Sentence& s) {
  std::set<std::string> names;
  formula_vars(s.matrix, names);
  for (const auto& b : s.prefix) {
    for (const auto& v : b.vars) names.insert(v);
    if (b.domain.lower) term_vars(b.domain.lower, names);
    if (b.domain.upper) term_vars(b.domain.upper, names);
  }
  return names;
}

inline void require_standard_prenex(const Sentence& s, const char* who) {
  if (!is_quantifier_free(s.matrix))
    throw WrongShape(std::string(who) + ": sentence must be prenex");
  for (const auto& b : s.prefix)
    if (is_exotic(b.kind))
      throw ExoticQuantifierPresent(std::string(who) + ": expand exotic quantifiers first");
}

// dyadic bisection toward a sign change of fn between lo and hi
template <typename Fn>
inline Rational bisect_sign(Fn&& fn, Rational lo, Rational hi, int iters) {
  Rational flo = fn(lo);
  if (flo == 0) return lo;
  Rational fhi = fn(hi);
  if (fhi == 0) return hi;
  for (int i = 0; i < iters; ++i) {
    Rational mid = (lo + hi) / 2;
    Rational fm = fn(mid);
    if (fm == 0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

inline PassReport finish_report(const char* pass, const Sentence& in, const Sentence& out,
                                Json params, bool heuristic, const PassTimer& t) {
  PassReport r;
  r.pass = pass;
  r.input_sig = classify(in);
  r.output_sig = classify(out);
  r.degree_before = formula_degree(in.matrix);
  r.degree_after = formula_degree(out.matrix);
  r.vars_before = prefix_var_count(in);
  r.vars_after = prefix_var_count(out);
  r.params = std::move(params);
  r.heuristic_parameters = heuristic;
  r.wall_ms = t.ms();
  return r;
}

inline void check_degree(const Formula& matrix, unsigned bound, const char* who) {
  unsigned d = formula_degree(matrix);
  if (d > bound)
    throw DegreeTooHigh(std::string(who) + ": output degree " + std::to_string(d) +
                        " exceeds bound " + std::to_string(bound));
}

// claim the gadget's derived chain names so later fresh() calls cannot collide
inline std::vector<std::string> claim_chain(FreshVarGen& gen, unsigned m, const std::string& y0) {
  auto ys = chain_names(m, y0);
  for (const auto& y : ys)
    if (!gen.claim(y)) throw Error("internal: chain name collision");
  return ys;
}

}  // namespace detail

// ------------------------------------------------------------------ to_qpoly

// Collapse the matrix to a single polynomial atom: f = 0 when the final block
// is existential (aux variables join it), squared strict form under a final
// universal block.
inline std::pair<Sentence, PassReport> to_qpoly(const Sentence& s) {
  PassTimer t;
  detail::require_standard_prenex(s, "to_qpoly");
  std::set<std::string> reserved = detail::all_names(s);

  Sentence out;
  out.prefix = s.prefix;
  bool final_exists = s.prefix.empty() || s.prefix.back().kind == QKind::Exists;

  std::vector<std::string> aux;
  if (final_exists) {
    TseitinResult r = encode_exists(s.matrix, reserved);
    out.matrix = fatom0(poly_to_term(r.poly), Relop::EQ);
    aux = std::move(r.aux);
    detail::check_degree(out.matrix, 4, "to_qpoly");
  } else {
    ForallEncoding r = encode_forall(s.matrix, reserved);
    out.matrix = fatom0(poly_to_term(r.poly), Relop::GT);
    aux = std::move(r.aux);
    detail::check_degree(out.matrix, 8, "to_qpoly");
  }

  if (!aux.empty()) {
    QKind kind = final_exists ? QKind::Exists : QKind::Forall;
    if (!out.prefix.empty() && out.prefix.back().kind == kind &&
        out.prefix.back().domain.kind == Domain::AllReals) {
      // gadget-then-original ordering inside the merged block
      auto& vars = out.prefix.back().vars;
      vars.insert(vars.begin(), aux.begin(), aux.end());
    } else {
      out.prefix.push_back({kind, aux, Domain::all()});
    }
  }
  check_well_formed(out);
  return {out, detail::finish_report("to_qpoly", s, out, Json::object(), false, t)};
}

// ----------------------------------------------------------------- strictify

// Replace a final-existential equality matrix with a strict one at the same
// level. The shrinking chain forces y_m to be exponentially small in the seed;
// the matrix then asserts g² plus a norm control term stays under y_m², which
// squeezes g to 0 in the limit while every true instance keeps a strict
// margin. Faithful form: (∀z∈(0,1))(∃y₀∈(0,z))(∃y₁..y_m∈[−1,1])(∃x)
//   400·Σ(y_k−y_{k−1}²)² + g² + y_m²·Σx_j²·y₀² < y_m².
// Desk form pins the seed to 1/4 and drops the two added blocks.
inline std::pair<Sentence, PassReport> strictify(const Sentence& s, const ReductionParams& rp) {
  PassTimer t;
  detail::require_standard_prenex(s, "strictify");
  if (!s.matrix || s.matrix->kind != FKind::Atom || s.matrix->op != Relop::EQ)
    throw WrongShape("strictify: matrix must be a single equality");
  Signature sig = classify(s);
  if (sig.level < 2) throw LevelTooLow("strictify: level-1 input, use the k=1 variant");
  if (s.prefix.back().kind != QKind::Exists)
    throw WrongShape("strictify: final block must be existential");
  Polynomial g = expand(s.matrix->lhs);
  if (g.total_degree() > 4) throw DegreeTooHigh("strictify: matrix degree exceeds 4");

  bool heuristic = rp.m_override.has_value() || rp.desk_anchor;
  unsigned m = rp.m_override ? *rp.m_override
                             : smallest_m_expsmall(2 * rp.C).convert_to<unsigned>();

  FreshVarGen gen(detail::all_names(s));
  const auto& xs = s.prefix.back().vars;
  Term xsum;
  for (const auto& x : xs)
    xsum = xsum ? tadd(xsum, tpow(tvar(x), 2)) : tpow(tvar(x), 2);

  Sentence out;
  out.prefix.assign(s.prefix.begin(), s.prefix.end() - 1);
  Term chain, scale;
  std::vector<std::string> ys;
  std::string seed;
  if (rp.desk_anchor) {
    std::string ybase = gen.fresh("y");
    ys = detail::claim_chain(gen, m, ybase);
    chain = detail::chain_anchored(ys, Rational(1, 4));
    if (xsum) scale = tmul(tmul(tpow(tvar(ys[m - 1]), 2), xsum), tconst(Rational(1, 16)));
  } else {
    std::string z = gen.fresh("z");
    seed = gen.fresh("y0");
    std::string ybase = gen.fresh("y");
    ys = detail::claim_chain(gen, m, ybase);
    out.prefix.push_back({QKind::Forall, {z}, Domain::guarded(tconst(0), tconst(1), true, true)});
    out.prefix.push_back({QKind::Exists, {seed}, Domain::guarded(tconst(0), tvar(z), true, true)});
    chain = detail::chain_seeded(seed, ys);
    if (xsum) scale = tmul(tmul(tpow(tvar(ys[m - 1]), 2), xsum), tpow(tvar(seed), 2));
  }
  out.prefix.push_back({QKind::Exists, ys, Domain::closed_unit()});
  out.prefix.push_back(s.prefix.back());

  Term lhs = tadd(chain, tpow(s.matrix->lhs, 2));
  if (scale) lhs = tadd(lhs, scale);
  out.matrix = fatom(lhs, Relop::LT, tpow(tvar(ys[m - 1]), 2));
  detail::check_degree(out.matrix, 9, "strictify");
  check_well_formed(out);

  Json params = params_to_json(rp);
  params["m"] = m;
  {
    // chain values that zero the residuals; the seeded form matches them at
    // seed 1/4, which the oracle can only use on boxes where the guard allows
    auto h = anchor_hint(ys, Rational(1, 4));
    if (!seed.empty()) h[seed] = Rational(1, 4);
    Json o = Json::object();
    for (const auto& [v, q] : h) o[v] = rational_to_json(q);
    params["hints"] = Json::array({o});
  }
  auto rep = detail::finish_report("strictify", s, out, std::move(params), heuristic, t);
  if (rep.output_sig.level != sig.level) throw Error("strictify: level not preserved");
  if (!rep.output_sig.strict) throw Error("strictify: output not strict");
  return {out, rep};
}

// -------------------------------------------------------------- strictify_k1

// Purely existential variant. x ranges over [−1,1] via the rational chart
// x = 2z/(1+z²), so a root in the box becomes a root anywhere; the right side
// y_m²(1−y_m²) is positive only for 0 < |y_m| < 1, which keeps the chain
// honest without quantifier alternation.
inline std::pair<Sentence, PassReport> strictify_k1(const Polynomial& f,
                                                    const ReductionParams& rp) {
  PassTimer t;
  if (f.total_degree() > 4) throw DegreeTooHigh("strictify_k1: degree exceeds 4");

  bool heuristic = rp.m_override.has_value();
  unsigned m;
  if (rp.m_override) {
    m = *rp.m_override;
  } else {
    if (!rp.alpha_exponent)
      throw MissingEll("strictify_k1: coefficient bit-length needed for the chain length");
    m = smallest_m_expsmall(*rp.alpha_exponent).convert_to<unsigned>();
  }

  auto vars = f.variables();
  Sentence in;  // implied input, for the report
  if (!vars.empty())
    in.prefix.push_back({QKind::Exists, {vars.begin(), vars.end()}, Domain::all()});
  in.matrix = fatom0(poly_to_term(f), Relop::EQ);

  FreshVarGen gen(std::set<std::string>(vars.begin(), vars.end()));
  std::string ybase = gen.fresh("y");
  auto ys = detail::claim_chain(gen, m, ybase);

  Term lhs = tadd(detail::chain_anchored(ys, Rational(1, 4)), poly_to_term(f));
  std::vector<std::string> zs, zps;
  for (const auto& x : vars) {
    std::string z = gen.fresh("z"), zp = gen.fresh("zp");
    zs.push_back(z);
    zps.push_back(zp);
    Term d1 = tsub(tmul(tvar(x), tvar(zp)), tmul(tconst(2), tvar(z)));
    Term d2 = tsub(tvar(zp), tadd(tconst(1), tpow(tvar(z), 2)));
    lhs = tadd(lhs, tadd(tpow(d1, 2), tpow(d2, 2)));
  }
  Term ym = tvar(ys[m - 1]);
  Term rhs = tmul(tpow(ym, 2), tsub(tconst(1), tpow(ym, 2)));

  Sentence out;
  std::vector<std::string> blockvars = ys;
  for (size_t i = 0; i < vars.size(); ++i) {
    blockvars.push_back(zs[i]);
    blockvars.push_back(zps[i]);
  }
  for (const auto& x : vars) blockvars.push_back(x);
  out.prefix.push_back({QKind::Exists, blockvars, Domain::all()});
  out.matrix = fatom(lhs, Relop::LT, rhs);
  detail::check_degree(out.matrix, 4, "strictify_k1");
  check_well_formed(out);

  Json params = params_to_json(rp);
  params["m"] = m;
  if (vars.size() == 1) {
    // f ≥ 0 touches zero without a sign change, so scan a rational grid for
    // exact roots; a hit completes to a full witness (z bisected onto the
    // chart, z' exact from z, chain at its anchors)
    Json arr = Json::array();
    const std::string& x = *vars.begin();
    std::vector<Rational> roots;
    auto emit = [&](const Rational& x0) {
      if (std::find(roots.begin(), roots.end(), x0) != roots.end()) return;
      roots.push_back(x0);
      Rational z0 = x0 == 0 ? Rational(0)
                            : detail::bisect_sign(
                                  [&](const Rational& zq) { return x0 * (1 + zq * zq) - 2 * zq; },
                                  Rational(0), x0 > 0 ? Rational(1) : Rational(-1), 64);
      auto h = anchor_hint(ys, Rational(1, 4));
      h[x] = x0;
      h[zs[0]] = z0;
      h[zps[0]] = 1 + z0 * z0;
      Json o = Json::object();
      for (const auto& [v, q] : h) o[v] = rational_to_json(q);
      arr.push_back(o);
    };
    for (int num = -64; num <= 64 && roots.size() < 3; ++num)
      if (eval_poly(f, {{x, Rational(num, 64)}}) == 0) emit(Rational(num, 64));
    for (long den = 3; den <= 13 && roots.size() < 3; ++den)
      for (long num = -den; num <= den && roots.size() < 3; ++num)
        if (eval_poly(f, {{x, Rational(num, den)}}) == 0) emit(Rational(num, den));
    if (!arr.empty()) params["hints"] = arr;
  }
  return {out, detail::finish_report("strictify_k1", in, out, std::move(params), heuristic, t)};
}

// --------------------------------------------------------- bounded_strictify

// Bounded-box strictification of f = 0 over I^n, I the open or closed unit
// interval. Integer path: the anchored chain pins y_m ≈ (1/4)^(2^m); with
// (5/6)·2^m above the Łojasiewicz exponent, f² < y_m² at integer coefficients
// forces an exact root. Real path: the seed is universally quantified over
// (0,1) instead.
inline Sentence bounded_strictify(const Polynomial& f, bool closed, bool integer_coeffs,
                                  const ReductionParams& rp) {
  Domain I = closed ? Domain::closed_unit() : Domain::open_unit();
  if (integer_coeffs && !rp.ell)
    throw MissingEll("bounded_strictify: integer path needs the coefficient bit-length");

  unsigned m;
  if (rp.m_override)
    m = *rp.m_override;
  else if (integer_coeffs && rp.alpha_exponent)
    m = smallest_m_expsmall(*rp.alpha_exponent).convert_to<unsigned>();
  else
    m = rp.m_expsmall.convert_to<unsigned>();

  auto vars = f.variables();
  FreshVarGen gen(std::set<std::string>(vars.begin(), vars.end()));
  std::string ybase = gen.fresh("y");
  auto ys = detail::claim_chain(gen, m, ybase);
  Term fsq = tpow(poly_to_term(f), 2);

  Sentence out;
  Term chain;
  if (integer_coeffs || rp.desk_anchor) {
    chain = detail::chain_anchored(ys, Rational(1, 4));
  } else {
    std::string y0 = gen.fresh("y0");
    out.prefix.push_back({QKind::Forall, {y0}, Domain::guarded(tconst(0), tconst(1), true, true)});
    chain = detail::chain_seeded(y0, ys);
  }
  out.prefix.push_back({QKind::Exists, ys, I});
  if (!vars.empty())
    out.prefix.push_back({QKind::Exists, {vars.begin(), vars.end()}, I});
  out.matrix = fatom(tadd(chain, fsq), Relop::LT, tpow(tvar(ys[m - 1]), 2));
  check_well_formed(out);
  return out;
}

// ---------------------------------------------------------------- bound_open

namespace detail {

struct BoundedFlat {
  Polynomial F;                              // equality matrix over z's and aux
  Polynomial V;                              // cleared numerator, linear in products
  std::vector<Polynomial> residuals;         // definition residuals: F = V² + Σr²
  std::vector<std::string> aux;              // definition variables, in order
  std::map<std::string, std::string> zmap;   // original var → chart variable
  std::map<std::string, std::string> vmap;   // original var → halved clearing factor
  std::map<std::string, std::string> wmap;   // original var → closed-case slack
  std::vector<std::array<std::string, 3>> defs;  // t = a·b, in dependency order
  std::vector<std::string> vsq;              // per-var product node for v²
  bool integer = false;
  std::optional<Int> ell;                    // coefficient bit-length when integer
};

// Chart x_j = S·z_j/(1−z_j²), denominators cleared by Π(1−z_j²)^4 and the
// cleared factors rebuilt from halved aux v_j = (1−z_j²)/2 through degree-2
// product definitions shared across monomials (balanced splits of the sorted
// factor multiset), so the whole matrix stays at degree 4 with few aux
// variables and every aux value lives strictly inside the unit interval. The
// closed variant adds the slack 4z²+4w²−3 = 0, pinning z² ≤ 3/4 so the chart
// never degenerates at z = ±1.
inline BoundedFlat flatten_bounded(const Polynomial& g, bool closed, const Int& scale,
                                   FreshVarGen& gen) {
  BoundedFlat out;
  auto vars = g.variables();
  auto finish = [&](Polynomial F) {
    out.F = std::move(F);
    out.integer = true;
    Int maxc = 1;
    for (const auto& [mono, c] : out.F.terms) {
      if (rat_den(c) != 1) {
        out.integer = false;
        break;
      }
      Int a = abs(rat_num(c));
      if (a > maxc) maxc = a;
    }
    if (out.integer) out.ell = Int(boost::multiprecision::msb(maxc)) + 1;
  };
  if (vars.empty()) {
    out.V = g;
    finish(mul(g, g));
    return out;
  }

  std::vector<Polynomial> residuals;
  for (const auto& x : vars) out.zmap[x] = gen.fresh("z");
  for (const auto& x : vars) {
    std::string v = gen.fresh("v");
    out.vmap[x] = v;
    out.aux.push_back(v);
    // 2v − 1 + z² = 0  ⟺  v = (1−z²)/2
    residuals.push_back(Polynomial::var(v) * Polynomial::constant(2) -
                        Polynomial::constant(1) + Polynomial::var(out.zmap[x], 2));
  }
  if (closed) {
    for (const auto& x : vars) {
      std::string w = gen.fresh("w");
      out.wmap[x] = w;
      out.aux.push_back(w);
      residuals.push_back(Polynomial::var(out.zmap[x], 2) * Polynomial::constant(4) +
                          Polynomial::var(w, 2) * Polynomial::constant(4) -
                          Polynomial::constant(3));
    }
  }

  // shared product pyramid: node(multiset of base factors) → defined variable
  std::map<std::vector<std::string>, std::string> pool;
  std::function<std::string(std::vector<std::string>)> node =
      [&](std::vector<std::string> fs) -> std::string {
    if (fs.size() == 1) return fs[0];
    if (auto it = pool.find(fs); it != pool.end()) return it->second;
    size_t half = fs.size() / 2;
    std::string a = node({fs.begin(), fs.begin() + long(half)});
    std::string b = node({fs.begin() + long(half), fs.end()});
    std::string tn = gen.fresh("t");
    out.aux.push_back(tn);
    out.defs.push_back({tn, a, b});
    residuals.push_back(Polynomial::var(tn) - mul(Polynomial::var(a), Polynomial::var(b)));
    pool.emplace(std::move(fs), tn);
    return tn;
  };
  // the v² nodes weight the strictified right side, so create them up front
  for (const auto& x : vars) out.vsq.push_back(node({out.vmap[x], out.vmap[x]}));

  size_t nv = vars.size();
  for (const auto& [mono, coeff] : g.terms) {
    // factor list: z_j^(α_j) · v_j^(4−α_j) across every variable of g
    std::vector<std::string> factors;
    Int total = 0;
    for (const auto& x : vars) {
      unsigned a = 0;
      for (const auto& [mv, me] : mono)
        if (mv == x) a = me;
      if (a > 4) throw DegreeTooHigh("bounded chart: per-variable degree exceeds 4");
      total += a;
      for (unsigned i = 0; i < a; ++i) factors.push_back(out.zmap.at(x));
      for (unsigned i = 0; i < 4 - a; ++i) factors.push_back(out.vmap.at(x));
    }
    std::sort(factors.begin(), factors.end());
    unsigned shift = unsigned(4 * nv) - total.convert_to<unsigned>();
    Rational cprime = coeff * Rational(int_pow(scale, total)) * Rational(Int(1) << shift);
    // each term is a product of two pyramid nodes, so V itself has degree 2
    std::string a = node({factors.begin(), factors.begin() + long(2 * nv)});
    std::string b = node({factors.begin() + long(2 * nv), factors.end()});
    out.V = out.V + mul(Polynomial::var(a), Polynomial::var(b)) * Polynomial::constant(cprime);
  }

  Polynomial F = mul(out.V, out.V);
  for (const auto& r : residuals) F = F + mul(r, r);
  if (F.total_degree() > 4) throw DegreeTooHigh("bounded chart: matrix degree exceeds 4");
  out.residuals = std::move(residuals);
  finish(std::move(F));
  return out;
}

// F written as V² + Σr², so interval evaluation keeps each square nonnegative
inline Term bounded_matrix_term(const BoundedFlat& bf) {
  if (bf.residuals.empty()) return poly_to_term(bf.F);
  Term t = tpow(poly_to_term(bf.V), 2);
  for (const auto& r : bf.residuals) t = tadd(t, tpow(poly_to_term(r), 2));
  return t;
}

// evaluate the def pyramid bottom-up at exact chart values
inline std::map<std::string, Rational> chart_values(const BoundedFlat& bf,
                                                    const std::map<std::string, Rational>& zs) {
  std::map<std::string, Rational> vals = zs;
  for (const auto& [x, z] : bf.zmap) {
    const Rational& zq = zs.at(z);
    vals[bf.vmap.at(x)] = (1 - zq * zq) / 2;
  }
  for (const auto& d : bf.defs) vals[d[0]] = vals.at(d[1]) * vals.at(d[2]);
  return vals;
}

// witness hints for a univariate bounded image: grid-scan the cleared
// numerator for sign changes, bisect each to a dyadic point, and complete the
// def pyramid (and the closed-case slack) exactly at that point
inline std::vector<std::map<std::string, Rational>> chart_root_hints(
    const BoundedFlat& bf, bool closed, const std::map<std::string, Rational>& base) {
  std::vector<std::map<std::string, Rational>> hints;
  if (bf.zmap.size() != 1) return hints;
  const std::string& z = bf.zmap.begin()->second;
  auto Vat = [&](const Rational& q) {
    return eval_poly(bf.V, chart_values(bf, {{z, q}}));
  };
  Rational lim = closed ? Rational(13, 16) : Rational(63, 64);  // closed: z² ≤ 3/4
  Rational prev = -lim;
  Rational fprev = Vat(prev);
  for (int k = 1; k <= 64 && hints.size() < 3; ++k) {
    Rational cur = -lim + Rational(2 * k, 64) * lim;
    Rational fcur = Vat(cur);
    if (fprev == 0 || (fprev < 0) != (fcur < 0)) {
      Rational zq = fprev == 0 ? prev : bisect_sign(Vat, prev, cur, 64);
      std::map<std::string, Rational> h = base;
      for (const auto& [var, val] : chart_values(bf, {{z, zq}})) h[var] = val;
      if (closed) {
        const std::string& w = bf.wmap.begin()->second;
        Rational target = 3 - 4 * zq * zq;
        h[w] = bisect_sign([&](const Rational& q) { return 4 * q * q - target; }, Rational(0),
                           Rational(1), 64);
      }
      hints.push_back(std::move(h));
    }
    prev = cur;
    fprev = fcur;
  }
  return hints;
}

inline std::pair<Sentence, PassReport> bound_impl(const Sentence& s, bool closed,
                                                  const ReductionParams& rp) {
  PassTimer t;
  const char* who = closed ? "bound_closed" : "bound_open";
  require_standard_prenex(s, who);
  if (!s.matrix || s.matrix->kind != FKind::Atom || s.matrix->op != Relop::EQ)
    throw WrongShape(std::string(who) + ": matrix must be a single equality");
  // an equality matrix strictifies through the shrinking chain, which needs
  // the chain variables under an existential; a trailing universal block has
  // no sound place to put them
  if (!s.prefix.empty() && s.prefix.back().kind != QKind::Exists)
    throw WrongShape(std::string(who) + ": final block must be existential");
  Polynomial g = expand(s.matrix->lhs);
  if (g.total_degree() > 4) throw WrongShape(std::string(who) + ": matrix degree exceeds 4");

  FreshVarGen gen(all_names(s));
  BoundedFlat bf = flatten_bounded(g, closed, closed ? rp.root_scale : Int(1), gen);
  Domain I = closed ? Domain::closed_unit() : Domain::open_unit();

  Sentence out;
  for (const auto& blk : s.prefix) {
    QuantifierBlock nb{blk.kind, {}, I};
    for (const auto& v : blk.vars) {
      auto it = bf.zmap.find(v);
      nb.vars.push_back(it != bf.zmap.end() ? it->second : v);
    }
    out.prefix.push_back(std::move(nb));
  }

  bool heuristic = rp.m_override.has_value() || rp.desk_anchor;
  Json params = params_to_json(rp);
  params["integer_path"] = bf.integer;

  unsigned m;
  if (rp.m_override) {
    m = *rp.m_override;
  } else if (bf.integer) {
    auto nvars = bf.F.variables();
    unsigned Dmax = 0;
    for (const auto& v : nvars) Dmax = std::max(Dmax, bf.F.degree_in(v));
    ReductionParams honest = compute_params(Int(nvars.size()), Int(Dmax), bf.ell, rp.c);
    m = smallest_m_expsmall(*honest.alpha_exponent).convert_to<unsigned>();
  } else {
    m = rp.m_expsmall.convert_to<unsigned>();
  }
  params["m"] = m;

  std::string ybase = gen.fresh("y");
  auto ys = claim_chain(gen, m, ybase);
  // inserted blocks go just before the final original block, if any
  size_t at = out.prefix.empty() ? 0 : out.prefix.size() - 1;
  Term chain;
  bool anchored = bf.integer || rp.desk_anchor;
  if (anchored) {
    chain = chain_anchored(ys, Rational(1, 4));
  } else {
    // seed block merges into a preceding universal run when one exists;
    // leading-existential real-coefficient inputs gain a level here
    std::string y0 = gen.fresh("y0");
    out.prefix.insert(out.prefix.begin() + at,
                      {QKind::Forall, {y0}, Domain::guarded(tconst(0), tconst(1), true, true)});
    ++at;
    chain = chain_seeded(y0, ys);
  }
  out.prefix.insert(out.prefix.begin() + at, {QKind::Exists, ys, I});
  if (!bf.aux.empty()) {
    auto& fvars = out.prefix.back().vars;
    fvars.insert(fvars.begin(), bf.aux.begin(), bf.aux.end());
  }

  // right side carries the clearing factors (v_j²)⁴ = ((1−z_j²)/2)^8: at a
  // chart root the left side vanishes while every factor stays positive, and
  // on a rootless line the cleared numerator squared dominates the same
  // weight, so the pole z → ±1 never manufactures a satisfying point
  Term rhs = tpow(tvar(ys[m - 1]), 2);
  for (const auto& tv : bf.vsq) rhs = tmul(rhs, tpow(tvar(tv), 4));
  Term lhs = tadd(chain, tpow(bounded_matrix_term(bf), 2));
  out.matrix = fatom(lhs, Relop::LT, rhs);
  check_degree(out.matrix, 16, who);

  if (anchored) {
    auto base = anchor_hint(ys, Rational(1, 4));
    std::vector<std::map<std::string, Rational>> hints;
    if (g.terms.empty())
      hints.push_back(base);
    else
      hints = chart_root_hints(bf, closed, base);
    if (!hints.empty()) {
      Json arr = Json::array();
      for (const auto& h : hints) {
        Json o = Json::object();
        for (const auto& [v, q] : h) o[v] = rational_to_json(q);
        arr.push_back(o);
      }
      params["hints"] = arr;
    }
  }
  check_well_formed(out);
  auto rep = finish_report(who, s, out, std::move(params), heuristic, t);
  if (!rep.output_sig.strict) throw Error(std::string(who) + ": output not strict");
  return {out, rep};
}

}  // namespace detail

// Rewrite every block to the open (resp. closed) unit cube via the bounded
// chart, then strictify the final block.
inline std::pair<Sentence, PassReport> bound_open(const Sentence& s,
                                                  const ReductionParams& rp = {}) {
  return detail::bound_impl(s, false, rp);
}

inline std::pair<Sentence, PassReport> bound_closed(const Sentence& s,
                                                    const ReductionParams& rp = {}) {
  return detail::bound_impl(s, true, rp);
}

}  // namespace realhier
