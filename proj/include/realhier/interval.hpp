#pragma once
// Exact dyadic numbers (man * 2^exp) and outward-rounded interval arithmetic.
// Additions and multiplications are exact; rounding only trims mantissas back
// to a configured number of fractional bits, always outward per endpoint.

#include <map>
#include <string>

#include "realhier/poly.hpp"

namespace realhier {

constexpr long kIntervalFracBits = 128;

struct Dyadic {
  Int man;
  long exp = 0;  // value = man * 2^exp

  Dyadic() : man(0) {}
  Dyadic(Int m, long e) : man(std::move(m)), exp(e) {
    if (man == 0) exp = 0;
  }
  explicit Dyadic(long v) : man(v) {}
};

namespace detail {

inline Int shl(const Int& a, long k) {
  if (k <= 0) return a;
  if (k > (1L << 22)) throw Overflow("dyadic shift too large");
  return a << static_cast<unsigned>(k);
}

// floor(a / 2^k) and ceil(a / 2^k), correct for negative a
inline Int floor_shr(const Int& a, long k) {
  if (k <= 0) return shl(a, -k);
  if (k > (1L << 22)) throw Overflow("dyadic shift too large");
  if (a >= 0) return a >> static_cast<unsigned>(k);
  return -((-a + (shl(Int(1), k) - 1)) >> static_cast<unsigned>(k));
}
inline Int ceil_shr(const Int& a, long k) { return -floor_shr(-a, k); }

inline Int floor_div(const Int& a, const Int& b) {  // b > 0
  Int q = a / b, r = a % b;
  if (r != 0 && a < 0) --q;
  return q;
}

}  // namespace detail

inline int dy_cmp(const Dyadic& a, const Dyadic& b) {
  // quick sign test avoids shifting when signs differ
  int sa = a.man == 0 ? 0 : (a.man < 0 ? -1 : 1);
  int sb = b.man == 0 ? 0 : (b.man < 0 ? -1 : 1);
  if (sa != sb) return sa < sb ? -1 : 1;
  long e = std::min(a.exp, b.exp);
  Int ma = detail::shl(a.man, a.exp - e), mb = detail::shl(b.man, b.exp - e);
  return ma < mb ? -1 : (ma == mb ? 0 : 1);
}

inline Dyadic dy_add(const Dyadic& a, const Dyadic& b) {
  long e = std::min(a.exp, b.exp);
  return Dyadic(detail::shl(a.man, a.exp - e) + detail::shl(b.man, b.exp - e), e);
}
inline Dyadic dy_neg(const Dyadic& a) { return Dyadic(-a.man, a.exp); }
inline Dyadic dy_sub(const Dyadic& a, const Dyadic& b) { return dy_add(a, dy_neg(b)); }
inline Dyadic dy_mul(const Dyadic& a, const Dyadic& b) { return Dyadic(a.man * b.man, a.exp + b.exp); }
inline Dyadic dy_pow(const Dyadic& a, unsigned e) {
  if (a.exp != 0 && e > (1u << 20)) throw Overflow("dyadic power too large");
  return Dyadic(boost::multiprecision::pow(a.man, e), a.exp * static_cast<long>(e));
}
inline Dyadic dy_abs(const Dyadic& a) { return a.man < 0 ? dy_neg(a) : a; }
inline Dyadic dy_halve(const Dyadic& a) { return Dyadic(a.man, a.exp - 1); }

inline Dyadic dy_round_down(const Dyadic& a, long fbits) {
  if (a.exp >= -fbits) return a;
  return Dyadic(detail::floor_shr(a.man, -fbits - a.exp), -fbits);
}
inline Dyadic dy_round_up(const Dyadic& a, long fbits) {
  if (a.exp >= -fbits) return a;
  return Dyadic(detail::ceil_shr(a.man, -fbits - a.exp), -fbits);
}

inline Rational dy_to_rational(const Dyadic& a) {
  if (a.exp >= 0) return Rational(detail::shl(a.man, a.exp));
  return Rational(a.man, detail::shl(Int(1), -a.exp));
}

inline Dyadic dy_from_rational_down(const Rational& q, long fbits) {
  return Dyadic(detail::floor_div(detail::shl(rat_num(q), fbits), rat_den(q)), -fbits);
}
inline Dyadic dy_from_rational_up(const Rational& q, long fbits) {
  return dy_neg(dy_from_rational_down(-q, fbits));
}

// exact when q has a power-of-two denominator; otherwise throws
inline Dyadic dy_from_rational_exact(const Rational& q) {
  Int den = rat_den(q);
  long e = 0;
  while ((den & 1) == 0) {
    den >>= 1;
    ++e;
  }
  if (den != 1) throw Error("not a dyadic rational: " + rat_str(q));
  return Dyadic(rat_num(q), -e);
}

inline std::string dy_str(const Dyadic& a) { return rat_str(dy_to_rational(a)); }

// ---------------------------------------------------------------- intervals

struct DyIval {
  Dyadic lo, hi;

  DyIval() = default;
  DyIval(Dyadic l, Dyadic h) : lo(std::move(l)), hi(std::move(h)) {}
  static DyIval point(const Dyadic& d) { return DyIval(d, d); }
};

inline DyIval iv_from_rational(const Rational& q, long fbits = kIntervalFracBits) {
  return DyIval(dy_from_rational_down(q, fbits), dy_from_rational_up(q, fbits));
}

inline DyIval iv_round(const DyIval& x, long fbits) {
  return DyIval(dy_round_down(x.lo, fbits), dy_round_up(x.hi, fbits));
}

inline DyIval iv_add(const DyIval& a, const DyIval& b, long fbits = kIntervalFracBits) {
  return iv_round(DyIval(dy_add(a.lo, b.lo), dy_add(a.hi, b.hi)), fbits);
}
inline DyIval iv_neg(const DyIval& a) { return DyIval(dy_neg(a.hi), dy_neg(a.lo)); }
inline DyIval iv_sub(const DyIval& a, const DyIval& b, long fbits = kIntervalFracBits) {
  return iv_add(a, iv_neg(b), fbits);
}

inline DyIval iv_mul(const DyIval& a, const DyIval& b, long fbits = kIntervalFracBits) {
  Dyadic c[4] = {dy_mul(a.lo, b.lo), dy_mul(a.lo, b.hi), dy_mul(a.hi, b.lo), dy_mul(a.hi, b.hi)};
  Dyadic lo = c[0], hi = c[0];
  for (int i = 1; i < 4; ++i) {
    if (dy_cmp(c[i], lo) < 0) lo = c[i];
    if (dy_cmp(c[i], hi) > 0) hi = c[i];
  }
  return iv_round(DyIval(lo, hi), fbits);
}

inline DyIval iv_pow(const DyIval& a, unsigned e, long fbits = kIntervalFracBits) {
  if (e == 0) return DyIval::point(Dyadic(1));
  if (e == 1) return a;
  if (e % 2 == 1 || a.lo.man >= 0)
    return iv_round(DyIval(dy_pow(a.lo, e), dy_pow(a.hi, e)), fbits);
  if (a.hi.man <= 0) return iv_round(DyIval(dy_pow(a.hi, e), dy_pow(a.lo, e)), fbits);
  // even power over a sign-straddling interval is sharp: [0, max(|lo|,|hi|)^e]
  Dyadic m = dy_abs(a.lo);
  if (dy_cmp(dy_abs(a.hi), m) > 0) m = dy_abs(a.hi);
  return iv_round(DyIval(Dyadic(0), dy_pow(m, e)), fbits);
}

inline DyIval iv_join(const DyIval& a, const DyIval& b) {
  return DyIval(dy_cmp(a.lo, b.lo) <= 0 ? a.lo : b.lo, dy_cmp(a.hi, b.hi) >= 0 ? a.hi : b.hi);
}

inline bool iv_contains_zero(const DyIval& a) { return a.lo.man <= 0 && a.hi.man >= 0; }
inline bool iv_pos(const DyIval& a) { return a.lo.man > 0; }
inline bool iv_neg_strict(const DyIval& a) { return a.hi.man < 0; }
inline Dyadic iv_width(const DyIval& a) { return dy_sub(a.hi, a.lo); }
inline Dyadic iv_mid(const DyIval& a) { return dy_halve(dy_add(a.lo, a.hi)); }

// Interval extension of a polynomial over a per-variable interval environment.
inline DyIval eval_poly_interval(const Polynomial& p, const std::map<std::string, DyIval>& env,
                                 long fbits = kIntervalFracBits) {
  DyIval acc = DyIval::point(Dyadic(0));
  for (const auto& [mono, coeff] : p.terms) {
    DyIval mv = iv_from_rational(coeff, fbits);
    for (const auto& [v, e] : mono) {
      auto it = env.find(v);
      if (it == env.end()) throw UnboundVariable("interval eval: no box for " + v);
      mv = iv_mul(mv, iv_pow(it->second, e, fbits), fbits);
    }
    acc = iv_add(acc, mv, fbits);
  }
  return acc;
}

// Interval extension over the term tree itself. Composing the enclosure
// structurally keeps squared subexpressions nonnegative (iv_pow is sharp on
// even powers), which monomial expansion destroys: a sum of squares evaluates
// to [0, hi] here but picks up spurious negative lower bounds after expansion.
inline DyIval eval_term_interval(const Term& t, const std::map<std::string, DyIval>& env,
                                 long fbits = kIntervalFracBits) {
  switch (t->kind) {
    case TermKind::Const: return iv_from_rational(t->value, fbits);
    case TermKind::Var: {
      auto it = env.find(t->var);
      if (it == env.end()) throw UnboundVariable("interval eval: no box for " + t->var);
      return it->second;
    }
    case TermKind::Add:
      return iv_add(eval_term_interval(t->a, env, fbits), eval_term_interval(t->b, env, fbits), fbits);
    case TermKind::Sub:
      return iv_sub(eval_term_interval(t->a, env, fbits), eval_term_interval(t->b, env, fbits), fbits);
    case TermKind::Mul:
      return iv_mul(eval_term_interval(t->a, env, fbits), eval_term_interval(t->b, env, fbits), fbits);
    case TermKind::Neg: return iv_neg(eval_term_interval(t->a, env, fbits));
    case TermKind::Pow: return iv_pow(eval_term_interval(t->a, env, fbits), t->exp, fbits);
  }
  throw Error("unreachable term kind");
}

}  // namespace realhier
