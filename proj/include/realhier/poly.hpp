#pragma once
// Sparse multivariate polynomials over exact rationals.

#include <map>
#include <vector>

#include "realhier/ast.hpp"

namespace realhier {

// exponent vector, sorted by variable name, no zero exponents
using Monomial = std::vector<std::pair<std::string, unsigned>>;

inline unsigned monomial_degree(const Monomial& m) {
  unsigned d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}

struct Polynomial {
  std::map<Monomial, Rational> terms;  // no zero coefficients stored

  bool is_zero() const { return terms.empty(); }

  bool operator==(const Polynomial& o) const { return terms == o.terms; }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
      terms.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  static Polynomial constant(const Rational& q) {
    Polynomial p;
    p.add_term({}, q);
    return p;
  }
  static Polynomial var(const std::string& v, unsigned e = 1) {
    Polynomial p;
    if (e == 0) return constant(1);
    p.add_term({{v, e}}, 1);
    return p;
  }

  unsigned total_degree() const {  // zero polynomial has degree 0
    unsigned d = 0;
    for (const auto& [m, c] : terms) d = std::max(d, monomial_degree(m));
    return d;
  }
  unsigned degree_in(const std::string& v) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms)
      for (const auto& [mv, e] : m)
        if (mv == v) d = std::max(d, e);
    return d;
  }
  std::set<std::string> variables() const {
    std::set<std::string> out;
    for (const auto& [m, c] : terms)
      for (const auto& [v, e] : m) out.insert(v);
    return out;
  }
};

inline Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial r = a;
  for (const auto& [m, c] : b.terms) r.add_term(m, c);
  return r;
}
inline Polynomial operator-(const Polynomial& a) {
  Polynomial r;
  for (const auto& [m, c] : a.terms) r.terms.emplace(m, -c);
  return r;
}
inline Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

inline Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.push_back(b[j++]);
    } else {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i, ++j;
    }
  }
  return r;
}

inline Polynomial mul(const Polynomial& a, const Polynomial& b, size_t budget = 0) {
  if (budget && a.terms.size() * b.terms.size() > budget)
    throw BudgetExceeded("monomial budget hit while multiplying");
  Polynomial r;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) r.add_term(monomial_mul(ma, mb), ca * cb);
  if (budget && r.terms.size() > budget) throw BudgetExceeded("monomial budget hit");
  return r;
}
inline Polynomial operator*(const Polynomial& a, const Polynomial& b) { return mul(a, b); }
inline Polynomial operator*(const Rational& c, const Polynomial& a) {
  Polynomial r;
  if (c == 0) return r;
  for (const auto& [m, k] : a.terms) r.terms.emplace(m, c * k);
  return r;
}

inline Polynomial poly_pow(const Polynomial& a, unsigned e, size_t budget = 0) {
  Polynomial r = Polynomial::constant(1);
  Polynomial b = a;
  while (e) {
    if (e & 1u) r = mul(r, b, budget);
    e >>= 1u;
    if (e) b = mul(b, b, budget);
  }
  return r;
}

inline Polynomial poly_square(const Polynomial& a) { return a * a; }

// Multiply out a term tree. Budget guards intermediate monomial counts.
inline Polynomial expand(const Term& t, size_t budget = 1000000) {
  if (!t) throw Error("expand: null term");
  switch (t->kind) {
    case TermKind::Const: return Polynomial::constant(t->value);
    case TermKind::Var: return Polynomial::var(t->var);
    case TermKind::Add: return expand(t->a, budget) + expand(t->b, budget);
    case TermKind::Sub: return expand(t->a, budget) - expand(t->b, budget);
    case TermKind::Mul: return mul(expand(t->a, budget), expand(t->b, budget), budget);
    case TermKind::Neg: return -expand(t->a, budget);
    case TermKind::Pow: return poly_pow(expand(t->a, budget), t->exp, budget);
  }
  throw Error("expand: bad term kind");
}

inline Rational eval_poly(const Polynomial& p, const std::map<std::string, Rational>& point) {
  Rational sum = 0;
  for (const auto& [m, c] : p.terms) {
    Rational v = c;
    for (const auto& [var, e] : m) {
      auto it = point.find(var);
      if (it == point.end()) throw Error("eval_poly: unbound variable " + var);
      v *= rat_pow(it->second, e);
    }
    sum += v;
  }
  return sum;
}

inline Rational eval_term(const Term& t, const std::map<std::string, Rational>& point) {
  switch (t->kind) {
    case TermKind::Const: return t->value;
    case TermKind::Var: {
      auto it = point.find(t->var);
      if (it == point.end()) throw Error("eval_term: unbound variable " + t->var);
      return it->second;
    }
    case TermKind::Add: return eval_term(t->a, point) + eval_term(t->b, point);
    case TermKind::Sub: return eval_term(t->a, point) - eval_term(t->b, point);
    case TermKind::Mul: return eval_term(t->a, point) * eval_term(t->b, point);
    case TermKind::Neg: return -eval_term(t->a, point);
    case TermKind::Pow: return rat_pow(eval_term(t->a, point), t->exp);
  }
  throw Error("eval_term: bad kind");
}

// Polynomial -> term tree (sum of monomial products), used by substitution.
inline Term poly_to_term(const Polynomial& p) {
  if (p.terms.empty()) return tconst(0);
  Term sum = nullptr;
  for (const auto& [m, c] : p.terms) {
    Term prod = nullptr;
    if (c != 1 || m.empty()) prod = tconst(c);
    for (const auto& [v, e] : m) {
      Term f = e == 1 ? tvar(v) : tpow(tvar(v), e);
      prod = prod ? tmul(prod, f) : f;
    }
    sum = sum ? tadd(sum, prod) : prod;
  }
  return sum;
}

// Compose p with variable bindings, as a term (division-free callers clear
// denominators themselves).
inline Term substitute(const Polynomial& p, const std::map<std::string, Term>& bindings) {
  if (p.terms.empty()) return tconst(0);
  Term sum = nullptr;
  for (const auto& [m, c] : p.terms) {
    Term prod = nullptr;
    if (c != 1 || m.empty()) prod = tconst(c);
    for (const auto& [v, e] : m) {
      auto it = bindings.find(v);
      Term base = it != bindings.end() ? it->second : tvar(v);
      Term f = e == 1 ? base : tpow(base, e);
      prod = prod ? tmul(prod, f) : f;
    }
    sum = sum ? tadd(sum, prod) : prod;
  }
  return sum;
}

// Integer constants as {0,1,+,*,-} terms via Horner on the binary expansion.
inline Term horner_encode(const Int& n) {
  if (n == 0) return tconst(0);
  if (n < 0) return tneg(horner_encode(-n));
  if (n == 1) return tconst(1);
  std::vector<bool> bits;
  for (Int k = n; k > 0; k >>= 1) bits.push_back((k & 1) != 0);
  Term two = tadd(tconst(1), tconst(1));
  Term t = nullptr;  // leading bit contributes the value 1; 2*1 prints as (1+1)
  for (size_t i = bits.size() - 1; i-- > 0;) {
    t = t ? tmul(two, t) : two;
    if (bits[i]) t = tadd(t, tconst(1));
  }
  return t ? t : tconst(1);
}

}  // namespace realhier
