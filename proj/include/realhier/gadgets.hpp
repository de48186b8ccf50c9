#pragma once
// Repeated-squaring chains. The growing chain y_k ≈ y_{k−1}²+1 certifies
// y_m > y₀^(2^m); the shrinking chain forces y_m² ≤ y₀^((5/6)·2^m) whenever
// the scaled residual stays below y_m².

#include "realhier/ast.hpp"

namespace realhier {

namespace detail {

inline std::vector<std::string> chain_names(unsigned m, const std::string& y0) {
  std::vector<std::string> ys;
  ys.reserve(m);
  for (unsigned k = 1; k <= m; ++k) ys.push_back(y0 + "_" + std::to_string(k));
  return ys;
}

}  // namespace detail

// Σ_{k∈[m]} (y_k − y_{k−1}² − 1)² < 1  over fresh y_1..y_m, y_0 given
inline std::pair<Formula, std::vector<std::string>> gadget_ydexp(unsigned m,
                                                                 const std::string& y0) {
  if (m < 1) throw Error("gadget_ydexp: m must be at least 1");
  auto ys = detail::chain_names(m, y0);
  Term sum;
  Term prev = tvar(y0);
  for (unsigned k = 0; k < m; ++k) {
    Term cur = tvar(ys[k]);
    Term res = tpow(tsub(tsub(cur, tpow(prev, 2)), tconst(1)), 2);
    sum = sum ? tadd(sum, res) : res;
    prev = cur;
  }
  return {fatom(sum, Relop::LT, tconst(1)), ys};
}

// 400·Σ_{k∈[m]} (y_k − y_{k−1}²)² < y_m²  over fresh y_1..y_m, y_0 given
inline std::pair<Formula, std::vector<std::string>> gadget_expsmall(unsigned m,
                                                                    const std::string& y0) {
  if (m < 1) throw Error("gadget_expsmall: m must be at least 1");
  auto ys = detail::chain_names(m, y0);
  Term sum;
  Term prev = tvar(y0);
  for (unsigned k = 0; k < m; ++k) {
    Term cur = tvar(ys[k]);
    Term res = tpow(tsub(cur, tpow(prev, 2)), 2);
    sum = sum ? tadd(sum, res) : res;
    prev = cur;
  }
  return {fatom(tmul(tconst(400), sum), Relop::LT, tpow(tvar(ys[m - 1]), 2)), ys};
}

namespace detail {

// 400·((y₁ − a²)² + Σ_{k≥2}(y_k − y_{k−1}²)²): the shrinking chain with its
// seed pinned to the constant a instead of a quantified y₀
inline Term chain_anchored(const std::vector<std::string>& ys, const Rational& a) {
  Term sum = tpow(tsub(tvar(ys[0]), tconst(a * a)), 2);
  for (size_t k = 1; k < ys.size(); ++k)
    sum = tadd(sum, tpow(tsub(tvar(ys[k]), tpow(tvar(ys[k - 1]), 2)), 2));
  return tmul(tconst(400), sum);
}

// 400·Σ(y_k − y_{k−1}²)² seeded at the variable y0
inline Term chain_seeded(const std::string& y0, const std::vector<std::string>& ys) {
  Term sum;
  Term prev = tvar(y0);
  for (const auto& y : ys) {
    Term res = tpow(tsub(tvar(y), tpow(prev, 2)), 2);
    sum = sum ? tadd(sum, res) : res;
    prev = tvar(y);
  }
  return tmul(tconst(400), sum);
}

}  // namespace detail

// exact satisfying values for an anchored chain: y_k = a^(2^k)
inline std::map<std::string, Rational> anchor_hint(const std::vector<std::string>& ys,
                                                   const Rational& a = Rational(1, 4)) {
  std::map<std::string, Rational> h;
  Rational v = a;
  for (const auto& y : ys) {
    v = v * v;
    h[y] = v;
  }
  return h;
}

}  // namespace realhier
