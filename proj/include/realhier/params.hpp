#pragma once
// Reduction constants, computed exactly. The growth here is doubly
// exponential, so everything is capped: values past 2^64 raise Overflow
// rather than silently truncating.

#include <chrono>
#include <optional>

#include "realhier/classify.hpp"
#include "realhier/json_io.hpp"

namespace realhier {

struct ReductionParams {
  Int c = 2;  // Solernó exponent, configurable
  Int n = 0;  // final-block variable count
  Int D = 0;  // per-variable degree
  std::optional<Int> ell;  // max coefficient bit-length, when known

  Int C = 0;                         // n·D^(n^c) + (D+1)·n
  Int L = 0;                         // D^(n^c)
  std::optional<Int> alpha_exponent; // ℓ·D^(c·n²)
  Int m_ydexp = 1;                   // smallest m with 2^(m−1) > C
  Int m_expsmall = 1;                // smallest m with (5/6)·2^m > C

  // desk-scale chain length override; honest m is astronomically large for
  // most inputs, so passes accept a small m and record the substitution
  std::optional<unsigned> m_override;
  // anchor the shrinking chain at the constant 1/4 instead of a quantified
  // seed; keeps transformed sentences within interval-oracle reach
  bool desk_anchor = false;
  // pre-scale x = S·x' applied by the closed-box transform so roots land in
  // the representable band |x'| ≤ 2√3
  Int root_scale = 1;
};

namespace detail {

inline const Int& overflow_cap() {
  static const Int cap = Int(1) << 64;
  return cap;
}

inline Int checked_pow(const Int& base, const Int& exp) {
  if (exp == 0) return 1;
  if (base == 0) return 0;
  if (base == 1) return 1;
  Int r = 1;
  for (Int i = 0; i < exp; ++i) {
    r *= base;
    if (r > overflow_cap()) throw Overflow("parameter tower exceeds 2^64");
  }
  return r;
}

}  // namespace detail

// smallest m ≥ 1 with 2^(m−1) > threshold (one squaring of headroom)
inline Int smallest_m_ydexp(const Int& threshold) {
  Int m = 1, pow = 1;
  while (pow <= threshold) {
    pow <<= 1;
    ++m;
    if (m > 80) throw Overflow("chain length out of range");
  }
  return m;
}

// smallest m ≥ 1 with (5/6)·2^m > threshold, i.e. 5·2^m > 6·threshold
inline Int smallest_m_expsmall(const Int& threshold) {
  Int m = 1;
  Int lhs = 10;  // 5·2^1
  Int rhs = 6 * threshold;
  while (lhs <= rhs) {
    lhs <<= 1;
    ++m;
    if (m > 80) throw Overflow("chain length out of range");
  }
  return m;
}

inline ReductionParams compute_params(const Int& n, const Int& D,
                                      std::optional<Int> ell = std::nullopt, const Int& c = 2) {
  if (n < 0 || D < 0 || c < 1 || (ell && *ell < 0))
    throw Error("compute_params: arguments must be nonnegative, c >= 1");
  ReductionParams p;
  p.c = c;
  p.n = n;
  p.D = D;
  p.ell = ell;
  Int n_to_c = detail::checked_pow(n, c);
  p.L = detail::checked_pow(D, n_to_c);
  p.C = n * p.L + (D + 1) * n;
  if (p.C > detail::overflow_cap()) throw Overflow("parameter tower exceeds 2^64");
  if (ell) {
    Int a = *ell * detail::checked_pow(D, c * n * n);
    if (a > detail::overflow_cap()) throw Overflow("parameter tower exceeds 2^64");
    p.alpha_exponent = a;
  }
  p.m_ydexp = smallest_m_ydexp(p.C);
  p.m_expsmall = smallest_m_expsmall(p.C);
  return p;
}

inline Json params_to_json(const ReductionParams& p) {
  Json j{{"c", p.c.str()},     {"n", p.n.str()},
         {"D", p.D.str()},     {"C", p.C.str()},
         {"L", p.L.str()},     {"m_ydexp", p.m_ydexp.str()},
         {"m_expsmall", p.m_expsmall.str()}};
  j["ell"] = p.ell ? Json(p.ell->str()) : Json(nullptr);
  j["alpha_exponent"] = p.alpha_exponent ? Json(p.alpha_exponent->str()) : Json(nullptr);
  j["m_override"] = p.m_override ? Json(*p.m_override) : Json(nullptr);
  j["desk_anchor"] = p.desk_anchor;
  j["root_scale"] = p.root_scale.str();
  return j;
}

struct PassReport {
  std::string pass;
  Signature input_sig, output_sig;
  unsigned degree_before = 0, degree_after = 0;
  size_t vars_before = 0, vars_after = 0;
  Json params;
  bool heuristic_parameters = false;  // set when m_override replaced honest m
  double wall_ms = 0.0;
};

inline Json pass_report_to_json(const PassReport& r) {
  return Json{{"pass", r.pass},
              {"input", signature_str(r.input_sig)},
              {"output", signature_str(r.output_sig)},
              {"degree_before", r.degree_before},
              {"degree_after", r.degree_after},
              {"vars_before", r.vars_before},
              {"vars_after", r.vars_after},
              {"params", r.params},
              {"heuristic_parameters", r.heuristic_parameters},
              {"wall_ms", r.wall_ms}};
}

class PassTimer {
 public:
  PassTimer() : t0_(std::chrono::steady_clock::now()) {}
  double ms() const {
    auto d = std::chrono::steady_clock::now() - t0_;
    return std::chrono::duration<double, std::milli>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace realhier
