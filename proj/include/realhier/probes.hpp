#pragma once
// Independent evidence for the set/map constructions: each probe checks the
// geometric property itself — membership sampling, exact extremal
// computation, or small interval queries localized to a ball — without going
// through the construction under test. All arithmetic is exact rational.
#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "realhier/oracle.hpp"
#include "realhier/semialg.hpp"

namespace realhier {

struct ProbeOutcome {
  Truth value = Truth::Unknown;
  std::string note;
};

// exact truth of a quantifier-free formula at a rational point
inline bool eval_qf(const Formula& f, const std::map<std::string, Rational>& at) {
  switch (f->kind) {
    case FKind::Atom: {
      Rational v = eval_term(f->lhs, at) - eval_term(f->rhs, at);
      switch (f->op) {
        case Relop::LT: return v < 0;
        case Relop::LE: return v <= 0;
        case Relop::EQ: return v == 0;
        case Relop::GE: return v >= 0;
        case Relop::GT: return v > 0;
        default: return v != 0;
      }
    }
    case FKind::And: return eval_qf(f->a, at) && eval_qf(f->b, at);
    case FKind::Or: return eval_qf(f->a, at) || eval_qf(f->b, at);
    case FKind::Not: return !eval_qf(f->a, at);
    case FKind::Implies: return !eval_qf(f->a, at) || eval_qf(f->b, at);
    default: throw WrongShape("eval_qf: quantified formula");
  }
}

inline bool set_member(const SetDescription& s, const std::vector<Rational>& pt) {
  if (pt.size() != s.ambient_dim) throw DimensionMismatch("set_member: point dimension");
  std::map<std::string, Rational> at;
  for (size_t i = 0; i < pt.size(); ++i) at[coord_name(i + 1)] = pt[i];
  return eval_qf(s.defining, at);
}

namespace detail {

using RatIval = std::pair<Rational, Rational>;
using RatBox = std::map<std::string, RatIval>;

inline Rational rat_pow(Rational b, unsigned e) {
  Rational r(1);
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline RatIval pow_range(const RatIval& x, unsigned e) {
  if (e == 0) return {Rational(1), Rational(1)};
  Rational le = rat_pow(x.first, e), he = rat_pow(x.second, e);
  if (e % 2 == 1) return {le, he};
  if (x.first >= 0) return {le, he};
  if (x.second <= 0) return {he, le};
  return {Rational(0), std::max(le, he)};
}

inline RatIval mul_range(const RatIval& a, const RatIval& b) {
  Rational p1 = a.first * b.first, p2 = a.first * b.second;
  Rational p3 = a.second * b.first, p4 = a.second * b.second;
  return {std::min(std::min(p1, p2), std::min(p3, p4)),
          std::max(std::max(p1, p2), std::max(p3, p4))};
}

// exact range enclosure of a polynomial over a rational box (monomial-wise,
// so it overestimates like any interval form, but with no rounding at all)
inline RatIval poly_range(const Polynomial& p, const RatBox& box) {
  RatIval acc{Rational(0), Rational(0)};
  for (const auto& [mono, coef] : p.terms) {
    RatIval m{Rational(1), Rational(1)};
    for (const auto& [v, e] : mono) m = mul_range(m, pow_range(box.at(v), e));
    m = mul_range(m, {coef, coef});
    acc = {acc.first + m.first, acc.second + m.second};
  }
  return acc;
}

// certificate of global nonnegativity: every exponent even, every coefficient
// nonnegative; sound over all of R^k
inline bool even_nonneg(const Polynomial& p) {
  for (const auto& [mono, coef] : p.terms) {
    if (coef < 0) return false;
    for (const auto& [v, e] : mono)
      if (e % 2 != 0) return false;
  }
  return true;
}

inline Rational constant_of(const Polynomial& p) {
  auto it = p.terms.find(Monomial{});
  return it == p.terms.end() ? Rational(0) : it->second;
}

inline std::string pt_str(const std::vector<Rational>& pt) {
  std::string s = "(";
  for (size_t i = 0; i < pt.size(); ++i) {
    if (i) s += ", ";
    s += rat_str(pt[i]);
  }
  return s + ")";
}

// odometer over the den-grid of [-1,1]^k; calls fn on each point until it
// returns true, then reports that point
inline std::optional<std::vector<Rational>> grid_scan(
    size_t k, long den, const std::function<bool(const std::vector<Rational>&)>& fn) {
  std::vector<long> idx(k, -den);
  while (true) {
    std::vector<Rational> pt;
    pt.reserve(k);
    for (long i : idx) pt.emplace_back(i, den);
    if (fn(pt)) return pt;
    size_t j = 0;
    for (; j < k; ++j) {
      if (++idx[j] <= den) break;
      idx[j] = -den;
    }
    if (j == k) return std::nullopt;
  }
}

// the ball query behind the denseness and Hausdorff probes: does S meet the
// open ball of radius 2⁻⁶ around c? Decided by the interval engine with the
// search window pinned to the ball's bounding box.
inline Truth ball_meets(const SetDescription& s, const std::vector<Rational>& c,
                        const OracleBudget& budget) {
  Sentence q;
  QuantifierBlock blk;
  blk.kind = QKind::Exists;
  Term dist = tconst(0);
  OracleConfig cfg;
  cfg.budget = budget;
  cfg.clip_radius = Rational(2);
  for (size_t i = 0; i < s.ambient_dim; ++i) {
    std::string v = coord_name(i + 1);
    blk.vars.push_back(v);
    dist = tadd(dist, tpow(tsub(tvar(v), tconst(c[i])), 2));
    cfg.var_boxes[v] = {c[i] - Rational(1, 32), c[i] + Rational(1, 32)};
  }
  q.prefix.push_back(std::move(blk));
  q.matrix = fand(s.defining, fatom0(tsub(dist, tconst(Rational(1, 4096))), Relop::LT));
  return decide(q, cfg).value;
}

}  // namespace detail

// convexity: midpoints of sampled member pairs must stay inside; every fourth
// pair is mirrored (p, -p) so symmetric pinches are caught deterministically
inline ProbeOutcome probe_convexity(const SetDescription& s, uint64_t seed = 11,
                                    size_t pairs = 200) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> pick(-64, 64);
  auto sample_member = [&]() -> std::optional<std::vector<Rational>> {
    for (size_t t = 0; t < 200; ++t) {
      std::vector<Rational> pt;
      for (size_t i = 0; i < s.ambient_dim; ++i) pt.emplace_back(pick(rng), 64);
      if (set_member(s, pt)) return pt;
    }
    return std::nullopt;
  };
  size_t checked = 0;
  for (size_t k = 0; k < pairs; ++k) {
    auto a = sample_member();
    if (!a) continue;
    std::optional<std::vector<Rational>> b;
    if (k % 4 == 0) {
      std::vector<Rational> m;
      for (const auto& x : *a) m.push_back(-x);
      if (set_member(s, m)) b = std::move(m);
    }
    if (!b) b = sample_member();
    if (!b) continue;
    std::vector<Rational> mid;
    for (size_t i = 0; i < a->size(); ++i) mid.push_back(((*a)[i] + (*b)[i]) / 2);
    ++checked;
    if (!set_member(s, mid))
      return {Truth::False, "midpoint " + detail::pt_str(mid) + " escapes"};
  }
  if (checked == 0) return {Truth::Unknown, "no member pairs found"};
  return {Truth::True, std::to_string(checked) + " midpoints inside"};
}

// unboundedness: hunt a member beyond the norm-10 sphere; the construction
// leaves exactly the last coordinate free, so push it to ±11 and grid the rest
inline ProbeOutcome probe_unboundedness(const SetDescription& s) {
  size_t n = s.ambient_dim - 1;
  long den = n <= 1 ? 64 : 8;
  for (const Rational& far : {Rational(11), Rational(-11)}) {
    auto hit = detail::grid_scan(n, den, [&](const std::vector<Rational>& x) {
      std::vector<Rational> pt = x;
      pt.push_back(far);
      return set_member(s, pt);
    });
    if (hit) {
      hit->push_back(far);
      return {Truth::True, "member " + detail::pt_str(*hit) + " beyond norm 10"};
    }
  }
  return {Truth::False, "no member beyond norm 10 over the probe grid"};
}

// denseness: a radius-2⁻⁶ ball around every sampled center must meet the set;
// given focus centers are checked before the random ones
inline ProbeOutcome probe_denseness(const SetDescription& s,
                                    std::vector<std::vector<Rational>> focus = {},
                                    uint64_t seed = 12, size_t centers = 50,
                                    OracleBudget budget = {}) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> pick(-64, 64);
  for (size_t k = 0; k < centers; ++k) {
    std::vector<Rational> c;
    for (size_t i = 0; i < s.ambient_dim; ++i) c.emplace_back(pick(rng), 64);
    focus.push_back(std::move(c));
  }
  for (const auto& c : focus) {
    Truth t = detail::ball_meets(s, c, budget);
    if (t == Truth::False)
      return {Truth::False, "empty ball at " + detail::pt_str(c)};
    if (t == Truth::Unknown)
      return {Truth::Unknown, "undecided ball at " + detail::pt_str(c)};
  }
  return {Truth::True, std::to_string(focus.size()) + " balls met"};
}

// surjectivity onto the window [-1,1]^n × [1,5]: each random target is either
// hit exactly through the map's own components (preimage found on the
// y-root grid, s = target, t = 0) or certified unreachable by an even-power
// floor on f²: f² ≥ c everywhere forces the last component ≤ 1/(4c)
inline ProbeOutcome probe_surjectivity(const MapDescription& g, const Polynomial& f,
                                       uint64_t seed = 13, size_t targets = 50) {
  size_t n = g.codomain.size() - 1;   // identity part
  size_t m = g.coords.size() - n - 2; // y-block before s, t
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> px(-8, 8), pv(8, 40);
  for (size_t k = 0; k < targets; ++k) {
    std::vector<Rational> x0;
    for (size_t i = 0; i < n; ++i) x0.emplace_back(px(rng), 8);
    Rational v(pv(rng), 8);

    std::map<std::string, Term> subst;
    for (size_t i = 0; i < n; ++i) subst[g.coords[i]] = tconst(x0[i]);
    auto root = detail::grid_scan(m, 8, [&](const std::vector<Rational>& y) {
      std::map<std::string, Rational> at;
      for (size_t i = 0; i < n; ++i) at[g.coords[i]] = x0[i];
      for (size_t j = 0; j < m; ++j) at[g.coords[n + j]] = y[j];
      return eval_poly(f, at) == 0;
    });
    if (root) {
      // evaluate the map itself at the preimage and require an exact hit
      std::map<std::string, Rational> at;
      for (size_t i = 0; i < n; ++i) at[g.coords[i]] = x0[i];
      for (size_t j = 0; j < m; ++j) at[g.coords[n + j]] = (*root)[j];
      at[g.coords[n + m]] = v;
      at[g.coords[n + m + 1]] = Rational(0);
      bool ok = true;
      for (size_t i = 0; i < n && ok; ++i) ok = eval_poly(g.components[i], at) == x0[i];
      if (ok) ok = eval_poly(g.components[n], at) == v;
      if (!ok)
        return {Truth::Unknown, "map disagrees with preimage at " + detail::pt_str(x0)};
      continue;
    }
    // no root: certify the target out of reach if f² has an even-power floor
    Polynomial fy = expand(substitute(f, subst));
    Polynomial fy2 = expand(tmul(poly_to_term(fy), poly_to_term(fy)));
    Rational c = detail::constant_of(fy2);
    Polynomial rest = fy2 - Polynomial::constant(c);
    if (c > 0 && detail::even_nonneg(rest) && v > Rational(1) / (4 * c))
      return {Truth::False,
              "target (" + detail::pt_str(x0) + ", " + rat_str(v) + ") unreachable"};
    return {Truth::Unknown, "no preimage and no floor certificate"};
  }
  return {Truth::True, std::to_string(targets) + " targets hit"};
}

// closure containment: every sampled base point (x0, 0, 0) must receive a
// trail of T-members (x0, 2⁻ᵏ·u, 2⁻ᵏ) converging to it; a base point is
// separated when f's exact range over the x-window × u-cube excludes 0
inline ProbeOutcome probe_closure_containment(const SetDescription& T, const Polynomial& f,
                                              size_t n, size_t m, uint64_t seed = 14,
                                              size_t samples = 50) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> px(-8, 8);
  for (size_t k = 0; k < samples; ++k) {
    std::vector<Rational> x0;
    for (size_t i = 0; i < n; ++i) x0.emplace_back(px(rng), 8);
    auto root = detail::grid_scan(m, 8, [&](const std::vector<Rational>& u) {
      Rational norm2(0);
      for (const auto& c : u) norm2 += c * c;
      if (norm2 > 1) return false;
      std::map<std::string, Rational> at;
      for (size_t i = 0; i < n; ++i) at["x" + std::to_string(i + 1)] = x0[i];
      for (size_t j = 0; j < m; ++j) at["y" + std::to_string(j + 1)] = u[j];
      return eval_poly(f, at) == 0;
    });
    if (root) {
      for (int e = 2; e <= 7; ++e) {
        Rational y0(1, 1 << e);
        std::vector<Rational> pt = x0;
        for (const auto& u : *root) pt.push_back(u * y0);
        pt.push_back(y0);
        if (!set_member(T, pt))
          return {Truth::Unknown, "trail point " + detail::pt_str(pt) + " not in T"};
      }
      continue;
    }
    detail::RatBox box;
    for (size_t i = 0; i < n; ++i)
      box["x" + std::to_string(i + 1)] = {x0[i] - Rational(1, 64), x0[i] + Rational(1, 64)};
    for (size_t j = 0; j < m; ++j)
      box["y" + std::to_string(j + 1)] = {Rational(-1), Rational(1)};
    detail::RatIval r = detail::poly_range(f, box);
    if (r.first > 0 || r.second < 0)
      return {Truth::False, "base point " + detail::pt_str(x0) + " separated from T"};
    return {Truth::Unknown, "no trail and no separation at " + detail::pt_str(x0)};
  }
  return {Truth::True, std::to_string(samples) + " base points reached"};
}

// Hausdorff distance zero: both directions — every sampled member of one set
// has the other set within 2⁻⁶ (exact membership short-circuits the query)
inline ProbeOutcome probe_hausdorff_zero(const SetDescription& A, const SetDescription& B,
                                         uint64_t seed = 15, size_t samples = 50,
                                         OracleBudget budget = {}) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> pick(-64, 64);
  auto direction = [&](const SetDescription& from,
                       const SetDescription& to) -> std::optional<ProbeOutcome> {
    size_t found = 0;
    for (size_t k = 0; k < samples * 40 && found < samples; ++k) {
      std::vector<Rational> pt;
      for (size_t i = 0; i < from.ambient_dim; ++i) pt.emplace_back(pick(rng), 64);
      if (!set_member(from, pt)) continue;
      ++found;
      if (set_member(to, pt)) continue;
      Truth t = detail::ball_meets(to, pt, budget);
      if (t == Truth::False)
        return ProbeOutcome{Truth::False,
                            detail::pt_str(pt) + " is at distance >= 2^-6 from the other set"};
      if (t == Truth::Unknown)
        return ProbeOutcome{Truth::Unknown, "undecided ball at " + detail::pt_str(pt)};
    }
    if (found == 0) return ProbeOutcome{Truth::Unknown, "no members sampled"};
    return std::nullopt;
  };
  if (auto bad = direction(A, B)) return *bad;
  if (auto bad = direction(B, A)) return *bad;
  return {Truth::True, "all sampled members mutually within 2^-6"};
}

// local support: positivity somewhere (exact grid witness, cross-checked
// against the emitted upper set) vs nonpositivity everywhere (even-power
// ceiling certificate: -f ≥ c ≥ 0 over all of R^n)
inline ProbeOutcome probe_local_support(const SetDescription& T, const Polynomial& f,
                                        size_t n) {
  auto hit = detail::grid_scan(n, 8, [&](const std::vector<Rational>& x) {
    std::map<std::string, Rational> at;
    for (size_t i = 0; i < n; ++i) at["x" + std::to_string(i + 1)] = x[i];
    return eval_poly(f, at) > 0;
  });
  if (hit) {
    std::vector<Rational> pt = *hit;
    pt.push_back(Rational(1, 64));
    if (!set_member(T, pt))
      return {Truth::Unknown, "witness " + detail::pt_str(pt) + " rejected by T"};
    return {Truth::True, "f positive at " + detail::pt_str(*hit)};
  }
  Polynomial neg = Polynomial::constant(0) - f;
  Rational c = detail::constant_of(neg);
  Polynomial rest = neg - Polynomial::constant(c);
  if (c >= 0 && detail::even_nonneg(rest))
    return {Truth::False, "f <= " + rat_str(-c) + " everywhere"};
  return {Truth::Unknown, "no witness and no ceiling certificate"};
}

// diameter: exact max pairwise squared distance over grid members (a lower
// bound on the true diameter; the instances place their extremes on the grid)
inline ProbeOutcome probe_diameter(const SetDescription& s, const Rational& d) {
  long den = s.ambient_dim <= 1 ? 16 : 8;
  std::vector<std::vector<Rational>> members;
  detail::grid_scan(s.ambient_dim, den, [&](const std::vector<Rational>& pt) {
    if (set_member(s, pt)) members.push_back(pt);
    return false;
  });
  if (members.empty()) return {Truth::True, "no members sampled (empty set has diameter 0)"};
  Rational best(0);
  for (size_t i = 0; i < members.size(); ++i)
    for (size_t j = i + 1; j < members.size(); ++j) {
      Rational d2(0);
      for (size_t k = 0; k < members[i].size(); ++k) {
        Rational t = members[i][k] - members[j][k];
        d2 += t * t;
      }
      if (d2 > best) best = d2;
    }
  if (best <= d * d)
    return {Truth::True, "max sampled distance^2 = " + rat_str(best)};
  return {Truth::False, "sampled pair at distance^2 = " + rat_str(best) +
                            " > " + rat_str(d * d)};
}

namespace detail {

struct Disk {
  Rational cx, cy, r2;
  bool contains(const Rational& x, const Rational& y) const {
    return (x - cx) * (x - cx) + (y - cy) * (y - cy) <= r2;
  }
};

inline Disk disk2(const std::pair<Rational, Rational>& a, const std::pair<Rational, Rational>& b) {
  Rational cx = (a.first + b.first) / 2, cy = (a.second + b.second) / 2;
  Rational dx = a.first - cx, dy = a.second - cy;
  return {cx, cy, dx * dx + dy * dy};
}

inline std::optional<Disk> circumdisk(const std::pair<Rational, Rational>& a,
                                      const std::pair<Rational, Rational>& b,
                                      const std::pair<Rational, Rational>& c) {
  Rational ax = b.first - a.first, ay = b.second - a.second;
  Rational bx = c.first - a.first, by = c.second - a.second;
  Rational det = 2 * (ax * by - ay * bx);
  if (det == 0) return std::nullopt;
  Rational d1 = ax * ax + ay * ay, d2 = bx * bx + by * by;
  Rational ux = (by * d1 - ay * d2) / det, uy = (ax * d2 - bx * d1) / det;
  return Disk{a.first + ux, a.second + uy, ux * ux + uy * uy};
}

inline Disk trivial_disk(const std::vector<std::pair<Rational, Rational>>& r) {
  if (r.empty()) return {Rational(0), Rational(0), Rational(-1)};
  if (r.size() == 1) return {r[0].first, r[0].second, Rational(0)};
  if (r.size() == 2) return disk2(r[0], r[1]);
  if (auto d = circumdisk(r[0], r[1], r[2])) return *d;
  // collinear: the widest pair disk covers the third point
  Disk best{Rational(0), Rational(0), Rational(-1)};
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = i + 1; j < 3; ++j) {
      Disk d = disk2(r[i], r[j]);
      if (d.r2 > best.r2) best = d;
    }
  return best;
}

inline Disk welzl(std::vector<std::pair<Rational, Rational>>& pts, size_t n,
                  std::vector<std::pair<Rational, Rational>> rim) {
  if (n == 0 || rim.size() == 3) return trivial_disk(rim);
  Disk d = welzl(pts, n - 1, rim);
  const auto& p = pts[n - 1];
  if (d.r2 >= 0 && d.contains(p.first, p.second)) return d;
  rim.push_back(p);
  return welzl(pts, n - 1, std::move(rim));
}

}  // namespace detail

// radius: exact smallest enclosing disk of grid members (planar sets only),
// compared against r without tolerance
inline ProbeOutcome probe_radius(const SetDescription& s, const Rational& r,
                                 uint64_t seed = 16) {
  if (s.ambient_dim != 2) return {Truth::Unknown, "radius probe is planar"};
  std::vector<std::pair<Rational, Rational>> members;
  detail::grid_scan(2, 8, [&](const std::vector<Rational>& pt) {
    if (set_member(s, pt)) members.emplace_back(pt[0], pt[1]);
    return false;
  });
  if (members.empty()) return {Truth::True, "no members sampled (empty set has radius 0)"};
  std::mt19937_64 rng(seed);
  std::shuffle(members.begin(), members.end(), rng);
  detail::Disk d = detail::welzl(members, members.size(), {});
  if (d.r2 <= r * r)
    return {Truth::True, "enclosing radius^2 = " + rat_str(d.r2)};
  return {Truth::False, "enclosing radius^2 = " + rat_str(d.r2) + " > " +
                            rat_str(r * r)};
}

}  // namespace realhier
