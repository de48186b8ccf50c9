#pragma once
// Truth decision over bounded boxes: recursive branch-and-prune per quantifier
// group. Box-valued environments mean "uniformly for every instantiation", so
// verdicts compose: an exists group succeeds on an exact witness (or a box its
// whole remainder holds on) and fails on a covering whose every piece refutes
// the remainder; forall groups are the mirror image. Equality matrices are
// proven true only through the all-exact evaluation path.

#include <algorithm>
#include <optional>

#include "realhier/interval.hpp"
#include "realhier/json_io.hpp"
#include "realhier/normalize.hpp"

namespace realhier {

enum class Truth { False, Unknown, True };

inline const char* truth_str(Truth t) {
  return t == Truth::True ? "true" : (t == Truth::False ? "false" : "unknown");
}

struct OracleBudget {
  unsigned max_depth = 18;
  size_t max_boxes = 200000;
  Dyadic min_width = Dyadic(1, -20);
};

struct OracleConfig {
  OracleBudget budget;
  std::optional<Rational> clip_radius;  // box for otherwise-unbounded variables
  // per-variable clip overrides, consulted before clip_radius
  std::map<std::string, std::pair<Rational, Rational>> var_boxes;
  long fbits = kIntervalFracBits;
  // exact points tried first at each exists group (forall groups use them as
  // counterexample candidates); entries may bind any subset of variables
  std::vector<std::map<std::string, Rational>> hints;
};

struct OracleVerdict {
  Truth value = Truth::Unknown;
  Json certificate;
  size_t boxes_explored = 0;
  unsigned max_depth_reached = 0;
};

struct EquivReport {
  std::vector<std::pair<Truth, Truth>> pairs;
  size_t agreements = 0, disagreements = 0, undecided = 0;
};

namespace detail {

// denominators the witness polish snaps box centers to
inline const std::vector<long>& snap_denominators() {
  static const std::vector<long> q = {3,  5,  6,  7,  9,  10, 11,  12,  13,  15,
                                      20, 25, 40, 50, 80, 100, 200, 500, 1000};
  return q;
}

struct OracleGroup {
  bool exists = true;
  std::vector<std::string> vars;
};

struct OraclePrep {
  std::vector<OracleGroup> groups;
  std::map<std::string, DyIval> base_box;
  Formula matrix;  // negation-free, guards folded in
};

struct BudgetOut {};

class OracleRun {
 public:
  OracleRun(const Sentence& s, const OracleConfig& cfg) : cfg_(cfg) { prepare(s); }

  OracleVerdict run() {
    OracleVerdict v;
    try {
      Json cert;
      Truth t = search(0, Env{}, &cert);
      v.value = t;
      if (t == Truth::Unknown) {
        v.certificate = Json{{"kind", "undecided"}, {"reason", "resolution limit"}};
        if (!first_gap_.is_null()) v.certificate["gap"] = first_gap_;
      } else {
        v.certificate = std::move(cert);
      }
    } catch (const BudgetOut&) {
      v.value = Truth::Unknown;
      v.certificate = Json{{"kind", "undecided"},
                           {"reason", "budget exhausted"},
                           {"boxes", boxes_},
                           {"max_depth", cfg_.budget.max_depth}};
    }
    v.boxes_explored = boxes_;
    v.max_depth_reached = depth_seen_;
    return v;
  }

 private:
  struct Env {
    std::map<std::string, Rational> exact;
    std::map<std::string, DyIval> box;
  };

  // ---------------------------------------------------------- preparation

  void prepare(const Sentence& s) {
    check_well_formed(s);
    Formula m = s.matrix;
    if (!is_quantifier_free(m)) throw WrongShape("oracle: prenex the sentence first");

    size_t total_vars = 0;
    for (const auto& blk : s.prefix) total_vars += blk.vars.size();
    if (total_vars > 8) throw TooManyBlocks("oracle: more than 8 variables");

    // base boxes outermost-first: guard bounds may reference earlier variables
    for (const auto& blk : s.prefix) {
      if (is_exotic(blk.kind))
        throw ExoticQuantifierPresent("oracle: expand exotic quantifiers first");
      for (const auto& v : blk.vars) set_base_box(v, blk.domain);
    }
    // innermost-first guard folding so outer guards wrap the full remainder
    for (size_t i = s.prefix.size(); i-- > 0;) {
      const auto& blk = s.prefix[i];
      std::vector<Formula> gs;
      for (const auto& v : blk.vars)
        for (auto& g : guard_atoms(v, blk.domain)) gs.push_back(std::move(g));
      if (gs.empty()) continue;
      if (blk.kind == QKind::Exists) {
        gs.push_back(m);
        m = fand_all(gs);
      } else {
        for (auto& g : gs) g = eliminate_negation(fnot(g));
        gs.push_back(m);
        m = for_all(gs);
      }
    }
    prep_.matrix = eliminate_negation(m);
    scan_atoms(prep_.matrix);

    for (const auto& blk : s.prefix) {
      bool ex = blk.kind == QKind::Exists;
      if (prep_.groups.empty() || prep_.groups.back().exists != ex)
        prep_.groups.push_back({ex, {}});
      for (const auto& v : blk.vars) prep_.groups.back().vars.push_back(v);
    }
    if (prep_.groups.size() > 3) throw TooManyBlocks("oracle: more than 3 quantifier groups");
  }

  Dyadic clip_lo(const std::string& v) const {
    if (auto it = cfg_.var_boxes.find(v); it != cfg_.var_boxes.end())
      return dy_from_rational_down(it->second.first, cfg_.fbits);
    if (!cfg_.clip_radius) throw UnboundedDomain("oracle: unbounded variable without clip box");
    return dy_from_rational_down(-*cfg_.clip_radius, cfg_.fbits);
  }
  Dyadic clip_hi(const std::string& v) const {
    if (auto it = cfg_.var_boxes.find(v); it != cfg_.var_boxes.end())
      return dy_from_rational_up(it->second.second, cfg_.fbits);
    if (!cfg_.clip_radius) throw UnboundedDomain("oracle: unbounded variable without clip box");
    return dy_from_rational_up(*cfg_.clip_radius, cfg_.fbits);
  }

  // bound term evaluated over the base boxes of earlier variables
  DyIval bound_range(const Term& t) { return eval_term_interval(t, prep_.base_box, cfg_.fbits); }

  void set_base_box(const std::string& v, const Domain& d) {
    DyIval b;
    switch (d.kind) {
      case Domain::AllReals: b = DyIval(clip_lo(v), clip_hi(v)); break;
      case Domain::OpenUnit:
      case Domain::ClosedUnit: b = DyIval(Dyadic(-1), Dyadic(1)); break;
      case Domain::Guarded:
        b.lo = d.lower ? bound_range(d.lower).lo : clip_lo(v);
        b.hi = d.upper ? bound_range(d.upper).hi : clip_hi(v);
        if (dy_cmp(b.lo, b.hi) > 0) b.hi = b.lo;  // empty guard: keep a point box
        break;
    }
    // an explicit window narrows any domain, not just the unbounded ones
    if (auto it = cfg_.var_boxes.find(v); it != cfg_.var_boxes.end()) {
      Dyadic ulo = dy_from_rational_down(it->second.first, cfg_.fbits);
      Dyadic uhi = dy_from_rational_up(it->second.second, cfg_.fbits);
      if (dy_cmp(ulo, b.lo) > 0) b.lo = ulo;
      if (dy_cmp(uhi, b.hi) < 0) b.hi = uhi;
      if (dy_cmp(b.lo, b.hi) > 0) b.hi = b.lo;
    }
    prep_.base_box.emplace(v, std::move(b));
  }

  // guard atoms the box alone does not capture: strict edges and term bounds
  std::vector<Formula> guard_atoms(const std::string& v, const Domain& d) {
    std::vector<Formula> gs;
    auto lower = [&](const Term& lo, bool strict) {
      gs.push_back(fatom0(bound_lhs(v, lo), strict ? Relop::GT : Relop::GE));
    };
    auto upper = [&](const Term& hi, bool strict) {
      gs.push_back(fatom0(bound_lhs(v, hi), strict ? Relop::LT : Relop::LE));
    };
    switch (d.kind) {
      case Domain::AllReals:
      case Domain::ClosedUnit: return gs;
      case Domain::OpenUnit:
        lower(tconst(-1), true);
        upper(tconst(1), true);
        return gs;
      case Domain::Guarded: {
        bool lo_const = d.lower && d.lower->kind == TermKind::Const;
        bool hi_const = d.upper && d.upper->kind == TermKind::Const;
        if (d.lower && (!lo_const || d.lower_strict)) lower(d.lower, d.lower_strict);
        if (d.upper && (!hi_const || d.upper_strict)) upper(d.upper, d.upper_strict);
        return gs;
      }
    }
    return gs;
  }

  void scan_atoms(const Formula& f) {
    if (!f) return;
    if (f->kind == FKind::Atom) {
      if (f->op == Relop::EQ) has_eq_ = true;
      return;
    }
    scan_atoms(f->a);
    scan_atoms(f->b);
  }

  // ---------------------------------------------------------- matrix eval

  static bool holds(Relop op, const Rational& v) {
    switch (op) {
      case Relop::LT: return v < 0;
      case Relop::LE: return v <= 0;
      case Relop::EQ: return v == 0;
      case Relop::GE: return v >= 0;
      case Relop::GT: return v > 0;
      case Relop::NE: return v != 0;
    }
    return false;
  }

  Truth eval_exact(const Formula& f, const std::map<std::string, Rational>& pt) const {
    if (f->kind == FKind::Atom) {
      Rational v = eval_term(f->lhs, pt);
      return holds(f->op, v) ? Truth::True : Truth::False;
    }
    Truth a = eval_exact(f->a, pt), b = eval_exact(f->b, pt);
    if (f->kind == FKind::And) return std::min(a, b);
    if (f->kind == FKind::Or) return std::max(a, b);
    throw WrongShape("oracle matrix must be negation-free");
  }

  Truth eval_atom_interval(Relop op, const DyIval& iv) const {
    switch (op) {
      case Relop::LT:
        if (iv.hi.man < 0) return Truth::True;
        if (iv.lo.man >= 0) return Truth::False;
        return Truth::Unknown;
      case Relop::LE:
        if (iv.hi.man <= 0) return Truth::True;
        if (iv.lo.man > 0) return Truth::False;
        return Truth::Unknown;
      case Relop::EQ:
        if (!iv_contains_zero(iv)) return Truth::False;
        if (iv.lo.man == 0 && iv.hi.man == 0) return Truth::True;
        return Truth::Unknown;
      case Relop::GE:
        if (iv.lo.man >= 0) return Truth::True;
        if (iv.hi.man < 0) return Truth::False;
        return Truth::Unknown;
      case Relop::GT:
        if (iv.lo.man > 0) return Truth::True;
        if (iv.hi.man <= 0) return Truth::False;
        return Truth::Unknown;
      case Relop::NE:
        if (!iv_contains_zero(iv)) return Truth::True;
        if (iv.lo.man == 0 && iv.hi.man == 0) return Truth::False;
        return Truth::Unknown;
    }
    return Truth::Unknown;
  }

  Truth eval_mixed(const Formula& f, const std::map<std::string, DyIval>& env) const {
    if (f->kind == FKind::Atom) {
      DyIval iv = eval_term_interval(f->lhs, env, cfg_.fbits);
      return eval_atom_interval(f->op, iv);
    }
    Truth a = eval_mixed(f->a, env), b = eval_mixed(f->b, env);
    if (f->kind == FKind::And) return std::min(a, b);
    if (f->kind == FKind::Or) return std::max(a, b);
    throw WrongShape("oracle matrix must be negation-free");
  }

  Truth eval_matrix(const Env& env, Json* cert) const {
    Truth t;
    if (env.box.empty()) {
      t = eval_exact(prep_.matrix, env.exact);
    } else {
      std::map<std::string, DyIval> ivenv = env.box;
      for (const auto& [v, q] : env.exact) ivenv.emplace(v, iv_from_rational(q, cfg_.fbits));
      t = eval_mixed(prep_.matrix, ivenv);
    }
    if (cert && t != Truth::Unknown)
      *cert = Json{{"kind", "matrix"}, {"value", truth_str(t)}};
    return t;
  }

  // --------------------------------------------------------------- search

  Truth search(size_t gi, const Env& env, Json* cert) {
    if (gi == prep_.groups.size()) return eval_matrix(env, cert);
    const OracleGroup& g = prep_.groups[gi];
    Truth shortcut = g.exists ? Truth::True : Truth::False;

    // caller-provided hints first: exact, cheap to try, certificate-grade.
    // a hint may bind only part of a merged group (reduction passes know the
    // values of the variables they introduce, not of the original ones); the
    // unbound remainder is box-searched under the pinned values.  only a
    // shortcut verdict is usable from such a restricted search.
    for (const auto& hint : cfg_.hints) {
      Env e2 = env;
      std::vector<std::string> remaining;
      bool ok = true;
      size_t bound = 0;
      for (const auto& v : g.vars) {
        auto it = hint.find(v);
        if (it == hint.end()) {
          remaining.push_back(v);
          continue;
        }
        if (!in_base_box(v, it->second)) {
          ok = false;
          break;
        }
        e2.exact[v] = it->second;
        ++bound;
      }
      if (!ok || bound == 0) continue;
      if (remaining.empty()) {
        if (Truth t = try_point(gi, g, e2, shortcut, cert); t == shortcut) return t;
      } else if (search_boxes(gi, g, remaining, e2, nullptr) == shortcut) {
        if (cert) search_boxes(gi, g, remaining, e2, cert);
        return shortcut;
      }
    }

    return search_boxes(gi, g, g.vars, env, cert);
  }

  // breadth-first box exploration over `active` (normally the whole group):
  // shallow witnesses surface before deep refinement, so one stubborn subtree
  // cannot starve the rest
  Truth search_boxes(size_t gi, const OracleGroup& g, const std::vector<std::string>& active,
                     const Env& env, Json* cert) {
    Truth shortcut = g.exists ? Truth::True : Truth::False;
    Truth covering = g.exists ? Truth::False : Truth::True;

    struct NodeRec {
      std::vector<DyIval> box;
      unsigned depth = 0;
      std::string split_var;
      Dyadic mid;
      size_t kid[2] = {0, 0};  // 0 = leaf (node 0 is the root, never a child)
      Json leaf;
    };
    std::vector<NodeRec> nodes(1);
    for (const auto& v : active) nodes[0].box.push_back(prep_.base_box.at(v));
    std::vector<size_t> queue{0};
    bool gap = false;
    size_t stop_at = std::numeric_limits<size_t>::max();

    for (size_t qi = 0; qi < queue.size(); ++qi) {
      if (qi >= stop_at) break;  // covering is dead and the witness hunt has had its run
      size_t id = queue[qi];
      bump_box(nodes[id].depth);

      Env boxed = env;
      for (size_t i = 0; i < active.size(); ++i) boxed.box[active[i]] = nodes[id].box[i];
      Truth uniform = search(gi + 1, boxed, nullptr);
      if (uniform == covering) {
        nodes[id].leaf = box_node(active, nodes[id].box);
        nodes[id].leaf["verdict"] = truth_str(covering);
        continue;
      }
      // one exact run at the box center serves three purposes: it is the
      // witness attempt, it detects blur inherited from enclosing boxes
      // (Unknown at a point means no leaf under this box can ever become
      // uniform), and otherwise it licenses a split
      Env ec = env;
      for (size_t i = 0; i < active.size(); ++i)
        ec.exact[active[i]] = dy_to_rational(iv_mid(nodes[id].box[i]));
      Truth at_center = search(gi + 1, ec, nullptr);
      if (at_center == shortcut) {
        if (cert) {
          Json sub;
          search(gi + 1, ec, &sub);
          *cert = point_cert(g, ec, std::move(sub));
        }
        return shortcut;
      }
      for (const auto& cand : candidate_points(gi, nodes[id].box, nodes[id].depth)) {
        Env e2 = env;
        for (size_t i = 0; i < active.size(); ++i) e2.exact[active[i]] = cand[i];
        if (Truth t = try_point(gi, g, e2, shortcut, cert); t == shortcut) return t;
      }
      if (at_center == Truth::Unknown) {
        // a point the enclosing boxes leave undecided can never sit inside a
        // uniform leaf, so no covering of this call can succeed; keep
        // splitting (a witness may hide away from the center) but only for a
        // bounded stretch, since subtrees blurred by an outer box everywhere
        // would otherwise split to the resolution floor
        gap = true;
        if (first_gap_.is_null()) first_gap_ = box_node(active, nodes[id].box);
        if (stop_at == std::numeric_limits<size_t>::max()) stop_at = qi + 128;
      }

      size_t dim = split_dim(nodes[id].box);
      if (nodes[id].depth >= cfg_.budget.max_depth ||
          dy_cmp(iv_width(nodes[id].box[dim]), cfg_.budget.min_width) < 0) {
        gap = true;  // unresolved at resolution limit; keep hunting elsewhere
        if (first_gap_.is_null()) first_gap_ = box_node(active, nodes[id].box);
        continue;
      }
      Dyadic mid = iv_mid(nodes[id].box[dim]);
      NodeRec left{nodes[id].box, nodes[id].depth + 1};
      NodeRec right{nodes[id].box, nodes[id].depth + 1};
      left.box[dim].hi = mid;
      right.box[dim].lo = mid;
      nodes[id].split_var = active[dim];
      nodes[id].mid = mid;
      nodes[id].kid[0] = nodes.size();
      nodes.push_back(std::move(left));
      nodes[id].kid[1] = nodes.size();
      nodes.push_back(std::move(right));
      queue.push_back(nodes[id].kid[0]);
      queue.push_back(nodes[id].kid[1]);
    }

    if (gap) return Truth::Unknown;
    if (cert)
      *cert = Json{{"kind", "covering"},
                   {"for", truth_str(covering)},
                   {"vars", active},
                   {"tree", assemble_tree(nodes, 0)}};
    return covering;
  }

  // test one exact point; certificates are built only on the success re-run
  Truth try_point(size_t gi, const OracleGroup& g, const Env& e2, Truth shortcut, Json* cert) {
    if (search(gi + 1, e2, nullptr) != shortcut) return Truth::Unknown;
    if (cert) {
      Json sub;
      search(gi + 1, e2, &sub);
      *cert = point_cert(g, e2, std::move(sub));
    }
    return shortcut;
  }

  template <typename Nodes>
  static Json assemble_tree(const Nodes& nodes, size_t id) {
    if (nodes[id].kid[0] == 0) return nodes[id].leaf;
    return Json{{"split", nodes[id].split_var},
                {"at", dy_str(nodes[id].mid)},
                {"left", assemble_tree(nodes, nodes[id].kid[0])},
                {"right", assemble_tree(nodes, nodes[id].kid[1])}};
  }

  // candidate exact points beyond the plain center (which the search loop
  // probes itself): box corners and, when the box is narrow, centers snapped
  // to small denominators (hits engineered rational roots)
  std::vector<std::vector<Rational>> candidate_points(size_t gi, const std::vector<DyIval>& box,
                                                      unsigned depth) {
    const OracleGroup& g = prep_.groups[gi];
    std::vector<std::vector<Rational>> cands;
    std::vector<Rational> center;
    center.reserve(box.size());
    for (const auto& b : box) center.push_back(dy_to_rational(iv_mid(b)));
    // snapping targets engineered rational witnesses (roots of equalities,
    // anchor constants of strict reductions); only worth it at the innermost
    // group, where a hit ends the search
    if (gi + 1 != prep_.groups.size()) return cands;
    if (depth < 4) return cands;  // snap only once boxes are reasonably small

    Dyadic snap_width(1, -3);
    for (const auto& b : box)
      if (dy_cmp(iv_width(b), snap_width) > 0) return cands;

    std::vector<std::vector<Rational>> per_dim;
    size_t product = 1;
    for (size_t i = 0; i < box.size(); ++i) {
      const Rational c = center[i];
      Rational lo = dy_to_rational(box[i].lo), hi = dy_to_rational(box[i].hi);
      // collect in denominator order: the smallest denominators that land in
      // the box are the best guesses, and narrowing boxes retire them in favor
      // of finer ones; dyadic values are skipped because bisection corners and
      // centers reach those on their own
      std::vector<Rational> snaps;
      for (long q : snap_denominators()) {
        if (snaps.size() >= 6) break;
        Int fl = detail::floor_div(rat_num(c) * q, rat_den(c));
        for (int d = 0; d <= 1; ++d) {
          Rational v(fl + d, q);
          Int den = rat_den(v);
          if ((den & (den - 1)) == 0) continue;
          if (v >= lo && v <= hi && v != lo && v != hi &&
              std::find(snaps.begin(), snaps.end(), v) == snaps.end())
            snaps.push_back(v);
        }
      }
      // box corners always make the cut: bisection lands on dyadic witnesses
      std::vector<Rational> vals{lo};
      if (hi != lo) vals.push_back(hi);
      vals.insert(vals.end(), snaps.begin(), snaps.end());
      product *= vals.size();
      per_dim.push_back(std::move(vals));
    }

    size_t cap = std::min<size_t>(product, 256);
    std::vector<size_t> idx(per_dim.size(), 0);
    for (size_t n = 0; n < cap; ++n) {
      std::vector<Rational> pt;
      pt.reserve(per_dim.size());
      for (size_t i = 0; i < per_dim.size(); ++i) pt.push_back(per_dim[i][idx[i]]);
      if (pt != center) cands.push_back(std::move(pt));
      for (size_t i = per_dim.size(); i-- > 0;) {
        if (++idx[i] < per_dim[i].size()) break;
        idx[i] = 0;
      }
    }
    return cands;
  }

  // ------------------------------------------------------------- plumbing

  bool in_base_box(const std::string& v, const Rational& q) const {
    const DyIval& b = prep_.base_box.at(v);
    return dy_to_rational(b.lo) <= q && q <= dy_to_rational(b.hi);
  }

  static Json box_node(const std::vector<std::string>& vars, const std::vector<DyIval>& box) {
    Json b = Json::object();
    for (size_t i = 0; i < vars.size(); ++i)
      b[vars[i]] = Json::array({dy_str(box[i].lo), dy_str(box[i].hi)});
    return Json{{"box", std::move(b)}};
  }

  static Json point_cert(const OracleGroup& g, const Env& env, Json sub) {
    Json pt = Json::object();
    for (const auto& v : g.vars) pt[v] = rat_str(env.exact.at(v));
    return Json{{"kind", "point"},
                {"exists", g.exists},
                {"point", std::move(pt)},
                {"next", std::move(sub)}};
  }

  static size_t split_dim(const std::vector<DyIval>& box) {
    size_t dim = 0;
    for (size_t i = 1; i < box.size(); ++i)
      if (dy_cmp(iv_width(box[i]), iv_width(box[dim])) > 0) dim = i;
    return dim;
  }

  void bump_box(unsigned depth) {
    if (++boxes_ > cfg_.budget.max_boxes) throw BudgetOut{};
    depth_seen_ = std::max(depth_seen_, depth);
  }

  OracleConfig cfg_;
  OraclePrep prep_;
  bool has_eq_ = false;
  size_t boxes_ = 0;
  unsigned depth_seen_ = 0;
  Json first_gap_;
};

}  // namespace detail

inline OracleVerdict decide(const Sentence& s, const OracleConfig& cfg) {
  return detail::OracleRun(s, cfg).run();
}

inline OracleVerdict decide(const Sentence& s, const OracleBudget& budget = {}) {
  OracleConfig cfg;
  cfg.budget = budget;
  return decide(s, cfg);
}

inline void record_pair(EquivReport& r, Truth a, Truth b) {
  r.pairs.emplace_back(a, b);
  if (a == Truth::Unknown || b == Truth::Unknown)
    ++r.undecided;
  else if (a == b)
    ++r.agreements;
  else
    ++r.disagreements;
}

inline EquivReport check_equiv(const Sentence& a, const Sentence& b, const OracleConfig& cfg) {
  EquivReport r;
  record_pair(r, decide(a, cfg).value, decide(b, cfg).value);
  return r;
}

inline Json verdict_to_json(const OracleVerdict& v) {
  return Json{{"value", truth_str(v.value)},
              {"boxes_explored", v.boxes_explored},
              {"max_depth", v.max_depth_reached},
              {"certificate", v.certificate}};
}

}  // namespace realhier
