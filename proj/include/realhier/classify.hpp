#pragma once
// Hierarchy classification and the degree-bound tables.

#include <optional>

#include "realhier/ast.hpp"

namespace realhier {

enum class Boundedness { Unbounded, BoundedOpen, BoundedClosed, Mixed };

struct Signature {
  unsigned level = 1;              // k: 1 + alternations of merged standard blocks
  QKind leading = QKind::Exists;   // first standard block (Exists for ground sentences)
  bool has_lt = false, has_le = false, has_eq = false;
  bool strict = false;             // negation-free matrix, only </> atoms
  Boundedness bounded = Boundedness::Unbounded;
  bool exotic = false;
};

namespace detail {
inline void collect_relops(const Formula& f, bool& lt, bool& le, bool& eq, bool& ne) {
  if (!f) return;
  if (f->kind == FKind::Atom) {
    switch (f->op) {
      case Relop::LT:
      case Relop::GT: lt = true; break;
      case Relop::LE:
      case Relop::GE: le = true; break;
      case Relop::EQ: eq = true; break;
      case Relop::NE: lt = true; ne = true; break;  // != reads as (< or >), but is not strict-form
    }
    return;
  }
  collect_relops(f->a, lt, le, eq, ne);
  collect_relops(f->b, lt, le, eq, ne);
}
}  // namespace detail

inline Signature classify(const Sentence& s) {
  Signature sig;
  bool has_ne = false;
  detail::collect_relops(s.matrix, sig.has_lt, sig.has_le, sig.has_eq, has_ne);
  sig.strict = is_negation_free(s.matrix) && !has_ne && !sig.has_le && !sig.has_eq;

  bool any_open = false, any_closed = false, any_all = false, any_guard = false;
  std::optional<QKind> prev;
  unsigned alternations = 0;
  bool have_leading = false;
  for (const auto& blk : s.prefix) {
    switch (blk.domain.kind) {
      case Domain::AllReals: any_all = true; break;
      case Domain::OpenUnit: any_open = true; break;
      case Domain::ClosedUnit: any_closed = true; break;
      case Domain::Guarded: any_guard = true; break;
    }
    if (is_exotic(blk.kind)) {
      sig.exotic = true;
      continue;  // level counts standard blocks only
    }
    if (!have_leading) {
      sig.leading = blk.kind;
      have_leading = true;
    }
    if (prev && *prev != blk.kind) ++alternations;
    prev = blk.kind;
  }
  sig.level = alternations + 1;

  int kinds = (any_open ? 1 : 0) + (any_closed ? 1 : 0) + (any_all ? 1 : 0);
  if (any_guard || kinds > 1)
    sig.bounded = Boundedness::Mixed;
  else if (any_open)
    sig.bounded = Boundedness::BoundedOpen;
  else if (any_closed)
    sig.bounded = Boundedness::BoundedClosed;
  else
    sig.bounded = Boundedness::Unbounded;
  return sig;
}

// "Sigma_k" / "Pi_k"; errors on exotic prefixes.
inline std::string sigma_pi_label(const Signature& sig) {
  if (sig.exotic) throw ExoticUnclassifiable("sentence has exotic quantifier blocks");
  std::string head = sig.leading == QKind::Exists ? "Sigma_" : "Pi_";
  return head + std::to_string(sig.level);
}

inline std::string boundedness_str(Boundedness b) {
  switch (b) {
    case Boundedness::Unbounded: return "unbounded";
    case Boundedness::BoundedOpen: return "bounded-open";
    case Boundedness::BoundedClosed: return "bounded-closed";
    default: return "mixed";
  }
}

inline std::string signature_str(const Signature& sig) {
  std::string rels;
  if (sig.has_lt) rels += "<";
  if (sig.has_le) rels += (rels.empty() ? "" : ",") + std::string("<=");
  if (sig.has_eq) rels += (rels.empty() ? "" : ",") + std::string("=");
  std::string out = sigma_pi_label(sig) + ", relations={" + rels + "}, " +
                    boundedness_str(sig.bounded);
  if (sig.strict) out += ", strict";
  return out;
}

// ---------------------------------------------------------------- tables

enum class ClassVariant {
  SPOLY_LT, SPOLY_EQ, SPOLY_LE,
  BO_SPOLY_LT, BD_SPOLY_LT, BO_SPOLY_EQ, BD_SPOLY_EQ,
  PPOLY_LT, PPOLY_EQ, PPOLY_LE,
  BO_PPOLY_LT, BD_PPOLY_LT, BO_PPOLY_EQ, BD_PPOLY_EQ,
};

// Maximal matrix degree per complete-problem family; nullopt = not applicable.
inline std::optional<unsigned> degree_bound(ClassVariant v, bool k_even) {
  switch (v) {
    case ClassVariant::SPOLY_LT: return k_even ? 8u : 9u;
    case ClassVariant::SPOLY_EQ: return k_even ? std::optional<unsigned>{} : 4u;
    case ClassVariant::SPOLY_LE: return 8u;
    case ClassVariant::BO_SPOLY_LT:
    case ClassVariant::BD_SPOLY_LT: return k_even ? 16u : 8u;
    case ClassVariant::BO_SPOLY_EQ:
    case ClassVariant::BD_SPOLY_EQ: return k_even ? std::optional<unsigned>{} : 4u;
    case ClassVariant::PPOLY_LT: return k_even ? 9u : 8u;
    case ClassVariant::PPOLY_EQ: return k_even ? 4u : std::optional<unsigned>{};
    case ClassVariant::PPOLY_LE: return 8u;
    case ClassVariant::BO_PPOLY_LT:
    case ClassVariant::BD_PPOLY_LT: return k_even ? 8u : 16u;
    case ClassVariant::BO_PPOLY_EQ:
    case ClassVariant::BD_PPOLY_EQ: return k_even ? 4u : std::optional<unsigned>{};
  }
  return std::nullopt;
}

}  // namespace realhier
