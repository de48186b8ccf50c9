#pragma once
// JSON import/export for terms, formulas, sentences and polynomials.
// Rationals serialize as {"num": string, "den": string}; polynomial exponent
// vectors as sorted arrays of [var, exp] pairs.

#include <nlohmann/json.hpp>

#include "realhier/ast.hpp"
#include "realhier/poly.hpp"

namespace realhier {

using Json = nlohmann::ordered_json;

inline Json rational_to_json(const Rational& q) {
  return Json{{"num", rat_num(q).str()}, {"den", rat_den(q).str()}};
}

inline Rational json_to_rational(const Json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw Error("rational JSON must be {\"num\", \"den\"}");
  Int num(j.at("num").get<std::string>());
  Int den(j.at("den").get<std::string>());
  if (den == 0) throw Error("rational JSON has zero denominator");
  return Rational(num, den);
}

inline Json term_to_json(const Term& t) {
  if (!t) throw Error("term_to_json: null term");
  switch (t->kind) {
    case TermKind::Const: return Json{{"node", "const"}, {"value", rational_to_json(t->value)}};
    case TermKind::Var: return Json{{"node", "var"}, {"name", t->var}};
    case TermKind::Add:
      return Json{{"node", "add"}, {"lhs", term_to_json(t->a)}, {"rhs", term_to_json(t->b)}};
    case TermKind::Sub:
      return Json{{"node", "sub"}, {"lhs", term_to_json(t->a)}, {"rhs", term_to_json(t->b)}};
    case TermKind::Mul:
      return Json{{"node", "mul"}, {"lhs", term_to_json(t->a)}, {"rhs", term_to_json(t->b)}};
    case TermKind::Neg: return Json{{"node", "neg"}, {"arg", term_to_json(t->a)}};
    case TermKind::Pow:
      return Json{{"node", "pow"}, {"base", term_to_json(t->a)}, {"exp", t->exp}};
  }
  throw Error("term_to_json: bad kind");
}

inline Term json_to_term(const Json& j) {
  const std::string node = j.at("node").get<std::string>();
  if (node == "const") return tconst(json_to_rational(j.at("value")));
  if (node == "var") return tvar(j.at("name").get<std::string>());
  if (node == "add") return tadd(json_to_term(j.at("lhs")), json_to_term(j.at("rhs")));
  if (node == "sub") return tsub(json_to_term(j.at("lhs")), json_to_term(j.at("rhs")));
  if (node == "mul") return tmul(json_to_term(j.at("lhs")), json_to_term(j.at("rhs")));
  if (node == "neg") return tneg(json_to_term(j.at("arg")));
  if (node == "pow") return tpow(json_to_term(j.at("base")), j.at("exp").get<unsigned>());
  throw Error("json_to_term: unknown node '" + node + "'");
}

inline const char* qkind_name(QKind k) {
  switch (k) {
    case QKind::Exists: return "exists";
    case QKind::Forall: return "forall";
    case QKind::ExistsStar: return "existsS";
    case QKind::ForallStar: return "forallS";
    default: return "H";
  }
}

inline QKind qkind_from_name(const std::string& s) {
  if (s == "exists") return QKind::Exists;
  if (s == "forall") return QKind::Forall;
  if (s == "existsS") return QKind::ExistsStar;
  if (s == "forallS") return QKind::ForallStar;
  if (s == "H") return QKind::H;
  throw Error("unknown quantifier kind '" + s + "'");
}

inline Json domain_to_json(const Domain& d) {
  switch (d.kind) {
    case Domain::AllReals: return Json{{"kind", "R"}};
    case Domain::OpenUnit: return Json{{"kind", "open_unit"}};
    case Domain::ClosedUnit: return Json{{"kind", "closed_unit"}};
    case Domain::Guarded: {
      Json j{{"kind", "interval"}};
      j["lower"] = d.lower ? term_to_json(d.lower) : Json(nullptr);
      j["upper"] = d.upper ? term_to_json(d.upper) : Json(nullptr);
      j["lower_strict"] = d.lower_strict;
      j["upper_strict"] = d.upper_strict;
      return j;
    }
  }
  throw Error("domain_to_json: bad kind");
}

inline Domain json_to_domain(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "R") return Domain::all();
  if (kind == "open_unit") return Domain::open_unit();
  if (kind == "closed_unit") return Domain::closed_unit();
  if (kind == "interval") {
    Term lo = j.at("lower").is_null() ? nullptr : json_to_term(j.at("lower"));
    Term hi = j.at("upper").is_null() ? nullptr : json_to_term(j.at("upper"));
    return Domain::guarded(std::move(lo), std::move(hi), j.at("lower_strict").get<bool>(),
                           j.at("upper_strict").get<bool>());
  }
  throw Error("json_to_domain: unknown kind '" + kind + "'");
}

inline Json formula_to_json(const Formula& f) {
  if (!f) throw Error("formula_to_json: null formula");
  switch (f->kind) {
    case FKind::Atom:
      return Json{{"node", "atom"},
                  {"lhs", term_to_json(f->lhs)},
                  {"op", relop_str(f->op)},
                  {"rhs", term_to_json(f->rhs)}};
    case FKind::And:
      return Json{{"node", "and"}, {"lhs", formula_to_json(f->a)}, {"rhs", formula_to_json(f->b)}};
    case FKind::Or:
      return Json{{"node", "or"}, {"lhs", formula_to_json(f->a)}, {"rhs", formula_to_json(f->b)}};
    case FKind::Implies:
      return Json{{"node", "implies"}, {"lhs", formula_to_json(f->a)}, {"rhs", formula_to_json(f->b)}};
    case FKind::Not: return Json{{"node", "not"}, {"arg", formula_to_json(f->a)}};
    case FKind::Quant:
      return Json{{"node", "quant"},
                  {"kind", qkind_name(f->qkind)},
                  {"vars", f->qvars},
                  {"domain", domain_to_json(f->qdomain)},
                  {"body", formula_to_json(f->a)}};
  }
  throw Error("formula_to_json: bad kind");
}

inline Formula json_to_formula(const Json& j) {
  const std::string node = j.at("node").get<std::string>();
  if (node == "atom") {
    const std::string op = j.at("op").get<std::string>();
    Relop r;
    if (op == "<") r = Relop::LT;
    else if (op == "<=") r = Relop::LE;
    else if (op == "=") r = Relop::EQ;
    else if (op == ">=") r = Relop::GE;
    else if (op == ">") r = Relop::GT;
    else if (op == "!=") r = Relop::NE;
    else throw Error("json_to_formula: unknown relop '" + op + "'");
    return fatom(json_to_term(j.at("lhs")), r, json_to_term(j.at("rhs")));
  }
  if (node == "and") return fand(json_to_formula(j.at("lhs")), json_to_formula(j.at("rhs")));
  if (node == "or") return for_(json_to_formula(j.at("lhs")), json_to_formula(j.at("rhs")));
  if (node == "implies")
    return fimplies(json_to_formula(j.at("lhs")), json_to_formula(j.at("rhs")));
  if (node == "not") return fnot(json_to_formula(j.at("arg")));
  if (node == "quant")
    return fquant(qkind_from_name(j.at("kind").get<std::string>()),
                  j.at("vars").get<std::vector<std::string>>(), json_to_domain(j.at("domain")),
                  json_to_formula(j.at("body")));
  throw Error("json_to_formula: unknown node '" + node + "'");
}

inline Json sentence_to_json(const Sentence& s) {
  Json prefix = Json::array();
  for (const auto& blk : s.prefix)
    prefix.push_back(Json{{"kind", qkind_name(blk.kind)},
                          {"vars", blk.vars},
                          {"domain", domain_to_json(blk.domain)}});
  return Json{{"prefix", std::move(prefix)}, {"matrix", formula_to_json(s.matrix)}};
}

inline Sentence json_to_sentence(const Json& j) {
  Sentence s;
  for (const auto& b : j.at("prefix")) {
    QuantifierBlock blk;
    blk.kind = qkind_from_name(b.at("kind").get<std::string>());
    blk.vars = b.at("vars").get<std::vector<std::string>>();
    blk.domain = json_to_domain(b.at("domain"));
    s.prefix.push_back(std::move(blk));
  }
  s.matrix = json_to_formula(j.at("matrix"));
  check_well_formed(s);
  return s;
}

inline Json polynomial_to_json(const Polynomial& p) {
  Json monos = Json::array();
  for (const auto& [m, c] : p.terms) {
    Json exps = Json::array();
    for (const auto& [v, e] : m) exps.push_back(Json::array({v, e}));
    monos.push_back(Json{{"exponents", std::move(exps)}, {"coeff", rational_to_json(c)}});
  }
  return Json{{"monomials", std::move(monos)}};
}

inline Polynomial json_to_polynomial(const Json& j) {
  Polynomial p;
  for (const auto& mono : j.at("monomials")) {
    Monomial m;
    for (const auto& pair : mono.at("exponents"))
      m.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<unsigned>());
    std::sort(m.begin(), m.end());
    p.add_term(m, json_to_rational(mono.at("coeff")));
  }
  return p;
}

}  // namespace realhier
