#pragma once
// Surface-syntax parser. Grammar:
//   sentence := (block ".")* formula
//   block    := ("exists"|"forall"|"existsS"|"forallS"|"H") var ("," var)* ["in" domain]
//   domain   := "R" | "(" term "," term ")" | "[" term "," term "]"
//   formula  := or ("->" formula)? ; or := and ("\/" and)* ; and := unary ("/\" unary)*
//   unary    := "~" unary | "(" formula ")" | term relop term
//   term     := mul (("+"|"-") mul)* ; mul := tunary ("*" tunary)*
//   tunary   := "-" tunary | power ; power := primary ("^" nat)*
//   primary  := nat ("/" nat)? | var | "(" term ")"

#include <cctype>
#include <string>
#include <vector>

#include "realhier/ast.hpp"

namespace realhier {
namespace detail {

enum class Tok {
  Ident, Nat, KwExists, KwForall, KwExistsS, KwForallS, KwH, KwIn, KwR,
  AndOp, OrOp, NotOp, ImpliesOp, Lt, Le, Eq, Ge, Gt, Ne,
  Plus, Minus, Star, Caret, Slash, LParen, RParen, LBrack, RBrack, Comma, Dot, End
};

struct Token {
  Tok k;
  std::string text;
  size_t start = 0, end = 0;
};

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  size_t i = 0, n = src.size();
  auto push1 = [&](Tok k) { out.push_back({k, src.substr(i, 1), i, i + 1}); ++i; };
  auto push2 = [&](Tok k) { out.push_back({k, src.substr(i, 2), i, i + 2}); i += 2; };
  while (i < n) {
    char c = src[i];
    if (isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t s = i;
      while (i < n && (isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_' || src[i] == '\''))
        ++i;
      std::string w = src.substr(s, i - s);
      Tok k = Tok::Ident;
      if (w == "exists") k = Tok::KwExists;
      else if (w == "forall") k = Tok::KwForall;
      else if (w == "existsS") k = Tok::KwExistsS;
      else if (w == "forallS") k = Tok::KwForallS;
      else if (w == "H") k = Tok::KwH;
      else if (w == "in") k = Tok::KwIn;
      else if (w == "R") k = Tok::KwR;
      out.push_back({k, w, s, i});
      continue;
    }
    if (isdigit(static_cast<unsigned char>(c))) {
      size_t s = i;
      while (i < n && isdigit(static_cast<unsigned char>(src[i]))) ++i;
      out.push_back({Tok::Nat, src.substr(s, i - s), s, i});
      continue;
    }
    char d = i + 1 < n ? src[i + 1] : '\0';
    if (c == '/' && d == '\\') { push2(Tok::AndOp); continue; }
    if (c == '\\' && d == '/') { push2(Tok::OrOp); continue; }
    if (c == '-' && d == '>') { push2(Tok::ImpliesOp); continue; }
    if (c == '<' && d == '=') { push2(Tok::Le); continue; }
    if (c == '>' && d == '=') { push2(Tok::Ge); continue; }
    if (c == '!' && d == '=') { push2(Tok::Ne); continue; }
    switch (c) {
      case '<': push1(Tok::Lt); continue;
      case '>': push1(Tok::Gt); continue;
      case '=': push1(Tok::Eq); continue;
      case '~': push1(Tok::NotOp); continue;
      case '+': push1(Tok::Plus); continue;
      case '-': push1(Tok::Minus); continue;
      case '*': push1(Tok::Star); continue;
      case '^': push1(Tok::Caret); continue;
      case '/': push1(Tok::Slash); continue;
      case '(': push1(Tok::LParen); continue;
      case ')': push1(Tok::RParen); continue;
      case '[': push1(Tok::LBrack); continue;
      case ']': push1(Tok::RBrack); continue;
      case ',': push1(Tok::Comma); continue;
      case '.': push1(Tok::Dot); continue;
      default:
        throw SyntaxError("unexpected character '" + std::string(1, c) + "' at offset " +
                          std::to_string(i));
    }
  }
  out.push_back({Tok::End, "end of input", n, n});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  Sentence sentence() {
    Sentence s;
    while (is_block_start(peek().k)) {
      s.prefix.push_back(block());
      expect(Tok::Dot, "'.'");
    }
    s.matrix = formula();
    expect(Tok::End, "end of input");
    check_well_formed(s);
    return s;
  }

  Formula formula_only() {
    Formula f = formula();
    expect(Tok::End, "end of input");
    return f;
  }

  Term term_only() {
    Term t = term();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  static bool is_block_start(Tok k) {
    return k == Tok::KwExists || k == Tok::KwForall || k == Tok::KwExistsS ||
           k == Tok::KwForallS || k == Tok::KwH;
  }

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  const Token& expect(Tok k, const char* what) {
    if (peek().k != k) fail(what);
    return next();
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError("expected " + what + " at offset " + std::to_string(peek().start) +
                      ", found '" + peek().text + "'");
  }

  QuantifierBlock block() {
    QuantifierBlock b;
    switch (peek().k) {
      case Tok::KwExists: b.kind = QKind::Exists; break;
      case Tok::KwForall: b.kind = QKind::Forall; break;
      case Tok::KwExistsS: b.kind = QKind::ExistsStar; break;
      case Tok::KwForallS: b.kind = QKind::ForallStar; break;
      case Tok::KwH: b.kind = QKind::H; break;
      default: fail("quantifier keyword");
    }
    next();
    b.vars.push_back(expect(Tok::Ident, "variable name").text);
    while (peek().k == Tok::Comma) {
      next();
      b.vars.push_back(expect(Tok::Ident, "variable name").text);
    }
    if (peek().k == Tok::KwIn) {
      next();
      b.domain = domain();
    }
    return b;
  }

  Domain domain() {
    if (peek().k == Tok::KwR) {
      next();
      return Domain::all();
    }
    if (peek().k == Tok::LParen || peek().k == Tok::LBrack) {
      bool open = peek().k == Tok::LParen;
      next();
      Term lo = term();
      expect(Tok::Comma, "','");
      Term hi = term();
      expect(open ? Tok::RParen : Tok::RBrack, open ? "')'" : "']'");
      return Domain::guarded(std::move(lo), std::move(hi), open, open);
    }
    fail("'R', '(' or '['");
  }

  Formula formula() {
    Formula lhs = or_formula();
    if (peek().k == Tok::ImpliesOp) {
      next();
      return fimplies(std::move(lhs), formula());  // right-assoc
    }
    return lhs;
  }

  Formula or_formula() {
    Formula lhs = and_formula();
    while (peek().k == Tok::OrOp) {
      next();
      lhs = for_(std::move(lhs), and_formula());
    }
    return lhs;
  }

  Formula and_formula() {
    Formula lhs = unary_formula();
    while (peek().k == Tok::AndOp) {
      next();
      lhs = fand(std::move(lhs), unary_formula());
    }
    return lhs;
  }

  Formula unary_formula() {
    if (peek().k == Tok::NotOp) {
      next();
      return fnot(unary_formula());
    }
    if (peek().k == Tok::LParen) {
      // "(" may open a sub-formula or a parenthesized term of an atom;
      // commit to the formula reading only if it parses through cleanly
      size_t save = pos_;
      try {
        next();
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      } catch (const SyntaxError&) {
        pos_ = save;
      }
    }
    return atom();
  }

  Formula atom() {
    size_t s = peek().start;
    Term lhs = term();
    Relop op;
    switch (peek().k) {
      case Tok::Lt: op = Relop::LT; break;
      case Tok::Le: op = Relop::LE; break;
      case Tok::Eq: op = Relop::EQ; break;
      case Tok::Ge: op = Relop::GE; break;
      case Tok::Gt: op = Relop::GT; break;
      case Tok::Ne: op = Relop::NE; break;
      default: fail("relational operator");
    }
    next();
    Term rhs = term();
    size_t e = pos_ ? toks_[pos_ - 1].end : s;
    Formula f = fatom(std::move(lhs), op, std::move(rhs));
    std::const_pointer_cast<FormulaNode>(f)->span = {s, e};
    return f;
  }

  Term term() {
    Term lhs = mul();
    while (peek().k == Tok::Plus || peek().k == Tok::Minus) {
      bool plus = peek().k == Tok::Plus;
      next();
      lhs = plus ? tadd(std::move(lhs), mul()) : tsub(std::move(lhs), mul());
    }
    return lhs;
  }

  Term mul() {
    Term lhs = term_unary();
    while (peek().k == Tok::Star) {
      next();
      lhs = tmul(std::move(lhs), term_unary());
    }
    return lhs;
  }

  Term term_unary() {
    if (peek().k != Tok::Minus) return power();
    next();
    if (peek().k == Tok::Nat) {
      // negative literal, unless an exponent follows ("-2^2" is -(2^2))
      size_t save = pos_;
      Rational q = rational_literal();
      if (peek().k != Tok::Caret) return tconst(-q);
      pos_ = save;
      return tneg(power());
    }
    return tneg(term_unary());
  }

  Term power() {
    Term base = primary();
    while (peek().k == Tok::Caret) {
      next();
      const Token& e = expect(Tok::Nat, "natural-number exponent");
      if (e.text.size() > 9) throw SyntaxError("exponent too large at offset " + std::to_string(e.start));
      base = tpow(std::move(base), static_cast<unsigned>(std::stoul(e.text)));
    }
    return base;
  }

  Rational rational_literal() {
    const Token& numTok = expect(Tok::Nat, "number");
    Int num(numTok.text);
    if (peek().k != Tok::Slash) return Rational(num);
    next();
    const Token& denTok = expect(Tok::Nat, "denominator");
    Int den(denTok.text);
    if (den == 0) throw SyntaxError("zero denominator at offset " + std::to_string(denTok.start));
    return Rational(num, den);
  }

  Term primary() {
    size_t s = peek().start;
    Term t;
    if (peek().k == Tok::Nat) {
      t = tconst(rational_literal());
    } else if (peek().k == Tok::Ident) {
      t = tvar(next().text);
    } else if (peek().k == Tok::LParen) {
      next();
      t = term();
      expect(Tok::RParen, "')'");
    } else {
      fail("a term");
    }
    std::const_pointer_cast<TermNode>(t)->span = {s, toks_[pos_ - 1].end};
    return t;
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace detail

inline Sentence parse_sentence(const std::string& src) { return detail::Parser(src).sentence(); }
inline Formula parse_formula(const std::string& src) { return detail::Parser(src).formula_only(); }
inline Term parse_term(const std::string& src) { return detail::Parser(src).term_only(); }

}  // namespace realhier
