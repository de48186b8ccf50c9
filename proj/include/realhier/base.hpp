#pragma once
// Shared numeric aliases and error types.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace realhier {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Rational rat_pow(const Rational& q, unsigned e) {
  Rational r = 1;
  Rational b = q;
  unsigned k = e;
  while (k) {
    if (k & 1u) r *= b;
    b *= b;
    k >>= 1u;
  }
  return r;
}

inline Int int_pow(const Int& b, const Int& e) {
  Int r = 1, base = b, k = e;
  while (k > 0) {
    if ((k & 1) != 0) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

inline std::string rat_str(const Rational& q) {
  Int n = rat_num(q), d = rat_den(q);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

struct Error : std::runtime_error {
  explicit Error(const std::string& m) : std::runtime_error(m) {}
};

#define REALHIER_ERROR(Name)                              \
  struct Name : Error {                                   \
    explicit Name(const std::string& m) : Error(#Name ": " + m) {} \
  }

REALHIER_ERROR(SyntaxError);
REALHIER_ERROR(BudgetExceeded);
REALHIER_ERROR(UnboundVariable);
REALHIER_ERROR(DuplicateBinder);
REALHIER_ERROR(ExoticQuantifierPresent);
REALHIER_ERROR(ExoticUnclassifiable);
REALHIER_ERROR(ExoticInMatrix);
REALHIER_ERROR(NotNegationFree);
REALHIER_ERROR(WrongShape);
REALHIER_ERROR(LevelTooLow);
REALHIER_ERROR(DegreeTooHigh);
REALHIER_ERROR(MissingEll);
REALHIER_ERROR(Overflow);
REALHIER_ERROR(UnboundedDomain);
REALHIER_ERROR(TooManyBlocks);
REALHIER_ERROR(DimensionMismatch);

#undef REALHIER_ERROR

}  // namespace realhier
