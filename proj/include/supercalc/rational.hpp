#pragma once

#include <gmpxx.h>

#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace supercalc {

/// Exact rational coefficient. All arithmetic in the library is exact.
using Rational = mpq_class;

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// num/den in lowest terms. gmpxx leaves two-argument construction
/// uncanonicalized, which breaks equality.
inline Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r{num, den};
  r.canonicalize();
  return r;
}

/// Parses "p" or "p/q" (optional leading minus, no decimals, q != 0).
inline Rational parse_rational(std::string_view text) {
  static const std::regex pattern{R"(^-?[0-9]+(/[0-9]+)?$)"};
  std::string s{text};
  if (!std::regex_match(s, pattern)) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
  Rational r;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpz_class num{s.substr(0, slash)};
    mpz_class den{s.substr(slash + 1)};
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    r = Rational{num, den};
  } else {
    r = Rational{mpz_class{s}};
  }
  r.canonicalize();
  return r;
}

inline Rational factorial(unsigned k) {
  mpz_class out = 1;
  for (unsigned i = 2; i <= k; ++i) out *= i;
  return Rational{out};
}

}  // namespace supercalc
