#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "twistkit/error.hpp"

namespace twistkit {

/// Elements of the base field Q. mpq_class keeps values in lowest terms with
/// a positive denominator as long as every value is canonicalized once on
/// construction from text.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q" (q != 0) into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t start = s.find_first_not_of(" \t");
  if (start == std::string::npos) throw PreconditionError("empty rational literal");
  s = s.substr(start);
  if (s.front() == '+') s = s.substr(1);
  Rational r;
  if (r.set_str(s, 10) != 0) throw PreconditionError("malformed rational literal '" + std::string(text) + "'");
  if (r.get_den() == 0) throw PreconditionError("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace twistkit
