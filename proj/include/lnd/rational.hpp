#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "lnd/errors.hpp"

namespace lnd {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Accepts "3", "-2/5", "+7". The result is canonicalized.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) throw InvalidArgument("bad rational literal '" + std::string(text) + "'");
  if (q.get_den() == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace lnd
