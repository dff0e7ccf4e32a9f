#pragma once

// Exact integers and rationals on top of GMP, plus the handful of helpers the
// rest of the library needs (parsing, canonical printing, powers).

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace recdio {

using Integer = mpz_class;
using Rational = mpq_class;

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const Integer& z) { return sgn(z) == 0; }

/// Parses "p", "-p" or "p/q" into a canonical rational. Whitespace is not
/// accepted; a zero denominator is an input error.
inline Rational parse_rational(std::string_view text) {
  if (text.empty()) throw InputError("empty rational literal");
  std::size_t slash = text.find('/');
  auto valid_int = [](std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw InputError("malformed rational literal '" + std::string(text) + "'");
  std::string num_s(num);
  if (!num_s.empty() && num_s[0] == '+') num_s.erase(0, 1);
  Integer n(num_s, 10), d(std::string(den), 10);
  if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

/// Canonical "p/q" form; integers print without a denominator.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

/// x^e for any integer e; x must be nonzero when e < 0.
inline Rational pow(const Rational& x, long e) {
  if (e < 0) {
    if (is_zero(x)) throw std::domain_error("negative power of zero");
    Rational inv = 1 / x;
    return pow(inv, -e);
  }
  Rational r(ipow(x.get_num(), static_cast<unsigned long>(e)), ipow(x.get_den(), static_cast<unsigned long>(e)));
  return r;  // already canonical: powers of coprime integers stay coprime
}

inline Rational abs_value(const Rational& q) { return abs(q); }

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

inline Integer from_u64(std::uint64_t v) {
  Integer r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return r;
}

}  // namespace recdio
