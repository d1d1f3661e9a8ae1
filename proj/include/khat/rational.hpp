#pragma once

// Exact scalars. Integers and rationals are GMP values; every Rational kept
// by this library is canonical (lowest terms, positive denominator).

#include <gmpxx.h>

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "khat/errors.hpp"

namespace khat {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer &num, const Integer &den) {
  if (den == 0)
    throw ValidationError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// "a/b", or "a" when b = 1.
inline std::string to_string(const Rational &r) { return r.get_str(); }
inline std::string to_string(const Integer &z) { return z.get_str(); }

namespace detail {
inline bool all_digits(std::string_view s) {
  if (s.empty())
    return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      return false;
  return true;
}
} // namespace detail

/// Parses "[-]a" or "[-]a/b" with b > 0. Surrounding whitespace is ignored.
inline Rational parse_rational(std::string_view text) {
  auto first = text.find_first_not_of(" \t");
  auto last = text.find_last_not_of(" \t");
  if (first == std::string_view::npos)
    throw ValidationError("empty rational literal");
  std::string_view s = text.substr(first, last - first + 1);
  std::string_view body = s;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!detail::all_digits(num) || !detail::all_digits(den))
    throw ValidationError("malformed rational literal '" + std::string(s) + "'");
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0)
    throw ValidationError("rational literal '" + std::string(s) + "' has zero denominator");
  if (negative)
    n = -n;
  return make_rational(n, d);
}

/// Parses a decimal integer, optionally signed.
inline Integer parse_integer(std::string_view text) {
  Rational r = parse_rational(text);
  if (r.get_den() != 1 || text.find('/') != std::string_view::npos)
    throw ValidationError("expected an integer, got '" + std::string(text) + "'");
  return r.get_num();
}

/// Exponent of p in n; n must be nonzero.
inline unsigned long valuation(const Integer &n, const Integer &p) {
  Integer rest;
  return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

/// p-adic valuation of a rational; nullopt for zero.
inline std::optional<long> valuation(const Rational &r, const Integer &p) {
  if (r == 0)
    return std::nullopt;
  return static_cast<long>(valuation(Integer(r.get_num()), p)) -
         static_cast<long>(valuation(Integer(r.get_den()), p));
}

/// True when r has no p in its denominator.
inline bool is_p_integral(const Rational &r, const Integer &p) {
  return valuation(Integer(r.get_den()), p) == 0;
}

/// n with every factor from `primes` removed.
inline Integer strip_primes(Integer n, const std::vector<Integer> &primes) {
  for (const Integer &p : primes) {
    if (n == 0)
      break;
    mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
  }
  return n;
}

inline Integer pow(const Integer &base, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

inline Integer lcm(const Integer &a, const Integer &b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

inline Integer gcd(const Integer &a, const Integer &b) {
  Integer out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

/// Floor division; b != 0.
inline Integer floor_div(const Integer &a, const Integer &b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// r mod p for a p-integral rational r, as a representative in [0, p).
inline Integer reduce_mod(const Rational &r, const Integer &p) {
  Integer den_inv;
  Integer den(r.get_den());
  if (mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
    throw InvariantError("reduce_mod: denominator not invertible");
  Integer out = Integer(r.get_num()) * den_inv;
  mpz_fdiv_r(out.get_mpz_t(), out.get_mpz_t(), p.get_mpz_t());
  return out;
}

} // namespace khat
