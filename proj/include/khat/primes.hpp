#pragma once

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <string>
#include <vector>

#include "khat/errors.hpp"
#include "khat/rational.hpp"

namespace khat {

namespace detail {

inline bool miller_rabin_round(const Integer &n, const Integer &d, unsigned long s,
                               const Integer &a) {
  Integer x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  Integer nm1 = n - 1;
  if (x == 1 || x == nm1)
    return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == nm1)
      return true;
  }
  return false;
}

inline const std::vector<unsigned> &small_primes() {
  static const std::vector<unsigned> table = [] {
    std::vector<unsigned> ps;
    for (unsigned c = 2; c < 1000; ++c) {
      bool prime = true;
      for (unsigned p : ps) {
        if (p * p > c)
          break;
        if (c % p == 0) {
          prime = false;
          break;
        }
      }
      if (prime)
        ps.push_back(c);
    }
    return ps;
  }();
  return table;
}

} // namespace detail

/// Deterministic for n < 3.3e24 (Miller-Rabin on the first 13 prime bases);
/// beyond that GMP's BPSW-based test, which has no known counterexample.
inline bool is_prime(const Integer &n) {
  if (n < 2)
    return false;
  for (unsigned p : detail::small_primes()) {
    if (n == p)
      return true;
    if (n % p == 0)
      return false;
  }
  static const Integer deterministic_bound("3317044064679887385961981", 10);
  if (n >= deterministic_bound)
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
  Integer d = n - 1;
  unsigned long s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (unsigned a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u})
    if (!detail::miller_rabin_round(n, d, s, Integer(a)))
      return false;
  return true;
}

namespace detail {

inline Integer pollard_brent(const Integer &n) {
  if (n % 2 == 0)
    return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 64;
    auto f = [&](const Integer &v) { return Integer((v * v + c) % n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i)
        y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = q * abs(x - y) % n;
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(Integer(abs(x - ys)), n);
      } while (g == 1);
    }
    if (g != n)
      return g;
  }
}

inline void factor_into(Integer n, std::vector<Integer> &out) {
  if (n < 0)
    n = -n;
  if (n < 2)
    return;
  for (unsigned p : small_primes()) {
    if (n % p == 0) {
      out.emplace_back(p);
      while (n % p == 0)
        n /= p;
    }
    if (n == 1)
      return;
  }
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

} // namespace detail

/// Distinct prime divisors of |n|, ascending. Empty for 0 and ±1.
inline std::vector<Integer> prime_divisors(const Integer &n) {
  std::vector<Integer> out;
  detail::factor_into(n, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Finite set of primes, strictly ascending.
class PrimeSet {
public:
  PrimeSet() = default;
  PrimeSet(std::initializer_list<long> ps) {
    for (long p : ps)
      primes_.emplace_back(p);
    normalize();
  }
  explicit PrimeSet(std::vector<Integer> ps) : primes_(std::move(ps)) { normalize(); }

  [[nodiscard]] bool contains(const Integer &p) const {
    return std::binary_search(primes_.begin(), primes_.end(), p);
  }
  [[nodiscard]] bool empty() const { return primes_.empty(); }
  [[nodiscard]] std::size_t size() const { return primes_.size(); }
  [[nodiscard]] const std::vector<Integer> &values() const { return primes_; }
  [[nodiscard]] auto begin() const { return primes_.begin(); }
  [[nodiscard]] auto end() const { return primes_.end(); }

  [[nodiscard]] PrimeSet united(const PrimeSet &o) const {
    std::vector<Integer> all = primes_;
    all.insert(all.end(), o.primes_.begin(), o.primes_.end());
    return PrimeSet(std::move(all));
  }
  void insert(const Integer &p) {
    if (contains(p))
      return;
    if (!is_prime(p))
      throw ValidationError(p.get_str() + " is not prime");
    primes_.insert(std::upper_bound(primes_.begin(), primes_.end(), p), p);
  }

  /// Product of all members (1 for the empty set).
  [[nodiscard]] Integer product() const {
    Integer out = 1;
    for (const auto &p : primes_)
      out *= p;
    return out;
  }

  bool operator==(const PrimeSet &) const = default;
  auto operator<=>(const PrimeSet &o) const {
    return std::lexicographical_compare_three_way(
        primes_.begin(), primes_.end(), o.primes_.begin(), o.primes_.end(),
        [](const Integer &a, const Integer &b) {
          int c = cmp(a, b);
          return c < 0 ? std::strong_ordering::less
                       : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
        });
  }

private:
  void normalize() {
    for (const auto &p : primes_)
      if (!is_prime(p))
        throw ValidationError(p.get_str() + " is not prime");
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
  }

  std::vector<Integer> primes_;
};

inline std::string to_string(const PrimeSet &ps) {
  std::string s = "{";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i)
      s += ",";
    s += ps.values()[i].get_str();
  }
  return s + "}";
}

} // namespace khat
