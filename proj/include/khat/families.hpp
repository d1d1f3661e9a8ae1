#pragma once

// The rank-n witness families in Q^(2n), coordinates x_0..x_{n-1} followed
// by z_0..z_{n-1}:
//
//   G_base = <p1^-k x_a>
//   G_U    = <p1^-k x_a, p3^-k z_a, p4^-k (x_a + z_a), p5^-k z_b : b in U>

#include <cstddef>
#include <set>
#include <string>

#include "khat/localized_group.hpp"
#include "khat/prime_tuple.hpp"

namespace khat {

using IndexSet = std::set<std::size_t>;

inline QVector x_coord(std::size_t n, std::size_t a) { return unit_vector(2 * n, a); }
inline QVector z_coord(std::size_t n, std::size_t a) { return unit_vector(2 * n, n + a); }

inline void require_family_params(std::size_t n, const IndexSet &u) {
  if (n == 0)
    throw ValidationError("family rank n must be at least 1");
  for (std::size_t b : u)
    if (b >= n)
      throw ValidationError("index " + std::to_string(b) + " is outside {0.." +
                            std::to_string(n - 1) + "}");
}

inline LocalizedGroup build_G_base(std::size_t n, const PrimeTuple &p) {
  require_family_params(n, {});
  LocalizedGroup g(2 * n);
  for (std::size_t a = 0; a < n; ++a)
    g.add({x_coord(n, a), PrimeSet(std::vector<Integer>{p.p1})});
  return g;
}

inline LocalizedGroup build_G_U(std::size_t n, const IndexSet &u, const PrimeTuple &p) {
  require_family_params(n, u);
  LocalizedGroup g = build_G_base(n, p);
  for (std::size_t a = 0; a < n; ++a)
    g.add({z_coord(n, a), PrimeSet(std::vector<Integer>{p.p3})});
  for (std::size_t a = 0; a < n; ++a)
    g.add({add(x_coord(n, a), z_coord(n, a)), PrimeSet(std::vector<Integer>{p.p4})});
  for (std::size_t b : u)
    g.add({z_coord(n, b), PrimeSet(std::vector<Integer>{p.p5})});
  return g;
}

/// Subset of {0..n-1} encoded by the bits of mask.
inline IndexSet subset_from_mask(std::size_t n, unsigned long mask) {
  IndexSet s;
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1ul)
      s.insert(i);
  return s;
}

inline std::string to_string(const IndexSet &s) {
  std::string out = "{";
  for (auto it = s.begin(); it != s.end(); ++it)
    out += (it == s.begin() ? "" : ",") + std::to_string(*it);
  return out + "}";
}

} // namespace khat
