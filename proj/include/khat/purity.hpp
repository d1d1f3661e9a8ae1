#pragma once

// Purity of a subgroup, decided one prime at a time.
//
// For a prime q, G/qG is an F_q-vector space with coordinates T_q mod q
// (T_q from MembershipTester), and H/qH is spanned by the generators h_j
// of H with q not in P_j. H is pure at q iff H/qH -> G/qG is injective,
// i.e. the images of the h_j have the same F_q-rank in both quotients.

#include <vector>

#include "khat/intersection.hpp"
#include "khat/linear.hpp"
#include "khat/membership.hpp"
#include "khat/normal_form.hpp"
#include "khat/primes.hpp"

namespace khat {

namespace detail {

inline void add_prime_divisors(std::vector<Integer> &out, const Integer &n) {
  for (auto &p : prime_divisors(n))
    out.push_back(p);
}

/// Primes of the common denominator and of the invariant factors of M.
inline void add_matrix_primes(std::vector<Integer> &out, const QMatrix &m) {
  Integer l = common_denominator(m);
  add_prime_divisors(out, l);
  SmithForm s = snf(to_integer(m, l));
  if (s.rank > 0)
    add_prime_divisors(out, s.S(s.rank - 1, s.rank - 1));
}

inline QMatrix generator_rows(const LocalizedGroup &g) {
  return QMatrix::from_rows(g.vectors(), g.ambient_dim());
}

inline QMatrix columns_of(const std::vector<QVector> &vs, const QMatrix &t) {
  QMatrix out(t.rows(), vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j) {
    QVector c = t * vs[j];
    for (std::size_t i = 0; i < t.rows(); ++i)
      out(i, j) = c[i];
  }
  return out;
}

} // namespace detail

/// Generator primes together with the primes of the cleared generator
/// matrix: its common denominator and its invariant factors.
inline PrimeSet relevant_primes(const LocalizedGroup &g) {
  LocalizedGroup c = canonicalize(g);
  std::vector<Integer> out = c.generator_primes().values();
  if (c.size() > 0)
    detail::add_matrix_primes(out, detail::generator_rows(c));
  return PrimeSet(std::move(out));
}

/// Primes at which purity of H in G has to be checked. Outside this set H
/// and G are plain lattices at q and the global coordinates of H inside G
/// keep full rank modulo q.
inline PrimeSet purity_primes(const LocalizedGroup &h, const LocalizedGroup &g,
                              const MembershipTester &tg) {
  std::vector<Integer> out = relevant_primes(h).united(relevant_primes(g)).values();
  if (h.size() > 0 && g.size() > 0) {
    QMatrix stacked = detail::generator_rows(h);
    for (const auto &v : g.vectors())
      stacked.append_row(v);
    detail::add_matrix_primes(out, stacked);
    detail::add_matrix_primes(out, detail::columns_of(h.vectors(), tg.global_transform()));
  }
  return PrimeSet(std::move(out));
}

/// qH = H ∩ qG for the single prime q. Requires H ⊆ G.
inline bool is_pure_at(const LocalizedGroup &h, const MembershipTester &th,
                       const MembershipTester &tg, const Integer &q) {
  std::vector<QVector> lattice;
  for (const auto &gen : h.generators())
    if (!gen.primes.contains(q))
      lattice.push_back(gen.vector);
  if (lattice.empty())
    return true;
  QMatrix in_g = detail::columns_of(lattice, tg.local_transform(q));
  QMatrix in_h = detail::columns_of(lattice, th.local_transform(q));
  return rank_mod_p(in_g, q) == rank_mod_p(in_h, q);
}

/// nH = H ∩ nG for every n > 0.
inline bool is_pure(const LocalizedGroup &h, const LocalizedGroup &g) {
  require_same_dim(h, g, "is_pure");
  const LocalizedGroup hc = canonicalize(h);
  const LocalizedGroup gc = canonicalize(g);
  MembershipTester tg(gc);
  if (!contains_group(hc, tg))
    throw PreconditionError("is_pure: the first group is not a subgroup of the second");
  MembershipTester th(hc);
  for (const Integer &q : purity_primes(hc, gc, tg))
    if (!is_pure_at(hc, th, tg, q))
      return false;
  return true;
}

} // namespace khat
