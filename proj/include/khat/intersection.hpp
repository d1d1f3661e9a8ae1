#pragma once

// G ∩ W for a localized group G and a rational subspace W, together with
// the operations that reduce to it: p^omega parts, pure closures, and
// group containment.
//
// Write C = ⊕_j Z[1/P_j] e_j and phi(c) = sum_j c_j v_j, so G = phi(C) and
// G ∩ W = phi(C ∩ K) with K = phi^{-1}(W). A presentation of C ∩ K is
// assembled from local pieces:
//   - a Z-basis of K ∩ Z^m (covers every prime outside S);
//   - for q in S with I = {j : q in P_j}, a basis of K ∩ E_I, tagged {q};
//   - lifts to K of a Z-basis of pi_J(K) ∩ Z^J (J the complement of I),
//     scaled by an integer prime to q so they land in C.
// At every prime the localization of the generated module contains
// (C ∩ K)_(q), hence equality.

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

#include "khat/linear.hpp"
#include "khat/localized_group.hpp"
#include "khat/membership.hpp"
#include "khat/normal_form.hpp"
#include "khat/subspace.hpp"

namespace khat {

namespace detail {

/// Replaces each block of generators sharing a prime set by the nonzero
/// rows of the Hermite form of their (cleared) Z-span.
inline LocalizedGroup merge_by_primes(const LocalizedGroup &g) {
  std::map<PrimeSet, std::vector<QVector>> blocks;
  std::vector<PrimeSet> order;
  const LocalizedGroup gc = canonicalize(g);
  for (const auto &gen : gc.generators()) {
    if (!blocks.contains(gen.primes))
      order.push_back(gen.primes);
    blocks[gen.primes].push_back(gen.vector);
  }
  std::sort(order.begin(), order.end());
  LocalizedGroup out(g.ambient_dim());
  for (const auto &ps : order) {
    QMatrix m = QMatrix::from_rows(blocks[ps], g.ambient_dim());
    Integer l = common_denominator(m);
    HermiteForm h = hnf(to_integer(m, l));
    for (std::size_t i = 0; i < h.rank; ++i) {
      QVector row = to_rational(h.H.row(i));
      out.add({scaled(row, make_rational(Integer(1), l)), ps});
    }
  }
  return canonicalize(out);
}

/// Drops generators already contained in the group generated by the rest,
/// scanning from the last generator backwards.
inline LocalizedGroup prune_redundant(const LocalizedGroup &g) {
  std::vector<LocalizedGenerator> gens = g.generators();
  for (std::size_t k = gens.size(); k-- > 0;) {
    std::vector<LocalizedGenerator> rest;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (i != k)
        rest.push_back(gens[i]);
    MembershipTester t(LocalizedGroup(g.ambient_dim(), rest));
    bool redundant = t.contains(gens[k].vector);
    for (const Integer &p : gens[k].primes)
      redundant = redundant && t.divisible_span(p).contains(gens[k].vector);
    if (redundant)
      gens = std::move(rest);
  }
  return LocalizedGroup(g.ambient_dim(), std::move(gens));
}

} // namespace detail

/// Shorter presentation of the same group.
inline LocalizedGroup simplify(const LocalizedGroup &g) {
  return detail::prune_redundant(detail::merge_by_primes(g));
}

inline LocalizedGroup intersect_subspace(const LocalizedGroup &g, const Subspace &w) {
  if (w.ambient_dim() != g.ambient_dim())
    throw DimensionError("intersect_subspace: subspace in Q^" + std::to_string(w.ambient_dim()) +
                         ", group in Q^" + std::to_string(g.ambient_dim()));
  const std::size_t d = g.ambient_dim();
  const LocalizedGroup gc = canonicalize(g);
  const std::size_t m = gc.size();
  if (m == 0 || w.is_zero())
    return LocalizedGroup(d);

  const QMatrix v = QMatrix::from_columns(gc.vectors(), d);
  const QMatrix constraint = to_rational(w.annihilator()) * v;
  const Subspace k = constraint.rows() == 0 ? Subspace::full(m)
                                            : Subspace::span(kernel_basis(constraint), m);
  auto phi = [&](const QVector &c) { return v * c; };

  LocalizedGroup out(d);
  for (const auto &x : k.integer_lattice_basis())
    out.add({phi(to_rational(x)), {}});

  for (const Integer &q : gc.generator_primes()) {
    std::vector<std::size_t> in, outside;
    for (std::size_t j = 0; j < m; ++j)
      (gc.generators()[j].primes.contains(q) ? in : outside).push_back(j);

    Subspace divisible = subspace_intersect(k, coordinate_subspace(in, m));
    for (const auto &x : divisible.basis_vectors())
      out.add({phi(to_rational(primitive_integer(x))), PrimeSet({q})});

    if (outside.empty())
      continue;
    // Projection of K onto the coordinates outside I, and its integer points.
    std::vector<QVector> projected;
    for (const auto &x : k.basis_vectors()) {
      QVector p(outside.size());
      for (std::size_t i = 0; i < outside.size(); ++i)
        p[i] = x[outside[i]];
      projected.push_back(std::move(p));
    }
    Subspace proj = Subspace::span(projected, outside.size());
    // System [constraint; selection] c = [0; y] lifts y into K.
    QMatrix system(0, m);
    for (std::size_t i = 0; i < constraint.rows(); ++i)
      system.append_row(constraint.row_span(i));
    for (std::size_t j : outside)
      system.append_row(unit_vector(m, j));
    for (const auto &y : proj.integer_lattice_basis()) {
      QVector rhs = zero_vector(constraint.rows());
      for (const auto &yi : y)
        rhs.push_back(Rational(yi));
      auto c = solve(system, rhs);
      if (!c)
        throw InvariantError("intersect_subspace: projected lattice point does not lift");
      Integer n = 1;
      for (std::size_t j : in)
        n = lcm(n, strip_primes(Integer((*c)[j].get_den()), gc.generators()[j].primes.values()));
      out.add({phi(scaled(*c, Rational(n))), {}});
    }
  }
  return simplify(out);
}

/// p^omega G, the elements of G divisible by every power of p.
inline LocalizedGroup p_omega(const LocalizedGroup &g, const Integer &p) {
  require_prime(p);
  return intersect_subspace(g, g.divisible_span(p));
}

/// G ∩ span(S), the smallest pure subgroup of G containing S.
inline LocalizedGroup pure_closure(const std::vector<QVector> &s, const LocalizedGroup &g) {
  MembershipTester t(g);
  for (std::size_t i = 0; i < s.size(); ++i) {
    require_dim(s[i], g, "pure_closure");
    if (!t.contains(s[i]))
      throw PreconditionError("pure_closure: element " + std::to_string(i) +
                              " is not a member of the group");
  }
  return intersect_subspace(g, Subspace::span(s, g.ambient_dim()));
}

/// H ⊆ G, checked against a prebuilt tester for G.
inline bool contains_group(const LocalizedGroup &h, const MembershipTester &g) {
  if (h.ambient_dim() != g.ambient_dim())
    throw DimensionError("contains_group: ambient dimensions differ");
  for (const auto &gen : h.generators()) {
    if (!g.contains(gen.vector))
      return false;
    for (const Integer &p : gen.primes)
      if (!g.divisible_span(p).contains(gen.vector))
        return false;
  }
  return true;
}

/// H ⊆ G as sets.
inline bool contains_group(const LocalizedGroup &h, const LocalizedGroup &g) {
  require_same_dim(h, g, "contains_group");
  return contains_group(h, MembershipTester(g));
}

inline bool equals_group(const LocalizedGroup &h, const LocalizedGroup &g) {
  return contains_group(h, g) && contains_group(g, h);
}

} // namespace khat
