#pragma once

// Galois types of an element over a base, and their equality.
//
// Two triples (b1, A, N1) and (b2, A, N2) have the same type iff some
// isomorphism cl(A ∪ b1) -> cl(A ∪ b2) fixes A pointwise and sends b1 to
// b2. Such a map is forced on every vector the closure was built from:
// the identity on A, b1 -> b2, and each adjoined witness z for a parent u
// must go to the unique witness in N2 for f(u) with the same k. Those
// vectors span the closure, so there is at most one candidate; the types
// agree exactly when the candidate is a well-defined injective linear map
// carrying the first closure onto the second.

#include <optional>
#include <string>
#include <vector>

#include "khat/closure.hpp"
#include "khat/purity.hpp"

namespace khat {

enum class ProvenanceKind { FromBase, FromElement, ForcedByDivision, ForcedWitness };

inline std::string to_string(ProvenanceKind k) {
  switch (k) {
  case ProvenanceKind::FromBase:
    return "from_base";
  case ProvenanceKind::FromElement:
    return "from_element";
  case ProvenanceKind::ForcedByDivision:
    return "forced_by_division";
  case ProvenanceKind::ForcedWitness:
    return "forced_witness";
  }
  return "?";
}

struct ProvenanceTag {
  ProvenanceKind kind = ProvenanceKind::ForcedByDivision;
  std::optional<Integer> k;       ///< forced_witness only
  std::optional<QVector> parent;  ///< forced_witness only
};

struct GaloisTypeHandle {
  LocalizedGroup ambient;
  LocalizedGroup base;
  QVector element;
  PrimeTuple primes;
  ClosureTrace trace;
  LocalizedGroup closure;
  std::vector<ProvenanceTag> provenance; ///< one per closure generator
};

namespace detail {

inline bool parallel(const QVector &a, const QVector &b) {
  if (is_zero(a) || is_zero(b))
    return false;
  return rank(QMatrix::from_rows({a, b}, a.size())) == 1;
}

inline ProvenanceTag tag_generator(const LocalizedGenerator &gen, const LocalizedGroup &base,
                                   const QVector &element, const ClosureTrace &trace) {
  if (contains_group(LocalizedGroup(base.ambient_dim(), {gen}), base))
    return {ProvenanceKind::FromBase, std::nullopt, std::nullopt};
  for (const auto &w : trace.witnesses)
    if (parallel(gen.vector, w.z))
      return {ProvenanceKind::ForcedWitness, w.k, w.parent};
  if (parallel(gen.vector, element))
    return {ProvenanceKind::FromElement, std::nullopt, std::nullopt};
  return {ProvenanceKind::ForcedByDivision, std::nullopt, std::nullopt};
}

} // namespace detail

inline GaloisTypeHandle gtype(const QVector &b, const LocalizedGroup &base,
                              const LocalizedGroup &ambient, const PrimeTuple &p) {
  require_same_dim(base, ambient, "gtype");
  require_dim(b, ambient, "gtype");
  if (!contains_group(base, ambient))
    throw PreconditionError("gtype: base is not a subgroup of the ambient group");
  if (!is_pure(base, ambient))
    throw PreconditionError("gtype: base is not pure in the ambient group");
  if (!member(b, ambient))
    throw PreconditionError("gtype: element is not in the ambient group");

  GaloisTypeHandle t;
  t.ambient = canonicalize(ambient);
  t.base = canonicalize(base);
  t.element = b;
  t.primes = p;
  t.trace = closure_op({b}, t.base, t.ambient, p);
  t.closure = t.trace.final;
  for (const auto &gen : t.closure.generators())
    t.provenance.push_back(detail::tag_generator(gen, t.base, b, t.trace));
  return t;
}

struct TypeComparison {
  bool equal = false;
  std::string reason;
  /// Images of the first closure's generators when equal.
  std::vector<LocalizedGenerator> iso_images;
};

namespace detail {

/// Linear extension of the pairs (x_i -> y_i) applied to v, when v is in
/// span(x_i).
inline std::optional<QVector> extend(const std::vector<QVector> &xs,
                                     const std::vector<QVector> &ys, const QVector &v) {
  const std::size_t d = v.size();
  auto c = solve(QMatrix::from_columns(xs, d), v);
  if (!c)
    return std::nullopt;
  QVector out = zero_vector(ys.empty() ? d : ys.front().size());
  for (std::size_t i = 0; i < ys.size(); ++i)
    if ((*c)[i] != 0)
      out = add(out, scaled(ys[i], (*c)[i]));
  return out;
}

} // namespace detail

inline TypeComparison gtype_equal(const GaloisTypeHandle &t1, const GaloisTypeHandle &t2) {
  if (!(t1.base == t2.base))
    throw PreconditionError("gtype_equal: the two types are over different base presentations");
  if (!(t1.primes == t2.primes))
    throw PreconditionError("gtype_equal: the two types use different prime tuples");

  TypeComparison out;
  const std::size_t d = t1.ambient.ambient_dim();
  const KhatContext target(t2.ambient, t2.primes);
  std::vector<QVector> xs, ys;
  for (const auto &gen : t1.base.generators()) {
    xs.push_back(gen.vector);
    ys.push_back(gen.vector);
  }
  xs.push_back(t1.element);
  ys.push_back(t2.element);

  for (const auto &w : t1.trace.witnesses) {
    auto fu = detail::extend(xs, ys, w.parent);
    if (!fu)
      throw InvariantError("gtype_equal: witness parent outside the spanned part of the closure");
    auto parts = target.decompose(*fu);
    if (!parts) {
      out.reason = "image of a p1-divisible element has no witness in the second ambient group";
      return out;
    }
    xs.push_back(w.z);
    ys.push_back(scaled(parts->first, Rational(-w.k)));
  }

  const QMatrix x = QMatrix::from_rows(xs, d);
  const QMatrix y = QMatrix::from_rows(ys, t2.ambient.ambient_dim());
  QMatrix joint(xs.size(), d + y.cols());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j)
      joint(i, j) = x(i, j);
    for (std::size_t j = 0; j < y.cols(); ++j)
      joint(i, d + j) = y(i, j);
  }
  const std::size_t rx = rank(x);
  if (rank(joint) != rx) {
    out.reason = "forced assignments are not consistent with a linear map";
    return out;
  }
  if (rank(y) != rx) {
    out.reason = "forced map is not injective";
    return out;
  }

  LocalizedGroup image(t2.ambient.ambient_dim());
  for (const auto &gen : t1.closure.generators()) {
    auto fy = detail::extend(xs, ys, gen.vector);
    if (!fy)
      throw InvariantError("gtype_equal: closure generator outside the forced span");
    image.add({*fy, gen.primes});
  }
  if (!equals_group(image, t2.closure)) {
    out.reason = "forced map does not carry the first closure onto the second";
    return out;
  }
  out.equal = true;
  out.iso_images = image.generators();
  return out;
}

} // namespace khat
