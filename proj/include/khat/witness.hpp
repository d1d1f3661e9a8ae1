#pragma once

// Witnesses for condition (2)(b): given g in p1^omega G, a pair (k, z) with
// z in p3^omega G and k g + z in p4^omega G.
//
// Write g = a + b with a in W_3, b in W_4. Any witness has z in W_3 and
// k a + z in W_3 ∩ W_4 = 0, so z = -k a, and (k, -k a) is a witness iff
// k a and k b both lie in G. The least k is therefore the lcm of the
// orders of a and b modulo G.

#include <optional>

#include "khat/classify.hpp"

namespace khat {

struct WitnessPair {
  Integer k = 1;
  QVector z;

  bool operator==(const WitnessPair &) const = default;
};

/// Least-k witness for g. The caller guarantees G ∈ K2 and g ∈ p1^omega G.
inline WitnessPair witness_unchecked(const QVector &g, const KhatContext &ctx) {
  auto parts = ctx.decompose(g);
  if (!parts)
    throw InvariantError("find_witness: element outside W_3 + W_4 although (2)(b) holds");
  auto ka = ctx.tester().order(parts->first);
  auto kb = ctx.tester().order(parts->second);
  if (!ka || !kb)
    throw InvariantError("find_witness: decomposition left the span of the group");
  WitnessPair w;
  w.k = lcm(*ka, *kb);
  w.z = scaled(parts->first, Rational(-w.k));
  return w;
}

inline WitnessPair find_witness(const QVector &g, const KhatContext &ctx) {
  require_dim(g, ctx.group(), "find_witness");
  if (classify(ctx).kind != ClassKind::K2)
    throw PreconditionError("find_witness: the group is not in K2");
  if (!ctx.tester().infinitely_divisible(g, ctx.primes().p1))
    throw PreconditionError("find_witness: element is not in the p1^omega part");
  return witness_unchecked(g, ctx);
}

inline WitnessPair find_witness(const QVector &g, const LocalizedGroup &group,
                                const PrimeTuple &p) {
  return find_witness(g, KhatContext(group, p));
}

} // namespace khat
