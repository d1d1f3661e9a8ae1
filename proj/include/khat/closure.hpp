#pragma once

// The closure cl(A): the least pure K̂-subgroup of an ambient K̂-group G
// containing A.
//
// Case 1 holds when some pure K1-subgroup of G contains A. The pure
// closure C = G ∩ span(A) lies inside every pure subgroup containing A and
// pure subgroups of K1-groups are K1, so case 1 holds iff C is K1 or zero,
// and then cl(A) = C.
//
// Case 2 alternates purification with adjoining witnesses z_g for the
// p1-divisible part. Witnesses compose linearly (k1 k2 (g + h) is matched
// by k2 z_g + k1 z_h), so handling the generators of the p1-divisible part
// covers all of it. Once the span stops growing the current group is pure
// and already holds every witness, so it is the closure. The span grows at
// most ambient_dim times.

#include <string>
#include <vector>

#include "khat/classify.hpp"
#include "khat/intersection.hpp"
#include "khat/witness.hpp"

namespace khat {

enum class StageKind { Span, Purify, Witness };

inline std::string to_string(StageKind k) {
  switch (k) {
  case StageKind::Span:
    return "span";
  case StageKind::Purify:
    return "purify";
  case StageKind::Witness:
    return "witness";
  }
  return "?";
}

struct ClosureStage {
  StageKind kind;
  LocalizedGroup group;
};

/// A witness adjoined during case 2: k parent + z lies in p4^omega G.
struct WitnessRecord {
  QVector parent;
  Integer k;
  QVector z;
};

struct ClosureTrace {
  std::vector<ClosureStage> stages;
  std::vector<WitnessRecord> witnesses;
  LocalizedGroup final;
  int closure_case = 1;
};

inline ClosureTrace closure_op(const std::vector<QVector> &elements, const LocalizedGroup &base,
                               const LocalizedGroup &ambient, const PrimeTuple &p) {
  require_same_dim(base, ambient, "closure_op");
  const KhatContext ctx(ambient, p);
  if (!in_khat(classify(ctx).kind))
    throw PreconditionError("closure_op: the ambient group is not in K̂");
  if (!contains_group(base, ctx.tester()))
    throw PreconditionError("closure_op: base is not a subgroup of the ambient group");
  for (std::size_t i = 0; i < elements.size(); ++i) {
    require_dim(elements[i], ambient, "closure_op");
    if (!ctx.tester().contains(elements[i]))
      throw PreconditionError("closure_op: element " + std::to_string(i) +
                              " is not in the ambient group");
  }

  const std::size_t d = ambient.ambient_dim();
  ClosureTrace trace;
  LocalizedGroup generated = base;
  for (const auto &e : elements)
    generated.add({e, {}});
  generated = canonicalize(generated);
  trace.stages.push_back({StageKind::Span, generated});

  Subspace span = generated.span();
  LocalizedGroup current = intersect_subspace(ctx.group(), span);
  trace.stages.push_back({StageKind::Purify, current});

  const ClassKind start = classify(current, p).kind;
  if (start == ClassKind::K1 || start == ClassKind::Zero) {
    trace.final = current;
    trace.closure_case = 1;
    return trace;
  }

  trace.closure_case = 2;
  const std::size_t cap = 3 * d + 3;
  for (std::size_t round = 0;; ++round) {
    if (round == cap)
      throw InvariantError("closure_op: no fixed point after " + std::to_string(cap) +
                           " rounds");
    LocalizedGroup divisible = intersect_subspace(current, ctx.w1());
    LocalizedGroup extended = current;
    std::vector<QVector> spanning = current.vectors();
    for (const auto &gen : divisible.generators()) {
      WitnessPair w = witness_unchecked(gen.vector, ctx);
      trace.witnesses.push_back({gen.vector, w.k, w.z});
      if (!is_zero(w.z)) {
        extended.add({w.z, {}});
        spanning.push_back(w.z);
      }
    }
    Subspace grown = Subspace::span(spanning, d);
    if (grown == span)
      break;
    trace.stages.push_back({StageKind::Witness, canonicalize(extended)});
    span = grown;
    current = intersect_subspace(ctx.group(), span);
    trace.stages.push_back({StageKind::Purify, current});
  }
  trace.final = current;
  return trace;
}

inline ClosureTrace closure_op(const std::vector<QVector> &elements,
                               const LocalizedGroup &ambient, const PrimeTuple &p) {
  return closure_op(elements, LocalizedGroup(ambient.ambient_dim()), ambient, p);
}

} // namespace khat
