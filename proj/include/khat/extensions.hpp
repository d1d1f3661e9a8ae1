#pragma once

// Extensions inside K̂: the joint-embedding witness, joint embeddings, and
// strictly larger extensions.
//
// For G in K1 pick a maximal independent set g_1..g_r among the generator
// vectors and new coordinates z_1..z_r. Then
//     H = <G, p3^-n z_i, p4^-n (g_i + z_i)>
// is in K2 and contains G (on the old coordinates) as a pure subgroup.

#include <cstddef>
#include <vector>

#include "khat/classify.hpp"
#include "khat/families.hpp"
#include "khat/linear.hpp"

namespace khat {

inline LocalizedGroup jep_witness(const LocalizedGroup &g, const PrimeTuple &p) {
  const LocalizedGroup gc = canonicalize(g);
  const ClassKind kind = classify(gc, p).kind;
  if (kind != ClassKind::K1 && kind != ClassKind::Zero)
    throw PreconditionError("jep_witness: the group must be K1 or zero, got " + to_string(kind));

  std::vector<QVector> independent;
  for (const auto &v : gc.vectors()) {
    independent.push_back(v);
    if (rank(QMatrix::from_rows(independent, gc.ambient_dim())) < independent.size())
      independent.pop_back();
  }
  const std::size_t d = gc.ambient_dim();
  const std::size_t r = independent.size();
  LocalizedGroup h = pad_group(gc, 0, d + r);
  for (std::size_t i = 0; i < r; ++i)
    h.add({unit_vector(d + r, d + i), PrimeSet(std::vector<Integer>{p.p3})});
  for (std::size_t i = 0; i < r; ++i) {
    QVector v = pad_vector(independent[i], 0, d + r);
    v[d + i] += 1;
    h.add({v, PrimeSet(std::vector<Integer>{p.p4})});
  }
  return canonicalize(h);
}

/// A common K̂ extension of two groups; group i sits at coordinates
/// [offset_i, offset_i + dim_i) of H.
struct JointEmbedding {
  LocalizedGroup h;
  std::size_t offset1 = 0, offset2 = 0;
};

inline JointEmbedding joint_embed(const LocalizedGroup &g1, const LocalizedGroup &g2,
                                  const PrimeTuple &p) {
  auto lift = [&](const LocalizedGroup &g) {
    const ClassKind kind = classify(g, p).kind;
    if (kind == ClassKind::NotInKhat)
      throw PreconditionError("joint_embed: input group is not in K̂");
    return kind == ClassKind::K1 ? jep_witness(g, p) : canonicalize(g);
  };
  LocalizedGroup l1 = lift(g1);
  LocalizedGroup l2 = lift(g2);
  JointEmbedding out;
  out.offset2 = l1.ambient_dim();
  out.h = direct_sum(l1, l2);
  return out;
}

/// A strictly larger group in K̂ containing G purely on its first
/// coordinates.
inline LocalizedGroup proper_extension(const LocalizedGroup &g, const PrimeTuple &p) {
  const ClassKind kind = classify(g, p).kind;
  switch (kind) {
  case ClassKind::K1:
    return jep_witness(g, p);
  case ClassKind::Zero:
  case ClassKind::K2:
    return direct_sum(canonicalize(g), build_G_U(1, {}, p));
  case ClassKind::NotInKhat:
    break;
  }
  throw PreconditionError("proper_extension: the group is not in K̂");
}

} // namespace khat
