#pragma once

// The class K̂(p1, p3, p4) and its two subclasses.
//
//   K1: G = p1^omega G and p^omega G = 0 for every other prime p.
//   K2: (a) for g in p1^omega G at most one z in p3^omega G has
//           g + z in p4^omega G;
//       (b) for g in p1^omega G some k > 0 and z in p3^omega G have
//           k g + z in p4^omega G.
//
// Every condition reduces to the rational spans W_p = span(p^omega G),
// which the localization lemma identifies with span{v_j : p in P_j}:
//   - p^omega G = 0 iff W_p = 0, and W_p = 0 for every p outside the
//     generator primes, so only finitely many primes need a look.
//   - G = p1^omega G iff span(G) ⊆ W_1.
//   - (a) iff W_3 ∩ W_4 = 0: a nonzero w in the intersection has a
//     nonzero multiple in G, which lies in both p^omega parts.
//   - (b) iff W_1 ⊆ W_3 + W_4: a witness means k g lies in the subgroup
//     p3^omega G + p4^omega G, whose rational span is W_3 + W_4, and every
//     element of that span has a multiple in the subgroup.

#include <optional>
#include <string>
#include <vector>

#include "khat/intersection.hpp"
#include "khat/linear.hpp"
#include "khat/localized_group.hpp"
#include "khat/membership.hpp"
#include "khat/prime_tuple.hpp"
#include "khat/subspace.hpp"

namespace khat {

/// Everything the K̂ procedures need about one group, computed once.
class KhatContext {
public:
  KhatContext(const LocalizedGroup &g, const PrimeTuple &primes)
      : group_(canonicalize(g)), primes_(primes), tester_(group_),
        w1_(tester_.divisible_span(primes.p1)), w3_(tester_.divisible_span(primes.p3)),
        w4_(tester_.divisible_span(primes.p4)) {}

  [[nodiscard]] const LocalizedGroup &group() const { return group_; }
  [[nodiscard]] const PrimeTuple &primes() const { return primes_; }
  [[nodiscard]] const MembershipTester &tester() const { return tester_; }
  [[nodiscard]] const Subspace &w1() const { return w1_; }
  [[nodiscard]] const Subspace &w3() const { return w3_; }
  [[nodiscard]] const Subspace &w4() const { return w4_; }

  [[nodiscard]] bool check_2a() const { return subspace_intersect(w3_, w4_).is_zero(); }
  [[nodiscard]] bool check_2b() const { return subspace_sum(w3_, w4_).contains(w1_); }

  /// g = a + b with a in W_3 and b in W_4; unique when (a) holds.
  [[nodiscard]] std::optional<std::pair<QVector, QVector>> decompose(const QVector &g) const {
    const std::size_t d = group_.ambient_dim();
    std::vector<QVector> cols = w3_.basis_vectors();
    for (auto &v : w4_.basis_vectors())
      cols.push_back(std::move(v));
    auto c = solve(QMatrix::from_columns(cols, d), g);
    if (!c)
      return std::nullopt;
    QVector a = zero_vector(d);
    for (std::size_t i = 0; i < w3_.dim(); ++i)
      for (std::size_t j = 0; j < d; ++j)
        a[j] += (*c)[i] * w3_.basis()(i, j);
    return std::pair{a, sub(g, a)};
  }

private:
  LocalizedGroup group_;
  PrimeTuple primes_;
  MembershipTester tester_;
  Subspace w1_, w3_, w4_;
};

inline bool check_2a(const LocalizedGroup &g, const PrimeTuple &p) {
  return KhatContext(g, p).check_2a();
}

inline bool check_2b(const LocalizedGroup &g, const PrimeTuple &p) {
  return KhatContext(g, p).check_2b();
}

enum class ClassKind { Zero, K1, K2, NotInKhat };
enum class FailureReason { FailsCond1AndCond2a, FailsCond1AndCond2b };

inline std::string to_string(ClassKind k) {
  switch (k) {
  case ClassKind::Zero:
    return "Zero";
  case ClassKind::K1:
    return "K1";
  case ClassKind::K2:
    return "K2";
  case ClassKind::NotInKhat:
    return "NotInKhat";
  }
  return "?";
}

inline std::string to_string(FailureReason r) {
  return r == FailureReason::FailsCond1AndCond2a ? "FailsCond1AndCond2a"
                                                 : "FailsCond1AndCond2b";
}

/// Classifier outcome. For NotInKhat the witness vectors certify the
/// failed checks; each is reproducible with membership and span tests.
struct ClassLabel {
  ClassKind kind = ClassKind::Zero;
  std::optional<FailureReason> reason;
  bool cond1 = false;
  bool cond2a = false;
  bool cond2b = false;
  /// Cond 1 failure: a generator outside W_1, or a prime q != p1 with
  /// q^omega G != 0 together with a nonzero element of it.
  std::optional<QVector> cond1_vector;
  std::optional<Integer> cond1_prime;
  /// Cond 2a failure: nonzero element of p3^omega G ∩ p4^omega G.
  std::optional<QVector> cond2a_vector;
  /// Cond 2b failure: element of p1^omega G with no witness for any k.
  std::optional<QVector> cond2b_vector;
};

namespace detail {

/// Smallest positive multiple of w (in span G) lying in G.
inline QVector into_group(const MembershipTester &t, const QVector &w) {
  auto k = t.order(w);
  if (!k)
    throw InvariantError("into_group: vector outside the span of the group");
  return scaled(w, Rational(*k));
}

} // namespace detail

inline ClassLabel classify(const KhatContext &ctx) {
  ClassLabel out;
  const LocalizedGroup &g = ctx.group();
  const PrimeTuple &p = ctx.primes();
  if (g.size() == 0) {
    out.kind = ClassKind::Zero;
    out.cond1 = out.cond2a = out.cond2b = true;
    return out;
  }

  out.cond1 = true;
  for (const auto &gen : g.generators())
    if (!ctx.w1().contains(gen.vector)) {
      out.cond1 = false;
      out.cond1_vector = gen.vector;
      break;
    }
  if (out.cond1)
    for (const Integer &q : g.generator_primes())
      if (q != p.p1) {
        out.cond1 = false;
        out.cond1_prime = q;
        out.cond1_vector = detail::into_group(
            ctx.tester(), ctx.tester().divisible_span(q).basis_vectors().front());
        break;
      }

  Subspace both = subspace_intersect(ctx.w3(), ctx.w4());
  out.cond2a = both.is_zero();
  if (!out.cond2a)
    out.cond2a_vector = detail::into_group(ctx.tester(), both.basis_vectors().front());

  Subspace reach = subspace_sum(ctx.w3(), ctx.w4());
  out.cond2b = true;
  for (const auto &w : ctx.w1().basis_vectors())
    if (!reach.contains(w)) {
      out.cond2b = false;
      out.cond2b_vector = detail::into_group(ctx.tester(), w);
      break;
    }

  if (out.cond1)
    out.kind = ClassKind::K1;
  else if (out.cond2a && out.cond2b)
    out.kind = ClassKind::K2;
  else {
    out.kind = ClassKind::NotInKhat;
    out.reason = out.cond2a ? FailureReason::FailsCond1AndCond2b
                            : FailureReason::FailsCond1AndCond2a;
  }
  return out;
}

inline ClassLabel classify(const LocalizedGroup &g, const PrimeTuple &p) {
  return classify(KhatContext(g, p));
}

inline bool in_khat(ClassKind k) { return k != ClassKind::NotInKhat; }

} // namespace khat
