#pragma once

// Membership in G = sum_j Z[1/P_j] v_j, decided prime by prime.
//
// Localizing at a prime q gives G_(q) = W_q + Z_(q)<v_j : q not in P_j>,
// where W_q = span{v_j : q in P_j} is q-divisible. A torsion-free group is
// the intersection of its localizations, so x is in G exactly when x lies
// in every G_(q). For q outside S = union of the P_j the localization is
// the plain lattice localized at q, so those infinitely many primes are
// handled by a single check on the Smith form of the whole generator
// matrix: the coordinates must have S-smooth denominators.
//
// For each q in S let R be an integer annihilator of W_q and M = L R V_J
// (L clears denominators). With U M V' = diag(d_i), the rows of
// T_q = diag(1/d_i) U L R give coordinates on G_(q)/W_q = Z_(q)^r, and
// x in G_(q) iff x in span(G) and T_q x is q-integral.

#include <cstddef>
#include <optional>
#include <vector>

#include "khat/localized_group.hpp"
#include "khat/normal_form.hpp"
#include "khat/primes.hpp"
#include "khat/subspace.hpp"

namespace khat {

class MembershipTester {
public:
  explicit MembershipTester(const LocalizedGroup &g)
      : dim_(g.ambient_dim()), span_(g.span()), primes_(g.generator_primes()) {
    std::vector<QVector> all = g.vectors();
    global_ = lattice_transform(QMatrix::identity(dim_), all);
    for (const Integer &q : primes_) {
      std::vector<QVector> divisible, lattice;
      for (const auto &gen : g.generators())
        (gen.primes.contains(q) ? divisible : lattice).push_back(gen.vector);
      Subspace w = Subspace::span(divisible, dim_);
      locals_.push_back({q, w, lattice_transform(to_rational(w.annihilator()), lattice)});
    }
  }

  [[nodiscard]] std::size_t ambient_dim() const { return dim_; }
  [[nodiscard]] const Subspace &span() const { return span_; }
  [[nodiscard]] const PrimeSet &primes() const { return primes_; }

  /// span{v_j : p in P_j}; zero when p occurs in no generator.
  [[nodiscard]] Subspace divisible_span(const Integer &p) const {
    for (const auto &l : locals_)
      if (l.q == p)
        return l.divisible;
    return Subspace::zero(dim_);
  }

  /// Coordinates on G_(q) for every q outside S.
  [[nodiscard]] const QMatrix &global_transform() const { return global_; }

  /// Coordinates on G_(q)/W_q; the global transform when q is not in S.
  [[nodiscard]] const QMatrix &local_transform(const Integer &q) const {
    for (const auto &l : locals_)
      if (l.q == q)
        return l.transform;
    return global_;
  }

  [[nodiscard]] bool contains(const QVector &x) const {
    check(x);
    if (!span_.contains(x))
      return false;
    for (const auto &l : locals_)
      for (const auto &c : l.transform * x)
        if (!is_p_integral(c, l.q))
          return false;
    for (const auto &c : global_ * x)
      if (strip_primes(Integer(c.get_den()), primes_.values()) != 1)
        return false;
    return true;
  }

  /// x / p^n in G for every n. By the localization lemma this is
  /// x in G and x in W_p.
  [[nodiscard]] bool infinitely_divisible(const QVector &x, const Integer &p) const {
    return contains(x) && divisible_span(p).contains(x);
  }

  /// Least k > 0 with k x in G; nullopt when x is outside span(G).
  [[nodiscard]] std::optional<Integer> order(const QVector &x) const {
    check(x);
    if (!span_.contains(x))
      return std::nullopt;
    Integer k = 1;
    for (const auto &l : locals_) {
      long worst = 0;
      for (const auto &c : l.transform * x) {
        auto v = valuation(c, l.q);
        if (v && *v < worst)
          worst = *v;
      }
      k *= pow(l.q, static_cast<unsigned long>(-worst));
    }
    for (const auto &c : global_ * x)
      k = lcm(k, strip_primes(Integer(c.get_den()), primes_.values()));
    return k;
  }

private:
  struct Local {
    Integer q;
    Subspace divisible;
    QMatrix transform;
  };

  /// diag(1/d_i) U L R restricted to the rank rows, where U (L R V) V' is
  /// the Smith form of the cleared matrix L R V.
  static QMatrix lattice_transform(const QMatrix &r, const std::vector<QVector> &vs) {
    const std::size_t d = r.cols();
    QMatrix v = QMatrix::from_columns(vs, d);
    QMatrix rv = r * v;
    Integer l = common_denominator(rv);
    SmithForm s = snf(to_integer(rv, l));
    QMatrix ur = to_rational(s.U) * r;
    QMatrix t(s.rank, d);
    for (std::size_t i = 0; i < s.rank; ++i) {
      Rational f = make_rational(l, s.S(i, i));
      for (std::size_t j = 0; j < d; ++j)
        t(i, j) = f * ur(i, j);
    }
    return t;
  }

  void check(const QVector &x) const {
    if (x.size() != dim_)
      throw DimensionError("membership: vector of length " + std::to_string(x.size()) +
                           " against ambient dimension " + std::to_string(dim_));
  }

  std::size_t dim_;
  Subspace span_;
  PrimeSet primes_;
  std::vector<Local> locals_;
  QMatrix global_;
};

inline void require_prime(const Integer &p) {
  if (!is_prime(p))
    throw ValidationError(p.get_str() + " is not prime");
}

inline bool member(const QVector &v, const LocalizedGroup &g) {
  require_dim(v, g, "member");
  return MembershipTester(g).contains(v);
}

inline bool is_inf_divisible(const QVector &v, const LocalizedGroup &g, const Integer &p) {
  require_dim(v, g, "is_inf_divisible");
  require_prime(p);
  return MembershipTester(g).infinitely_divisible(v, p);
}

/// Least k > 0 with k v in G, or nullopt when no multiple of v lies in G.
inline std::optional<Integer> order_in(const QVector &v, const LocalizedGroup &g) {
  require_dim(v, g, "order_in");
  return MembershipTester(g).order(v);
}

} // namespace khat
