#pragma once

// Finitely presented subgroups of Q^d of the form
//
//     G = sum_j Z[1/P_j] * v_j,
//
// each generator pairing a vector v_j with a finite prime set P_j. Every
// group the library manipulates is a value of this type; the empty
// generator list is the zero group.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "khat/matrix.hpp"
#include "khat/primes.hpp"
#include "khat/subspace.hpp"

namespace khat {

struct LocalizedGenerator {
  QVector vector;
  PrimeSet primes;

  bool operator==(const LocalizedGenerator &) const = default;
};

class LocalizedGroup {
public:
  LocalizedGroup() = default;
  explicit LocalizedGroup(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}
  LocalizedGroup(std::size_t ambient_dim, std::vector<LocalizedGenerator> generators)
      : ambient_dim_(ambient_dim), generators_(std::move(generators)) {
    for (std::size_t i = 0; i < generators_.size(); ++i)
      if (generators_[i].vector.size() != ambient_dim_)
        throw DimensionError("generator " + std::to_string(i) + " has length " +
                             std::to_string(generators_[i].vector.size()) +
                             ", expected ambient dimension " + std::to_string(ambient_dim_));
  }

  static LocalizedGroup zero(std::size_t ambient_dim) { return LocalizedGroup(ambient_dim); }

  [[nodiscard]] std::size_t ambient_dim() const { return ambient_dim_; }
  [[nodiscard]] const std::vector<LocalizedGenerator> &generators() const { return generators_; }
  [[nodiscard]] std::size_t size() const { return generators_.size(); }

  void add(LocalizedGenerator g) {
    if (g.vector.size() != ambient_dim_)
      throw DimensionError("generator length differs from the ambient dimension");
    generators_.push_back(std::move(g));
  }

  [[nodiscard]] std::vector<QVector> vectors() const {
    std::vector<QVector> out;
    out.reserve(generators_.size());
    for (const auto &g : generators_)
      out.push_back(g.vector);
    return out;
  }

  /// Union of all generator prime sets.
  [[nodiscard]] PrimeSet generator_primes() const {
    PrimeSet out;
    for (const auto &g : generators_)
      out = out.united(g.primes);
    return out;
  }

  /// span{v_j : p in P_j}. By the localization lemma this is the rational
  /// span of the p-divisible part p^omega G.
  [[nodiscard]] Subspace divisible_span(const Integer &p) const {
    std::vector<QVector> vs;
    for (const auto &g : generators_)
      if (g.primes.contains(p))
        vs.push_back(g.vector);
    return Subspace::span(vs, ambient_dim_);
  }

  [[nodiscard]] Subspace span() const { return Subspace::span(vectors(), ambient_dim_); }

  /// Rational rank (dimension of the span).
  [[nodiscard]] std::size_t rank() const { return span().dim(); }

  /// Structural equality of presentations, not of groups.
  bool operator==(const LocalizedGroup &) const = default;

private:
  std::size_t ambient_dim_ = 0;
  std::vector<LocalizedGenerator> generators_;
};

inline void require_same_dim(const LocalizedGroup &a, const LocalizedGroup &b, const char *op) {
  if (a.ambient_dim() != b.ambient_dim())
    throw DimensionError(std::string(op) + ": groups live in Q^" +
                         std::to_string(a.ambient_dim()) + " and Q^" +
                         std::to_string(b.ambient_dim()));
}

inline void require_dim(const QVector &v, const LocalizedGroup &g, const char *op) {
  if (v.size() != g.ambient_dim())
    throw DimensionError(std::string(op) + ": vector of length " + std::to_string(v.size()) +
                         " against ambient dimension " + std::to_string(g.ambient_dim()));
}

/// Rescales v by the unique positive P-unit making min_i v_p(v_i) = 0 for
/// every p in P. When the denominators of v involve only primes of P the
/// result is integral with content coprime to P.
inline QVector canonical_vector(const QVector &v, const PrimeSet &primes) {
  Rational factor = 1;
  for (const Integer &p : primes) {
    std::optional<long> lowest;
    for (const auto &x : v) {
      auto val = valuation(x, p);
      if (val && (!lowest || *val < *lowest))
        lowest = val;
    }
    if (!lowest || *lowest == 0)
      continue;
    Integer pk = pow(p, static_cast<unsigned long>(*lowest > 0 ? *lowest : -*lowest));
    if (*lowest > 0)
      factor /= pk;
    else
      factor *= pk;
  }
  return factor == 1 ? v : scaled(v, factor);
}

/// Drops zero generators, rescales each vector to canonical form, removes
/// exact duplicates. First occurrences keep their order.
inline LocalizedGroup canonicalize(const LocalizedGroup &g) {
  LocalizedGroup out(g.ambient_dim());
  std::vector<LocalizedGenerator> seen;
  for (const auto &gen : g.generators()) {
    if (is_zero(gen.vector))
      continue;
    LocalizedGenerator c{canonical_vector(gen.vector, gen.primes), gen.primes};
    bool dup = false;
    for (const auto &s : seen)
      if (s == c) {
        dup = true;
        break;
      }
    if (dup)
      continue;
    seen.push_back(c);
    out.add(std::move(c));
  }
  return out;
}

inline LocalizedGroup sum_groups(const LocalizedGroup &a, const LocalizedGroup &b) {
  require_same_dim(a, b, "sum_groups");
  LocalizedGroup out = a;
  for (const auto &g : b.generators())
    out.add(g);
  return canonicalize(out);
}

/// Embeds v into Q^target at the given coordinate offset.
inline QVector pad_vector(const QVector &v, std::size_t offset, std::size_t target_dim) {
  if (offset + v.size() > target_dim)
    throw DimensionError("pad_vector: block does not fit");
  QVector out = zero_vector(target_dim);
  for (std::size_t i = 0; i < v.size(); ++i)
    out[offset + i] = v[i];
  return out;
}

/// Image of g under the block embedding Q^d -> Q^target at `offset`.
inline LocalizedGroup pad_group(const LocalizedGroup &g, std::size_t offset,
                                std::size_t target_dim) {
  LocalizedGroup out(target_dim);
  for (const auto &gen : g.generators())
    out.add({pad_vector(gen.vector, offset, target_dim), gen.primes});
  return out;
}

/// G ⊕ H inside Q^(d1 + d2).
inline LocalizedGroup direct_sum(const LocalizedGroup &a, const LocalizedGroup &b) {
  const std::size_t d = a.ambient_dim() + b.ambient_dim();
  LocalizedGroup out = pad_group(a, 0, d);
  const LocalizedGroup tail = pad_group(b, a.ambient_dim(), d);
  for (const auto &gen : tail.generators())
    out.add(gen);
  return canonicalize(out);
}

/// {n g : g in G}.
inline LocalizedGroup scale(const LocalizedGroup &g, const Integer &n) {
  if (n <= 0)
    throw ValidationError("scale: factor must be a positive integer");
  LocalizedGroup out(g.ambient_dim());
  for (const auto &gen : g.generators())
    out.add({scaled(gen.vector, Rational(n)), gen.primes});
  return canonicalize(out);
}

/// Image of G under the linear map x -> M x (M has ambient_dim columns).
inline LocalizedGroup map_group(const LocalizedGroup &g, const QMatrix &m) {
  if (m.cols() != g.ambient_dim())
    throw DimensionError("map_group: matrix width differs from the ambient dimension");
  LocalizedGroup out(m.rows());
  for (const auto &gen : g.generators())
    out.add({m * gen.vector, gen.primes});
  return canonicalize(out);
}

/// Deterministic pseudo-random element sum_j (a_j / m_j) v_j with
/// |a_j| <= coeff_bound and m_j a product of powers (each <= exponent_bound)
/// of the primes in P_j.
inline QVector random_element(const LocalizedGroup &g, std::uint64_t seed,
                              unsigned exponent_bound, unsigned coeff_bound) {
  std::mt19937_64 rng(seed);
  // Bounded draws by modulo keep the stream identical across standard libraries.
  auto draw = [&rng](std::uint64_t n) { return rng() % n; };
  QVector out = zero_vector(g.ambient_dim());
  for (const auto &gen : g.generators()) {
    long a = static_cast<long>(draw(2ull * coeff_bound + 1)) - static_cast<long>(coeff_bound);
    Integer m = 1;
    for (const Integer &p : gen.primes)
      m *= pow(p, static_cast<unsigned long>(draw(exponent_bound + 1ull)));
    if (a == 0)
      continue;
    Rational c = make_rational(Integer(a), m);
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] += c * gen.vector[i];
  }
  return out;
}

} // namespace khat
