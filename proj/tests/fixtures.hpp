#pragma once

// Groups and helpers shared by the test binaries.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "khat/khat.hpp"
#include "oracle/oracle.hpp"

namespace fixtures {

using namespace khat;

inline const PrimeTuple default_primes{};
inline const PrimeTuple alt_primes{11, 13, 17, 19};

inline QVector vec(std::initializer_list<const char *> xs) {
  QVector v;
  for (const char *x : xs)
    v.push_back(parse_rational(x));
  return v;
}

inline PrimeSet primes_of(std::initializer_list<long> ps) { return PrimeSet(ps); }

inline PrimeSet single(const Integer &p) { return PrimeSet(std::vector<Integer>{p}); }

/// Z[1/P] inside Q.
inline LocalizedGroup localized_line(const PrimeSet &ps) {
  return LocalizedGroup(1, {{vec({"1"}), ps}});
}

inline LocalizedGroup integers(std::size_t d = 1) {
  LocalizedGroup g(d);
  for (std::size_t i = 0; i < d; ++i)
    g.add({unit_vector(d, i), {}});
  return g;
}

/// Subgroup of G_U given by the presentation read off its p^omega parts.
inline LocalizedGroup expected_p_omega(std::size_t n, const IndexSet &u, const PrimeTuple &p,
                                       const Integer &q) {
  LocalizedGroup g(2 * n);
  if (q == p.p1)
    for (std::size_t a = 0; a < n; ++a)
      g.add({x_coord(n, a), single(p.p1)});
  else if (q == p.p3) {
    for (std::size_t a = 0; a < n; ++a)
      g.add({z_coord(n, a), single(p.p3)});
    for (auto b : u)
      g.add({z_coord(n, b), single(p.p5)});
  } else if (q == p.p4) {
    for (std::size_t a = 0; a < n; ++a)
      g.add({add(x_coord(n, a), z_coord(n, a)), single(p.p4)});
  } else if (q == p.p5) {
    for (auto b : u) {
      g.add({z_coord(n, b), single(p.p3)});
      g.add({z_coord(n, b), single(p.p5)});
    }
  }
  return g;
}

/// Nonzero K1 groups.
inline std::vector<LocalizedGroup> k1_fixtures(const PrimeTuple &p = default_primes) {
  return {
      localized_line(single(p.p1)),
      LocalizedGroup(2, {{vec({"1", "0"}), single(p.p1)}, {vec({"0", "1"}), single(p.p1)}}),
      build_G_base(1, p),
      build_G_base(2, p),
      LocalizedGroup(3, {{vec({"1", "1", "0"}), single(p.p1)},
                         {vec({"0", "3", "-1/5"}), single(p.p1)}}),
  };
}

/// Groups in K̂ of every kind.
inline std::vector<LocalizedGroup> khat_fixtures(const PrimeTuple &p = default_primes) {
  auto out = k1_fixtures(p);
  out.push_back(LocalizedGroup(2));
  out.push_back(build_G_U(1, {}, p));
  out.push_back(build_G_U(2, {1}, p));
  return out;
}

/// A broader pool, including groups outside K̂.
inline std::vector<LocalizedGroup> all_fixtures(const PrimeTuple &p = default_primes) {
  auto out = khat_fixtures(p);
  out.push_back(build_G_U(1, {0}, p));
  out.push_back(build_G_U(3, {0, 2}, p));
  out.push_back(direct_sum(localized_line(single(p.p1)), localized_line(single(p.p3))));
  out.push_back(integers(2));
  out.push_back(LocalizedGroup(2, {{vec({"1", "2"}), PrimeSet(std::vector<Integer>{p.p1, p.p3})},
                                   {vec({"1/3", "0"}), single(p.p4)},
                                   {vec({"0", "1"}), {}}}));
  return out;
}

/// Seeded random group: dimension 1..3, up to 3 generators with entries
/// in [-9, 9], prime sets drawn from the pool.
inline LocalizedGroup random_group(std::mt19937_64 &rng, const std::vector<long> &pool) {
  auto draw = [&rng](std::uint64_t n) { return static_cast<long>(rng() % n); };
  const std::size_t d = 1 + draw(3);
  const std::size_t count = 1 + draw(3);
  LocalizedGroup g(d);
  for (std::size_t i = 0; i < count; ++i) {
    QVector v(d);
    for (auto &x : v)
      x = Rational(draw(19) - 9);
    if (is_zero(v))
      v[0] = 1;
    std::vector<Integer> ps;
    for (long q : pool)
      if (draw(3) == 0)
        ps.push_back(q);
    g.add({v, PrimeSet(std::move(ps))});
  }
  return g;
}

/// Same group, generators reversed and rescaled by units of their rings.
inline LocalizedGroup permuted(const LocalizedGroup &g) {
  LocalizedGroup out(g.ambient_dim());
  const auto &gens = g.generators();
  for (auto it = gens.rbegin(); it != gens.rend(); ++it) {
    Rational unit = 1;
    for (const auto &p : it->primes)
      unit *= p;
    out.add({scaled(it->vector, -unit), it->primes});
  }
  return out;
}

/// Linear map determined by sending the vectors of `from` to those of `to`,
/// applied to v; nullopt when v is outside the span of `from`.
inline std::optional<QVector> apply_map(const std::vector<LocalizedGenerator> &from,
                                        const std::vector<LocalizedGenerator> &to,
                                        const QVector &v) {
  std::vector<QVector> cols;
  for (const auto &g : from)
    cols.push_back(g.vector);
  auto c = solve(QMatrix::from_columns(cols, v.size()), v);
  if (!c)
    return std::nullopt;
  QVector out = zero_vector(to.empty() ? v.size() : to.front().vector.size());
  for (std::size_t i = 0; i < to.size(); ++i)
    out = add(out, scaled(to[i].vector, (*c)[i]));
  return out;
}

/// Oracle membership, retried with larger exponent bounds before a "no"
/// is accepted.
inline oracle::Answer oracle_member_escalating(const QVector &v, const LocalizedGroup &g,
                                               unsigned start = 3, unsigned limit = 12) {
  for (unsigned e = start; e <= limit; e += 3)
    if (oracle::is_yes(oracle::oracle_member(v, g, {e, 8})))
      return oracle::Answer::Yes;
  return oracle::Answer::NoWithinBounds;
}

/// Candidate vectors for membership: elements built inside the bound and
/// perturbations of them.
inline QVector candidate(const LocalizedGroup &g, std::mt19937_64 &rng,
                         const std::vector<long> &pool) {
  QVector v = random_element(g, rng(), 3, 8);
  switch (rng() % 4) {
  case 0:
    return v;
  case 1: {
    const std::size_t i = rng() % v.size();
    const long q = (rng() % 2) ? pool[rng() % pool.size()] : 11 + 2 * static_cast<long>(rng() % 3);
    v[i] += make_rational(Integer(1), Integer(q));
    return v;
  }
  case 2: {
    const long q = pool[rng() % pool.size()];
    return scaled(v, make_rational(Integer(1), Integer(q)));
  }
  default:
    for (auto &x : v)
      x = make_rational(Integer(static_cast<long>(rng() % 13) - 6),
                        Integer(1 + static_cast<long>(rng() % 8)));
    return v;
  }
}

inline std::string describe(const QVector &v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i)
    out += (i ? ", " : "") + to_string(v[i]);
  return out + ")";
}

inline std::string describe(const LocalizedGroup &g) {
  std::string out = "<";
  for (const auto &gen : g.generators())
    out += " " + describe(gen.vector) + to_string(gen.primes);
  return out + " >";
}

struct Agreement {
  int yes = 0, no = 0;
  std::vector<std::string> disagreements;
};

/// member against the oracle on seeded random groups over the prime pool.
inline Agreement member_agreement(const std::vector<long> &pool, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  Agreement a;
  for (int t = 0; t < count; ++t) {
    const LocalizedGroup g = random_group(rng, pool);
    const QVector v = candidate(g, rng, pool);
    const bool main = member(v, g);
    const bool orc = oracle::is_yes(oracle_member_escalating(v, g));
    if (main != orc)
      a.disagreements.push_back("member=" + std::to_string(main) + " v=" + describe(v) +
                                " G=" + describe(g));
    ++(main ? a.yes : a.no);
  }
  return a;
}

} // namespace fixtures
