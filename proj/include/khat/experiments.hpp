#pragma once

// Finite-rank experiments on the witness families: separation of the
// Galois types of z_0 over G_base(n), and the obstruction certificate
// against amalgamating G_base <= G_U, G_V.
//
// The certificate records checkable facts only. The step that turns them
// into an obstruction is logical: in any amalgam L in K̂, condition (2)(a)
// in L forces the two images of z_b to agree (both are the unique
// p3-divisible correction of x_b), but z_b is p5-divisible on one side and
// not on the other, and pure embeddings preserve and reflect that.

#include <cstddef>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "khat/classify.hpp"
#include "khat/families.hpp"
#include "khat/galois_type.hpp"
#include "khat/intersection.hpp"
#include "khat/purity.hpp"

namespace khat {

inline constexpr std::size_t default_experiment_cap = 4;

/// Why two types differ: z_beta is p5-divisible in G_{subsets[with]} and
/// not in G_{subsets[without]}.
struct DistinguishingFact {
  std::size_t with = 0, without = 0;
  std::size_t beta = 0;
  bool divisible_with = false;
  bool divisible_without = false;
};

struct InstabilityReport {
  std::size_t n = 0;
  PrimeTuple primes;
  std::vector<IndexSet> subsets;             ///< subsets[m] has bit mask m
  std::vector<std::vector<bool>> equal;      ///< pairwise gtype_equal
  std::vector<bool> closure_is_ambient;      ///< cl(z_0 ∪ G_base) = G_U per subset
  std::size_t distinct_types = 0;
  std::vector<DistinguishingFact> facts;     ///< one per unordered pair U != V
};

inline InstabilityReport instability_report(std::size_t n, const PrimeTuple &p,
                                            std::size_t cap = default_experiment_cap) {
  if (n == 0)
    throw ValidationError("instability: n must be at least 1");
  if (n > cap)
    throw ValidationError("instability: n = " + std::to_string(n) + " exceeds the cap " +
                          std::to_string(cap));
  InstabilityReport r;
  r.n = n;
  r.primes = p;
  const std::size_t count = std::size_t{1} << n;
  const LocalizedGroup base = build_G_base(n, p);
  const QVector z0 = z_coord(n, 0);

  std::vector<LocalizedGroup> ambients;
  for (std::size_t m = 0; m < count; ++m) {
    r.subsets.push_back(subset_from_mask(n, m));
    ambients.push_back(build_G_U(n, r.subsets.back(), p));
  }

  std::vector<std::future<GaloisTypeHandle>> pending;
  for (std::size_t m = 0; m < count; ++m)
    pending.push_back(std::async(std::launch::async, [&, m] {
      return gtype(z0, base, ambients[m], p);
    }));
  std::vector<GaloisTypeHandle> types;
  for (auto &f : pending)
    types.push_back(f.get());
  for (std::size_t m = 0; m < count; ++m)
    r.closure_is_ambient.push_back(equals_group(types[m].closure, ambients[m]));

  r.equal.assign(count, std::vector<bool>(count, false));
  std::vector<std::future<std::vector<bool>>> rows;
  for (std::size_t i = 0; i < count; ++i)
    rows.push_back(std::async(std::launch::async, [&, i] {
      std::vector<bool> row(count, false);
      for (std::size_t j = i; j < count; ++j)
        row[j] = gtype_equal(types[i], types[j]).equal;
      return row;
    }));
  for (std::size_t i = 0; i < count; ++i) {
    auto row = rows[i].get();
    for (std::size_t j = i; j < count; ++j)
      r.equal[i][j] = r.equal[j][i] = row[j];
  }

  for (std::size_t i = 0; i < count; ++i) {
    bool fresh = true;
    for (std::size_t j = 0; j < i; ++j)
      fresh = fresh && !r.equal[i][j];
    r.distinct_types += fresh ? 1 : 0;
  }

  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j) {
      const std::size_t diff = i ^ j;
      std::size_t beta = 0;
      while (!(diff >> beta & 1u))
        ++beta;
      DistinguishingFact f;
      f.with = (i >> beta & 1u) ? i : j;
      f.without = f.with == i ? j : i;
      f.beta = beta;
      f.divisible_with = is_inf_divisible(z_coord(n, beta), ambients[f.with], p.p5);
      f.divisible_without = is_inf_divisible(z_coord(n, beta), ambients[f.without], p.p5);
      r.facts.push_back(f);
    }
  return r;
}

// ---- amalgamation obstruction ---------------------------------------------

enum class FactKind { PureBase, PomegaMember, Check2a, InfDivisible };

inline std::string to_string(FactKind k) {
  switch (k) {
  case FactKind::PureBase:
    return "pure_base";
  case FactKind::PomegaMember:
    return "pomega_member";
  case FactKind::Check2a:
    return "check_2a";
  case FactKind::InfDivisible:
    return "inf_divisible";
  }
  return "?";
}

inline FactKind parse_fact_kind(const std::string &s) {
  for (FactKind k : {FactKind::PureBase, FactKind::PomegaMember, FactKind::Check2a,
                     FactKind::InfDivisible})
    if (to_string(k) == s)
      return k;
  throw ValidationError("unknown certificate fact kind '" + s + "'");
}

/// One claim about G_side (side 'U' or 'V'), expected to evaluate to
/// `expected`.
struct CertificateFact {
  std::string id; ///< F1..F4
  FactKind kind = FactKind::PureBase;
  char side = 'U';
  std::optional<QVector> vector;
  std::optional<Integer> prime;
  bool expected = true;
};

struct ObstructionCertificate {
  std::size_t n = 0;
  IndexSet u, v;
  PrimeTuple primes;
  std::size_t beta = 0;
  std::vector<CertificateFact> facts;
};

inline ObstructionCertificate amalgamation_certificate(std::size_t n, const IndexSet &u,
                                                       const IndexSet &v, const PrimeTuple &p) {
  require_family_params(n, u);
  require_family_params(n, v);
  if (u == v)
    throw ValidationError("amalgamation: U and V must differ");
  ObstructionCertificate c;
  c.n = n;
  c.u = u;
  c.v = v;
  c.primes = p;
  std::optional<std::size_t> beta;
  for (std::size_t i = 0; i < n && !beta; ++i)
    if (u.contains(i) != v.contains(i))
      beta = i;
  c.beta = *beta;

  for (char side : {'U', 'V'})
    c.facts.push_back({"F1", FactKind::PureBase, side, std::nullopt, std::nullopt, true});
  for (char side : {'U', 'V'})
    for (std::size_t a = 0; a < n; ++a) {
      c.facts.push_back({"F2", FactKind::PomegaMember, side, z_coord(n, a), p.p3, true});
      c.facts.push_back(
          {"F2", FactKind::PomegaMember, side, add(x_coord(n, a), z_coord(n, a)), p.p4, true});
    }
  for (char side : {'U', 'V'})
    c.facts.push_back({"F3", FactKind::Check2a, side, std::nullopt, std::nullopt, true});
  const char holder = u.contains(c.beta) ? 'U' : 'V';
  const char other = holder == 'U' ? 'V' : 'U';
  c.facts.push_back({"F4", FactKind::InfDivisible, holder, z_coord(n, c.beta), p.p5, true});
  c.facts.push_back({"F4", FactKind::InfDivisible, other, z_coord(n, c.beta), p.p5, false});
  return c;
}

struct CertificateCheck {
  bool verified = false;
  bool structure_ok = false;
  std::vector<bool> fact_ok; ///< evaluated value matches the expectation
  std::vector<bool> value;   ///< evaluated value
};

inline CertificateCheck verify_certificate(const ObstructionCertificate &c) {
  CertificateCheck out;
  c.primes.validate();
  require_family_params(c.n, c.u);
  require_family_params(c.n, c.v);
  const LocalizedGroup base = build_G_base(c.n, c.primes);
  const LocalizedGroup gu = build_G_U(c.n, c.u, c.primes);
  const LocalizedGroup gv = build_G_U(c.n, c.v, c.primes);

  out.structure_ok = c.u != c.v && c.beta < c.n && c.u.contains(c.beta) != c.v.contains(c.beta);
  bool f4_true = false, f4_false = false;
  for (const auto &f : c.facts) {
    const LocalizedGroup &g = f.side == 'U' ? gu : gv;
    if (f.side != 'U' && f.side != 'V')
      throw ValidationError("certificate fact side must be U or V");
    bool value = false;
    switch (f.kind) {
    case FactKind::PureBase:
      value = is_pure(base, g);
      break;
    case FactKind::PomegaMember:
      if (!f.vector || !f.prime)
        throw ValidationError("pomega_member fact needs a vector and a prime");
      value = member(*f.vector, p_omega(g, *f.prime));
      break;
    case FactKind::Check2a:
      value = check_2a(g, c.primes);
      break;
    case FactKind::InfDivisible:
      if (!f.vector || !f.prime)
        throw ValidationError("inf_divisible fact needs a vector and a prime");
      value = is_inf_divisible(*f.vector, g, *f.prime);
      if (f.id == "F4") {
        const bool holds_beta = (f.side == 'U' ? c.u : c.v).contains(c.beta);
        const bool names_beta = *f.vector == z_coord(c.n, c.beta) && *f.prime == c.primes.p5;
        f4_true = f4_true || (names_beta && holds_beta && f.expected);
        f4_false = f4_false || (names_beta && !holds_beta && !f.expected);
      }
      break;
    }
    out.value.push_back(value);
    out.fact_ok.push_back(value == f.expected);
  }
  out.structure_ok = out.structure_ok && f4_true && f4_false;
  out.verified = out.structure_ok;
  for (bool ok : out.fact_ok)
    out.verified = out.verified && ok;
  return out;
}

} // namespace khat
