#pragma once

// JSON serialization. Groups use
//   {"ambient_dim": d, "generators": [{"vector": ["a/b", ...], "primes": [2, 5]}]}
// with rationals as lowest-terms strings. Loading validates and
// canonicalizes; errors name the offending location.

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "khat/classify.hpp"
#include "khat/closure.hpp"
#include "khat/experiments.hpp"
#include "khat/galois_type.hpp"
#include "khat/localized_group.hpp"

namespace khat {

using Json = nlohmann::json;

// ---- scalars and vectors ---------------------------------------------------

inline bool is_index(const Json &j) {
  return j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0);
}

inline Json to_json(const Rational &r) { return to_string(r); }

inline Json to_json(const Integer &z) {
  if (z.fits_slong_p())
    return z.get_si();
  return z.get_str();
}

inline Json to_json(const QVector &v) {
  Json out = Json::array();
  for (const auto &x : v)
    out.push_back(to_string(x));
  return out;
}

inline Rational rational_from_json(const Json &j, const std::string &where) {
  if (j.is_string())
    try {
      return parse_rational(j.get<std::string>());
    } catch (const ValidationError &e) {
      throw ValidationError(where + ": " + e.what());
    }
  if (j.is_number_integer())
    return Rational(Integer(j.dump(), 10));
  throw ValidationError(where + ": expected a rational string such as \"3/4\"");
}

inline Integer integer_from_json(const Json &j, const std::string &where) {
  if (j.is_number_integer())
    return Integer(j.dump(), 10);
  if (j.is_string())
    try {
      return parse_integer(j.get<std::string>());
    } catch (const ValidationError &e) {
      throw ValidationError(where + ": " + e.what());
    }
  throw ValidationError(where + ": expected an integer");
}

inline QVector vector_from_json(const Json &j, const std::string &where) {
  if (!j.is_array())
    throw ValidationError(where + ": expected an array of rationals");
  QVector v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

/// Parses "a,b/c,..." (the empty string is the empty vector).
inline QVector parse_vector(const std::string &text) {
  QVector v;
  if (text.find_first_not_of(" \t") == std::string::npos)
    return v;
  std::size_t start = 0;
  for (;;) {
    auto comma = text.find(',', start);
    v.push_back(parse_rational(text.substr(start, comma - start)));
    if (comma == std::string::npos)
      return v;
    start = comma + 1;
  }
}

// ---- groups -----------------------------------------------------------------

inline Json to_json(const PrimeSet &ps) {
  Json out = Json::array();
  for (const auto &p : ps)
    out.push_back(to_json(p));
  return out;
}

inline Json to_json(const LocalizedGroup &g) {
  const LocalizedGroup c = canonicalize(g);
  Json gens = Json::array();
  for (const auto &gen : c.generators())
    gens.push_back({{"vector", to_json(gen.vector)}, {"primes", to_json(gen.primes)}});
  return {{"ambient_dim", c.ambient_dim()}, {"generators", gens}};
}

inline LocalizedGroup group_from_json(const Json &j, const std::string &where = "group") {
  if (!j.is_object())
    throw ValidationError(where + ": expected an object");
  if (!j.contains("ambient_dim") || !is_index(j["ambient_dim"]))
    throw ValidationError(where + ".ambient_dim: expected a nonnegative integer");
  if (!j.contains("generators") || !j["generators"].is_array())
    throw ValidationError(where + ".generators: expected an array");
  const std::size_t d = j["ambient_dim"].get<std::size_t>();
  LocalizedGroup g(d);
  const Json &gens = j["generators"];
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string at = where + ".generators[" + std::to_string(i) + "]";
    const Json &gen = gens[i];
    if (!gen.is_object() || !gen.contains("vector"))
      throw ValidationError(at + ": expected an object with \"vector\" and \"primes\"");
    QVector v = vector_from_json(gen["vector"], at + ".vector");
    if (v.size() != d)
      throw DimensionError(at + ".vector: length " + std::to_string(v.size()) +
                           " differs from ambient_dim " + std::to_string(d));
    std::vector<Integer> ps;
    if (gen.contains("primes")) {
      if (!gen["primes"].is_array())
        throw ValidationError(at + ".primes: expected an array of primes");
      for (std::size_t k = 0; k < gen["primes"].size(); ++k) {
        const std::string pat = at + ".primes[" + std::to_string(k) + "]";
        Integer p = integer_from_json(gen["primes"][k], pat);
        if (!is_prime(p))
          throw ValidationError(pat + ": " + p.get_str() + " is not prime");
        ps.push_back(p);
      }
    }
    g.add({std::move(v), PrimeSet(std::move(ps))});
  }
  return canonicalize(g);
}

// ---- reports ------------------------------------------------------------------

inline Json to_json(const PrimeTuple &p) {
  return {{"p1", to_json(p.p1)}, {"p3", to_json(p.p3)}, {"p4", to_json(p.p4)},
          {"p5", to_json(p.p5)}};
}

inline Json to_json(const IndexSet &s) {
  Json out = Json::array();
  for (auto i : s)
    out.push_back(i);
  return out;
}

inline Json to_json(const ClassLabel &l) {
  Json out = {{"label", to_string(l.kind)},
              {"checks", {{"cond1", l.cond1}, {"cond2a", l.cond2a}, {"cond2b", l.cond2b}}}};
  if (l.reason)
    out["reason"] = to_string(*l.reason);
  Json witness = Json::object();
  if (l.cond1_vector)
    witness["cond1_vector"] = to_json(*l.cond1_vector);
  if (l.cond1_prime)
    witness["cond1_prime"] = to_json(*l.cond1_prime);
  if (l.cond2a_vector)
    witness["cond2a_vector"] = to_json(*l.cond2a_vector);
  if (l.cond2b_vector)
    witness["cond2b_vector"] = to_json(*l.cond2b_vector);
  if (!witness.empty())
    out["witness"] = witness;
  return out;
}

inline Json to_json(const ClosureTrace &t) {
  Json stages = Json::array();
  for (const auto &s : t.stages)
    stages.push_back({{"kind", to_string(s.kind)}, {"group", to_json(s.group)}});
  Json witnesses = Json::array();
  for (const auto &w : t.witnesses)
    witnesses.push_back(
        {{"parent", to_json(w.parent)}, {"k", to_json(w.k)}, {"z", to_json(w.z)}});
  return {{"case", t.closure_case},
          {"final", to_json(t.final)},
          {"stages", stages},
          {"witnesses", witnesses}};
}

inline Json to_json(const GaloisTypeHandle &t) {
  Json tags = Json::array();
  for (std::size_t i = 0; i < t.provenance.size(); ++i) {
    const auto &p = t.provenance[i];
    Json tag = {{"generator", i}, {"tag", to_string(p.kind)}};
    if (p.k)
      tag["k"] = to_json(*p.k);
    if (p.parent)
      tag["parent"] = to_json(*p.parent);
    tags.push_back(tag);
  }
  return {{"element", to_json(t.element)},
          {"closure", to_json(t.closure)},
          {"case", t.trace.closure_case},
          {"provenance", tags}};
}

inline Json to_json(const TypeComparison &c) {
  Json out = {{"equal", c.equal}};
  if (c.equal) {
    Json images = Json::array();
    for (const auto &g : c.iso_images)
      images.push_back({{"vector", to_json(g.vector)}, {"primes", to_json(g.primes)}});
    out["iso_images"] = images;
  } else {
    out["reason"] = c.reason;
  }
  return out;
}

inline Json to_json(const InstabilityReport &r) {
  Json subsets = Json::array();
  for (const auto &s : r.subsets)
    subsets.push_back(to_json(s));
  Json matrix = Json::array();
  for (const auto &row : r.equal) {
    Json jr = Json::array();
    for (bool b : row)
      jr.push_back(b);
    matrix.push_back(jr);
  }
  Json facts = Json::array();
  for (const auto &f : r.facts)
    facts.push_back({{"with", to_json(r.subsets[f.with])},
                     {"without", to_json(r.subsets[f.without])},
                     {"beta", f.beta},
                     {"p5_divisible_with", f.divisible_with},
                     {"p5_divisible_without", f.divisible_without}});
  Json closure = Json::array();
  for (bool b : r.closure_is_ambient)
    closure.push_back(b);
  return {{"n", r.n},
          {"subsets", subsets},
          {"equality_matrix", matrix},
          {"distinct_types", r.distinct_types},
          {"expected_types", std::size_t{1} << r.n},
          {"closure_is_ambient", closure},
          {"distinguishing_facts", facts}};
}

inline Json to_json(const ObstructionCertificate &c) {
  Json facts = Json::array();
  for (const auto &f : c.facts) {
    Json jf = {{"id", f.id},
               {"kind", to_string(f.kind)},
               {"side", std::string(1, f.side)},
               {"expected", f.expected}};
    if (f.vector)
      jf["vector"] = to_json(*f.vector);
    if (f.prime)
      jf["prime"] = to_json(*f.prime);
    facts.push_back(jf);
  }
  return {{"n", c.n},   {"U", to_json(c.u)},           {"V", to_json(c.v)},
          {"beta", c.beta}, {"primes", to_json(c.primes)}, {"facts", facts}};
}

inline IndexSet index_set_from_json(const Json &j, const std::string &where) {
  if (!j.is_array())
    throw ValidationError(where + ": expected an array of indices");
  IndexSet s;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!is_index(j[i]))
      throw ValidationError(where + "[" + std::to_string(i) + "]: expected an index");
    s.insert(j[i].get<std::size_t>());
  }
  return s;
}

inline ObstructionCertificate certificate_from_json(const Json &j) {
  const std::string where = "certificate";
  if (!j.is_object())
    throw ValidationError(where + ": expected an object");
  for (const char *key : {"n", "U", "V", "beta", "primes", "facts"})
    if (!j.contains(key))
      throw ValidationError(where + ": missing \"" + key + "\"");
  if (!is_index(j["n"]) || !is_index(j["beta"]))
    throw ValidationError(where + ": n and beta must be nonnegative integers");
  ObstructionCertificate c;
  c.n = j["n"].get<std::size_t>();
  c.beta = j["beta"].get<std::size_t>();
  c.u = index_set_from_json(j["U"], where + ".U");
  c.v = index_set_from_json(j["V"], where + ".V");
  const Json &p = j["primes"];
  if (!p.is_object())
    throw ValidationError(where + ".primes: expected an object with p1, p3, p4, p5");
  for (const char *key : {"p1", "p3", "p4", "p5"})
    if (!p.contains(key))
      throw ValidationError(where + ".primes: missing \"" + key + "\"");
  c.primes = PrimeTuple(integer_from_json(p["p1"], where + ".primes.p1"),
                        integer_from_json(p["p3"], where + ".primes.p3"),
                        integer_from_json(p["p4"], where + ".primes.p4"),
                        integer_from_json(p["p5"], where + ".primes.p5"));
  if (!j["facts"].is_array())
    throw ValidationError(where + ".facts: expected an array");
  for (std::size_t i = 0; i < j["facts"].size(); ++i) {
    const std::string at = where + ".facts[" + std::to_string(i) + "]";
    const Json &jf = j["facts"][i];
    if (!jf.is_object() || !jf.contains("id") || !jf.contains("kind") || !jf.contains("side") ||
        !jf.contains("expected"))
      throw ValidationError(at + ": expected id, kind, side and expected");
    CertificateFact f;
    f.id = jf["id"].get<std::string>();
    f.kind = parse_fact_kind(jf["kind"].get<std::string>());
    const std::string side = jf["side"].get<std::string>();
    if (side != "U" && side != "V")
      throw ValidationError(at + ".side: must be \"U\" or \"V\"");
    f.side = side[0];
    if (!jf["expected"].is_boolean())
      throw ValidationError(at + ".expected: must be a boolean");
    f.expected = jf["expected"].get<bool>();
    if (jf.contains("vector")) {
      f.vector = vector_from_json(jf["vector"], at + ".vector");
      if (f.vector->size() != 2 * c.n)
        throw DimensionError(at + ".vector: length must be 2n");
    }
    if (jf.contains("prime"))
      f.prime = integer_from_json(jf["prime"], at + ".prime");
    c.facts.push_back(std::move(f));
  }
  return c;
}

inline Json to_json(const CertificateCheck &c) {
  Json per = Json::array();
  for (std::size_t i = 0; i < c.fact_ok.size(); ++i)
    per.push_back({{"index", i}, {"value", bool(c.value[i])}, {"verified", bool(c.fact_ok[i])}});
  return {{"verified", c.verified}, {"structure_ok", c.structure_ok}, {"facts", per}};
}

} // namespace khat
