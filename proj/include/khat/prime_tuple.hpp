#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "khat/errors.hpp"
#include "khat/primes.hpp"
#include "khat/rational.hpp"

namespace khat {

/// The primes (p1, p3, p4) fixing the class, plus p5 for the witness
/// families. All four must be distinct.
struct PrimeTuple {
  Integer p1 = 2, p3 = 3, p4 = 5, p5 = 7;

  PrimeTuple() = default;
  PrimeTuple(Integer a, Integer b, Integer c, Integer d)
      : p1(std::move(a)), p3(std::move(b)), p4(std::move(c)), p5(std::move(d)) {
    validate();
  }

  [[nodiscard]] std::array<Integer, 4> values() const { return {p1, p3, p4, p5}; }

  void validate() const {
    auto v = values();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!is_prime(v[i]))
        throw ValidationError("prime tuple entry " + v[i].get_str() + " is not prime");
      for (std::size_t j = 0; j < i; ++j)
        if (v[i] == v[j])
          throw ValidationError("prime tuple entries must be distinct, " + v[i].get_str() +
                                " repeats");
    }
  }

  bool operator==(const PrimeTuple &) const = default;
};

/// Parses "p1,p3,p4,p5".
inline PrimeTuple parse_prime_tuple(std::string_view text) {
  std::vector<Integer> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                     : comma - start);
    parts.push_back(parse_integer(piece));
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  if (parts.size() != 4)
    throw ValidationError("expected four primes p1,p3,p4,p5, got " +
                          std::to_string(parts.size()));
  return PrimeTuple(parts[0], parts[1], parts[2], parts[3]);
}

inline std::string to_string(const PrimeTuple &t) {
  return t.p1.get_str() + "," + t.p3.get_str() + "," + t.p4.get_str() + "," + t.p5.get_str();
}

} // namespace khat
