#pragma once

// Hermite and Smith normal forms over the integers, with unimodular
// transforms. Dimensions here stay in the dozens, so plain gcd-based
// elimination is used without modular tricks.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "khat/matrix.hpp"

namespace khat {

struct HermiteForm {
  IntMatrix H; ///< row Hermite normal form of A
  IntMatrix U; ///< unimodular, U * A == H
  std::size_t rank = 0;
  std::vector<std::size_t> pivots; ///< pivot column of each nonzero row
};

struct SmithForm {
  IntMatrix U; ///< unimodular rows transform
  IntMatrix S; ///< diagonal, d1 | d2 | ... , d_i >= 0
  IntMatrix V; ///< unimodular column transform; U * A * V == S
  std::size_t rank = 0;

  [[nodiscard]] std::vector<Integer> invariant_factors() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < rank; ++i)
      d.push_back(S(i, i));
    return d;
  }
};

namespace detail {

struct Bezout {
  Integer g, s, t;
};

inline Bezout gcdext(const Integer &a, const Integer &b) {
  Bezout out;
  mpz_gcdext(out.g.get_mpz_t(), out.s.get_mpz_t(), out.t.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return out;
}

/// Replaces rows (r, i) of m by (s*r + t*i, -(b/g)*r + (a/g)*i), where a, b
/// are the entries of rows r, i in `col`. Determinant of the 2x2 block is 1.
inline void combine_rows(IntMatrix &m, IntMatrix &u, std::size_t r, std::size_t i,
                         std::size_t col) {
  const Integer a = m(r, col), b = m(i, col);
  Bezout z = gcdext(a, b);
  Integer ag = a / z.g, bg = b / z.g;
  auto apply = [&](IntMatrix &x) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      Integer xr = x(r, j), xi = x(i, j);
      x(r, j) = z.s * xr + z.t * xi;
      x(i, j) = ag * xi - bg * xr;
    }
  };
  apply(m);
  apply(u);
}

} // namespace detail

/// Row-style HNF: upper echelon, positive pivots, entries above each pivot
/// reduced into [0, pivot). Zero rows come last.
inline HermiteForm hnf(const IntMatrix &A) {
  HermiteForm out;
  out.H = A;
  out.U = IntMatrix::identity(A.rows());
  IntMatrix &H = out.H;
  std::size_t r = 0;
  for (std::size_t c = 0; c < H.cols() && r < H.rows(); ++c) {
    std::optional<std::size_t> nz;
    for (std::size_t i = r; i < H.rows(); ++i)
      if (H(i, c) != 0) {
        nz = i;
        break;
      }
    if (!nz)
      continue;
    H.swap_rows(r, *nz);
    out.U.swap_rows(r, *nz);
    for (std::size_t i = r + 1; i < H.rows(); ++i)
      if (H(i, c) != 0)
        detail::combine_rows(H, out.U, r, i, c);
    if (H(r, c) < 0) {
      for (std::size_t j = 0; j < H.cols(); ++j)
        H(r, j) = -H(r, j);
      for (std::size_t j = 0; j < out.U.cols(); ++j)
        out.U(r, j) = -out.U(r, j);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(H(i, c), H(r, c));
      if (q != 0) {
        H.add_row_multiple(i, r, Integer(-q));
        out.U.add_row_multiple(i, r, Integer(-q));
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  return out;
}

/// Smith normal form U * A * V = S with the divisibility chain enforced.
inline SmithForm snf(const IntMatrix &A) {
  SmithForm out;
  out.S = A;
  out.U = IntMatrix::identity(A.rows());
  out.V = IntMatrix::identity(A.cols());
  IntMatrix &S = out.S;
  const std::size_t m = S.rows(), n = S.cols();

  auto negate_row = [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j)
      S(i, j) = -S(i, j);
    for (std::size_t j = 0; j < m; ++j)
      out.U(i, j) = -out.U(i, j);
  };

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    // Bring a smallest nonzero entry of the trailing block to (t, t).
    auto place_min = [&]() -> bool {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (S(i, j) != 0 && (!best || abs(S(i, j)) < abs(S(best->first, best->second))))
            best = {i, j};
      if (!best)
        return false;
      S.swap_rows(t, best->first);
      out.U.swap_rows(t, best->first);
      S.swap_cols(t, best->second);
      out.V.swap_cols(t, best->second);
      return true;
    };
    if (!place_min())
      break;
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0)
          continue;
        Integer q = floor_div(S(i, t), S(t, t));
        S.add_row_multiple(i, t, Integer(-q));
        out.U.add_row_multiple(i, t, Integer(-q));
        if (S(i, t) != 0)
          dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0)
          continue;
        Integer q = floor_div(S(t, j), S(t, t));
        S.add_col_multiple(j, t, Integer(-q));
        out.V.add_col_multiple(j, t, Integer(-q));
        if (S(t, j) != 0)
          dirty = true;
      }
      if (dirty) {
        place_min();
        continue;
      }
      // Row and column t are clear; enforce divisibility of the rest.
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < m && !bad_row; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(i, j) % S(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row)
        break;
      S.add_row_multiple(t, *bad_row, Integer(1));
      out.U.add_row_multiple(t, *bad_row, Integer(1));
    }
    if (S(t, t) < 0)
      negate_row(t);
  }
  out.rank = t;
  return out;
}

/// Z-basis (as rows) of the integer kernel {x in Z^n : A x = 0}.
inline std::vector<IntVector> integer_kernel_basis(const IntMatrix &A) {
  // U * A^T = H; rows of U paired with zero rows of H span the left kernel
  // of A^T, which is the right kernel of A.
  HermiteForm h = hnf(A.transpose());
  std::vector<IntVector> out;
  for (std::size_t i = h.rank; i < h.U.rows(); ++i)
    out.push_back(h.U.row(i));
  return out;
}

/// Determinant via fraction-free elimination (Bareiss).
inline Integer determinant(IntMatrix a) {
  if (a.rows() != a.cols())
    throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0)
    return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0)
        ++p;
      if (p == n)
        return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

} // namespace khat
