#pragma once

// Exact linear algebra over the rationals.

#include <cstddef>
#include <optional>
#include <vector>

#include "khat/matrix.hpp"

namespace khat {

struct RowEchelon {
  QMatrix R; ///< reduced row echelon form; zero rows last
  std::vector<std::size_t> pivots;
  [[nodiscard]] std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination to the unique reduced row echelon form.
inline RowEchelon rref(QMatrix A) {
  RowEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < A.cols() && r < A.rows(); ++c) {
    std::size_t p = r;
    while (p < A.rows() && A(p, c) == 0)
      ++p;
    if (p == A.rows())
      continue;
    A.swap_rows(r, p);
    Rational inv = 1 / A(r, c);
    for (std::size_t j = c; j < A.cols(); ++j)
      A(r, j) *= inv;
    for (std::size_t i = 0; i < A.rows(); ++i) {
      if (i == r || A(i, c) == 0)
        continue;
      Rational f = -A(i, c);
      A.add_row_multiple(i, r, f);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.R = std::move(A);
  return out;
}

inline std::size_t rank(const QMatrix &A) { return rref(A).rank(); }

/// Basis of {x : A x = 0}, one vector per free column; empty iff the
/// kernel is trivial.
inline std::vector<QVector> kernel_basis(const QMatrix &A) {
  RowEchelon e = rref(A);
  std::vector<bool> is_pivot(A.cols(), false);
  for (auto c : e.pivots)
    is_pivot[c] = true;
  std::vector<QVector> out;
  for (std::size_t f = 0; f < A.cols(); ++f) {
    if (is_pivot[f])
      continue;
    QVector x = zero_vector(A.cols());
    x[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
      x[e.pivots[i]] = -e.R(i, f);
    out.push_back(std::move(x));
  }
  return out;
}

/// Some x with A x = b, or nullopt when the system is inconsistent. Free
/// variables are set to zero.
inline std::optional<QVector> solve(const QMatrix &A, const QVector &b) {
  if (b.size() != A.rows())
    throw DimensionError("solve: right-hand side has the wrong length");
  QMatrix aug(A.rows(), A.cols() + 1);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j)
      aug(i, j) = A(i, j);
    aug(i, A.cols()) = b[i];
  }
  RowEchelon e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == A.cols())
    return std::nullopt;
  QVector x = zero_vector(A.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i)
    x[e.pivots[i]] = e.R(i, A.cols());
  return x;
}

/// Rank of an integer-valued rational matrix reduced modulo the prime p.
/// Entries must be p-integral.
inline std::size_t rank_mod_p(const QMatrix &A, const Integer &p) {
  IntMatrix m(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      m(i, j) = reduce_mod(A(i, j), p);
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0)
      ++piv;
    if (piv == m.rows())
      continue;
    m.swap_rows(r, piv);
    Integer inv;
    mpz_invert(inv.get_mpz_t(), m(r, c).get_mpz_t(), p.get_mpz_t());
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0)
        continue;
      Integer f = m(i, c) * inv;
      for (std::size_t j = c; j < m.cols(); ++j) {
        m(i, j) -= f * m(r, j);
        mpz_fdiv_r(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), p.get_mpz_t());
      }
    }
    ++r;
  }
  return r;
}

} // namespace khat
