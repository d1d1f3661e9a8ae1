#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "khat/errors.hpp"
#include "khat/rational.hpp"

namespace khat {

using QVector = std::vector<Rational>;
using IntVector = std::vector<Integer>;

/// Dense row-major matrix. Zero rows or zero columns are legal.
template <class T> class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }

  /// Every row must have length `cols`; `cols` is explicit so that a matrix
  /// with no rows still knows its width.
  static Matrix from_rows(const std::vector<std::vector<T>> &rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols)
        throw DimensionError("from_rows: ragged row");
      for (std::size_t j = 0; j < cols; ++j)
        m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>> &rows) {
    if (rows.empty())
      return Matrix();
    return from_rows(rows, rows.front().size());
  }

  static Matrix from_columns(const std::vector<std::vector<T>> &cols, std::size_t rows) {
    return from_rows(cols, rows).transpose();
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool empty() const { return rows_ == 0 || cols_ == 0; }

  T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row_span(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row_span(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  [[nodiscard]] std::vector<T> row(std::size_t i) const {
    auto r = row_span(i);
    return {r.begin(), r.end()};
  }
  [[nodiscard]] std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      c[i] = (*this)(i, j);
    return c;
  }
  [[nodiscard]] std::vector<std::vector<T>> row_list() const {
    std::vector<std::vector<T>> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      out.push_back(row(i));
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t i = 0; i < rows_; ++i)
      std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const T &factor) {
    for (std::size_t j = 0; j < cols_; ++j)
      (*this)(dst, j) += factor * (*this)(src, j);
  }
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const T &factor) {
    for (std::size_t i = 0; i < rows_; ++i)
      (*this)(i, dst) += factor * (*this)(i, src);
  }

  [[nodiscard]] Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  void append_row(std::span<const T> r) {
    if (rows_ == 0 && cols_ == 0)
      cols_ = r.size();
    if (r.size() != cols_)
      throw DimensionError("append_row: width mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  bool operator==(const Matrix &o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using QMatrix = Matrix<Rational>;

template <class T> Matrix<T> operator*(const Matrix<T> &a, const Matrix<T> &b) {
  if (a.cols() != b.rows())
    throw DimensionError("matrix product: inner dimensions differ");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0)
        continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class T> std::vector<T> operator*(const Matrix<T> &a, const std::vector<T> &x) {
  if (a.cols() != x.size())
    throw DimensionError("matrix-vector product: dimension mismatch");
  std::vector<T> y(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (x[j] != 0)
        y[i] += a(i, j) * x[j];
  return y;
}

inline QMatrix to_rational(const IntMatrix &m) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      q(i, j) = Rational(m(i, j));
  return q;
}

// ---- vector helpers --------------------------------------------------------

inline bool is_zero(const QVector &v) {
  for (const auto &x : v)
    if (x != 0)
      return false;
  return true;
}

inline QVector zero_vector(std::size_t n) { return QVector(n, Rational(0)); }

inline QVector unit_vector(std::size_t n, std::size_t i) {
  QVector v = zero_vector(n);
  v.at(i) = 1;
  return v;
}

inline QVector add(const QVector &a, const QVector &b) {
  if (a.size() != b.size())
    throw DimensionError("vector sum: length mismatch");
  QVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    c[i] = a[i] + b[i];
  return c;
}

inline QVector sub(const QVector &a, const QVector &b) {
  if (a.size() != b.size())
    throw DimensionError("vector difference: length mismatch");
  QVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    c[i] = a[i] - b[i];
  return c;
}

inline QVector scaled(const QVector &a, const Rational &s) {
  QVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    c[i] = a[i] * s;
  return c;
}

inline QVector to_rational(const IntVector &v) {
  QVector q(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    q[i] = Rational(v[i]);
  return q;
}

/// Least common multiple of all denominators (1 for the empty vector).
inline Integer common_denominator(std::span<const Rational> v) {
  Integer d = 1;
  for (const auto &x : v)
    d = lcm(d, Integer(x.get_den()));
  return d;
}

inline Integer common_denominator(const QMatrix &m) {
  Integer d = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    d = lcm(d, common_denominator(m.row_span(i)));
  return d;
}

/// Entrywise s * m, which must be integral.
inline IntMatrix to_integer(const QMatrix &m, const Integer &s = 1) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational x = m(i, j) * s;
      if (x.get_den() != 1)
        throw InvariantError("to_integer: entry not integral after scaling");
      out(i, j) = x.get_num();
    }
  return out;
}

/// The primitive integer vector on the ray of v (v != 0), sign preserved.
inline IntVector primitive_integer(const QVector &v) {
  Integer d = common_denominator(v);
  IntVector out(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational x = v[i] * d;
    out[i] = x.get_num();
    g = gcd(g, out[i]);
  }
  if (g > 1)
    for (auto &x : out)
      x /= g;
  return out;
}

} // namespace khat
