#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "khat/linear.hpp"
#include "khat/normal_form.hpp"

namespace khat {

/// A rational subspace of Q^n stored by its reduced row echelon basis, so
/// two subspaces are equal exactly when their basis matrices are equal.
class Subspace {
public:
  Subspace() = default;

  static Subspace zero(std::size_t ambient_dim) { return Subspace(QMatrix(0, ambient_dim)); }
  static Subspace full(std::size_t ambient_dim) {
    return Subspace(QMatrix::identity(ambient_dim));
  }
  static Subspace span(const std::vector<QVector> &vectors, std::size_t ambient_dim) {
    for (const auto &v : vectors)
      if (v.size() != ambient_dim)
        throw DimensionError("subspace span: vector of length " + std::to_string(v.size()) +
                             " in ambient dimension " + std::to_string(ambient_dim));
    return Subspace(QMatrix::from_rows(vectors, ambient_dim));
  }

  [[nodiscard]] std::size_t ambient_dim() const { return basis_.cols(); }
  [[nodiscard]] std::size_t dim() const { return basis_.rows(); }
  [[nodiscard]] bool is_zero() const { return dim() == 0; }
  [[nodiscard]] bool is_full() const { return dim() == ambient_dim(); }
  [[nodiscard]] const QMatrix &basis() const { return basis_; }
  [[nodiscard]] std::vector<QVector> basis_vectors() const { return basis_.row_list(); }

  [[nodiscard]] bool contains(const QVector &v) const {
    if (v.size() != ambient_dim())
      throw DimensionError("subspace membership: dimension mismatch");
    // Reduce v against the echelon basis; v is inside iff nothing remains.
    QVector r = v;
    for (std::size_t i = 0; i < dim(); ++i) {
      std::size_t piv = pivot(i);
      if (r[piv] == 0)
        continue;
      Rational f = r[piv];
      for (std::size_t j = piv; j < ambient_dim(); ++j)
        r[j] -= f * basis_(i, j);
    }
    return is_zero_vec(r);
  }

  [[nodiscard]] bool contains(const Subspace &o) const {
    check_same(o);
    for (std::size_t i = 0; i < o.dim(); ++i)
      if (!contains(o.basis_.row(i)))
        return false;
    return true;
  }

  /// Integer rows R with ker R == this subspace.
  [[nodiscard]] IntMatrix annihilator() const {
    auto ker = kernel_basis(basis_);
    IntMatrix out(0, ambient_dim());
    for (const auto &k : ker) {
      IntVector row = primitive_integer(k);
      out.append_row(row);
    }
    return out;
  }

  /// Z-basis of the lattice W ∩ Z^n.
  [[nodiscard]] std::vector<IntVector> integer_lattice_basis() const {
    if (is_zero())
      return {};
    IntMatrix ann = annihilator();
    if (ann.rows() == 0) {
      std::vector<IntVector> out;
      for (std::size_t i = 0; i < ambient_dim(); ++i) {
        IntVector e(ambient_dim(), Integer(0));
        e[i] = 1;
        out.push_back(std::move(e));
      }
      return out;
    }
    auto basis = integer_kernel_basis(ann);
    // Present the lattice basis in Hermite form for reproducible output.
    IntMatrix m(0, ambient_dim());
    for (auto &b : basis)
      m.append_row(b);
    HermiteForm h = hnf(m);
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < h.rank; ++i)
      out.push_back(h.H.row(i));
    return out;
  }

  bool operator==(const Subspace &o) const { return basis_ == o.basis_; }

private:
  explicit Subspace(QMatrix generators) {
    RowEchelon e = rref(std::move(generators));
    QMatrix b(e.rank(), e.R.cols());
    for (std::size_t i = 0; i < e.rank(); ++i)
      for (std::size_t j = 0; j < e.R.cols(); ++j)
        b(i, j) = e.R(i, j);
    basis_ = std::move(b);
  }

  [[nodiscard]] std::size_t pivot(std::size_t i) const {
    std::size_t j = 0;
    while (basis_(i, j) == 0)
      ++j;
    return j;
  }
  static bool is_zero_vec(const QVector &v) {
    for (const auto &x : v)
      if (x != 0)
        return false;
    return true;
  }
  void check_same(const Subspace &o) const {
    if (o.ambient_dim() != ambient_dim())
      throw DimensionError("subspaces live in different ambient dimensions");
  }

  QMatrix basis_;
};

inline Subspace subspace_span(const std::vector<QVector> &vectors, std::size_t ambient_dim) {
  return Subspace::span(vectors, ambient_dim);
}

inline Subspace subspace_sum(const Subspace &a, const Subspace &b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw DimensionError("subspace_sum: ambient dimension mismatch");
  auto rows = a.basis_vectors();
  for (auto &r : b.basis_vectors())
    rows.push_back(std::move(r));
  return Subspace::span(rows, a.ambient_dim());
}

inline Subspace subspace_intersect(const Subspace &a, const Subspace &b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw DimensionError("subspace_intersect: ambient dimension mismatch");
  // a ∩ b = ker [ann(a); ann(b)]
  IntMatrix stacked = a.annihilator();
  IntMatrix bb = b.annihilator();
  for (std::size_t i = 0; i < bb.rows(); ++i)
    stacked.append_row(bb.row_span(i));
  if (stacked.rows() == 0)
    return Subspace::full(a.ambient_dim());
  return Subspace::span(kernel_basis(to_rational(stacked)), a.ambient_dim());
}

inline bool subspace_contains(const Subspace &w, const QVector &v) { return w.contains(v); }

/// The coordinate subspace spanned by e_i for the given indices.
inline Subspace coordinate_subspace(const std::vector<std::size_t> &indices,
                                    std::size_t ambient_dim) {
  std::vector<QVector> vs;
  for (auto i : indices)
    vs.push_back(unit_vector(ambient_dim, i));
  return Subspace::span(vs, ambient_dim);
}

} // namespace khat
