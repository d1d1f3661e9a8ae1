#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace khat;
using fixtures::vec;

namespace {

IntMatrix int_matrix(std::vector<std::vector<long>> rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = rows[i][j];
  return m;
}

IntMatrix random_int_matrix(std::mt19937_64 &rng) {
  const std::size_t r = rng() % 5, c = rng() % 5;
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m(i, j) = static_cast<long>(rng() % 19) - 9;
  return m;
}

Integer laplace_det(const IntMatrix &m) {
  const std::size_t n = m.rows();
  if (n == 0)
    return 1;
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != j)
          minor(i - 1, c++) = m(i, k);
    Integer term = m(0, j) * laplace_det(minor);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

std::vector<oracle::detail::Row> rows_of(const IntMatrix &m) {
  std::vector<oracle::detail::Row> out;
  for (std::size_t i = 0; i < m.rows(); ++i)
    out.push_back(m.row(i));
  return out;
}

bool same_row_lattice(const IntMatrix &a, const IntMatrix &b) {
  auto ea = oracle::detail::echelon(rows_of(a), a.cols());
  auto eb = oracle::detail::echelon(rows_of(b), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (!oracle::detail::in_lattice(eb, a.row(i)))
      return false;
  for (std::size_t i = 0; i < b.rows(); ++i)
    if (!oracle::detail::in_lattice(ea, b.row(i)))
      return false;
  return true;
}

bool is_row_hnf(const IntMatrix &h, std::size_t rank) {
  std::size_t last = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t c = 0;
    while (c < h.cols() && h(i, c) == 0)
      ++c;
    if (i >= rank) {
      if (c != h.cols())
        return false;
      continue;
    }
    if (c == h.cols() || (i > 0 && c <= last) || h(i, c) <= 0)
      return false;
    for (std::size_t k = 0; k < i; ++k)
      if (h(k, c) < 0 || h(k, c) >= h(i, c))
        return false;
    last = c;
  }
  return true;
}

} // namespace

TEST(Rational, ParsesAndPrintsLowestTerms) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-0/5")), "0");
  EXPECT_EQ(to_string(parse_rational("-12")), "-12");
  EXPECT_THROW(parse_rational("1/0"), ValidationError);
  EXPECT_THROW(parse_rational("x"), ValidationError);
  EXPECT_THROW(parse_rational(""), ValidationError);
}

TEST(Rational, Valuations) {
  EXPECT_EQ(valuation(make_rational(Integer(3), Integer(8)), Integer(2)), -3);
  EXPECT_EQ(valuation(Rational(24), Integer(2)), 3);
  EXPECT_FALSE(valuation(Rational(0), Integer(5)).has_value());
  EXPECT_TRUE(is_p_integral(make_rational(Integer(1), Integer(3)), Integer(2)));
  EXPECT_FALSE(is_p_integral(make_rational(Integer(1), Integer(3)), Integer(3)));
  EXPECT_EQ(strip_primes(Integer(360), {Integer(2), Integer(5)}), 9);
}

TEST(Primes, PrimalityAndFactorization) {
  EXPECT_TRUE(is_prime(Integer(2)));
  EXPECT_TRUE(is_prime(Integer(19)));
  EXPECT_FALSE(is_prime(Integer(1)));
  EXPECT_FALSE(is_prime(Integer(91)));
  EXPECT_TRUE(is_prime(Integer("1000000007", 10)));
  auto f = prime_divisors(Integer("600851475143", 10));
  std::vector<Integer> want{71, 839, 1471, 6857};
  EXPECT_EQ(f, want);
}

TEST(Hnf, Examples) {
  auto id = hnf(IntMatrix::identity(3));
  EXPECT_EQ(id.H, IntMatrix::identity(3));
  EXPECT_EQ(id.U, IntMatrix::identity(3));

  auto z = hnf(int_matrix({{0}}, 1));
  EXPECT_EQ(z.H, int_matrix({{0}}, 1));
  EXPECT_EQ(z.U, int_matrix({{1}}, 1));

  const IntMatrix a = int_matrix({{2, 4}, {1, 1}}, 2);
  auto h = hnf(a);
  EXPECT_EQ(h.H, int_matrix({{1, 1}, {0, 2}}, 2));
  EXPECT_EQ(h.U * a, h.H);
  EXPECT_EQ(abs(laplace_det(h.U)), 1);

  auto e = hnf(IntMatrix(0, 3));
  EXPECT_EQ(e.H.rows(), 0u);
  EXPECT_EQ(e.rank, 0u);
}

TEST(Hnf, RandomMatrices) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    IntMatrix a = random_int_matrix(rng);
    auto h = hnf(a);
    ASSERT_EQ(h.U * a, h.H);
    ASSERT_EQ(abs(laplace_det(h.U)), 1);
    ASSERT_TRUE(is_row_hnf(h.H, h.rank));
    ASSERT_TRUE(same_row_lattice(a, h.H));
    ASSERT_EQ(hnf(h.H).H, h.H);
  }
}

TEST(Snf, Examples) {
  EXPECT_EQ(snf(IntMatrix::identity(2)).S, IntMatrix::identity(2));
  EXPECT_EQ(snf(int_matrix({{4}}, 1)).S, int_matrix({{4}}, 1));
  EXPECT_EQ(snf(int_matrix({{2, 0}, {0, 3}}, 2)).S, int_matrix({{1, 0}, {0, 6}}, 2));
}

TEST(Snf, RandomMatrices) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 300; ++t) {
    IntMatrix a = random_int_matrix(rng);
    auto s = snf(a);
    ASSERT_EQ(s.U * a * s.V, s.S);
    ASSERT_EQ(abs(laplace_det(s.U)), 1);
    ASSERT_EQ(abs(laplace_det(s.V)), 1);
    for (std::size_t i = 0; i < s.S.rows(); ++i)
      for (std::size_t j = 0; j < s.S.cols(); ++j)
        if (i != j) {
          ASSERT_EQ(s.S(i, j), 0);
        }
    auto d = s.invariant_factors();
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
      ASSERT_TRUE(d[i + 1] % d[i] == 0);
    // The product of invariant factors is the gcd of maximal minors; for
    // square full-rank input that is |det|.
    if (a.rows() == a.cols() && a.rows() > 0) {
      Integer prod = 1;
      for (std::size_t i = 0; i < a.rows(); ++i)
        prod *= s.S(i, i);
      ASSERT_EQ(prod, abs(laplace_det(a)));
    }
  }
}

TEST(Linear, KernelExamples) {
  auto k = kernel_basis(QMatrix::from_rows({vec({"1", "1"})}, 2));
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0][0], -k[0][1]);
  EXPECT_TRUE(kernel_basis(QMatrix::identity(2)).empty());
  const QMatrix a = QMatrix::from_rows({vec({"1", "2", "3"})}, 3);
  auto k3 = kernel_basis(a);
  ASSERT_EQ(k3.size(), 2u);
  for (const auto &x : k3)
    EXPECT_TRUE(is_zero(a * x));
  EXPECT_EQ(rank(QMatrix::from_rows(k3, 3)), 2u);
}

TEST(Linear, SolveExamples) {
  auto x = solve(QMatrix::identity(2), vec({"5", "-1/2"}));
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, vec({"5", "-1/2"}));
  auto y = solve(QMatrix::from_rows({vec({"1", "1"})}, 2), vec({"0"}));
  ASSERT_TRUE(y);
  EXPECT_EQ((*y)[0] + (*y)[1], 0);
  EXPECT_FALSE(solve(QMatrix::from_rows({vec({"2"}), vec({"0"})}, 1), vec({"1", "1"})));
}

TEST(Linear, RandomKernelAndSolve) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 300; ++t) {
    QMatrix a = to_rational(random_int_matrix(rng));
    auto ker = kernel_basis(a);
    for (const auto &x : ker)
      ASSERT_TRUE(is_zero(a * x));
    ASSERT_EQ(ker.size() + rank(a), a.cols());
    if (a.rows() == 0)
      continue;
    QVector b(a.rows());
    for (auto &x : b)
      x = Rational(static_cast<long>(rng() % 19) - 9);
    // Consistency oracle: b solvable iff appending it keeps the rank.
    QMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j)
        aug(i, j) = a(i, j);
      aug(i, a.cols()) = b[i];
    }
    auto x = solve(a, b);
    ASSERT_EQ(x.has_value(), rank(aug) == rank(a));
    if (x) {
      ASSERT_EQ(a * *x, b);
    }
  }
}

TEST(Linear, RankModP) {
  const QMatrix a = QMatrix::from_rows({vec({"2", "4"}), vec({"1", "3"})}, 2);
  EXPECT_EQ(rank_mod_p(a, Integer(2)), 1u);
  EXPECT_EQ(rank_mod_p(a, Integer(3)), 2u);
}

TEST(Subspace, Examples) {
  auto e1 = Subspace::span({vec({"1", "0"})}, 2);
  auto e2 = Subspace::span({vec({"0", "1"})}, 2);
  EXPECT_TRUE(subspace_intersect(e1, e2).is_zero());
  EXPECT_EQ(subspace_intersect(e1, e1), e1);
  auto a = Subspace::span({vec({"1", "0"}), vec({"1", "1"})}, 2);
  auto b = Subspace::span({vec({"0", "1"}), vec({"2", "1"})}, 2);
  EXPECT_TRUE(subspace_intersect(a, b).is_full());
  EXPECT_EQ(subspace_sum(e1, e2), Subspace::full(2));
  EXPECT_TRUE(subspace_contains(e1, vec({"-7/3", "0"})));
  EXPECT_FALSE(subspace_contains(e1, vec({"0", "1"})));
}

TEST(Subspace, CanonicalFormMatchesSetEquality) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 1 + rng() % 4;
    auto draw_vectors = [&] {
      std::vector<QVector> vs(rng() % 4);
      for (auto &v : vs) {
        v.resize(d);
        for (auto &x : v)
          x = Rational(static_cast<long>(rng() % 5) - 2);
      }
      return vs;
    };
    auto va = draw_vectors(), vb = draw_vectors();
    auto wa = Subspace::span(va, d), wb = Subspace::span(vb, d);
    bool mutual = true;
    for (const auto &v : wa.basis_vectors())
      mutual = mutual && wb.contains(v);
    for (const auto &v : wb.basis_vectors())
      mutual = mutual && wa.contains(v);
    ASSERT_EQ(mutual, wa == wb);
    for (const auto &v : va)
      ASSERT_TRUE(wa.contains(v));
    auto meet = subspace_intersect(wa, wb);
    for (const auto &v : meet.basis_vectors())
      ASSERT_TRUE(wa.contains(v) && wb.contains(v));
    ASSERT_EQ(meet.dim() + subspace_sum(wa, wb).dim(), wa.dim() + wb.dim());
  }
}

TEST(Subspace, IntegerLatticeBasis) {
  auto w = Subspace::span({vec({"1/2", "1/3"})}, 2);
  auto basis = w.integer_lattice_basis();
  ASSERT_EQ(basis.size(), 1u);
  EXPECT_EQ(basis[0], (IntVector{3, 2}));
}

TEST(Subspace, DimensionMismatch) {
  EXPECT_THROW(subspace_sum(Subspace::zero(2), Subspace::zero(3)), DimensionError);
}
