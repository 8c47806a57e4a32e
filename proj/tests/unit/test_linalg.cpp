#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cfrit/errors.hpp"
#include "cfrit/linalg.hpp"
#include "oracles.hpp"

using namespace cfrit;
using namespace cfrit::linalg;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

Matrix random_spd(std::size_t n, std::mt19937_64& rng) {
  const Matrix a = random_matrix(n + 3, n, rng);
  Matrix s = gram(a);
  for (std::size_t i = 0; i < n; ++i) s(i, i) += 0.1;
  return s;
}

}  // namespace

TEST(Permutations, SmallOrders) {
  const auto p0 = permutations(0);
  ASSERT_EQ(p0.size(), 1u);
  EXPECT_TRUE(p0[0].mapping.empty());

  const auto p1 = permutations(1);
  ASSERT_EQ(p1.size(), 1u);
  EXPECT_EQ(p1[0].sign, 1);

  const auto p2 = permutations(2);
  ASSERT_EQ(p2.size(), 2u);
  EXPECT_EQ(p2[0].mapping, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(p2[0].sign, 1);
  EXPECT_EQ(p2[1].mapping, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(p2[1].sign, -1);

  const auto p3 = permutations(3);
  ASSERT_EQ(p3.size(), 6u);
  int even = 0;
  for (const auto& p : p3) even += p.sign == 1;
  EXPECT_EQ(even, 3);
  EXPECT_THROW(permutations(9), DomainError);
}

TEST(Permutations, LexicographicAndSignByCycleCount) {
  for (std::size_t m = 1; m <= 6; ++m) {
    const auto ps = permutations(m);
    for (std::size_t k = 1; k < ps.size(); ++k) EXPECT_LT(ps[k - 1].mapping, ps[k].mapping);
    for (const auto& p : ps) {
      // sign = (-1)^(m - cycles)
      std::vector<bool> seen(m, false);
      std::size_t cycles = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (std::size_t j = i; !seen[j]; j = p.mapping[j]) seen[j] = true;
      }
      EXPECT_EQ(p.sign, (m - cycles) % 2 == 0 ? 1 : -1);
    }
  }
}

TEST(DetPerm, Examples) {
  EXPECT_DOUBLE_EQ(det_perm(Matrix::identity(4)), 1.0);
  EXPECT_DOUBLE_EQ(det_perm(Matrix{{3.0, 2.0}, {5.0, 7.0}}), 3.0 * 7.0 - 2.0 * 5.0);
  EXPECT_DOUBLE_EQ(det_perm(Matrix(0, 0)), 1.0);
  EXPECT_THROW(det_perm(Matrix(2, 3)), DimensionMismatch);
}

TEST(DetPerm, AgreesWithLu) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + i % 5;
    const Matrix a = random_matrix(n, n, rng);
    const double want = oracle::lu_det(a);
    EXPECT_NEAR(det_perm(a), want, 1e-9 * std::max(1.0, std::fabs(want)));
  }
}

TEST(Minor, Examples) {
  const Matrix m{{1, 2}, {3, 4}};
  EXPECT_EQ(minor(m, 0, 0), (Matrix{{4}}));
  EXPECT_EQ(minor(Matrix::identity(3), 1, 1), Matrix::identity(2));
  EXPECT_EQ(minor(Matrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}, 0, 1), (Matrix{{4, 6}, {7, 9}}));
  EXPECT_THROW(minor(m, 2, 0), DomainError);
}

TEST(Minor, CofactorExpansionGivesDeterminant) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const Matrix x = random_matrix(4, 4, rng);
    for (std::size_t i = 0; i < 4; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < 4; ++j) {
        s += x(i, j) * ((i + j) % 2 ? -1.0 : 1.0) * det_perm(minor(x, i, j));
      }
      EXPECT_NEAR(s, oracle::lu_det(x), 1e-12);
    }
  }
}

TEST(Gram, SymmetricAndIdentityStack) {
  Matrix stack(6, 2);
  for (std::size_t b = 0; b < 3; ++b) {
    stack(2 * b, 0) = 1.0;
    stack(2 * b + 1, 1) = 1.0;
  }
  EXPECT_EQ(gram(stack), (Matrix{{3, 0}, {0, 3}}));

  std::mt19937_64 rng(3);
  const Matrix g = gram(random_matrix(10, 4, rng));
  EXPECT_EQ(g, g.transpose());
}

TEST(Jacobi, Examples) {
  EXPECT_DOUBLE_EQ(lambda_min(Matrix{{3, 0, 0}, {0, 1, 0}, {0, 0, 2}}), 1.0);
  EXPECT_DOUBLE_EQ(lambda_min(Matrix::identity(4)), 1.0);
  EXPECT_THROW(lambda_min(Matrix{{1, 2}, {0, 1}}), DomainError);
}

TEST(Jacobi, MatchesCharacteristicRootsAndReconstructs) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + t % 3;
    const Matrix s = random_spd(n, rng);
    const auto eig = jacobi_eigen(s);
    const auto roots = oracle::charpoly_eigenvalues(s);
    ASSERT_EQ(roots.size(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(eig.values[i], roots[i], 1e-8);

    Matrix lam(n, n);
    for (std::size_t i = 0; i < n; ++i) lam(i, i) = eig.values[i];
    const Matrix back = eig.vectors * lam * eig.vectors.transpose();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(back(i, j), s(i, j), 1e-9);
  }
}

TEST(Jacobi, InverseMaxNormBoundedByLambdaMin) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const Matrix s = random_spd(4, rng);
    // Inverse column by column.
    Matrix inv(4, 4);
    for (std::size_t c = 0; c < 4; ++c) {
      std::vector<double> e(4, 0.0);
      e[c] = 1.0;
      const auto col = oracle::gauss_solve(s, e);
      for (std::size_t r = 0; r < 4; ++r) inv(r, c) = col[r];
    }
    EXPECT_LE(max_norm(inv), 1.0 / lambda_min(s) * (1 + 1e-12));
  }
}

TEST(Norms, Basics) {
  EXPECT_EQ(max_norm(Matrix::identity(3)), 1.0);
  const std::vector<double> v = {3.0, -4.0};
  EXPECT_EQ(max_norm(v), 4.0);
  EXPECT_EQ(l1_norm(v), 7.0);
  EXPECT_EQ(l2_norm(v), 5.0);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> d(-1, 1);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> x(7);
    for (auto& e : x) e = d(rng);
    EXPECT_LE(l2_norm(x), l1_norm(x));
  }
}

TEST(Matrix, ProductAndShape) {
  const Matrix a{{1, 2}, {3, 4}};
  EXPECT_EQ(a * Matrix::identity(2), a);
  EXPECT_EQ(a * a, (Matrix{{7, 10}, {15, 22}}));
  EXPECT_THROW(a * Matrix(3, 1), DimensionMismatch);
  EXPECT_THROW((Matrix{{1, 2}, {3}}), DimensionMismatch);
}
