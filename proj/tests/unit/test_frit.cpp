#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "cfrit/errors.hpp"
#include "cfrit/frit.hpp"
#include "cfrit/scenario.hpp"
#include "oracles.hpp"

using namespace cfrit;
using namespace cfrit::frit;

namespace {

TuningDataset random_dataset(std::size_t n, std::size_t N, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1, 1);
  TuningDataset ds;
  ds.n = n;
  ds.N = N;
  ds.E.resize(n * N);
  ds.W = Matrix(n * N, n);
  for (auto& e : ds.E) e = d(rng);
  for (std::size_t r = 0; r < n * N; ++r)
    for (std::size_t c = 0; c < n; ++c) ds.W(r, c) = d(rng);
  return ds;
}

std::vector<double> term_sum(const TermExpansion& tx) {
  std::vector<double> f(tx.n(), 0.0);
  for (std::size_t iota = 0; iota < tx.n(); ++iota)
    tx.for_each_term(iota, [&](const TermFactors& t) { f[iota] += t.value; });
  return f;
}

}  // namespace

TEST(TermIndex, CountExamples) {
  EXPECT_EQ(term_count(1, 7), 7u);
  EXPECT_EQ(term_count(2, 5), 1u * 4u * 5u);
  EXPECT_EQ(term_count(4, 50), 4800u);
  EXPECT_THROW(term_count(0, 3), DomainError);
}

TEST(TermIndex, BijectionSmall) {
  const std::size_t n = 3, N = 4;
  const std::size_t M = term_count(n, N);
  ASSERT_EQ(M, 72u);
  std::set<std::size_t> seen;
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < n * N; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        const std::size_t j = term_index({k, i, l}, n, N);
        ASSERT_LT(j, M);
        EXPECT_TRUE(seen.insert(j).second);
        EXPECT_EQ(term_triplet(j, n, N), (IndexTriplet{k, i, l}));
      }
  EXPECT_EQ(seen.size(), M);
  EXPECT_THROW(term_index({2, 0, 0}, n, N), DomainError);
  EXPECT_THROW(term_triplet(M, n, N), DomainError);
}

TEST(TermIndex, FirstIndicesFollowLexicographicOrder) {
  EXPECT_EQ(term_index({0, 0, 0}, 2, 3), 0u);
  EXPECT_EQ(term_index({0, 0, 1}, 2, 3), 1u);
  EXPECT_EQ(term_index({0, 1, 0}, 2, 3), 2u);
  EXPECT_EQ(term_index({1, 0, 0}, 3, 2), 18u);
}

TEST(TermExpansion, FactorLayout) {
  std::mt19937_64 rng(1);
  const auto ds = random_dataset(3, 2, rng);
  const TermExpansion tx(ds);
  EXPECT_EQ(tx.factor_count(), 8u);
  const auto t = tx.term(term_index({1, 4, 2}, 3, 2), 0);
  ASSERT_EQ(t.factors.size(), 8u);
  EXPECT_EQ(t.factors[kLeadingSign], -1.0);
  EXPECT_EQ(t.factors[kFactorE], ds.E[4]);
  EXPECT_EQ(t.factors[kFactorW], ds.W(4, 2));
  EXPECT_DOUBLE_EQ(t.factors[kFactorDetInv], 1.0 / oracle::lu_det(tx.psi()) * (1 + 0.0));
  EXPECT_EQ(t.factors[kFactorCofactorSign], 1.0);  // (-1)^(2+0)
  EXPECT_EQ(t.factors[kFactorPermSign], -1.0);     // (1, 0) is odd
  const Matrix m = linalg::minor(tx.psi(), 0, 2);
  EXPECT_EQ(t.factors[kFirstMinorFactor], m(0, 1));
  EXPECT_EQ(t.factors[kFirstMinorFactor + 1], m(1, 0));
  double prod = 1.0;
  for (double f : t.factors) prod *= f;
  EXPECT_DOUBLE_EQ(t.value, prod);
}

TEST(TermExpansion, SingleStateHasNoMinorFactors) {
  TuningDataset ds;
  ds.n = 1;
  ds.N = 3;
  ds.E = {1.0, 2.0, -1.0};
  ds.W = Matrix{{1.0}, {0.5}, {2.0}};
  const TermExpansion tx(ds);
  EXPECT_EQ(tx.term_count(), 3u);
  EXPECT_EQ(tx.factor_count(), 6u);
  // F* = -sum(e w) / sum(w^2) = -(1 + 1 - 2) / 5.25 = 0.
  EXPECT_NEAR(term_sum(tx)[0], 0.0, 1e-15);
  EXPECT_NEAR(frit_gain(ds)[0], 0.0, 1e-15);
  ds.E = {1.0, 0.0, 0.0};
  EXPECT_DOUBLE_EQ(frit_gain(TuningDataset(ds))[0], -1.0 / 5.25);
}

TEST(FritGain, OrthonormalExample) {
  // W = I (N = 1, n = 2): F* = -E.
  TuningDataset ds;
  ds.n = 2;
  ds.N = 1;
  ds.E = {0.3, -0.7};
  ds.W = Matrix::identity(2);
  const auto f = frit_gain(ds);
  EXPECT_DOUBLE_EQ(f[0], -0.3);
  EXPECT_DOUBLE_EQ(f[1], 0.7);
  EXPECT_DOUBLE_EQ(fictitious_objective(ds, f), 0.0);
}

TEST(FritGain, TermSumMatchesNormalEquations) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + t % 4;
    const auto ds = random_dataset(n, 3 + t % 3, rng);
    const auto want = oracle::frit_normal_equations(ds);
    const auto got = frit_gain(ds);
    const auto sum = term_sum(TermExpansion(ds));
    for (std::size_t i = 0; i < n; ++i) {
      const double tol = 1e-9 * std::max(1.0, std::fabs(want[i]));
      EXPECT_NEAR(got[i], want[i], tol);
      EXPECT_NEAR(sum[i], want[i], tol);
    }
  }
}

TEST(FritGain, MinimizesTheObjective) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> d(0.0, 1e-3);
  for (int t = 0; t < 20; ++t) {
    const auto ds = random_dataset(3, 5, rng);
    const auto f = frit_gain(ds);
    const double j0 = fictitious_objective(ds, f);
    for (int p = 0; p < 10; ++p) {
      auto g = f;
      for (auto& v : g.F) v += d(rng);
      EXPECT_GE(fictitious_objective(ds, g), j0 - 1e-15);
    }
  }
}

TEST(FritGain, FourStateMatchesOracle) {
  const auto ds = load_scenario(oracle::scenario_path("four_state.json")).dataset();
  const auto f = frit_gain(ds);
  const auto want = oracle::frit_normal_equations(ds);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(f[i], want[i], 1e-10);
  EXPECT_EQ(TermExpansion(ds).term_count(), 4800u);
}

TEST(FritGain, DegenerateDataThrows) {
  TuningDataset ds;
  ds.n = 2;
  ds.N = 2;
  ds.E = {1, 2, 3, 4};
  ds.W = Matrix{{1, 2}, {2, 4}, {3, 6}, {-1, -2}};  // rank 1
  EXPECT_THROW(frit_gain(ds), DegenerateData);
  EXPECT_THROW(TermExpansion{ds}, DegenerateData);
  ds.W = Matrix(4, 3);
  EXPECT_THROW(frit_gain(ds), DimensionMismatch);
}

TEST(TermBound, SinglePermutationTermsExceedTheNormRatio) {
  // |Phi_k| for one permutation is not bounded by ||Psi^-1||max <= 1/lambda_min;
  // on the four-state data it is about 8.9x larger, and the largest full term
  // exceeds ||E|| ||W|| / lambda_min by about 1.26x.
  const auto ds = load_scenario(oracle::scenario_path("four_state.json")).dataset();
  const TermExpansion tx(ds);
  const double inv_lambda = 1.0 / linalg::lambda_min(tx.psi());
  const double ratio = linalg::max_norm(ds.E) * linalg::max_norm(ds.W) * inv_lambda;

  double worst_phi = 0.0;
  for (std::size_t l = 0; l < 4; ++l)
    for (std::size_t iota = 0; iota < 4; ++iota)
      for (std::size_t k = 0; k < tx.block_count(); ++k) {
        const auto& m = tx.minor_for(l, iota);
        const auto& p = tx.permutation(k);
        double prod = 1.0 / tx.det();
        for (std::size_t x = 0; x < 3; ++x) prod *= m(x, p.mapping[x]);
        worst_phi = std::max(worst_phi, std::fabs(prod));
      }
  EXPECT_NEAR(worst_phi / inv_lambda, 8.87, 0.05);

  double worst = 0.0;
  for (std::size_t iota = 0; iota < 4; ++iota)
    tx.for_each_term(iota, [&](const TermFactors& t) { worst = std::max(worst, std::fabs(t.value)); });
  EXPECT_NEAR(worst / ratio, 1.26, 0.01);
}

TEST(Objective, ZeroResidualAndDimensionCheck) {
  TuningDataset ds;
  ds.n = 1;
  ds.N = 2;
  ds.E = {2.0, -4.0};
  ds.W = Matrix{{1.0}, {-2.0}};
  EXPECT_DOUBLE_EQ(fictitious_objective(ds, {{-2.0}}), 0.0);
  EXPECT_DOUBLE_EQ(fictitious_objective(ds, {{0.0}}), std::sqrt(20.0));
  EXPECT_THROW(fictitious_objective(ds, {{1.0, 2.0}}), DimensionMismatch);
}
