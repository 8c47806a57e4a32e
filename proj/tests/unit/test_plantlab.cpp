#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cfrit/errors.hpp"
#include "cfrit/frit.hpp"
#include "cfrit/plantlab.hpp"
#include "cfrit/scenario.hpp"
#include "oracles.hpp"

using namespace cfrit;
using namespace cfrit::plant;

TEST(Simulate, ZeroInputStaysAtRest) {
  const Plant p{Matrix{{0.5, 0.1}, {0.0, 0.3}}, Matrix{{1.0}, {0.5}}};
  const std::vector<double> v(10, 0.0);
  const auto log = simulate(p, {{0.2, -0.1}}, v, 10);
  for (std::size_t t = 0; t < 10; ++t) {
    EXPECT_EQ(log.u[t], 0.0);
    for (double x : log.x[t]) EXPECT_EQ(x, 0.0);
  }
}

TEST(Simulate, ScalarPulse) {
  const Plant p{Matrix{{0.5}}, Matrix{{1.0}}};
  std::vector<double> v(5, 0.0);
  v[0] = 1.0;
  const auto log = simulate(p, {{0.0}}, v, 5);
  const double want[] = {0.0, 1.0, 0.5, 0.25, 0.125};
  for (int t = 0; t < 5; ++t) EXPECT_DOUBLE_EQ(log.x[t][0], want[t]);
}

TEST(Simulate, FourStateFirstStateIsZero) {
  const auto sc = load_scenario(oracle::scenario_path("four_state.json"));
  const auto log = sc.simulate();
  for (double x : log.x[1]) EXPECT_EQ(x, 0.0);
  for (double x : log.x[2]) EXPECT_NE(x, 0.0);
}

TEST(Simulate, MatchesNaiveRecursion) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    const auto sc = random_toy_scenario(rng(), 3, 12);
    const auto log = simulate(sc.plant, sc.f_ini, sc.excitation, sc.steps);
    const auto xs = oracle::simulate_states(sc.plant, sc.f_ini.F, sc.excitation);
    for (std::size_t k = 0; k < sc.steps; ++k)
      for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(log.x[k][i], xs[k][i], 1e-14);
  }
}

TEST(Simulate, Superposition) {
  std::mt19937_64 rng(2);
  const auto sc = random_toy_scenario(3, 2, 20);
  std::uniform_real_distribution<double> d(-1, 1);
  std::vector<double> a(20), b(20), ab(20);
  for (std::size_t i = 0; i < 20; ++i) {
    a[i] = d(rng);
    b[i] = d(rng);
    ab[i] = 2 * a[i] - 3 * b[i];
  }
  const auto la = simulate(sc.plant, sc.f_ini, a, 20);
  const auto lb = simulate(sc.plant, sc.f_ini, b, 20);
  const auto lab = simulate(sc.plant, sc.f_ini, ab, 20);
  for (std::size_t t = 0; t < 20; ++t) {
    EXPECT_NEAR(lab.u[t], 2 * la.u[t] - 3 * lb.u[t], 1e-12);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(lab.x[t][i], 2 * la.x[t][i] - 3 * lb.x[t][i], 1e-12);
  }
}

TEST(Simulate, DimensionErrors) {
  const Plant p{Matrix{{0.5}}, Matrix{{1.0}}};
  const std::vector<double> v(3, 0.0);
  EXPECT_THROW(simulate(p, {{0.0, 1.0}}, v, 3), DimensionMismatch);
  EXPECT_THROW(simulate(p, {{0.0}}, v, 4), DimensionMismatch);
  EXPECT_THROW(simulate(Plant{Matrix{{0.5}}, Matrix{{1.0}, {2.0}}}, {{0.0}}, v, 3), DimensionMismatch);
}

TEST(Filter, Examples) {
  const std::vector<double> s = {1.0, 2.0, 3.0, 4.0};
  EXPECT_EQ(filter({{1.0}, {1.0}}, s), s);
  EXPECT_EQ(filter({{1.0}, {1.0, 0.0}}, s), (std::vector<double>{0.0, 1.0, 2.0, 3.0}));
  const std::vector<double> step(4, 1.0);
  const auto y = filter({{1.0, 0.0}, {1.0, -0.5}}, step);
  EXPECT_DOUBLE_EQ(y[0], 1.0);
  EXPECT_DOUBLE_EQ(y[1], 1.5);
  EXPECT_DOUBLE_EQ(y[2], 1.75);
  EXPECT_THROW(filter({{1.0}, {0.0, 1.0}}, s), DomainError);
  EXPECT_THROW(filter({{1.0, 2.0, 3.0}, {1.0, 1.0}}, s), DomainError);
}

TEST(Filter, LinearAndStableImpulseDecays) {
  const TransferFunction tf{{0.3, -0.1}, {1.0, -0.9, 0.2}};  // poles 0.5, 0.4
  std::vector<double> imp(60, 0.0);
  imp[0] = 1.0;
  const auto h = filter(tf, imp);
  EXPECT_LT(std::fabs(h[59]), 1e-15);
  for (std::size_t t = 10; t < 59; ++t) EXPECT_LE(std::fabs(h[t + 1]), 0.6 * std::fabs(h[t]) + 1e-300);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> d(-1, 1);
  std::vector<double> a(30), b(30), ab(30);
  for (std::size_t i = 0; i < 30; ++i) {
    a[i] = d(rng);
    b[i] = d(rng);
    ab[i] = a[i] + 0.5 * b[i];
  }
  const auto ya = filter(tf, a), yb = filter(tf, b), yab = filter(tf, ab);
  for (std::size_t i = 0; i < 30; ++i) EXPECT_NEAR(yab[i], ya[i] + 0.5 * yb[i], 1e-13);
}

TEST(ClosedLoopTransfer, MatchesSimulatedImpulseResponse) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const auto sc = random_toy_scenario(rng(), 3, 15);
    const auto hs = closed_loop_transfer(sc.plant, sc.f_ini);
    std::vector<double> imp(15, 0.0);
    imp[0] = 1.0;
    const auto xs = oracle::simulate_states(sc.plant, sc.f_ini.F, imp);
    for (std::size_t i = 0; i < 3; ++i) {
      const auto h = filter(hs[i], imp);
      for (std::size_t k = 0; k < 15; ++k) EXPECT_NEAR(h[k], xs[k][i], 1e-12);
    }
  }
}

TEST(BuildDataset, Dimensions) {
  const auto sc = random_toy_scenario(6, 3, 7);
  const auto ds = sc.dataset();
  EXPECT_EQ(ds.E.size(), 21u);
  EXPECT_EQ(ds.W.rows(), 21u);
  EXPECT_EQ(ds.W.cols(), 3u);
  EXPECT_THROW(build_dataset(sc.simulate(), sc.h_star, 8), DimensionMismatch);
  EXPECT_THROW(build_dataset(sc.simulate(), std::span(sc.h_star).first(2), 7), DimensionMismatch);
}

TEST(BuildDataset, FourStateDimensionsAndNorms) {
  const auto ds = load_scenario(oracle::scenario_path("four_state.json")).dataset();
  EXPECT_EQ(ds.E.size(), 200u);
  EXPECT_EQ(ds.W.rows(), 200u);
  EXPECT_EQ(ds.W.cols(), 4u);
  EXPECT_NEAR(linalg::max_norm(ds.E), oracle::kReferenceEMax, 5e-4);
  EXPECT_NEAR(linalg::max_norm(ds.W), oracle::kReferenceWMax, 5e-3);
  EXPECT_NEAR(linalg::lambda_min(linalg::gram(ds.W)), oracle::kReferenceLambdaMin, 5e-4);
}

TEST(BuildDataset, ResidualVanishesAtTheTrueGain) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 10; ++t) {
    auto sc = random_toy_scenario(rng(), 2, 10);
    sc.h_star = closed_loop_transfer(sc.plant, sc.f_ini);
    const auto ds = sc.dataset();
    EXPECT_LT(frit::fictitious_objective(ds, sc.f_ini), 1e-12);
  }
}

TEST(BuildDataset, HandBuiltScalarCase) {
  // A = 0.5, B = 1, F = 0, H* = 1/z: e(t) = x(t) - u(t-1) = 0.5 x(t-1), w(t) = x(t-1).
  const Plant p{Matrix{{0.5}}, Matrix{{1.0}}};
  const std::vector<double> v = {1.0, 0.0, 2.0, 0.0, 0.0};
  const auto log = simulate(p, {{0.0}}, v, 5);
  const TransferFunction delay{{1.0}, {1.0, 0.0}};
  const auto ds = build_dataset(log, std::span(&delay, 1), 5);
  for (std::size_t t = 1; t < 5; ++t) {
    EXPECT_DOUBLE_EQ(ds.W(t, 0), log.x[t - 1][0]);
    EXPECT_DOUBLE_EQ(ds.E[t], log.x[t][0] - log.u[t - 1]);
  }
}
