#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cfrit/codec.hpp"
#include "cfrit/errors.hpp"

using namespace cfrit;
using namespace cfrit::codec;

namespace {

const SafePrimePair kSmall{11, 23, 4};

QuantizationConfig cfg(double gamma, const SafePrimePair& primes = kSmall) {
  return {gamma, primes};
}

}  // namespace

TEST(Encode, Examples) {
  auto e = encode_sign_mag(0.26, cfg(10));
  EXPECT_EQ(e.value.zeta, 1);
  EXPECT_EQ(e.value.z, 3);
  EXPECT_FALSE(e.wrapped);
  e = encode_sign_mag(-0.26, cfg(10));
  EXPECT_EQ(e.value.zeta, 2);
  EXPECT_EQ(e.value.z, 3);
  e = encode_sign_mag(0.0, cfg(10));
  EXPECT_EQ(e.value.zeta, 1);
  EXPECT_EQ(e.value.z, 1);
}

TEST(Encode, ReportsWraparound) {
  const auto e = encode_sign_mag(1.3, cfg(10));  // 13 mod 11
  EXPECT_TRUE(e.wrapped);
  EXPECT_EQ(e.value.z, 2);
  EXPECT_THROW(encode_sign_mag(1.1, cfg(10)), CodecError);  // 11 mod 11 = 0
  EXPECT_THROW(encode_sign_mag(std::nan(""), cfg(10)), DomainError);
}

TEST(Decode, Examples) {
  EXPECT_DOUBLE_EQ(decode_sign_mag({2, 3}, 10), -0.3);
  EXPECT_DOUBLE_EQ(decode_sign_mag({1, 3}, 10), 0.3);
  EXPECT_DOUBLE_EQ(decode_sign_mag({1, 1}, 10), 0.1);
  EXPECT_THROW(decode_sign_mag({3, 1}, 10), CorruptCiphertext);
}

TEST(Lift, Examples) {
  EXPECT_EQ(lift_to_group({2, 3}, kSmall), (GroupPair{2, 3}));
  EXPECT_EQ(lift_to_group({2, 5}, kSmall), (GroupPair{2, 18}));
  EXPECT_EQ(lift_to_group({1, 1}, kSmall), (GroupPair{1, 1}));
  EXPECT_THROW(lift_to_group({1, 11}, kSmall), DomainError);
  EXPECT_THROW(lift_to_group({3, 1}, kSmall), DomainError);
}

TEST(Drop, Examples) {
  auto e = drop_from_group({2, 18}, kSmall);
  EXPECT_EQ(e.zeta, 2);
  EXPECT_EQ(e.z, 5);
  e = drop_from_group({1, 1}, kSmall);
  EXPECT_EQ(e.zeta, 1);
  EXPECT_EQ(e.z, 1);
  e = drop_from_group({2, 3}, kSmall);
  EXPECT_EQ(e.zeta, 2);
  EXPECT_EQ(e.z, 3);
  EXPECT_THROW(drop_from_group({3, 1}, kSmall), CorruptCiphertext);
}

TEST(Drop, InvertsLiftExhaustivelyAtQ11) {
  for (int zeta : {1, 2}) {
    for (int z = 1; z < 11; ++z) {
      const auto gp = lift_to_group({zeta, z}, kSmall);
      EXPECT_TRUE(in_group(gp, kSmall));
      const auto back = drop_from_group(gp, kSmall);
      EXPECT_EQ(back.zeta, zeta);
      EXPECT_EQ(back.z, z);
    }
  }
}

TEST(EcdDcd, Examples) {
  const auto c = cfg(10);
  EXPECT_EQ(ecd(0.26, c), lift_to_group({1, 3}, kSmall));
  EXPECT_DOUBLE_EQ(dcd(ecd(0.26, c), c), 0.3);
  EXPECT_EQ(dcd(ecd(0.0, c), c), 1.0 / 10.0);
  EXPECT_EQ(dcd(ecd(-1.0, c), c), -1.0);
}

TEST(EcdDcd, ZeroDecodesToExactlyOneOverGamma) {
  const auto primes = modmath::largest_safe_q(32);
  for (double g : {1.0, 10.0, 1e3, 1e6, 7.25}) {
    EXPECT_EQ(dcd(ecd(0.0, cfg(g, primes)), cfg(g, primes)), 1.0 / g);
  }
}

TEST(EcdDcd, RoundtripBoundAndSigns) {
  const auto primes = modmath::largest_safe_q(32);
  const auto c = cfg(1e3, primes);
  const double lim = primes.q.get_d() / (2 * c.gamma);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-lim, lim);
  for (int i = 0; i < 10000; ++i) {
    const double x = d(rng);
    const auto gp = ecd(x, c);
    EXPECT_TRUE(in_group(gp, primes));
    const double y = dcd(gp, c);
    const double err = std::fabs(y - x);
    EXPECT_LE(err, 1.0 / c.gamma);
    if (c.gamma * std::fabs(x) >= 0.5) EXPECT_LE(err, 0.5 / c.gamma * (1 + 1e-12));
    if (x != 0.0) EXPECT_EQ(std::signbit(y), std::signbit(x));
  }
}

TEST(EcdDcd, VectorOverloads) {
  const auto c = cfg(10);
  const std::vector<double> xs = {0.26, -0.26, 0.0};
  const auto gps = ecd(xs, c);
  ASSERT_EQ(gps.size(), 3u);
  const auto ys = dcd(gps, c);
  EXPECT_DOUBLE_EQ(ys[0], 0.3);
  EXPECT_DOUBLE_EQ(ys[1], -0.3);
  EXPECT_DOUBLE_EQ(ys[2], 0.1);
}

TEST(QuantizationConfig, Validation) {
  EXPECT_THROW(cfg(0.5).validate(), DomainError);
  EXPECT_THROW((QuantizationConfig{2.0, {11, 24, 4}}).validate(), DomainError);
  EXPECT_NO_THROW(cfg(1.0).validate());
}
