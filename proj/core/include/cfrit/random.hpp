#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "cfrit/modmath.hpp"

namespace cfrit {

// Injectable randomness for key generation and encryption. Each thread owns its own source.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  // Uniform integer in [0, bound). bound must be >= 1.
  virtual BigInt below(const BigInt& bound) = 0;

  virtual std::uint64_t next_u64() = 0;
};

// mt19937_64 stream; identical seeds give identical draws on every platform.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed) : engine_(seed) {}

  BigInt below(const BigInt& bound) override;
  std::uint64_t next_u64() override { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Child seed for an independent stream, e.g. one per sweep grid point.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path);

// Seed from the OS entropy source.
std::uint64_t entropy_seed();

}  // namespace cfrit
