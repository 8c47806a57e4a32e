#include "cfrit/random.hpp"

#include "cfrit/errors.hpp"

namespace cfrit {

BigInt SeededRandom::below(const BigInt& bound) {
  if (bound < 1) throw DomainError("RandomSource::below: bound must be >= 1");
  if (bound == 1) return 0;
  const std::size_t bits = modmath::bit_length(bound - 1);
  const std::size_t words = (bits + 63) / 64;
  const unsigned top_bits = static_cast<unsigned>(bits - (words - 1) * 64);
  const std::uint64_t top_mask = top_bits == 64 ? ~0ULL : ((1ULL << top_bits) - 1);

  // Rejection sampling: accepts with probability > 1/2 per draw.
  for (;;) {
    BigInt v = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t x = engine_();
      if (w == 0) x &= top_mask;
      mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), 64);
      BigInt part;
      mpz_import(part.get_mpz_t(), 1, 1, sizeof(x), 0, 0, &x);
      v += part;
    }
    if (v < bound) return v;
  }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = splitmix64(base);
  for (std::uint64_t p : path) h = splitmix64(h ^ splitmix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace cfrit
