#pragma once

#include <gmpxx.h>

#include <cstdint>

namespace cfrit {

using BigInt = mpz_class;

namespace modmath {

// q and p = 2q + 1 both prime, q exactly `kappa` bits long.
struct SafePrimePair {
  BigInt q;
  BigInt p;
  unsigned kappa = 0;
};

// base^exp mod m. Throws DomainError for m < 2 or a negative exponent.
BigInt mod_pow(const BigInt& base, const BigInt& exp, const BigInt& m);

// Legendre symbol (z/p) evaluated as z^((p-1)/2) Mod p. Returns +1 or -1.
// Throws DomainError when p divides z.
int legendre(const BigInt& z, const BigInt& p);

// Representative of a mod m closest to zero; ties (m even) resolve to -m/2.
BigInt minimal_residue(const BigInt& a, const BigInt& m);

// Rounding to the nearest positive integer: floor(sigma + 0.5) for sigma >= 0.5, else 1.
BigInt round_pos(double sigma);

inline constexpr unsigned kDefaultMillerRabinRounds = 40;

// Miller-Rabin. Deterministic below 2^64 (fixed witness set); above that the
// witnesses come from a PRNG seeded by n, so the verdict is reproducible.
bool is_prime(const BigInt& n, unsigned rounds = kDefaultMillerRabinRounds);

// Largest kappa-bit q with 2q + 1 also prime. Consults the safe-prime cache
// (memory, then disk) before searching.
SafePrimePair largest_safe_q(unsigned kappa);

// Uncached downward scan used by largest_safe_q.
SafePrimePair search_largest_safe_q(unsigned kappa);

unsigned bit_length(const BigInt& v);

}  // namespace modmath
}  // namespace cfrit
