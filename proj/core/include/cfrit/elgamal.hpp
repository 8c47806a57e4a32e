#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "cfrit/codec.hpp"
#include "cfrit/modmath.hpp"
#include "cfrit/random.hpp"

namespace cfrit::elgamal {

using codec::GroupPair;

inline constexpr unsigned long kGenerator = 4;

struct PublicKey {
  BigInt p;
  BigInt q;
  BigInt g;
  BigInt h;

  modmath::SafePrimePair primes() const;
  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct SecretKey {
  BigInt s;
  friend bool operator==(const SecretKey&, const SecretKey&) = default;
};

struct KeyPair {
  PublicKey pk;
  SecretKey sk;
};

// Two ElGamal pairs: (c1, c2) encrypts x1, (c3, c4) encrypts x2.
struct Ciphertext {
  BigInt c1 = 1;
  BigInt c2 = 1;
  BigInt c3 = 1;
  BigInt c4 = 1;

  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

// Primes from largest_safe_q(kappa), g = 4, s uniform in Z_q.
KeyPair gen(unsigned kappa, RandomSource& rng);
KeyPair gen_with_secret(const modmath::SafePrimePair& primes, const BigInt& s);

Ciphertext enc(const PublicKey& pk, const GroupPair& m, RandomSource& rng);
Ciphertext enc_with(const PublicKey& pk, const GroupPair& m, const BigInt& r1, const BigInt& r2);

GroupPair dec(const SecretKey& sk, const PublicKey& pk, const Ciphertext& c);

// Hadamard product mod p; decrypts to the componentwise product of the plaintexts.
Ciphertext cmul(const PublicKey& pk, const Ciphertext& a, const Ciphertext& b);

// cmul over a list; an empty list yields the identity ciphertext (1, 1, 1, 1).
Ciphertext fold(const PublicKey& pk, std::span<const Ciphertext> cs);

// Key files: decimal, one field per line (public: p q g h, secret: s).
void write_public_key(std::ostream& os, const PublicKey& pk);
void write_secret_key(std::ostream& os, const SecretKey& sk);
PublicKey read_public_key(std::istream& is);
SecretKey read_secret_key(std::istream& is);

std::string serialize(const Ciphertext& c);
Ciphertext deserialize_ciphertext(const std::string& text);

}  // namespace cfrit::elgamal
