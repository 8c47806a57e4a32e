#pragma once

#include <span>
#include <vector>

#include "cfrit/modmath.hpp"

namespace cfrit::codec {

using modmath::SafePrimePair;

// Quantizer output: sign token (1 for x >= 0, 2 for x < 0) and magnitude in Z_q^+.
struct EncodedPair {
  int zeta = 1;
  BigInt z = 1;
};

// Both components lie in the order-q quadratic-residue subgroup of Z_p^*.
struct GroupPair {
  BigInt x1 = 1;
  BigInt x2 = 1;

  friend bool operator==(const GroupPair&, const GroupPair&) = default;
};

struct QuantizationConfig {
  double gamma = 1.0;
  SafePrimePair primes;

  // Throws DomainError unless gamma >= 1 and the primes are populated.
  void validate() const;
};

struct EncodeResult {
  EncodedPair value;
  // round_pos(gamma |x|) >= q, so the magnitude was reduced mod q.
  bool wrapped = false;
};

// x -> (zeta, round_pos(gamma |x|) mod q). Throws CodecError if the magnitude wraps to 0.
EncodeResult encode_sign_mag(double x, const QuantizationConfig& cfg);

// (zeta, z) -> (zeta/3)_L * z / gamma.
double decode_sign_mag(const EncodedPair& e, double gamma);

// Multiplies each component by its own Legendre symbol mod p.
GroupPair lift_to_group(const EncodedPair& e, const SafePrimePair& primes);

// Componentwise |x Mod p|. Throws CorruptCiphertext when the sign token is not 1 or 2.
EncodedPair drop_from_group(const GroupPair& gp, const SafePrimePair& primes);

GroupPair ecd(double x, const QuantizationConfig& cfg);
double dcd(const GroupPair& gp, const QuantizationConfig& cfg);

std::vector<GroupPair> ecd(std::span<const double> xs, const QuantizationConfig& cfg);
std::vector<double> dcd(std::span<const GroupPair> gps, const QuantizationConfig& cfg);

// True when both components are quadratic residues mod p.
bool in_group(const GroupPair& gp, const SafePrimePair& primes);

}  // namespace cfrit::codec
