#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "cfrit/codec.hpp"
#include "cfrit/elgamal.hpp"
#include "cfrit/frit.hpp"
#include "cfrit/random.hpp"

namespace cfrit::confidential {

using codec::QuantizationConfig;
using elgamal::Ciphertext;
using elgamal::KeyPair;
using elgamal::PublicKey;
using elgamal::SecretKey;
using frit::TermFactors;
using plant::FeedbackGain;
using plant::TuningDataset;

struct CfritOptions {
  // Encrypt every factor of every term afresh instead of encrypting each
  // dataset element once and reusing its ciphertext across terms.
  bool fresh_factor_encryption = false;
  // Also quantize and encrypt the constant leading -1 of each term. By default
  // it is public and applied after decoding.
  bool encrypt_leading_sign = false;
  // Neumaier summation of the decoded terms.
  bool compensated_sum = false;
  unsigned threads = 1;
};

// Folded ciphertext of one term. `scale_power` factors were quantized, so the
// decoded magnitude is divided by gamma^scale_power.
struct EncryptedTerm {
  std::size_t j = 0;
  std::size_t iota = 0;
  Ciphertext cipher;
  std::size_t scale_power = 0;
  bool negate = false;
};

struct OverflowReport {
  std::size_t term_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> overflowed_terms;  // (j, iota)
  bool in_q = false;      // (q, gamma) satisfies the sufficient no-overflow bound
  bool observed = false;  // some quantized product reached q
};

struct CfritResult {
  FeedbackGain gain;
  OverflowReport overflow;
};

// The factors of a term that go through the encoder.
std::span<const double> encrypted_factors(const TermFactors& tf, bool encrypt_leading_sign);

// Product of round_pos(gamma |x_i|) over the factors, in exact integers.
BigInt quantized_magnitude_product(std::span<const double> factors, double gamma);

// Overflow: the exact quantized product is >= q - 1/2, i.e. >= q.
bool detect_overflow(std::span<const double> factors, const QuantizationConfig& cfg);
bool detect_overflow(const TermFactors& tf, const QuantizationConfig& cfg,
                     bool encrypt_leading_sign = false);

// Ecd + Enc of each factor with fresh randomness, folded with cmul.
EncryptedTerm encrypt_term(const TermFactors& tf, const QuantizationConfig& cfg,
                           const PublicKey& pk, RandomSource& rng,
                           bool encrypt_leading_sign = false);

// Dec, then |Mod p| on both channels. The sign channel must be 2^m; the sign is
// (2^m / 3)_L. Throws CorruptCiphertext otherwise.
double decode_term(const EncryptedTerm& et, const SecretKey& sk, const PublicKey& pk,
                   const QuantizationConfig& cfg);

// Decoded sign and magnitude of a decrypted term, before rescaling by gamma.
struct DecodedProduct {
  int sign = 1;
  BigInt magnitude;
};
DecodedProduct decode_product(const codec::GroupPair& m, const PublicKey& pk);

// Rescales an integer magnitude by gamma^power.
double rescale(const BigInt& magnitude, double gamma, std::size_t power);

// F*_E: per output, the sum over j of the decrypted, decoded terms.
CfritResult cfrit_gain(const TuningDataset& ds, const QuantizationConfig& cfg, const KeyPair& keys,
                       RandomSource& rng, const CfritOptions& options = {});

}  // namespace cfrit::confidential
