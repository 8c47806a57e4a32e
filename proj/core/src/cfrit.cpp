#include "cfrit/cfrit.hpp"

#include <cmath>

#include "cfrit/designer.hpp"
#include "cfrit/errors.hpp"
#include "parallel.hpp"

namespace cfrit::confidential {

using codec::GroupPair;
using frit::TermExpansion;

std::span<const double> encrypted_factors(const TermFactors& tf, bool encrypt_leading_sign) {
  std::span<const double> all(tf.factors);
  return encrypt_leading_sign ? all : all.subspan(1);
}

BigInt quantized_magnitude_product(std::span<const double> factors, double gamma) {
  BigInt prod = 1;
  for (double x : factors) prod *= modmath::round_pos(gamma * std::fabs(x));
  return prod;
}

bool detect_overflow(std::span<const double> factors, const QuantizationConfig& cfg) {
  return quantized_magnitude_product(factors, cfg.gamma) >= cfg.primes.q;
}

bool detect_overflow(const TermFactors& tf, const QuantizationConfig& cfg,
                     bool encrypt_leading_sign) {
  return detect_overflow(encrypted_factors(tf, encrypt_leading_sign), cfg);
}

EncryptedTerm encrypt_term(const TermFactors& tf, const QuantizationConfig& cfg,
                           const PublicKey& pk, RandomSource& rng, bool encrypt_leading_sign) {
  const auto factors = encrypted_factors(tf, encrypt_leading_sign);
  EncryptedTerm et;
  et.j = tf.j;
  et.iota = tf.iota;
  et.scale_power = factors.size();
  et.negate = !encrypt_leading_sign && tf.factors.at(frit::kLeadingSign) < 0.0;
  for (double x : factors) {
    et.cipher = elgamal::cmul(pk, et.cipher, elgamal::enc(pk, codec::ecd(x, cfg), rng));
  }
  return et;
}

DecodedProduct decode_product(const GroupPair& m, const PublicKey& pk) {
  if (m.x1 < 1 || m.x1 >= pk.p || m.x2 < 1 || m.x2 >= pk.p) {
    throw CorruptCiphertext("decode: plaintext outside [1, p)");
  }
  const BigInt s = abs(modmath::minimal_residue(m.x1, pk.p));
  // The sign channel carries 2^m for m negative factors.
  if (mpz_popcount(s.get_mpz_t()) != 1) {
    throw CorruptCiphertext("decode: sign channel is not a power of two");
  }
  return {modmath::legendre(s, 3), abs(modmath::minimal_residue(m.x2, pk.p))};
}

double rescale(const BigInt& magnitude, double gamma, std::size_t power) {
  mpq_class scale(1);
  const mpq_class g(gamma);
  for (std::size_t k = 0; k < power; ++k) scale *= g;
  return mpq_class(magnitude / scale).get_d();
}

double decode_term(const EncryptedTerm& et, const SecretKey& sk, const PublicKey& pk,
                   const QuantizationConfig& cfg) {
  const auto d = decode_product(elgamal::dec(sk, pk, et.cipher), pk);
  const double v = d.sign * rescale(d.magnitude, cfg.gamma, et.scale_power);
  return et.negate ? -v : v;
}

namespace {

// Ciphertexts of every distinct factor value, encrypted once and reused by all
// terms that contain it.
struct SharedCiphertexts {
  std::vector<Ciphertext> ew;    // Enc(E_i) * Enc(W_il), index i n + l
  std::vector<Ciphertext> rest;  // remaining factors, index (k n + l) n + iota
};

SharedCiphertexts encrypt_shared(const TermExpansion& tx, const QuantizationConfig& cfg,
                                 const PublicKey& pk, RandomSource& rng,
                                 bool encrypt_leading_sign) {
  const std::size_t n = tx.n();
  const std::size_t rows = n * tx.N();
  const auto& ds = tx.dataset();
  auto encrypt = [&](double x) { return elgamal::enc(pk, codec::ecd(x, cfg), rng); };

  SharedCiphertexts sc;
  std::vector<Ciphertext> e(rows);
  for (std::size_t i = 0; i < rows; ++i) e[i] = encrypt(ds.E[i]);
  sc.ew.resize(rows * n);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t l = 0; l < n; ++l) sc.ew[i * n + l] = elgamal::cmul(pk, e[i], encrypt(ds.W(i, l)));

  const Ciphertext lead = encrypt_leading_sign ? encrypt(-1.0) : Ciphertext{};
  const Ciphertext det_inv = encrypt(1.0 / tx.det());
  const Ciphertext plus = encrypt(1.0);
  const Ciphertext minus = encrypt(-1.0);

  // Minor entries, one ciphertext per (l, iota, row, col).
  const std::size_t m = n - 1;
  std::vector<Ciphertext> minor_ct(n * n * m * m);
  for (std::size_t iota = 0; iota < n; ++iota)
    for (std::size_t l = 0; l < n; ++l) {
      const auto& mm = tx.minor_for(l, iota);
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c)
          minor_ct[((iota * n + l) * m + r) * m + c] = encrypt(mm(r, c));
    }

  sc.rest.resize(tx.block_count() * n * n);
  for (std::size_t k = 0; k < tx.block_count(); ++k) {
    const auto& sigma = tx.permutation(k);
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t iota = 0; iota < n; ++iota) {
        Ciphertext acc = elgamal::cmul(pk, lead, det_inv);
        acc = elgamal::cmul(pk, acc, (l + iota) % 2 == 0 ? plus : minus);
        acc = elgamal::cmul(pk, acc, sigma.sign > 0 ? plus : minus);
        for (std::size_t xi = 0; xi < m; ++xi) {
          acc = elgamal::cmul(pk, acc, minor_ct[((iota * n + l) * m + xi) * m + sigma.mapping[xi]]);
        }
        sc.rest[(k * n + l) * n + iota] = acc;
      }
  }
  return sc;
}

double sum_terms(const std::vector<double>& terms, bool compensated) {
  if (!compensated) {
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
  }
  // Neumaier
  double s = 0.0, c = 0.0;
  for (double t : terms) {
    const double u = s + t;
    c += std::fabs(s) >= std::fabs(t) ? (s - u) + t : (t - u) + s;
    s = u;
  }
  return s + c;
}

}  // namespace

CfritResult cfrit_gain(const TuningDataset& ds, const QuantizationConfig& cfg, const KeyPair& keys,
                       RandomSource& rng, const CfritOptions& options) {
  cfg.validate();
  if (keys.pk.q != cfg.primes.q || keys.pk.p != cfg.primes.p) {
    throw DomainError("cfrit: key primes differ from the quantization primes");
  }
  const TermExpansion tx(ds);
  const std::size_t n = tx.n();
  const std::size_t M = tx.term_count();
  const bool lead = options.encrypt_leading_sign;
  const std::size_t scale_power = lead ? n + 5 : n + 4;

  SharedCiphertexts shared;
  std::uint64_t fresh_base = 0;
  if (options.fresh_factor_encryption) {
    fresh_base = rng.next_u64();
  } else {
    shared = encrypt_shared(tx, cfg, keys.pk, rng, lead);
  }

  mpq_class scale(1);
  for (std::size_t k = 0; k < scale_power; ++k) scale *= mpq_class(cfg.gamma);

  std::vector<std::vector<double>> decoded(n, std::vector<double>(M));
  std::vector<std::vector<char>> overflowed(n, std::vector<char>(M, 0));

  // One task per (k, iota) block; results land at fixed positions.
  const std::size_t tasks = tx.block_count() * n;
  detail::parallel_for(tasks, options.threads, [&](std::size_t task) {
    const std::size_t k = task / n;
    const std::size_t iota = task % n;
    SeededRandom local(options.fresh_factor_encryption ? derive_seed(fresh_base, {k, iota}) : 0);
    tx.for_each_in_block(k, iota, [&](const TermFactors& tf) {
      overflowed[iota][tf.j] = detect_overflow(tf, cfg, lead);

      Ciphertext c;
      if (options.fresh_factor_encryption) {
        c = encrypt_term(tf, cfg, keys.pk, local, lead).cipher;
      } else {
        const auto t = frit::term_triplet(tf.j, n, tx.N());
        c = elgamal::cmul(keys.pk, shared.ew[t.i * n + t.l], shared.rest[(k * n + t.l) * n + iota]);
      }
      const auto d = decode_product(elgamal::dec(keys.sk, keys.pk, c), keys.pk);
      double v = d.sign * mpq_class(d.magnitude / scale).get_d();
      if (!lead) v = -v;
      decoded[iota][tf.j] = v;
    });
  });

  CfritResult result;
  result.gain.F.resize(n);
  for (std::size_t iota = 0; iota < n; ++iota) {
    result.gain.F[iota] = sum_terms(decoded[iota], options.compensated_sum);
  }

  auto& rep = result.overflow;
  rep.term_count = M;
  for (std::size_t j = 0; j < M; ++j)
    for (std::size_t iota = 0; iota < n; ++iota)
      if (overflowed[iota][j]) rep.overflowed_terms.emplace_back(j, iota);
  rep.observed = !rep.overflowed_terms.empty();
  const auto spec = design::DesignSpec::from_dataset(ds, 1.0);
  rep.in_q = design::in_q(cfg.primes.q, design::q_requirement(spec, cfg.gamma));
  return result;
}

}  // namespace cfrit::confidential
