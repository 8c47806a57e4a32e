#include "cfrit/codec.hpp"

#include <cmath>

#include "cfrit/errors.hpp"

namespace cfrit::codec {

void QuantizationConfig::validate() const {
  if (!(gamma >= 1.0) || std::isinf(gamma)) throw DomainError("quantization gain must be >= 1");
  if (primes.q < 2 || primes.p != 2 * primes.q + 1) {
    throw DomainError("quantization config has no valid safe-prime pair");
  }
}

EncodeResult encode_sign_mag(double x, const QuantizationConfig& cfg) {
  if (!std::isfinite(x)) throw DomainError("encode: value is not finite");
  EncodeResult out;
  out.value.zeta = x >= 0.0 ? 1 : 2;
  const BigInt mag = modmath::round_pos(cfg.gamma * std::fabs(x));
  out.wrapped = mag >= cfg.primes.q;
  out.value.z = out.wrapped ? BigInt(mag % cfg.primes.q) : mag;
  if (out.value.z == 0) throw CodecError("encode: magnitude wrapped to 0 mod q");
  return out;
}

double decode_sign_mag(const EncodedPair& e, double gamma) {
  if (e.zeta != 1 && e.zeta != 2) throw CorruptCiphertext("decode: sign token not in {1, 2}");
  const int sign = modmath::legendre(e.zeta, 3);
  // Exact below 2^53, so the division rounds once.
  if (modmath::bit_length(e.z) <= 53) return sign * (e.z.get_d() / gamma);
  return sign * mpq_class(mpq_class(e.z) / mpq_class(gamma)).get_d();
}

namespace {

BigInt lift(const BigInt& v, const BigInt& p) {
  const int l = modmath::legendre(v, p);
  BigInt r = l * v;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
  return r;
}

BigInt abs_minimal(const BigInt& v, const BigInt& p) {
  if (v < 1 || v >= p) throw DomainError("group element outside [1, p)");
  return abs(modmath::minimal_residue(v, p));
}

}  // namespace

GroupPair lift_to_group(const EncodedPair& e, const SafePrimePair& primes) {
  if (e.zeta != 1 && e.zeta != 2) throw DomainError("lift: sign token not in {1, 2}");
  if (e.z < 1 || e.z >= primes.q) throw DomainError("lift: magnitude outside [1, q)");
  return {lift(e.zeta, primes.p), lift(e.z, primes.p)};
}

EncodedPair drop_from_group(const GroupPair& gp, const SafePrimePair& primes) {
  const BigInt zeta = abs_minimal(gp.x1, primes.p);
  if (zeta != 1 && zeta != 2) throw CorruptCiphertext("drop: sign token not in {1, 2}");
  return {static_cast<int>(zeta.get_si()), abs_minimal(gp.x2, primes.p)};
}

GroupPair ecd(double x, const QuantizationConfig& cfg) {
  return lift_to_group(encode_sign_mag(x, cfg).value, cfg.primes);
}

double dcd(const GroupPair& gp, const QuantizationConfig& cfg) {
  return decode_sign_mag(drop_from_group(gp, cfg.primes), cfg.gamma);
}

std::vector<GroupPair> ecd(std::span<const double> xs, const QuantizationConfig& cfg) {
  std::vector<GroupPair> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(ecd(x, cfg));
  return out;
}

std::vector<double> dcd(std::span<const GroupPair> gps, const QuantizationConfig& cfg) {
  std::vector<double> out;
  out.reserve(gps.size());
  for (const auto& gp : gps) out.push_back(dcd(gp, cfg));
  return out;
}

bool in_group(const GroupPair& gp, const SafePrimePair& primes) {
  for (const BigInt* v : {&gp.x1, &gp.x2}) {
    if (*v < 1 || *v >= primes.p) return false;
    if (modmath::legendre(*v, primes.p) != 1) return false;
  }
  return true;
}

}  // namespace cfrit::codec
