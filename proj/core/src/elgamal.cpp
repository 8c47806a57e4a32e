#include "cfrit/elgamal.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "cfrit/errors.hpp"

namespace cfrit::elgamal {

modmath::SafePrimePair PublicKey::primes() const {
  return {q, p, modmath::bit_length(q)};
}

KeyPair gen_with_secret(const modmath::SafePrimePair& primes, const BigInt& s) {
  if (s < 0 || s >= primes.q) throw DomainError("gen: secret outside Z_q");
  KeyPair kp;
  kp.pk.p = primes.p;
  kp.pk.q = primes.q;
  kp.pk.g = kGenerator;
  kp.pk.h = modmath::mod_pow(kp.pk.g, s, primes.p);
  kp.sk.s = s;
  return kp;
}

KeyPair gen(unsigned kappa, RandomSource& rng) {
  const auto primes = modmath::largest_safe_q(kappa);
  return gen_with_secret(primes, rng.below(primes.q));
}

namespace {

void check_message(const PublicKey& pk, const BigInt& x) {
  if (x < 1 || x >= pk.p) throw DomainError("enc: message component outside [1, p)");
}

BigInt mulmod(const BigInt& a, const BigInt& b, const BigInt& m) {
  BigInt r = a * b;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

Ciphertext enc_with(const PublicKey& pk, const GroupPair& m, const BigInt& r1, const BigInt& r2) {
  check_message(pk, m.x1);
  check_message(pk, m.x2);
  return {modmath::mod_pow(pk.g, r1, pk.p), mulmod(m.x1, modmath::mod_pow(pk.h, r1, pk.p), pk.p),
          modmath::mod_pow(pk.g, r2, pk.p), mulmod(m.x2, modmath::mod_pow(pk.h, r2, pk.p), pk.p)};
}

Ciphertext enc(const PublicKey& pk, const GroupPair& m, RandomSource& rng) {
  const BigInt r1 = rng.below(pk.q);
  const BigInt r2 = rng.below(pk.q);
  return enc_with(pk, m, r1, r2);
}

GroupPair dec(const SecretKey& sk, const PublicKey& pk, const Ciphertext& c) {
  for (const BigInt* v : {&c.c1, &c.c2, &c.c3, &c.c4}) {
    if (*v < 1 || *v >= pk.p) throw CorruptCiphertext("dec: component outside [1, p)");
  }
  // c^{-s} = c^{q-s} inside the order-q subgroup.
  const BigInt e = pk.q - sk.s;
  return {mulmod(modmath::mod_pow(c.c1, e, pk.p), c.c2, pk.p),
          mulmod(modmath::mod_pow(c.c3, e, pk.p), c.c4, pk.p)};
}

Ciphertext cmul(const PublicKey& pk, const Ciphertext& a, const Ciphertext& b) {
  return {mulmod(a.c1, b.c1, pk.p), mulmod(a.c2, b.c2, pk.p), mulmod(a.c3, b.c3, pk.p),
          mulmod(a.c4, b.c4, pk.p)};
}

Ciphertext fold(const PublicKey& pk, std::span<const Ciphertext> cs) {
  Ciphertext acc;
  for (const auto& c : cs) acc = cmul(pk, acc, c);
  return acc;
}

namespace {

BigInt read_field(std::istream& is, const char* name) {
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) break;
  }
  BigInt v;
  if (line.empty() || v.set_str(line, 10) != 0) {
    throw ParseError(std::string("key file: missing or malformed field '") + name + "'");
  }
  return v;
}

}  // namespace

void write_public_key(std::ostream& os, const PublicKey& pk) {
  os << pk.p.get_str() << '\n' << pk.q.get_str() << '\n' << pk.g.get_str() << '\n'
     << pk.h.get_str() << '\n';
}

void write_secret_key(std::ostream& os, const SecretKey& sk) { os << sk.s.get_str() << '\n'; }

PublicKey read_public_key(std::istream& is) {
  PublicKey pk;
  pk.p = read_field(is, "p");
  pk.q = read_field(is, "q");
  pk.g = read_field(is, "g");
  pk.h = read_field(is, "h");
  if (pk.p != 2 * pk.q + 1) throw ParseError("key file: p != 2q + 1");
  return pk;
}

SecretKey read_secret_key(std::istream& is) { return {read_field(is, "s")}; }

std::string serialize(const Ciphertext& c) {
  return c.c1.get_str() + ' ' + c.c2.get_str() + ' ' + c.c3.get_str() + ' ' + c.c4.get_str();
}

Ciphertext deserialize_ciphertext(const std::string& text) {
  std::istringstream in(text);
  std::string parts[4];
  Ciphertext c;
  BigInt* fields[4] = {&c.c1, &c.c2, &c.c3, &c.c4};
  for (int i = 0; i < 4; ++i) {
    if (!(in >> parts[i]) || fields[i]->set_str(parts[i], 10) != 0) {
      throw ParseError("ciphertext: expected four decimal integers");
    }
  }
  std::string extra;
  if (in >> extra) throw ParseError("ciphertext: trailing data");
  return c;
}

}  // namespace cfrit::elgamal
