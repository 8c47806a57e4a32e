#include "cfrit/modmath.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "cfrit/errors.hpp"
#include "cfrit/prime_cache.hpp"

namespace cfrit::modmath {

BigInt mod_pow(const BigInt& base, const BigInt& exp, const BigInt& m) {
  if (m < 2) throw DomainError("mod_pow: modulus must be >= 2");
  if (sgn(exp) < 0) throw DomainError("mod_pow: negative exponent");
  BigInt r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
  return r;
}

int legendre(const BigInt& z, const BigInt& p) {
  if (p < 3 || mpz_even_p(p.get_mpz_t())) throw DomainError("legendre: p must be an odd prime");
  BigInt zr;
  mpz_mod(zr.get_mpz_t(), z.get_mpz_t(), p.get_mpz_t());
  if (zr == 0) throw DomainError("legendre: p divides z");
  const BigInt r = mod_pow(zr, (p - 1) / 2, p);
  if (r == 1) return 1;
  if (r == p - 1) return -1;
  throw DomainError("legendre: p is not prime");
}

BigInt minimal_residue(const BigInt& a, const BigInt& m) {
  if (m < 1) throw DomainError("minimal_residue: modulus must be >= 1");
  BigInt b;
  mpz_mod(b.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (b < m - b) return b;
  return b - m;
}

BigInt round_pos(double sigma) {
  if (!(sigma >= 0.0) || std::isinf(sigma)) {
    throw DomainError("round_pos: argument must be finite and non-negative");
  }
  if (sigma < 0.5) return 1;
  // Below 2^52 the addition of 0.5 cannot carry across an integer boundary.
  if (sigma < 4503599627370496.0) return BigInt(std::floor(sigma + 0.5));
  mpq_class exact(sigma);
  exact += mpq_class(1, 2);
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), exact.get_num_mpz_t(), exact.get_den_mpz_t());
  return r;
}

unsigned bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return static_cast<unsigned>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

namespace {

constexpr std::array<unsigned long, 12> kWitnesses64 = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

constexpr std::array<unsigned, 25> kSmallPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                                   29, 31, 37, 41, 43, 47, 53, 59, 61,
                                                   67, 71, 73, 79, 83, 89, 97};

// n - 1 = d 2^r with d odd; true when a is not a witness of compositeness.
bool mr_round(const BigInt& n, const BigInt& d, unsigned r, const BigInt& a) {
  const BigInt nm1 = n - 1;
  BigInt x = mod_pow(a, d, n);
  if (x == 1 || x == nm1) return true;
  for (unsigned i = 1; i < r; ++i) {
    x = x * x % n;
    if (x == nm1) return true;
    if (x == 1) return false;
  }
  return false;
}

std::uint64_t low_u64(const BigInt& n) {
  std::uint64_t lo = 0;
  const std::size_t limbs = mpz_size(n.get_mpz_t());
  for (std::size_t i = 0; i < limbs && i * GMP_NUMB_BITS < 64; ++i) {
    lo |= static_cast<std::uint64_t>(mpz_getlimbn(n.get_mpz_t(), i)) << (i * GMP_NUMB_BITS);
  }
  return lo;
}

}  // namespace

bool is_prime(const BigInt& n, unsigned rounds) {
  if (n < 2) return false;
  for (unsigned sp : kSmallPrimes) {
    if (n == sp) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), sp)) return false;
  }
  if (n < 97 * 97) return true;

  BigInt d = n - 1;
  unsigned r = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++r;
  }

  if (bit_length(n) <= 64) {
    for (unsigned long a : kWitnesses64) {
      if (!mr_round(n, d, r, BigInt(a))) return false;
    }
    return true;
  }

  std::mt19937_64 engine(low_u64(n) ^ 0x9e3779b97f4a7c15ULL);
  const BigInt span = n - 3;  // witnesses in [2, n-2]
  const unsigned words = (bit_length(span) + 63) / 64;
  if (!mr_round(n, d, r, BigInt(2))) return false;
  for (unsigned i = 1; i < rounds; ++i) {
    BigInt a = 0;
    for (unsigned w = 0; w < words; ++w) {
      const std::uint64_t x = engine();
      BigInt part;
      mpz_import(part.get_mpz_t(), 1, 1, sizeof(x), 0, 0, &x);
      mpz_mul_2exp(a.get_mpz_t(), a.get_mpz_t(), 64);
      a += part;
    }
    a = a % span + 2;
    if (!mr_round(n, d, r, a)) return false;
  }
  return true;
}

namespace {

constexpr unsigned kSieveLimit = 4096;

std::vector<unsigned> sieve_primes(unsigned limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<unsigned> out;
  for (unsigned i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (unsigned j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace

SafePrimePair search_largest_safe_q(unsigned kappa) {
  if (kappa < 3) throw DomainError("largest_safe_q: kappa must be >= 3");
  const BigInt lo = BigInt(1) << (kappa - 1);
  BigInt q = (BigInt(1) << kappa) - 1;  // odd

  // Small sizes: q may itself be one of the sieve primes.
  if (kappa <= 24) {
    for (; q >= lo; q -= 2) {
      if (is_prime(q) && is_prime(2 * q + 1)) return {q, 2 * q + 1, kappa};
    }
    throw NotFoundError("largest_safe_q: no safe prime with a " + std::to_string(kappa) +
                        "-bit q");
  }

  static const std::vector<unsigned> primes = sieve_primes(kSieveLimit);
  std::vector<unsigned> rq(primes.size());
  for (std::size_t k = 0; k < primes.size(); ++k) {
    rq[k] = static_cast<unsigned>(mpz_fdiv_ui(q.get_mpz_t(), primes[k]));
  }
  for (; q >= lo; q -= 2) {
    bool candidate = true;
    for (std::size_t k = 0; k < primes.size(); ++k) {
      const unsigned r = rq[k];
      if (r == 0 || (2 * r + 1) % primes[k] == 0) candidate = false;
      rq[k] = (r + primes[k] - 2 % primes[k]) % primes[k];
    }
    if (!candidate) continue;
    const BigInt p = 2 * q + 1;
    if (is_prime(q) && is_prime(p)) return {q, p, kappa};
  }
  throw NotFoundError("largest_safe_q: no safe prime with a " + std::to_string(kappa) +
                      "-bit q");
}

SafePrimePair largest_safe_q(unsigned kappa) {
  static std::mutex mu;
  static std::map<unsigned, SafePrimePair> memo;
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(kappa); it != memo.end()) return it->second;
  }

  const auto dir = prime_cache_dir();
  std::optional<SafePrimePair> pair;
  if (dir) pair = load_cached_pair(*dir, kappa);
  if (!pair) {
    pair = search_largest_safe_q(kappa);
    if (dir) store_cached_pair(*dir, *pair);
  }

  std::lock_guard lock(mu);
  return memo.emplace(kappa, *pair).first->second;
}

}  // namespace cfrit::modmath
