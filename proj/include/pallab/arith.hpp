#pragma once

// Exact arithmetic: factorization, Moebius function, square-free testing,
// modular inverses, CRT and k-th power residue solution sets.

#include <cstdint>
#include <span>
#include <vector>

#include "pallab/int128.hpp"

namespace pallab {

struct PrimePower {
  u128 prime;
  unsigned exponent;
  bool operator==(const PrimePower&) const = default;
};

/// Prime factorization sorted by prime; empty for n = 1.
using Factorization = std::vector<PrimePower>;

// ---- 64-bit modular primitives (moduli below 2^64) ----

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, u128 exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Reduces a signed value into [0, m).
inline std::uint64_t reduce_mod(i128 a, std::uint64_t m) {
  i128 r = a % static_cast<i128>(m);
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b);

/// Inverse of a modulo m, or 0 if gcd(a, m) != 1 (m >= 2).
std::uint64_t try_inverse(std::uint64_t a, std::uint64_t m);

// ---- public operations ----

bool is_prime(u128 n);

/// Complete factorization of 2 <= n < 2^127 (n = 1 gives an empty list).
Factorization factorize(u128 n);

u128 multiply_out(const Factorization& f);

/// mu(n) in {-1, 0, 1}; n >= 1.
int mobius(u128 n);

/// True iff no prime square divides n; n >= 1.
bool is_squarefree(u128 n);

/// a^-1 mod m in [0, m); throws DomainError when gcd(a, m) != 1 or m < 2.
u128 mod_inverse(i128 a, u128 m);

/// omega(n), the number of distinct prime factors.
unsigned omega(u128 n);

std::uint64_t euler_phi(std::uint64_t n);

struct Congruence {
  u128 residue;
  u128 modulus;
  bool operator==(const Congruence&) const = default;
};

/// The unique residue modulo prod m_i congruent to every r_i. Throws
/// DomainError if two moduli share a factor.
Congruence crt_combine(std::span<const Congruence> parts);

/// Largest prime power p^alpha that is solved by exhaustive search when
/// Hensel lifting does not apply (p = 2 or p | k).
inline constexpr std::uint64_t kExhaustiveLimit = 1'000'000;

/// Sorted set {w mod q : gcd(w, q) = 1, w^k = a (mod q)}, q >= 2, k >= 1.
/// Throws UnsupportedError for a prime power p^alpha > kExhaustiveLimit
/// with p = 2 or p | k.
std::vector<std::uint64_t> kth_residue_solutions(i128 a, unsigned k, std::uint64_t q);

/// Primes below `limit`, from an immutable process-wide sieve (limit <= 2^22).
std::span<const std::uint32_t> small_primes(std::uint32_t limit);

}  // namespace pallab
