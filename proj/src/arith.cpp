#include "pallab/arith.hpp"

#include <algorithm>
#include <tuple>
#include <numeric>
#include <string>
#include <utility>

namespace pallab {
namespace {

constexpr std::uint32_t kSieveLimit = 1u << 22;

const std::vector<std::uint32_t>& prime_table() {
  static const std::vector<std::uint32_t> table = [] {
    std::vector<bool> composite(kSieveLimit, false);
    std::vector<std::uint32_t> primes;
    for (std::uint32_t i = 2; i < kSieveLimit; ++i) {
      if (composite[i]) continue;
      primes.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j < kSieveLimit; j += i) composite[j] = true;
    }
    return primes;
  }();
  return table;
}

// a*b mod m for any m < 2^127. Double-and-add keeps every intermediate below
// 2^128 once a, b < m.
u128 mulmod128(u128 a, u128 b, u128 m) {
  if (m <= UINT64_MAX) return (a % m) * (b % m) % m;
  a %= m;
  b %= m;
  u128 r = 0;
  while (b != 0) {
    if (b & 1) {
      r += a;
      if (r >= m) r -= m;
    }
    a += a;
    if (a >= m) a -= m;
    b >>= 1;
  }
  return r;
}

u128 powmod128(u128 base, u128 exp, u128 m) {
  u128 result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod128(result, base, m);
    base = mulmod128(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool strong_probable_prime(u128 n, u128 a) {
  u128 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  u128 x = powmod128(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mulmod128(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Pollard-Brent; returns a nontrivial factor of the odd composite n.
u128 pollard_brent(u128 n) {
  for (u128 c = 1;; ++c) {
    auto f = [&](u128 v) { return (mulmod128(v, v, n) + c) % n; };
    u128 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const unsigned m = 128;
    for (unsigned r = 1; g == 1; r <<= 1) {
      x = y;
      for (unsigned i = 0; i < r; ++i) y = f(y);
      for (unsigned k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (unsigned i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod128(q, x > y ? x - y : y - x, n);
        }
        g = gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_into(u128 n, std::vector<u128>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  u128 d = pollard_brent(n);
  split_into(d, primes);
  split_into(n / d, primes);
}

// Discrete logarithm of h to base g in the cyclic subgroup of prime order
// ell, modulo the prime p.
std::uint64_t bsgs(std::uint64_t g, std::uint64_t h, std::uint64_t ell, std::uint64_t p) {
  if (ell > (std::uint64_t{1} << 40)) {
    throw UnsupportedError("discrete logarithm in a subgroup of order " + std::to_string(ell));
  }
  std::uint64_t m = 1;
  while (m * m < ell) ++m;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> baby;
  baby.reserve(m);
  std::uint64_t cur = 1;
  for (std::uint64_t j = 0; j < m; ++j) {
    baby.emplace_back(cur, j);
    cur = mulmod(cur, g, p);
  }
  std::sort(baby.begin(), baby.end());
  const std::uint64_t giant = powmod(try_inverse(g, p), m, p);
  std::uint64_t gamma = h;
  for (std::uint64_t i = 0; i <= m; ++i) {
    auto it = std::lower_bound(baby.begin(), baby.end(), std::make_pair(gamma, std::uint64_t{0}));
    if (it != baby.end() && it->first == gamma) return (i * m + it->second) % ell;
    gamma = mulmod(gamma, giant, p);
  }
  throw std::logic_error("bsgs: element not in subgroup");
}

// Solutions of w^k = a (mod p), p an odd prime not dividing k, a a unit.
std::vector<std::uint64_t> roots_mod_prime(std::uint64_t a, unsigned k, std::uint64_t p) {
  std::vector<std::uint64_t> roots;
  if (p <= 256) {
    for (std::uint64_t w = 1; w < p; ++w) {
      if (powmod(w, k, p) == a) roots.push_back(w);
    }
    return roots;
  }
  const std::uint64_t n = p - 1;
  const std::uint64_t d = std::gcd<std::uint64_t>(k, n);
  if (d == 1) {
    // k is invertible modulo p - 1: the k-th power map is a bijection.
    roots.push_back(powmod(a, try_inverse(k % n, n), p));
    return roots;
  }
  if (powmod(a, n / d, p) != 1) return roots;

  Factorization nf = factorize(n);
  std::uint64_t g = 2;
  for (;; ++g) {
    bool generator = true;
    for (const auto& [ell, e] : nf) {
      if (powmod(g, n / static_cast<std::uint64_t>(ell), p) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) break;
  }

  // Pohlig-Hellman: log_g(a) modulo each prime power of p - 1.
  std::vector<Congruence> parts;
  for (const auto& [ell128, e] : nf) {
    const auto ell = static_cast<std::uint64_t>(ell128);
    std::uint64_t ell_e = 1;
    for (unsigned i = 0; i < e; ++i) ell_e *= ell;
    const std::uint64_t gamma = powmod(g, n / ell, p);
    const std::uint64_t g_inv = try_inverse(g, p);
    std::uint64_t x = 0, ell_i = 1;
    for (unsigned i = 0; i < e; ++i) {
      const std::uint64_t h = powmod(mulmod(a, powmod(g_inv, x, p), p), n / (ell_i * ell), p);
      x += bsgs(gamma, h, ell, p) * ell_i;
      ell_i *= ell;
    }
    parts.push_back({x, ell_e});
  }
  const auto log_a = static_cast<std::uint64_t>(crt_combine(parts).residue);

  // k*y = log_a (mod n) has exactly d solutions since d | log_a.
  const std::uint64_t nd = n / d;
  const std::uint64_t y0 =
      nd == 1 ? 0 : mulmod((log_a / d) % nd, try_inverse((k / d) % nd, nd), nd);
  for (std::uint64_t j = 0; j < d; ++j) roots.push_back(powmod(g, y0 + j * nd, p));
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Solutions modulo the prime power p^alpha.
std::vector<std::uint64_t> roots_mod_prime_power(i128 a, unsigned k, std::uint64_t p,
                                                 unsigned alpha) {
  std::uint64_t pa = 1;
  for (unsigned i = 0; i < alpha; ++i) pa *= p;
  const std::uint64_t target = reduce_mod(a, pa);
  std::vector<std::uint64_t> roots;
  if (target % p == 0) return roots;  // w^k is a unit

  if (p == 2 || k % p == 0) {
    if (pa > kExhaustiveLimit) {
      throw UnsupportedError("k-th roots modulo " + std::to_string(p) + "^" +
                             std::to_string(alpha) + " with p = 2 or p | k");
    }
    for (std::uint64_t w = 1; w < pa; ++w) {
      if (w % p != 0 && powmod(w, k, pa) == target) roots.push_back(w);
    }
    return roots;
  }

  roots = roots_mod_prime(target % p, k, p);
  // Hensel: f(w) = w^k - a has f'(w) = k w^(k-1), a unit mod p, so each root
  // lifts uniquely one power of p at a time.
  std::uint64_t pj = p;
  for (unsigned j = 1; j < alpha; ++j) {
    const std::uint64_t next = pj * p;
    for (auto& r : roots) {
      const std::uint64_t fr = (powmod(r, k, next) + next - target % next) % next;
      const std::uint64_t deriv = mulmod(k % p, powmod(r, k - 1, p), p);
      const std::uint64_t t = mulmod((fr / pj) % p, try_inverse(deriv, p), p);
      r = (r + next - mulmod(t, pj, next)) % next;
    }
    pj = next;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t try_inverse(std::uint64_t a, std::uint64_t m) {
  std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
  std::int64_t old_s = 1, s = 0;
  if (m > static_cast<std::uint64_t>(INT64_MAX)) {
    u128 inv = 0;
    try {
      inv = mod_inverse(static_cast<i128>(a), m);
    } catch (const DomainError&) {
      return 0;
    }
    return static_cast<std::uint64_t>(inv);
  }
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) return 0;
  if (old_s < 0) old_s += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(old_s);
}

std::span<const std::uint32_t> small_primes(std::uint32_t limit) {
  if (limit > kSieveLimit) throw DomainError("small_primes limit above 2^22");
  const auto& t = prime_table();
  auto end = std::lower_bound(t.begin(), t.end(), limit);
  return {t.data(), static_cast<std::size_t>(end - t.begin())};
}

bool is_prime(u128 n) {
  if (n < 2) return false;
  for (std::uint32_t p : small_primes(64)) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // The first 13 prime bases are deterministic below 3.3e24; beyond that
  // the extra bases make a false positive astronomically unlikely.
  static constexpr std::uint32_t kBases[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                                             37, 41, 43, 47, 53, 59, 61, 67, 71};
  const u128 deterministic_bound = static_cast<u128>(3317044064679887ULL) * 1000000000ULL;
  const std::size_t count = n < deterministic_bound ? 13 : std::size(kBases);
  for (std::size_t i = 0; i < count; ++i) {
    if (!strong_probable_prime(n, kBases[i])) return false;
  }
  return true;
}

Factorization factorize(u128 n) {
  if (n == 0) throw DomainError("factorize(0) is undefined");
  if (n >= kValueLimit) throw OverflowError("factorize requires n < 2^127");
  std::vector<u128> primes;
  for (std::uint32_t p : small_primes(1u << 16)) {
    if (static_cast<u128>(p) * p > n) break;
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  split_into(n, primes);
  std::sort(primes.begin(), primes.end());
  Factorization out;
  for (u128 p : primes) {
    if (!out.empty() && out.back().prime == p) {
      ++out.back().exponent;
    } else {
      out.push_back({p, 1});
    }
  }
  return out;
}

u128 multiply_out(const Factorization& f) {
  u128 v = 1;
  for (const auto& [p, e] : f) v = checked_mul(v, checked_pow(p, e));
  return v;
}

int mobius(u128 n) {
  if (n == 0) throw DomainError("mobius(0) is undefined");
  int sign = 1;
  for (const auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

bool is_squarefree(u128 n) {
  if (n == 0) throw DomainError("is_squarefree(0) is undefined");
  // Strip primes p with p^3 <= m. What remains has every prime factor above
  // its own cube root, so it is 1, p, pq or p^2.
  u128 m = n;
  for (std::uint32_t p : small_primes(kSieveLimit)) {
    const u128 pp = p;
    if (pp * pp * pp > m) return m == 1 || !is_perfect_square(m);
    if (m % p == 0) {
      m /= p;
      if (m % p == 0) return false;
    }
  }
  for (const auto& [p, e] : factorize(m)) {
    if (e > 1) return false;
  }
  return true;
}

u128 mod_inverse(i128 a, u128 m) {
  if (m < 2) throw DomainError("mod_inverse requires modulus >= 2");
  if (m >= kValueLimit) throw OverflowError("mod_inverse requires modulus < 2^127");
  const auto sm = static_cast<i128>(m);
  i128 old_r = a % sm;
  if (old_r < 0) old_r += sm;
  i128 r = sm, old_s = 1, s = 0;
  while (r != 0) {
    const i128 q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) {
    throw DomainError("no inverse of " + to_string(a) + " modulo " + to_string(m));
  }
  old_s %= sm;
  if (old_s < 0) old_s += sm;
  return static_cast<u128>(old_s);
}

unsigned omega(u128 n) { return static_cast<unsigned>(factorize(n).size()); }

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) throw DomainError("euler_phi(0) is undefined");
  std::uint64_t phi = n;
  for (const auto& [p, e] : factorize(n)) phi = phi / static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(p - 1);
  return phi;
}

Congruence crt_combine(std::span<const Congruence> parts) {
  Congruence acc{0, 1};
  for (const auto& [r, m] : parts) {
    if (m == 0) throw DomainError("crt_combine: zero modulus");
    if (gcd(acc.modulus, m) != 1) {
      throw DomainError("crt_combine: moduli " + to_string(acc.modulus) + " and " +
                        to_string(m) + " are not coprime");
    }
    const u128 M = checked_mul(acc.modulus, m);
    if (m == 1) {
      acc.modulus = M;
      continue;
    }
    // x = acc + M_prev * t with t = (r - acc) * M_prev^-1 (mod m).
    const u128 inv = mod_inverse(static_cast<i128>(acc.modulus % m), m);
    const u128 diff = (r % m + m - acc.residue % m) % m;
    const u128 t = mulmod128(diff, inv, m);
    acc.residue = (acc.residue + mulmod128(acc.modulus, t, M)) % M;
    acc.modulus = M;
  }
  return acc;
}

std::vector<std::uint64_t> kth_residue_solutions(i128 a, unsigned k, std::uint64_t q) {
  if (q < 2) throw DomainError("kth_residue_solutions requires q >= 2");
  if (k == 0) throw DomainError("kth_residue_solutions requires k >= 1");
  std::vector<std::uint64_t> acc{0};
  std::uint64_t modulus = 1;
  for (const auto& [p, alpha] : factorize(q)) {
    const auto pp = static_cast<std::uint64_t>(p);
    std::uint64_t pa = 1;
    for (unsigned i = 0; i < alpha; ++i) pa *= pp;
    const auto local = roots_mod_prime_power(a, k, pp, alpha);
    if (local.empty()) return {};
    const std::uint64_t inv = modulus == 1 ? 0 : try_inverse(modulus % pa, pa);
    std::vector<std::uint64_t> next;
    next.reserve(acc.size() * local.size());
    for (std::uint64_t s : acc) {
      for (std::uint64_t t : local) {
        // Lift s (mod modulus) and t (mod pa) to modulus * pa.
        const std::uint64_t diff = (t + pa - s % pa) % pa;
        const std::uint64_t step = modulus == 1 ? t : mulmod(diff, inv, pa);
        next.push_back(modulus == 1 ? t : s + modulus * step);
      }
    }
    acc = std::move(next);
    modulus *= pa;
  }
  std::sort(acc.begin(), acc.end());
  return acc;
}

}  // namespace pallab
