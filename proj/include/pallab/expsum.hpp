#pragma once

// Complete exponential sums: quadratic Kloosterman sums K2, their exact
// stationary-phase evaluation, q-averages and a Poisson summation check.

#include <cstdint>
#include <span>

#include "pallab/arith.hpp"
#include "pallab/oscillate.hpp"

namespace pallab {

/// Arguments of K2(a1, a2, a3, q; c).
struct ExpSumParams {
  std::int64_t a1 = 0, a2 = 0, a3 = 0;
  std::int64_t q = 0;
  std::uint64_t c = 1;
};

/// Largest modulus the direct and stationary-phase evaluators accept.
inline constexpr std::uint64_t kMaxExpSumModulus = std::uint64_t{1} << 40;

/// (1/sqrt c) sum_{x mod c, (x(x+q), c) = 1} e((a1 x + a2 xbar^2 + a3 (x+q)bar^2) / c).
cplx k2_full(const ExpSumParams& p);

/// K2 with a3 = 0 and q = 0.
cplx k2_simple(std::int64_t a1, std::int64_t a2, std::uint64_t c);

/// c = c1 * c2 with c1 = prod p^floor(a/2), c2 = prod p^ceil(a/2).
struct StationarySplit {
  std::uint64_t c = 0;
  std::uint64_t c1 = 1;
  std::uint64_t c2 = 1;
  Factorization factorization;
};

StationarySplit stationary_split(std::uint64_t c);

/// K2 through the exact identity
///   K2 = (c1/sqrt c) sum_{w mod c2, (w(w+q), c) = 1, F'(w) = 0 mod c1} e(F(w)/c).
/// Requires c >= 2.
cplx k2_stationary_phase(const ExpSumParams& p);

/// #{w mod c1 : (w(w+q), c1) = 1, a1 - 2 a2 wbar^3 - 2 a3 (w+q)bar^3 = 0 mod c1},
/// inverses mod c1; 1 when c1 = 1. Requires c >= 2.
std::uint64_t count_critical_points(const ExpSumParams& p);

/// Moduli above this use k2_stationary_phase inside k2_q_average.
inline constexpr std::uint64_t kStationaryThreshold = 64;

/// sum_{|q| <= Q} |K2(m, a, -a, q; c)|, summed in increasing q.
double k2_q_average(std::int64_t m, std::int64_t a, std::uint64_t Q, std::uint64_t c,
                    std::uint64_t threshold = kStationaryThreshold);

struct PoissonResult {
  cplx lhs;                // sum_n f(n) g(n)
  cplx rhs;                // q^{-1/2} sum_{|m| <= m_cut} hat f(m/q) hat g(m)
  double difference = 0.0; // |lhs - rhs|
  std::uint64_t m_cut = 0;
  double tail_bound = 0.0; // bound on the omitted |m| > m_cut terms
  bool tail_ok = false;    // tail_bound below the tolerance
};

/// Largest truncation point poisson_check will use.
inline constexpr std::uint64_t kMaxPoissonCut = 200'000;

/// Compares both sides of Poisson summation twisted by a q-periodic g,
/// given by its values g[0..q-1] (g[y] = g(y mod q)).
PoissonResult poisson_check(const SupportedFunction& f, std::span<const cplx> g,
                            double tol = 1e-10);

}  // namespace pallab
