#pragma once

// Square-free censuses over palindrome sets and the counts that control
// their error terms.

#include <cstdint>
#include <string>

#include "pallab/digits.hpp"
#include "pallab/int128.hpp"

namespace pallab {

/// 1/zeta(2) = 6/pi^2, the density of square-free integers.
inline constexpr double kInverseZeta2 = 0.60792710185402662866;

/// Density of square-free integers coprime to b^3 - b:
/// (6/pi^2) * R with R = prod_{p | b^3-b} p^2/(p^2-1), R kept exact.
struct DensityConstant {
  u128 numerator;    // R = numerator / denominator, in lowest terms
  u128 denominator;
  double value;      // (6/pi^2) * R
};

DensityConstant density_constant(Base b);

/// One row of a square-free census.
struct CensusRecord {
  std::uint64_t base = 0;
  bool restricted = false;
  std::string scope_kind;  // "x" (palindromes <= x) or "N" (N-digit palindromes)
  u128 scope = 0;
  u128 total = 0;
  u128 squarefree = 0;
  double ratio = 0.0;            // squarefree / total, 0 when total = 0
  double predicted = 0.0;        // predicted density
  double predicted_count = 0.0;  // total * predicted
  double abs_error = 0.0;        // |ratio - predicted|
};

/// Restricted census over P_b*(x) compared with density_constant(b).
CensusRecord census_up_to(Base b, u128 x, unsigned threads = 1);

/// Q_b*(x): square-free elements of P_b*(x), counted one by one.
u128 q_star_direct(Base b, u128 x, unsigned threads = 1);

/// Q_b*(x) through Moebius inversion over square divisors d^2 | n.
u128 q_star_mobius(Base b, u128 x, unsigned threads = 1);

/// Unrestricted census over Pi_b(N) compared with 1/zeta(2).
CensusRecord q_fixed_length(Base b, unsigned digits, unsigned threads = 1);

/// d ~ D, i.e. d in [D, 2D].
struct DyadicRange {
  u128 D;
  explicit DyadicRange(u128 d);
  u128 lo() const noexcept { return D; }
  u128 hi() const noexcept { return 2 * D; }
};

enum class SbStrategy {
  Auto,
  StreamPalindromes,   // walk P_b*(x), test each d^2 (cost ~ sqrt(x) * D)
  EnumerateMultiples,  // walk multiples of each d^2, test palindromicity (cost ~ x / D)
};

/// S_b(x, D): elements of P_b*(x) divisible by d^2 for at least one d ~ D.
u128 s_b(Base b, u128 x, u128 D, SbStrategy strategy = SbStrategy::Auto,
         unsigned threads = 1);

/// Estimated number of divisibility probes for each strategy.
struct SbCost {
  double stream_palindromes;
  double enumerate_multiples;
  SbStrategy cheaper() const {
    return stream_palindromes <= enumerate_multiples ? SbStrategy::StreamPalindromes
                                                     : SbStrategy::EnumerateMultiples;
  }
  double min() const { return std::min(stream_palindromes, enumerate_multiples); }
};
SbCost s_b_cost(Base b, u128 x, u128 D);

/// Largest d_max^2 accepted by equidistribution_discrepancy.
inline constexpr std::uint64_t kDiscrepancyMaxModulus = 100'000'000;

/// sum_{d <= d_max, (d, b^3-b) = 1} mu^2(d) sup_{y <= x} max_a
///   | sum_{n in P_b*(y)} (1[n = a mod d^2] - 1/d^2) |.
double equidistribution_discrepancy(Base b, u128 x, std::uint64_t d_max,
                                    unsigned threads = 1);

}  // namespace pallab
