#pragma once

// Small property-test generators on top of the library's splitmix stream.

#include <cstdint>

#include "pallab/harness.hpp"
#include "pallab/int128.hpp"

namespace pallab::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t u64() { return rng_.next(); }
  std::uint64_t below(std::uint64_t n) { return rng_.next() % n; }
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  std::int64_t signed_between(std::int64_t lo, std::int64_t hi) { return rng_.range(lo, hi); }
  double real(double lo, double hi) { return rng_.uniform(lo, hi); }

  /// Uniform in [0, 2^bits), bits <= 126.
  u128 bits(unsigned n) {
    u128 v = (static_cast<u128>(rng_.next()) << 64) | rng_.next();
    return n >= 128 ? v : v & ((u128{1} << n) - 1);
  }
  /// Random bit length first, so small values are well represented.
  u128 spread(unsigned max_bits) { return bits(1 + static_cast<unsigned>(below(max_bits))); }

 private:
  SplitMix64 rng_;
};

}  // namespace pallab::testing
