#pragma once

// Ordered generation of base-b palindromes from their leading half.
//
// An N-digit palindrome is fixed by its first ceil(N/2) digits (the "half
// prefix"), and the map prefix -> palindrome is increasing, so walking the
// prefixes in order yields palindromes in increasing order.

#include <cstdint>
#include <optional>
#include <vector>

#include "pallab/digits.hpp"

namespace pallab {

class PalindromeStream {
 public:
  /// All N-digit palindromes, i.e. those in [b^(N-1), b^N).
  static PalindromeStream fixed_length(Base b, unsigned digits, bool restricted);
  /// All palindromes n <= limit.
  static PalindromeStream up_to(Base b, u128 limit, bool restricted);

  /// Next palindrome, or nullopt once the stream is exhausted.
  std::optional<u128> next();

  /// Drains the stream, calling fn(n) on every remaining element.
  template <class Fn>
  void for_each(Fn&& fn) {
    while (auto n = next()) fn(*n);
  }

  /// Splits the not-yet-consumed half-prefix range into at most `parts`
  /// contiguous sub-streams. Concatenating their outputs in order gives
  /// exactly the remaining output of this stream.
  std::vector<PalindromeStream> split_at_prefix(std::size_t parts) const;

  /// Number of half prefixes left to visit (an upper bound on the number of
  /// elements still to be emitted).
  u128 remaining_prefixes() const;

  Base base() const noexcept { return base_; }
  bool restricted() const noexcept { return restricted_; }

 private:
  struct Segment {
    unsigned length;     // digit count N
    u128 first_prefix;   // inclusive
    u128 end_prefix;     // exclusive
  };

  PalindromeStream(Base b, bool restricted, std::optional<u128> limit,
                   std::vector<Segment> segments);

  void prime_segment();
  void advance_odometer();
  bool passes_filter(u128 n) const;

  Base base_;
  bool restricted_;
  std::optional<u128> limit_;
  std::vector<Segment> segments_;

  // Cursor: the next prefix to visit is prefix_ within segments_[seg_].
  std::size_t seg_ = 0;
  u128 prefix_ = 0;
  bool primed_ = false;
  bool done_ = false;
  u128 value_ = 0;                        // palindrome built from prefix_
  std::vector<std::uint64_t> half_;       // prefix digits, most significant first
  std::vector<u128> weights_;             // contribution of one unit in half_[i]
};

/// #Pi_b(N) = (b-1) * b^(ceil(N/2)-1).
u128 count_fixed_length(Base b, unsigned digits);

/// Number of palindromes n <= limit (unrestricted), by summing whole
/// lengths and walking only the final, partial one.
u128 count_up_to(Base b, u128 limit);

/// Collects a stream into a vector.
std::vector<u128> collect(PalindromeStream stream);

/// gcd(n, b^3 - b) == 1.
bool is_restricted_admissible(u128 n, Base b);

}  // namespace pallab
