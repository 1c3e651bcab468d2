#pragma once

// Base-b digit expansions, digital reversal and the palindrome predicate.

#include <cstdint>
#include <span>
#include <vector>

#include "pallab/int128.hpp"

namespace pallab {

/// A radix b >= 2.
class Base {
 public:
  explicit Base(std::uint64_t b);
  std::uint64_t value() const noexcept { return b_; }
  /// b^3 - b, the modulus of the coprimality restriction.
  u128 restriction_modulus() const noexcept;

  friend bool operator==(Base, Base) = default;

 private:
  std::uint64_t b_;
};

/// Little-endian digits: digits()[i] is the coefficient of b^i.
class DigitVec {
 public:
  /// Validates every digit against the base and strips leading zeros.
  DigitVec(Base base, std::vector<std::uint64_t> digits);

  Base base() const noexcept { return base_; }
  std::span<const std::uint64_t> digits() const noexcept { return digits_; }
  std::size_t size() const noexcept { return digits_.size(); }

  bool operator==(const DigitVec&) const = default;

 private:
  Base base_;
  std::vector<std::uint64_t> digits_;
};

DigitVec to_digits(u128 n, Base b);
u128 from_digits(const DigitVec& d);

/// Number of base-b digits of n (1 for n = 0).
unsigned digit_count(u128 n, Base b);

/// Reverses the base-b digits of n. Throws DomainError when b | n, since
/// the reversal would silently lose the trailing zeros.
u128 digital_reverse(u128 n, Base b);

/// True iff b does not divide n and n equals its digital reverse.
bool is_palindrome(u128 n, Base b);

}  // namespace pallab
