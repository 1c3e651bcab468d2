#pragma once

// 128-bit integer helpers. Every count and palindrome value in the library
// is carried as an unsigned 128-bit integer and capped at 2^127 so that the
// sum of two in-range values never wraps.

#include <cstdint>
#include <string>
#include <string_view>

#include "pallab/errors.hpp"

namespace pallab {

using u128 = unsigned __int128;
using i128 = __int128;

inline constexpr u128 kU128Max = ~u128{0};
/// Exclusive upper bound for all values handled by the library.
inline constexpr u128 kValueLimit = u128{1} << 127;

inline u128 checked_mul(u128 a, u128 b) {
  u128 r;
  if (__builtin_mul_overflow(a, b, &r) || r >= kValueLimit) {
    throw OverflowError("128-bit multiplication overflow");
  }
  return r;
}

inline u128 checked_add(u128 a, u128 b) {
  u128 r;
  if (__builtin_add_overflow(a, b, &r) || r >= kValueLimit) {
    throw OverflowError("128-bit addition overflow");
  }
  return r;
}

/// base^exp, throwing OverflowError when the result reaches 2^127.
u128 checked_pow(u128 base, unsigned exp);

/// floor(sqrt(n)), exact.
u128 isqrt(u128 n);
/// floor(cbrt(n)), exact.
u128 icbrt(u128 n);
bool is_perfect_square(u128 n);

u128 gcd(u128 a, u128 b);

std::string to_string(u128 v);
std::string to_string(i128 v);

/// Parses a decimal string. Accepts an optional "1eK" shorthand for powers
/// of ten and digit separators '_' or '\''. Throws DomainError on junk.
u128 parse_u128(std::string_view text);

inline double to_double(u128 v) { return static_cast<double>(v); }

}  // namespace pallab
