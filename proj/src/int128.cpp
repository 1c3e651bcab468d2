#include "pallab/int128.hpp"

#include <algorithm>
#include <cmath>

namespace pallab {

u128 checked_pow(u128 base, unsigned exp) {
  u128 result = 1;
  for (unsigned i = 0; i < exp; ++i) result = checked_mul(result, base);
  return result;
}

u128 isqrt(u128 n) {
  if (n < 2) return n;
  // Seed from the double estimate, then correct; the estimate is within a
  // few units of the answer for n < 2^128.
  u128 r = static_cast<u128>(std::sqrt(static_cast<long double>(n)));
  auto sq_le = [n](u128 v) {
    u128 sq;
    return !__builtin_mul_overflow(v, v, &sq) && sq <= n;
  };
  while (!sq_le(r)) --r;
  while (sq_le(r + 1)) ++r;
  return r;
}

u128 icbrt(u128 n) {
  if (n < 2) return n;
  u128 r = static_cast<u128>(std::cbrt(static_cast<long double>(n)));
  auto cube_le = [n](u128 v) {
    u128 sq, cu;
    return !__builtin_mul_overflow(v, v, &sq) &&
           !__builtin_mul_overflow(sq, v, &cu) && cu <= n;
  };
  while (r > 0 && !cube_le(r)) --r;
  while (cube_le(r + 1)) ++r;
  return r;
}

bool is_perfect_square(u128 n) {
  u128 r = isqrt(n);
  return r * r == n;
}

u128 gcd(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::string to_string(i128 v) {
  if (v < 0) return "-" + to_string(static_cast<u128>(-(v + 1)) + 1);
  return to_string(static_cast<u128>(v));
}

u128 parse_u128(std::string_view text) {
  if (text.empty()) throw DomainError("empty integer literal");
  auto parse_digits = [&](std::string_view s) {
    if (s.empty()) throw DomainError("malformed integer literal: " + std::string(text));
    u128 v = 0;
    for (char ch : s) {
      if (ch == '_' || ch == '\'') continue;
      if (ch < '0' || ch > '9') {
        throw DomainError("malformed integer literal: " + std::string(text));
      }
      v = checked_add(checked_mul(v, 10), static_cast<u128>(ch - '0'));
    }
    return v;
  };
  auto e = text.find_first_of("eE");
  if (e == std::string_view::npos) return parse_digits(text);
  u128 mantissa = parse_digits(text.substr(0, e));
  u128 exponent = parse_digits(text.substr(e + 1));
  if (exponent > 38) throw OverflowError("power of ten too large: " + std::string(text));
  return checked_mul(mantissa, checked_pow(10, static_cast<unsigned>(exponent)));
}

}  // namespace pallab
