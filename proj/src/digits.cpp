#include "pallab/digits.hpp"

#include <string>

namespace pallab {

Base::Base(std::uint64_t b) : b_(b) {
  if (b < 2) throw DomainError("base must be at least 2, got " + std::to_string(b));
  // b^3 must stay below 2^127 for the restriction modulus.
  if (b > (std::uint64_t{1} << 42)) {
    throw DomainError("base too large: " + std::to_string(b));
  }
}

u128 Base::restriction_modulus() const noexcept {
  u128 b = b_;
  return b * b * b - b;
}

DigitVec::DigitVec(Base base, std::vector<std::uint64_t> digits)
    : base_(base), digits_(std::move(digits)) {
  for (auto d : digits_) {
    if (d >= base_.value()) {
      throw DomainError("digit " + std::to_string(d) + " out of range for base " +
                        std::to_string(base_.value()));
    }
  }
  while (digits_.size() > 1 && digits_.back() == 0) digits_.pop_back();
  if (digits_.empty()) digits_.push_back(0);
}

DigitVec to_digits(u128 n, Base b) {
  std::vector<std::uint64_t> out;
  const u128 radix = b.value();
  do {
    out.push_back(static_cast<std::uint64_t>(n % radix));
    n /= radix;
  } while (n != 0);
  return DigitVec(b, std::move(out));
}

u128 from_digits(const DigitVec& d) {
  u128 v = 0;
  const auto digits = d.digits();
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    v = checked_add(checked_mul(v, d.base().value()), *it);
  }
  return v;
}

unsigned digit_count(u128 n, Base b) {
  unsigned count = 1;
  while (n >= b.value()) {
    n /= b.value();
    ++count;
  }
  return count;
}

u128 digital_reverse(u128 n, Base b) {
  const u128 radix = b.value();
  if (n % radix == 0) {
    throw DomainError("digital_reverse requires b not dividing n (n = " + to_string(n) +
                      ", b = " + std::to_string(b.value()) + ")");
  }
  // The reverse of an in-range n has the same number of digits and a
  // nonzero leading digit, so it is below b^N <= b * n < 2^127 * b; guard
  // the accumulation anyway.
  u128 r = 0;
  while (n != 0) {
    r = checked_add(checked_mul(r, radix), n % radix);
    n /= radix;
  }
  return r;
}

bool is_palindrome(u128 n, Base b) {
  if (n % b.value() == 0) return false;
  const u128 radix = b.value();
  // Compare digit strings directly so that no reversal can overflow.
  std::uint64_t buf[128];
  unsigned len = 0;
  for (u128 t = n; t != 0; t /= radix) buf[len++] = static_cast<std::uint64_t>(t % radix);
  for (unsigned i = 0, j = len - 1; i < j; ++i, --j) {
    if (buf[i] != buf[j]) return false;
  }
  return true;
}

}  // namespace pallab
