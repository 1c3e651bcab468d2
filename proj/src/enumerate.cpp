#include "pallab/enumerate.hpp"

#include <algorithm>
#include <string>

namespace pallab {
namespace {

unsigned half_length(unsigned n) { return (n + 1) / 2; }

// Palindrome of length n whose leading half is `prefix`.
u128 mirror(u128 prefix, unsigned n, Base b) {
  const u128 radix = b.value();
  u128 value = prefix;
  u128 tail = (n % 2 == 1) ? prefix / radix : prefix;
  for (unsigned i = 0; i < n / 2; ++i) {
    value = checked_add(checked_mul(value, radix), tail % radix);
    tail /= radix;
  }
  return value;
}

}  // namespace

bool is_restricted_admissible(u128 n, Base b) {
  const u128 m = b.restriction_modulus();
  if (m <= UINT64_MAX) {
    std::uint64_t x = static_cast<std::uint64_t>(n % m);
    std::uint64_t y = static_cast<std::uint64_t>(m);
    while (y != 0) {
      std::uint64_t t = x % y;
      x = y;
      y = t;
    }
    return x == 1;
  }
  return gcd(n % m, m) == 1;
}

PalindromeStream::PalindromeStream(Base b, bool restricted, std::optional<u128> limit,
                                   std::vector<Segment> segments)
    : base_(b), restricted_(restricted), limit_(limit), segments_(std::move(segments)) {
  std::erase_if(segments_, [](const Segment& s) { return s.first_prefix >= s.end_prefix; });
  if (segments_.empty()) {
    done_ = true;
  } else {
    prefix_ = segments_.front().first_prefix;
  }
}

PalindromeStream PalindromeStream::fixed_length(Base b, unsigned digits, bool restricted) {
  if (digits == 0) throw DomainError("palindrome length must be at least 1");
  checked_pow(b.value(), digits);  // every element must fit
  const unsigned h = half_length(digits);
  Segment s{digits, checked_pow(b.value(), h - 1), checked_pow(b.value(), h)};
  return PalindromeStream(b, restricted, std::nullopt, {s});
}

PalindromeStream PalindromeStream::up_to(Base b, u128 limit, bool restricted) {
  if (limit == 0) throw DomainError("palindrome bound x must be at least 1");
  if (limit >= kValueLimit) throw OverflowError("palindrome bound exceeds 2^127");
  std::vector<Segment> segments;
  const unsigned top = digit_count(limit, b);
  for (unsigned n = 1; n <= top; ++n) {
    const unsigned h = half_length(n);
    Segment s{n, checked_pow(b.value(), h - 1), 0};
    if (n < top) {
      s.end_prefix = checked_pow(b.value(), h);
    } else {
      // Prefixes beyond floor(limit / b^(n-h)) give palindromes above limit.
      s.end_prefix = limit / checked_pow(b.value(), n - h) + 1;
    }
    segments.push_back(s);
  }
  return PalindromeStream(b, restricted, limit, std::move(segments));
}

void PalindromeStream::prime_segment() {
  const Segment& s = segments_[seg_];
  const unsigned h = half_length(s.length);
  const u128 radix = base_.value();
  half_.assign(h, 0);
  weights_.assign(h, 0);
  u128 t = prefix_;
  for (unsigned i = h; i-- > 0;) {
    half_[i] = static_cast<std::uint64_t>(t % radix);
    t /= radix;
  }
  // Digit half_[i] sits at positions length-1-i and i; for odd lengths the
  // middle digit (i = h-1) occupies a single position.
  for (unsigned i = 0; i < h; ++i) {
    const unsigned hi = s.length - 1 - i;
    const u128 w_hi = checked_pow(radix, hi);
    weights_[i] = (hi == i) ? w_hi : checked_add(w_hi, checked_pow(radix, i));
  }
  value_ = 0;
  for (unsigned i = 0; i < h; ++i) value_ += half_[i] * weights_[i];
  primed_ = true;
}

void PalindromeStream::advance_odometer() {
  ++prefix_;
  if (prefix_ >= segments_[seg_].end_prefix) {
    ++seg_;
    primed_ = false;
    if (seg_ == segments_.size()) {
      done_ = true;
    } else {
      prefix_ = segments_[seg_].first_prefix;
    }
    return;
  }
  const std::uint64_t top = base_.value() - 1;
  std::size_t i = half_.size() - 1;
  while (half_[i] == top) {
    half_[i] = 0;
    value_ -= top * weights_[i];
    --i;
  }
  ++half_[i];
  value_ += weights_[i];
}

bool PalindromeStream::passes_filter(u128 n) const {
  return !restricted_ || is_restricted_admissible(n, base_);
}

std::optional<u128> PalindromeStream::next() {
  while (!done_) {
    if (!primed_) prime_segment();
    const u128 n = value_;
    if (limit_ && n > *limit_) {
      done_ = true;
      break;
    }
    advance_odometer();
    if (passes_filter(n)) return n;
  }
  return std::nullopt;
}

u128 PalindromeStream::remaining_prefixes() const {
  if (done_) return 0;
  u128 total = segments_[seg_].end_prefix - prefix_;
  for (std::size_t i = seg_ + 1; i < segments_.size(); ++i) {
    total += segments_[i].end_prefix - segments_[i].first_prefix;
  }
  return total;
}

std::vector<PalindromeStream> PalindromeStream::split_at_prefix(std::size_t parts) const {
  if (parts == 0) throw DomainError("split_at_prefix needs at least one part");
  std::vector<PalindromeStream> out;
  const u128 total = remaining_prefixes();
  if (total == 0) return out;
  const u128 chunk = (total + parts - 1) / parts;

  std::vector<Segment> pending;
  u128 room = chunk;
  auto flush = [&] {
    out.push_back(PalindromeStream(base_, restricted_, limit_, pending));
    pending.clear();
    room = chunk;
  };
  for (std::size_t i = seg_; i < segments_.size(); ++i) {
    Segment s = segments_[i];
    if (i == seg_) s.first_prefix = prefix_;
    while (s.first_prefix < s.end_prefix) {
      const u128 take = std::min<u128>(room, s.end_prefix - s.first_prefix);
      pending.push_back({s.length, s.first_prefix, s.first_prefix + take});
      s.first_prefix += take;
      room -= take;
      if (room == 0) flush();
    }
  }
  if (!pending.empty()) flush();
  return out;
}

u128 count_fixed_length(Base b, unsigned digits) {
  if (digits == 0) throw DomainError("palindrome length must be at least 1");
  return checked_mul(b.value() - 1, checked_pow(b.value(), half_length(digits) - 1));
}

u128 count_up_to(Base b, u128 limit) {
  if (limit == 0) return 0;
  const unsigned top = digit_count(limit, b);
  u128 total = 0;
  for (unsigned n = 1; n < top; ++n) total = checked_add(total, count_fixed_length(b, n));
  const unsigned h = half_length(top);
  const u128 first = checked_pow(b.value(), h - 1);
  const u128 last = limit / checked_pow(b.value(), top - h);
  total += last - first;
  if (mirror(last, top, b) <= limit) ++total;
  return total;
}

std::vector<u128> collect(PalindromeStream stream) {
  std::vector<u128> out;
  stream.for_each([&](u128 n) { out.push_back(n); });
  return out;
}

}  // namespace pallab
