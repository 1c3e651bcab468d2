#include "pallab/census.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "pallab/arith.hpp"
#include "pallab/enumerate.hpp"
#include "pallab/parallel.hpp"

namespace pallab {
namespace {

// Sub-streams for a parallel scan. Partition counts never change results,
// only how work is spread.
std::vector<PalindromeStream> partitions(const PalindromeStream& s, unsigned threads) {
  const unsigned t = resolve_threads(threads);
  return s.split_at_prefix(t <= 1 ? 1 : std::size_t{t} * 8);
}

struct Tally {
  u128 total = 0;
  u128 squarefree = 0;
};

Tally tally_restricted(Base b, u128 x, unsigned threads) {
  auto parts = partitions(PalindromeStream::up_to(b, x, true), threads);
  auto partial = parallel_map(parts.size(), threads, [&](std::size_t i) {
    Tally t;
    parts[i].for_each([&](u128 n) {
      ++t.total;
      if (is_squarefree(n)) ++t.squarefree;
    });
    return t;
  });
  Tally sum;
  for (const auto& t : partial) {
    sum.total += t.total;
    sum.squarefree += t.squarefree;
  }
  return sum;
}

// Every d >= 1 with d^2 | n, from the factorization of n.
void square_divisors(u128 n, std::vector<u128>& out) {
  out.assign(1, 1);
  if (n == 1) return;
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t existing = out.size();
    u128 pk = 1;
    for (unsigned k = 1; k <= e / 2; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < existing; ++i) out.push_back(out[i] * pk);
    }
  }
}

void fill_record(CensusRecord& r) {
  r.ratio = r.total == 0 ? 0.0 : to_double(r.squarefree) / to_double(r.total);
  r.predicted_count = to_double(r.total) * r.predicted;
  r.abs_error = std::abs(r.ratio - r.predicted);
}

}  // namespace

DensityConstant density_constant(Base b) {
  u128 num = 1, den = 1;
  for (const auto& [p, e] : factorize(b.restriction_modulus())) {
    const u128 p2 = p * p;
    num = checked_mul(num, p2);
    den = checked_mul(den, p2 - 1);
    const u128 g = gcd(num, den);
    num /= g;
    den /= g;
  }
  const double r = static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
  return {num, den, kInverseZeta2 * r};
}

CensusRecord census_up_to(Base b, u128 x, unsigned threads) {
  const Tally t = tally_restricted(b, x, threads);
  CensusRecord r;
  r.base = b.value();
  r.restricted = true;
  r.scope_kind = "x";
  r.scope = x;
  r.total = t.total;
  r.squarefree = t.squarefree;
  r.predicted = density_constant(b).value;
  fill_record(r);
  return r;
}

u128 q_star_direct(Base b, u128 x, unsigned threads) {
  return tally_restricted(b, x, threads).squarefree;
}

u128 q_star_mobius(Base b, u128 x, unsigned threads) {
  auto parts = partitions(PalindromeStream::up_to(b, x, true), threads);
  const u128 root = isqrt(x);
  const u128 modulus = b.restriction_modulus();
  // For each partition: d -> #{n : d^2 | n}, over d <= sqrt(x) coprime to
  // b^3 - b. Coprimality is automatic for restricted n but kept explicit.
  using Counts = std::map<u128, u128>;
  auto partial = parallel_map(parts.size(), threads, [&](std::size_t i) {
    Counts counts;
    std::vector<u128> divisors;
    parts[i].for_each([&](u128 n) {
      square_divisors(n, divisors);
      for (u128 d : divisors) {
        if (d <= root && gcd(d, modulus) == 1) ++counts[d];
      }
    });
    return counts;
  });
  Counts merged;
  for (const auto& c : partial) {
    for (const auto& [d, k] : c) merged[d] += k;
  }
  i128 sum = 0;
  for (const auto& [d, k] : merged) sum += static_cast<i128>(mobius(d)) * static_cast<i128>(k);
  if (sum < 0) throw std::logic_error("q_star_mobius: negative total");
  return static_cast<u128>(sum);
}

CensusRecord q_fixed_length(Base b, unsigned digits, unsigned threads) {
  auto parts = partitions(PalindromeStream::fixed_length(b, digits, false), threads);
  auto partial = parallel_map(parts.size(), threads, [&](std::size_t i) {
    Tally t;
    parts[i].for_each([&](u128 n) {
      ++t.total;
      if (is_squarefree(n)) ++t.squarefree;
    });
    return t;
  });
  CensusRecord r;
  r.base = b.value();
  r.restricted = false;
  r.scope_kind = "N";
  r.scope = digits;
  for (const auto& t : partial) {
    r.total += t.total;
    r.squarefree += t.squarefree;
  }
  r.predicted = kInverseZeta2;
  fill_record(r);
  return r;
}

DyadicRange::DyadicRange(u128 d) : D(d) {
  if (d == 0) throw DomainError("dyadic range needs D >= 1");
}

SbCost s_b_cost(Base b, u128 x, u128 D) {
  const double pals = to_double(count_up_to(b, x));
  const double dd = to_double(D);
  const double xx = to_double(x);
  return {pals * (dd + 1), xx / (2 * dd) + dd + 1};
}

u128 s_b(Base b, u128 x, u128 D, SbStrategy strategy, unsigned threads) {
  if (x == 0) throw DomainError("s_b requires x >= 1");
  const DyadicRange range(D);
  if (D > isqrt(x)) return 0;  // no d >= D has d^2 <= x
  if (strategy == SbStrategy::Auto) strategy = s_b_cost(b, x, D).cheaper();
  const u128 hi = range.hi();

  if (strategy == SbStrategy::StreamPalindromes) {
    auto parts = partitions(PalindromeStream::up_to(b, x, true), threads);
    auto partial = parallel_map(parts.size(), threads, [&](std::size_t i) {
      u128 hits = 0;
      parts[i].for_each([&](u128 n) {
        const u128 top = std::min(hi, isqrt(n));
        for (u128 d = range.lo(); d <= top; ++d) {
          if (n % (d * d) == 0) {
            ++hits;
            break;
          }
        }
      });
      return hits;
    });
    u128 total = 0;
    for (u128 h : partial) total += h;
    return total;
  }

  // Multiples of d^2 for each admissible d. A d sharing a factor with
  // b^3 - b cannot have d^2 | n for restricted n.
  const u128 modulus = b.restriction_modulus();
  const u128 top = std::min(hi, isqrt(x));
  const std::size_t count = static_cast<std::size_t>(top - range.lo() + 1);
  auto per_d = parallel_map(count, threads, [&](std::size_t i) {
    std::vector<u128> hits;
    const u128 d = range.lo() + i;
    if (gcd(d, modulus) != 1) return hits;
    const u128 step = d * d;
    for (u128 n = step; n <= x; n += step) {
      if (is_restricted_admissible(n, b) && is_palindrome(n, b)) hits.push_back(n);
    }
    return hits;
  });
  // Each per-d list is sorted; merge them and drop duplicates.
  std::vector<u128> merged;
  for (const auto& hits : per_d) {
    std::vector<u128> next;
    next.reserve(merged.size() + hits.size());
    std::merge(merged.begin(), merged.end(), hits.begin(), hits.end(), std::back_inserter(next));
    merged = std::move(next);
  }
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  return merged.size();
}

double equidistribution_discrepancy(Base b, u128 x, std::uint64_t d_max, unsigned threads) {
  if (x == 0) throw DomainError("discrepancy requires x >= 1");
  if (d_max == 0) throw DomainError("discrepancy requires d_max >= 1");
  if (d_max > isqrt(x)) throw DomainError("discrepancy requires d_max <= sqrt(x)");
  if (static_cast<u128>(d_max) * d_max > kDiscrepancyMaxModulus) {
    throw BudgetError("discrepancy residue histograms of size d_max^2 exceed the memory budget");
  }
  const std::vector<u128> pals = collect(PalindromeStream::up_to(b, x, true));
  const u128 modulus = b.restriction_modulus();

  // The inner sum is a step function of y that only changes at palindromes,
  // so the sup over y is a max over prefixes of the sorted list (plus the
  // empty prefix, which contributes 0).
  auto terms = parallel_map(static_cast<std::size_t>(d_max), threads, [&](std::size_t i) {
    const std::uint64_t d = i + 1;
    if (gcd(d, modulus) != 1 || mobius(d) == 0) return 0.0;
    const std::uint64_t m = d * d;
    std::vector<std::uint32_t> counts(m, 0);
    std::vector<std::uint64_t> buckets_at_level(pals.size() + 2, 0);
    buckets_at_level[0] = m;
    std::uint64_t lowest = 0, highest = 0;
    i128 best = 0;
    for (std::size_t j = 0; j < pals.size(); ++j) {
      const auto r = static_cast<std::size_t>(pals[j] % m);
      const std::uint32_t c = counts[r]++;
      --buckets_at_level[c];
      ++buckets_at_level[c + 1];
      highest = std::max<std::uint64_t>(highest, c + 1);
      while (buckets_at_level[lowest] == 0) ++lowest;
      // max_a |cnt_a - (j+1)/m| scaled by m.
      const i128 seen = static_cast<i128>(j + 1);
      const i128 above = static_cast<i128>(highest) * m - seen;
      const i128 below = seen - static_cast<i128>(lowest) * m;
      best = std::max({best, above, below});
    }
    return static_cast<double>(best) / static_cast<double>(m);
  });
  double total = 0.0;
  for (double t : terms) total += t;
  return total;
}

}  // namespace pallab
