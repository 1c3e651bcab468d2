#include <gtest/gtest.h>

#include "pallab/arith.hpp"
#include "pallab/census.hpp"
#include "pallab/enumerate.hpp"

using namespace pallab;

TEST(Census, DensityConstantIsExact) {
  const DensityConstant d = density_constant(Base(10));
  EXPECT_EQ(d.numerator, 605u);
  EXPECT_EQ(d.denominator, 384u);
  EXPECT_NEAR(d.value, 0.957804, 5e-6);
  // b = 2: b^3 - b = 6, R = (4/3)(9/8) = 3/2.
  const DensityConstant two = density_constant(Base(2));
  EXPECT_EQ(two.numerator, 3u);
  EXPECT_EQ(two.denominator, 2u);
}

TEST(Census, BruteForceOracleValues) {
  struct Case {
    std::uint64_t b;
    u128 x, total, squarefree;
  };
  // Counted by direct enumeration and trial-division factoring.
  for (const Case& c : {Case{2, 1000, 21, 20}, Case{3, 1000, 12, 10}, Case{10, 1000, 25, 24},
                        Case{10, 100000, 266, 254}, Case{7, 5000, 30, 29}, Case{16, 70000, 76, 70}}) {
    const CensusRecord r = census_up_to(Base(c.b), c.x);
    EXPECT_EQ(r.total, c.total) << c.b;
    EXPECT_EQ(r.squarefree, c.squarefree) << c.b;
    EXPECT_EQ(q_star_mobius(Base(c.b), c.x), c.squarefree) << c.b;
  }
  const CensusRecord small = census_up_to(Base(10), 100);
  EXPECT_EQ(small.total, 2u);
  EXPECT_EQ(small.squarefree, 2u);
  EXPECT_EQ(small.scope_kind, "x");
}

TEST(Census, FixedLengthOracleValues) {
  struct Case {
    std::uint64_t b;
    unsigned N;
    u128 total, squarefree;
  };
  for (const Case& c : {Case{10, 1, 9, 6}, Case{10, 2, 9, 6}, Case{10, 3, 90, 55}, Case{2, 10, 16, 9},
                        Case{3, 6, 18, 0}}) {
    const CensusRecord r = q_fixed_length(Base(c.b), c.N);
    EXPECT_EQ(r.total, c.total);
    EXPECT_EQ(r.squarefree, c.squarefree);
    EXPECT_DOUBLE_EQ(r.predicted, kInverseZeta2);
  }
}

TEST(Census, ThreadCountDoesNotChangeResults) {
  for (unsigned t : {1u, 2u, 5u}) {
    EXPECT_EQ(q_star_direct(Base(10), 10000000, t), 2580u);
    EXPECT_EQ(q_star_mobius(Base(2), 1000000, t), q_star_direct(Base(2), 1000000, 1));
    EXPECT_EQ(q_fixed_length(Base(10), 6, t).squarefree, q_fixed_length(Base(10), 6, 1).squarefree);
  }
}

TEST(Census, SquareDivisorCountsAgreeAcrossStrategies) {
  struct Case {
    std::uint64_t b;
    u128 x, D, expected;
  };
  // Oracle: brute force over restricted palindromes and d in [D, 2D].
  for (const Case& c : {Case{10, 100000, 20, 1}, Case{10, 100000, 50, 0}, Case{2, 100000, 10, 5},
                        Case{3, 100000, 12, 4}, Case{10, 1000000, 100, 1}}) {
    const Base b(c.b);
    EXPECT_EQ(s_b(b, c.x, c.D, SbStrategy::StreamPalindromes), c.expected);
    EXPECT_EQ(s_b(b, c.x, c.D, SbStrategy::EnumerateMultiples), c.expected);
    EXPECT_EQ(s_b(b, c.x, c.D, SbStrategy::Auto, 3), c.expected);
  }
  EXPECT_EQ(s_b(Base(10), 1000000, 1001), 0u);  // D > sqrt(x)
  EXPECT_THROW(s_b(Base(10), 1000, 0), DomainError);
  for (u128 D = 1; D < 300; D += 7) {
    EXPECT_EQ(s_b(Base(2), 1 << 20, D, SbStrategy::StreamPalindromes),
              s_b(Base(2), 1 << 20, D, SbStrategy::EnumerateMultiples))
        << to_string(D);
  }
}

TEST(Census, DiscrepancyMatchesNaiveSup) {
  const Base b(10);
  const u128 x = 1000000;
  const auto pals = collect(PalindromeStream::up_to(b, x, true));
  double naive = 0.0;
  for (std::uint64_t d = 1; d <= 30; ++d) {
    if (gcd(d, b.restriction_modulus()) != 1 || mobius(d) == 0) continue;
    const std::uint64_t m = d * d;
    std::vector<double> hits(m, 0.0);
    double sup = 0.0;
    for (std::size_t y = 1; y <= pals.size(); ++y) {
      hits[static_cast<std::uint64_t>(pals[y - 1] % m)] += 1.0;
      for (std::uint64_t a = 0; a < m; ++a) {
        sup = std::max(sup, std::abs(hits[a] - static_cast<double>(y) / m));
      }
    }
    naive += sup;
  }
  EXPECT_NEAR(equidistribution_discrepancy(b, x, 30), naive, 1e-9);
  EXPECT_DOUBLE_EQ(equidistribution_discrepancy(b, x, 30, 4), equidistribution_discrepancy(b, x, 30, 1));
  EXPECT_THROW(equidistribution_discrepancy(b, x, 1001), DomainError);
  EXPECT_THROW(equidistribution_discrepancy(b, u128{1} << 60, 20000), BudgetError);
}
