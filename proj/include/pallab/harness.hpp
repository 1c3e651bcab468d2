#pragma once

// Empirical campaigns: implied-constant fits for the S_b bounds, the smoothed
// Weyl-van der Corput inequality, census convergence tables and the
// acceptance suite.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pallab/census.hpp"
#include "pallab/oscillate.hpp"

namespace pallab {

/// Hand-rolled 64-bit generator (splitmix64); identical streams everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [lo, hi] (hi - lo small next to 2^64).
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }
  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::uint64_t state_;
};

inline constexpr std::uint64_t kDefaultSeed = 20240521;

/// Work limits for a campaign; exceeding one aborts with partial results.
inline constexpr double kProbeBudget = 1e8;
inline constexpr double kPalindromeBudget = 1e9;

struct FitPoint {
  std::vector<std::pair<std::string, u128>> coords;
  double observed = 0.0;  // the measured count or sum
  double shape = 0.0;     // predicted shape without its constant
  double ratio = 0.0;     // observed / shape
  bool skipped = false;
  std::string note;
};

struct BoundFit {
  std::string label;
  std::vector<FitPoint> points;
  double fitted_constant = 0.0;  // max ratio over non-skipped points
  double first_constant = 0.0;   // ratio at the first non-skipped point
  bool stable = false;           // max not attained at the last point
  bool aborted = false;
  std::string abort_reason;
  bool strategies_agree = true;  // s_b strategies matched wherever both ran
};

/// Smallest D with D^den >= x^num, i.e. ceil(x^{num/den}).
u128 ceil_root_power(u128 x, unsigned num, unsigned den);

struct SbProbe {
  u128 x;
  u128 D;
};

/// Grid points (x, ceil(x^{num/den})) for each x.
std::vector<SbProbe> power_grid(std::span<const u128> xs, unsigned num, unsigned den);

/// Ratios S_b(x, D) D^{3/2} / x. Both s_b strategies run where the
/// stream strategy fits the probe budget, and must agree exactly.
BoundFit fit_large_divisor_shape(Base b, std::span<const SbProbe> grid, unsigned threads = 1);

/// Ratios S_b D^{2/3} / x^{2/3} (inside x^{1/4} <= D <= x^{2/5}) and
/// S_b D^{13/22} / x^{7/11} (inside x^{3/13} <= D <= x^{8/31}); points
/// outside a window are skipped with a note.
std::pair<BoundFit, BoundFit> fit_windowed_shapes(Base b, std::span<const SbProbe> grid,
                                              unsigned threads = 1);

struct VdcReport {
  std::uint64_t D = 0;
  std::uint64_t Q = 0;
  double lhs = 0.0;   // |sum_{D <= d <= 2D} z_d|
  double rhs = 0.0;   // D/sqrt(Q) + sqrt(D/Q) (sum_{1<=q<=Q} |sum_d psi(d/D) z_d conj z_{d+q}|)^{1/2}
  double ratio = 0.0; // lhs / rhs
};

/// z[i] is z_{start + i}; the sequence must cover [ceil(D/2), floor(5D/2) + Q].
VdcReport weyl_vdc_check(std::span<const cplx> z, std::uint64_t start, std::uint64_t D,
                         std::uint64_t Q);

struct VdcFamilyFit {
  std::vector<std::pair<std::string, VdcReport>> reports;
  double fitted_constant = 0.0;
};

/// Constant, random, linear and quadratic phases over a fixed (D, Q) grid.
VdcFamilyFit weyl_vdc_family(std::uint64_t seed = kDefaultSeed);

/// Restricted censuses at each x, then unrestricted censuses for every
/// digit count N with b^N <= max x.
std::vector<CensusRecord> asymptotic_report(Base b, std::span<const u128> xs,
                                            unsigned threads = 1);

/// A randomized spec for one of the explicit oscillatory bounds. `param` is
/// m for the first-derivative bound and r for the second; K counts the
/// monotone pieces of G.
struct BoundCase {
  PhaseSpec spec;
  double param = 0.0;
  int K = 1;
};

/// F = +-(alpha x + beta x^3) on [a, b] inside [0, 8], G monotone.
BoundCase random_first_derivative_case(SplitMix64& rng);
/// F = +-(kappa x^2 + lambda x), G a raised cosine with K pieces.
BoundCase random_second_derivative_case(SplitMix64& rng);

struct BoundCampaign {
  std::string label;
  std::size_t specs = 0;
  int rejected = 0;
  int violations = 0;
  double worst = 0.0;  // max |I| / bound over accepted specs
};

/// Runs `count` random specs through the first (second = false) or second
/// derivative bound check.
BoundCampaign run_bound_campaign(bool second, int count, std::uint64_t seed, unsigned threads = 1);

/// Reals with 12 significant digits.
std::string format_real(double v);

/// "re+imi" with both parts as in format_real.
std::string format_complex(cplx v);

// ---- acceptance suite ----

struct AcceptanceOptions {
  bool quick = false;  // reduced grids for a fast smoke run
  unsigned threads = 1;
  std::uint64_t seed = kDefaultSeed;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::vector<std::string> details;  // deterministic lines, no timings
};

/// Criteria 1-9; criterion 10 compares two renderings of this report.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// One "PASS"/"FAIL" line per criterion followed by indented details.
std::string render_acceptance(const std::vector<CriterionResult>& results);

}  // namespace pallab
