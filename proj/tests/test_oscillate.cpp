#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "pallab/errors.hpp"
#include "pallab/oscillate.hpp"

using namespace pallab;
using pallab::testing::Gen;

namespace {

constexpr double kPi = std::numbers::pi;

PhaseSpec plain(std::function<double(double)> F, std::function<double(double)> dF,
                std::function<double(double)> d2F, std::function<double(double)> G, double a,
                double b, double M) {
  PhaseSpec s;
  s.F = std::move(F);
  s.dF = std::move(dF);
  s.d2F = std::move(d2F);
  s.G = std::move(G);
  s.a = a;
  s.b = b;
  s.M = M;
  return s;
}

PhaseSpec fresnel() {
  return plain([](double x) { return x * x; }, [](double x) { return 2 * x; },
               [](double) { return 2.0; }, [](double) { return 1.0; }, -1.0, 1.0, 1.0);
}

}  // namespace

TEST(Bumps, SupportPlateauAndRange) {
  for (BumpKind kind : {BumpKind::Psi, BumpKind::Phi}) {
    const BumpShape s = bump_shape(kind);
    Gen g(41);
    for (int i = 0; i < 2000; ++i) {
      const double x = g.real(s.support_lo - 1.0, s.support_hi + 1.0);
      const double v = bump_eval(kind, x);
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
      if (x <= s.support_lo || x >= s.support_hi) EXPECT_EQ(v, 0.0) << x;
      if (x >= s.plateau_lo && x <= s.plateau_hi) EXPECT_EQ(v, 1.0) << x;
    }
  }
  EXPECT_EQ(bump_eval(BumpKind::Psi, 1.5), 1.0);
  EXPECT_EQ(bump_eval(BumpKind::Phi, 3.0), 0.0);
  const double mid = bump_eval(BumpKind::Psi, 0.75);
  EXPECT_GT(mid, 0.0);
  EXPECT_LT(mid, 1.0);
  EXPECT_THROW(bump_eval(BumpKind::Psi, 1.0, kMaxBumpOrder + 1), DomainError);
  EXPECT_THROW(bump_eval(BumpKind::Psi, 1.0, -1), DomainError);
}

TEST(Bumps, ValuesMatchHighPrecisionOracle) {
  // Evaluated at 30 digits with an independent arbitrary-precision routine.
  EXPECT_NEAR(bump_eval(BumpKind::Psi, 0.6), 0.0229773699100255884723, 1e-14);
  EXPECT_NEAR(bump_eval(BumpKind::Psi, 2.3), 0.302940716034593397998, 1e-14);
  EXPECT_NEAR(bump_eval(BumpKind::Phi, 1.25), 0.935030830871335937872, 1e-14);
  EXPECT_NEAR(bump_eval(BumpKind::Psi, 0.8, 1), 3.81274903033268393690, 1e-12);
  EXPECT_NEAR(bump_eval(BumpKind::Psi, 0.8, 2), -8.55670416031513636429, 1e-11);
  EXPECT_NEAR(bump_eval(BumpKind::Phi, -1.7, 3), -55.6684748012952168567, 1e-9);
}

TEST(Bumps, DerivativeMatchesCentralDifferences) {
  Gen g(42);
  const double h = 1e-5;
  for (BumpKind kind : {BumpKind::Psi, BumpKind::Phi}) {
    const BumpShape s = bump_shape(kind);
    for (int i = 0; i < 1000; ++i) {
      const double x = g.real(s.support_lo, s.support_hi);
      const double fd = (bump_eval(kind, x + h) - bump_eval(kind, x - h)) / (2 * h);
      EXPECT_NEAR(bump_eval(kind, x, 1), fd, 1e-6) << x;
    }
  }
}

TEST(Bumps, DerivativesContinuousAtRampEnds) {
  for (BumpKind kind : {BumpKind::Psi, BumpKind::Phi}) {
    const BumpShape s = bump_shape(kind);
    for (double edge : {s.support_lo, s.plateau_lo, s.plateau_hi, s.support_hi}) {
      for (int order = 0; order <= 4; ++order) {
        const double left = bump_eval(kind, edge - 1e-4, order);
        const double right = bump_eval(kind, edge + 1e-4, order);
        EXPECT_NEAR(left, right, 1e-6) << "edge " << edge << " order " << order;
      }
    }
  }
}

TEST(Quadrature, PolynomialsAndBudget) {
  const QuadResult r = integrate([](double x) { return cplx(x * x, std::sin(x)); }, 0.0, 2.0, 1e-13);
  EXPECT_NEAR(r.value.real(), 8.0 / 3.0, 1e-13);
  EXPECT_NEAR(r.value.imag(), 1.0 - std::cos(2.0), 1e-13);
  // Integrable endpoint singularity: converges too slowly for 64 panels.
  EXPECT_THROW(integrate([](double x) { return cplx(std::pow(x, -0.9), 0); }, 0.0, 1.0, 1e-14, 64),
               NumericalError);
  // The centre node lands on the pole.
  EXPECT_THROW(integrate([](double x) { return cplx(1.0 / std::sqrt(std::abs(x)), 0); }, -1.0, 1.0, 1e-8),
               NumericalError);
}

TEST(Fourier, TriangleMatchesSincSquaredByQuadrature) {
  SupportedFunction generic = triangle_function();
  generic.transform = nullptr;
  for (double k = -50.0; k <= 50.0; k += 0.37) {
    const double s = k == 0.0 ? 1.0 : std::sin(kPi * k) / (kPi * k);
    const cplx v = fourier_transform(generic, k);
    EXPECT_NEAR(v.real(), s * s, 1e-8) << k;
    EXPECT_NEAR(v.imag(), 0.0, 1e-8) << k;
  }
  EXPECT_NEAR(fourier_transform(triangle_function(), 0.0).real(), 1.0, 1e-15);
}

TEST(Fourier, BumpTransformsMatchOracle) {
  // hat psi from an independent 30-digit quadrature.
  const cplx a = fourier_transform(BumpKind::Psi, 0.0);
  EXPECT_NEAR(a.real(), 1.5, 1e-10);
  EXPECT_NEAR(a.imag(), 0.0, 1e-10);
  const cplx b = fourier_transform(BumpKind::Psi, 0.25);
  EXPECT_NEAR(b.real(), -0.824898664413944932, 1e-10);
  EXPECT_NEAR(b.imag(), -0.824898664413944932, 1e-10);
  const cplx c = fourier_transform(BumpKind::Psi, 1.7);
  EXPECT_NEAR(c.real(), -0.117056075066538463, 1e-10);
  EXPECT_NEAR(c.imag(), 0.0380338243528359032, 1e-10);
  const cplx d = fourier_transform(BumpKind::Psi, 4.5);
  EXPECT_NEAR(d.real(), 0.0, 1e-10);
  EXPECT_NEAR(d.imag(), -0.00368572804107843635, 1e-10);
  EXPECT_NEAR(fourier_transform(BumpKind::Phi, 0.5).real(), -0.556003739358384027, 1e-10);
  // The ramps of phi sum to one across a shift of 3, so hat phi vanishes on Z/3.
  for (int j = 1; j <= 12; ++j) EXPECT_NEAR(std::abs(fourier_transform(BumpKind::Phi, j / 3.0)), 0.0, 1e-10);
}

TEST(Fourier, DedicatedAndGenericPathsAgree) {
  SupportedFunction generic = bump_function(BumpKind::Psi);
  generic.transform = nullptr;
  for (double k : {0.0, 0.3, 0.9, 1.1, 2.6, 5.0}) {
    EXPECT_LT(std::abs(fourier_transform(generic, k) - fourier_transform(BumpKind::Psi, k)), 1e-9) << k;
  }
}

TEST(Fourier, PhiHatCubicDecayConstantFits) {
  double fitted = 0.0;
  std::vector<double> ks;
  for (double k = 1.0; k <= 100.0; k *= 1.09) ks.push_back(k);
  for (double k : ks) fitted = std::max(fitted, std::abs(fourier_transform(BumpKind::Phi, k)) * k * k * k);
  // The fitted constant must sit below the proved L1 bound on phi'''/(2 pi)^3.
  const SupportedFunction phi = bump_function(BumpKind::Phi);
  double proved = 0.0;
  for (const auto& d : phi.decay) {
    if (d.order == 3) proved = d.constant;
  }
  ASSERT_GT(proved, 0.0);
  EXPECT_GT(fitted, 0.0);
  EXPECT_LE(fitted, proved);
  for (const auto& d : phi.decay) {
    for (double k : {1.0, 3.7, 20.0, 77.0}) {
      EXPECT_LE(std::abs(fourier_transform(BumpKind::Phi, k)), d.constant / std::pow(k, d.order) + 1e-10);
    }
  }
}

TEST(Oscillatory, ExplicitExamples) {
  const QuadResult flat = oscillatory_integral(
      plain([](double) { return 0.0; }, [](double) { return 0.0; }, [](double) { return 0.0; },
            [](double) { return 1.0; }, 0.0, 1.0, 1.0));
  EXPECT_NEAR(flat.value.real(), 1.0, 1e-14);

  const QuadResult lin = oscillatory_integral(
      plain([](double x) { return 10 * x; }, [](double) { return 10.0; }, [](double) { return 0.0; },
            [](double) { return 1.0; }, 0.0, 1.0, 1.0));
  const cplx exact = (std::exp(cplx(0, 10)) - 1.0) / cplx(0, 10);
  EXPECT_LT(std::abs(lin.value - exact), 1e-12);
  EXPECT_LE(std::abs(lin.value), 0.2);

  const QuadResult fr = oscillatory_integral(fresnel());
  EXPECT_NEAR(fr.value.real(), 1.80904847580054416, 1e-11);
  EXPECT_NEAR(fr.value.imag(), 0.620536603446762204, 1e-11);
  // Second scheme: generic quadrature with no oscillation-aware panels.
  const QuadResult generic =
      integrate([](double x) { return std::exp(cplx(0, x * x)); }, -1.0, 1.0, 1e-13);
  EXPECT_LT(std::abs(fr.value - generic.value), 1e-11);
}

TEST(Oscillatory, ThreadedSumIsBitIdentical) {
  PhaseSpec s = plain([](double x) { return 300 * x * x; }, [](double x) { return 600 * x; },
                      [](double) { return 600.0; }, [](double x) { return 1 + x; }, 0.1, 3.0, 4.0);
  const QuadResult one = oscillatory_integral(s, 1e-11, 1);
  const QuadResult four = oscillatory_integral(s, 1e-11, 4);
  EXPECT_EQ(one.value, four.value);
}

TEST(FirstDerivativeBound, SpecExamples) {
  const BoundReport lin = check_first_derivative_bound(
      plain([](double x) { return 10 * x; }, [](double) { return 10.0; }, [](double) { return 0.0; },
            [](double) { return 1.0; }, 0.0, 1.0, 1.0),
      10.0);
  ASSERT_TRUE(lin.accepted) << lin.rejection;
  EXPECT_NEAR(lin.magnitude, 0.2 * std::abs(std::sin(5.0)), 1e-12);
  EXPECT_DOUBLE_EQ(lin.bound, 0.4);
  EXPECT_TRUE(lin.holds);

  const BoundReport cubic = check_first_derivative_bound(
      plain([](double x) { return x + x * x * x; }, [](double x) { return 1 + 3 * x * x; },
            [](double x) { return 6 * x; }, [](double x) { return x; }, 1.0, 2.0, 2.0),
      1.0);
  ASSERT_TRUE(cubic.accepted) << cubic.rejection;
  EXPECT_NEAR(cubic.integral.real(), -0.308699107743993246, 1e-11);
  EXPECT_NEAR(cubic.integral.imag(), 0.0550225525050231754, 1e-11);
  EXPECT_DOUBLE_EQ(cubic.bound, 8.0);
  EXPECT_TRUE(cubic.holds);
}

TEST(FirstDerivativeBound, RejectsViolatedPreconditions) {
  // F' changes sign.
  EXPECT_FALSE(check_first_derivative_bound(fresnel(), 0.5).accepted);
  // F' too small.
  EXPECT_FALSE(check_first_derivative_bound(
                   plain([](double x) { return 2 * x; }, [](double) { return 2.0; },
                         [](double) { return 0.0; }, [](double) { return 1.0; }, 0.0, 1.0, 1.0),
                   3.0)
                   .accepted);
  // G not monotone.
  EXPECT_FALSE(check_first_derivative_bound(
                   plain([](double x) { return 5 * x; }, [](double) { return 5.0; },
                         [](double) { return 0.0; }, [](double x) { return std::sin(6 * x) + 1; },
                         0.0, 2.0, 2.0),
                   5.0)
                   .accepted);
  // G exceeds M.
  EXPECT_FALSE(check_first_derivative_bound(
                   plain([](double x) { return 5 * x; }, [](double) { return 5.0; },
                         [](double) { return 0.0; }, [](double x) { return 3 * x; }, 0.0, 1.0, 1.0),
                   5.0)
                   .accepted);
}

TEST(SecondDerivativeBound, SpecExamples) {
  const BoundReport fr = check_second_derivative_bound(fresnel(), 2.0, 1);
  ASSERT_TRUE(fr.accepted) << fr.rejection;
  EXPECT_NEAR(fr.magnitude, std::abs(cplx(1.80904847580054416, 0.620536603446762204)), 1e-11);
  EXPECT_NEAR(fr.bound, 8.0 / std::sqrt(2.0), 1e-15);
  EXPECT_TRUE(fr.holds);

  const BoundReport psi = check_second_derivative_bound(
      plain([](double x) { return 50 * x * x; }, [](double x) { return 100 * x; },
            [](double) { return 100.0; }, [](double x) { return bump_eval(BumpKind::Psi, x); }, 0.5,
            2.5, 1.0),
      100.0, 2);
  ASSERT_TRUE(psi.accepted) << psi.rejection;
  EXPECT_TRUE(psi.holds);

  for (double width : {1e-2, 1e-4, 1e-6}) {
    PhaseSpec s = fresnel();
    s.a = 0.3;
    s.b = 0.3 + width;
    const BoundReport tiny = check_second_derivative_bound(s, 2.0, 1);
    ASSERT_TRUE(tiny.accepted);
    EXPECT_NEAR(tiny.magnitude, width, width * 1e-3);
    EXPECT_TRUE(tiny.holds);
  }
}

TEST(SecondDerivativeBound, RejectsTooManyPieces) {
  PhaseSpec s = fresnel();
  s.G = [](double x) { return 0.5 + 0.5 * std::cos(8 * x); };
  EXPECT_FALSE(check_second_derivative_bound(s, 2.0, 1).accepted);
  EXPECT_TRUE(check_second_derivative_bound(s, 2.0, 6).accepted);
  EXPECT_FALSE(check_second_derivative_bound(s, 3.0, 6).accepted);
}

TEST(BoundProperties, RandomSpecsNeverViolate) {
  SplitMix64 rng(43);
  int accepted = 0;
  for (int i = 0; i < 40; ++i) {
    const BoundCase c = random_first_derivative_case(rng);
    const BoundReport r = check_first_derivative_bound(c.spec, c.param);
    if (!r.accepted) continue;
    ++accepted;
    EXPECT_TRUE(r.holds) << r.magnitude << " > " << r.bound;
  }
  for (int i = 0; i < 40; ++i) {
    const BoundCase c = random_second_derivative_case(rng);
    const BoundReport r = check_second_derivative_bound(c.spec, c.param, c.K);
    if (!r.accepted) continue;
    ++accepted;
    EXPECT_TRUE(r.holds) << r.magnitude << " > " << r.bound;
  }
  EXPECT_GT(accepted, 60);
}

TEST(NonstationaryDecay, LinearPhaseFamilyIsBounded) {
  std::vector<PhaseSpec> family;
  for (double lambda = 10.0; lambda <= 10000.0; lambda *= 2.0) family.push_back(linear_phase_window(lambda));
  const DecayFit fit = fit_nonstationary_decay(family, 2);
  ASSERT_EQ(fit.reports.size(), family.size());
  for (const auto& r : fit.reports) {
    ASSERT_TRUE(r.accepted) << r.rejection;
    EXPECT_NEAR(r.scale, 1.0 / (r.phi * r.phi), 1e-15 / (r.phi * r.phi));
  }
  EXPECT_TRUE(fit.bounded);
  EXPECT_GT(fit.fitted_constant, 0.0);
}

TEST(NonstationaryDecay, ScaleHalvesPerOrderWhenPhiDoubles) {
  for (int N : {1, 2, 3}) {
    const DecayReport a = check_nonstationary_decay(linear_phase_window(40.0), N);
    const DecayReport b = check_nonstationary_decay(linear_phase_window(80.0), N);
    ASSERT_TRUE(a.accepted && b.accepted);
    EXPECT_NEAR(b.scale / a.scale, std::pow(2.0, -N), 1e-14);
  }
  // N = 1 sits in the first-derivative regime: the window ratio stays below 4M.
  const DecayReport one = check_nonstationary_decay(linear_phase_window(500.0), 1);
  EXPECT_LE(one.ratio, 4.0);
}

TEST(NonstationaryDecay, RejectsStationaryPhase) {
  PhaseSpec s = linear_phase_window(10.0);
  s.F = [](double x) { return 10 * (x - 0.5) * (x - 0.5); };
  s.dF = [](double x) { return 20 * (x - 0.5); };
  s.d2F = [](double) { return 20.0; };
  EXPECT_FALSE(check_nonstationary_decay(s, 2).accepted);
  EXPECT_THROW(check_nonstationary_decay(s, 0), DomainError);
}
