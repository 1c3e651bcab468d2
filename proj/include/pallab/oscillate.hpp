#pragma once

// Smooth bumps, Fourier transforms and oscillatory integrals, together with
// checks of the explicit-constant bounds for integrals of G(x) e^{iF(x)}.

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pallab {

using cplx = std::complex<double>;

// ---- smooth bumps ----

enum class BumpKind {
  Psi,  // support [1/2, 5/2], equal to 1 on [1, 2]
  Phi,  // support [-2, 2], equal to 1 on [-1, 1]
};

/// Highest derivative order bump_eval provides.
inline constexpr int kMaxBumpOrder = 12;

/// Value (order 0) or order-th derivative of the bump at x. Each ramp is the
/// C^infinity transition t -> f(t) / (f(t) + f(1-t)), f(t) = exp(-1/t),
/// rescaled onto the ramp interval.
double bump_eval(BumpKind kind, double x, int order = 0);

struct BumpShape {
  double support_lo, plateau_lo, plateau_hi, support_hi;
};
BumpShape bump_shape(BumpKind kind);

// ---- quadrature ----

struct QuadResult {
  cplx value;
  double error;  // estimated absolute error
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of a complex integrand
/// over [a, b]: the panel with the largest error estimate is bisected until
/// the summed estimate is within `tol`. Throws NumericalError when more than
/// `max_panels` panels would be needed.
QuadResult integrate(const std::function<cplx(double)>& f, double a, double b, double tol,
                     std::size_t max_panels = 4096);

/// A real function with compact support, described for Fourier analysis.
struct SupportedFunction {
  std::function<double(double)> value;
  /// Sorted points where the function may fail to be smooth; must start at
  /// the support's lower end and end at its upper end.
  std::vector<double> breakpoints;
  /// Optional dedicated transform evaluator, used instead of generic
  /// quadrature (a closed form, or a specialised routine).
  std::function<cplx(double)> transform;
  /// Known decay bounds |hat f(k)| <= constant / |k|^order for |k| >= 1.
  struct Decay {
    int order;
    double constant;
  };
  std::vector<Decay> decay;

  double lo() const { return breakpoints.front(); }
  double hi() const { return breakpoints.back(); }
};

/// Triangle max(0, 1 - |u|) with transform (sin(pi k)/(pi k))^2.
SupportedFunction triangle_function();

/// The bump as a SupportedFunction, with decay constants ||f^(j)||_1 /
/// (2 pi)^j for j = 2..8 computed once.
SupportedFunction bump_function(BumpKind kind);

/// Absolute error target of fourier_transform.
inline constexpr double kFourierTolerance = 1e-10;

/// hat f(k) = int f(u) e(-k u) du.
cplx fourier_transform(BumpKind kind, double k);
cplx fourier_transform(const SupportedFunction& f, double k);

// ---- oscillatory integrals ----

/// Phase F and amplitude G on [a, b].
struct PhaseSpec {
  std::function<double(double)> F, dF, d2F;
  std::function<double(double)> G;
  std::function<double(double)> dG;  // optional; used by the decay hypotheses
  double a = 0.0, b = 1.0;
  double M = 1.0;                     // claimed bound sup |G|
};

/// int_a^b G(x) e^{iF(x)} dx, with panels sized so that the phase turns at
/// most four times per panel. Panels may be evaluated on `threads` workers;
/// the sum is a fixed pairwise reduction.
QuadResult oscillatory_integral(const PhaseSpec& spec, double tol = 1e-11,
                                unsigned threads = 1);

/// Outcome of checking one explicit oscillatory-integral bound.
struct BoundReport {
  bool accepted = false;    // preconditions held on the sample grid
  std::string rejection;    // why not, when !accepted
  cplx integral{};
  double magnitude = 0.0;
  double quad_error = 0.0;
  double bound = 0.0;
  bool holds = false;       // accepted && magnitude <= bound
};

/// Number of points used to sample preconditions.
inline constexpr int kPreconditionSamples = 10'000;

/// |int G e^{iF}| <= 4M/m when F' >= m > 0 (or F' <= -m), F' monotone and
/// G monotone with 0 <= G <= M.
BoundReport check_first_derivative_bound(const PhaseSpec& spec, double m);

/// |int G e^{iF}| <= 8KM/sqrt(r) when F'' >= r > 0 (or F'' <= -r) and G is
/// piecewise monotone in at most K pieces with 0 <= G <= M.
BoundReport check_second_derivative_bound(const PhaseSpec& spec, double r, int K);

/// Decay check for a non-stationary phase: the ratio of |int e^{iF} W| to
/// (b-a)^{1-N} Phi^{-N}, Phi = inf |F'|.
struct DecayReport {
  bool accepted = false;
  std::string rejection;
  double phi = 0.0;
  double magnitude = 0.0;
  double scale = 0.0;   // (b-a)^{1-N} Phi^{-N}
  double ratio = 0.0;   // magnitude / scale
};

/// Constant used for the sampled "<<" hypotheses on F^(k) and W^(k).
inline constexpr double kDecayHypothesisConstant = 10.0;

DecayReport check_nonstationary_decay(const PhaseSpec& spec, int N);

struct DecayFit {
  std::vector<DecayReport> reports;
  double fitted_constant = 0.0;  // max ratio
  bool bounded = false;          // ratios in the later half do not exceed the earlier max
};

/// Runs check_nonstationary_decay over a family ordered by growing Phi.
DecayFit fit_nonstationary_decay(const std::vector<PhaseSpec>& family, int N);

/// Linear phase lambda*x on [0, 1] with a phi-shaped window that vanishes at
/// both ends.
PhaseSpec linear_phase_window(double lambda);

}  // namespace pallab
