#include "pallab/oscillate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "pallab/errors.hpp"
#include "pallab/parallel.hpp"

namespace pallab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Truncated Taylor series in (x - x0): c[k] is the k-th coefficient, so the
// k-th derivative at x0 is k! * c[k].
constexpr int kJetSize = kMaxBumpOrder + 1;
struct Jet {
  std::array<double, kJetSize> c{};
};

Jet jet_div(const Jet& a, const Jet& b) {
  Jet q;
  for (int k = 0; k < kJetSize; ++k) {
    double s = a.c[k];
    for (int j = 1; j <= k; ++j) s -= b.c[j] * q.c[k - j];
    q.c[k] = s / b.c[0];
  }
  return q;
}

Jet jet_exp(const Jet& u) {
  Jet e;
  e.c[0] = std::exp(u.c[0]);
  for (int k = 1; k < kJetSize; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += j * u.c[j] * e.c[k - j];
    e.c[k] = s / k;
  }
  return e;
}

Jet jet_linear(double value, double slope) {
  Jet j;
  j.c[0] = value;
  j.c[1] = slope;
  return j;
}

// exp(-1/t) underflows to zero for t below this, derivatives included.
constexpr double kFlatThreshold = 1.0 / 700.0;

// The transition s(t) = f(t) / (f(t) + f(1-t)) composed with t = t0 + t1 (x - x0).
Jet transition(double t0, double t1) {
  Jet out;
  if (t0 <= kFlatThreshold) return out;
  if (1.0 - t0 <= kFlatThreshold) {
    out.c[0] = 1.0;
    return out;
  }
  Jet minus_one;
  minus_one.c[0] = -1.0;
  const Jet f_t = jet_exp(jet_div(minus_one, jet_linear(t0, t1)));
  const Jet f_1mt = jet_exp(jet_div(minus_one, jet_linear(1.0 - t0, -t1)));
  Jet denom = f_t;
  for (int k = 0; k < kJetSize; ++k) denom.c[k] += f_1mt.c[k];
  return jet_div(f_t, denom);
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

QuadResult gk15(const std::function<cplx(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const cplx fc = f(center);
  cplx kronrod = fc * kWgk[7];
  cplx gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const cplx sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

struct Panel {
  double lo, hi;
  QuadResult part;
  bool operator<(const Panel& o) const { return part.error < o.part.error; }
};

void sample_grid(double a, double b, std::vector<double>& xs) {
  xs.resize(kPreconditionSamples);
  for (int i = 0; i < kPreconditionSamples; ++i) {
    xs[i] = a + (b - a) * static_cast<double>(i) / (kPreconditionSamples - 1);
  }
}

// Monotone (non-increasing or non-decreasing) up to a relative slack.
bool is_monotone(const std::vector<double>& v, double slack) {
  bool up = true, down = true;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[i - 1] - slack) up = false;
    if (v[i] > v[i - 1] + slack) down = false;
  }
  return up || down;
}

int monotone_pieces(const std::vector<double>& v, double slack) {
  int pieces = 1;
  int direction = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double d = v[i] - v[i - 1];
    if (std::abs(d) <= slack) continue;
    const int dir = d > 0 ? 1 : -1;
    if (direction != 0 && dir != direction) ++pieces;
    direction = dir;
  }
  return pieces;
}

std::string amplitude_problem(const std::vector<double>& g, double M) {
  for (double v : g) {
    if (v < -1e-12 * M) return "G takes negative values";
    if (v > M * (1 + 1e-12)) return "G exceeds its bound M";
  }
  return {};
}

BoundReport finish(const PhaseSpec& spec, BoundReport report) {
  const QuadResult q = oscillatory_integral(spec);
  report.accepted = true;
  report.integral = q.value;
  report.magnitude = std::abs(q.value);
  report.quad_error = q.error;
  report.holds = report.magnitude <= report.bound;
  return report;
}

cplx plateau_transform(double lo, double hi, double k) {
  if (k == 0.0) return hi - lo;
  const cplx e_hi = std::polar(1.0, -kTwoPi * k * hi);
  const cplx e_lo = std::polar(1.0, -kTwoPi * k * lo);
  return (e_hi - e_lo) / cplx(0.0, -kTwoPi * k);
}

// int_lo^hi g(u) e(-k u) du split into panels of at most four oscillations.
cplx oscillating_piece(const std::function<double(double)>& g, double lo, double hi, double k,
                       double tol) {
  const double span = hi - lo;
  if (span <= 0) return 0.0;
  const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(k) * span / 4.0)));
  const std::function<cplx(double)> integrand = [&](double u) {
    return g(u) * std::polar(1.0, -kTwoPi * k * u);
  };
  cplx total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double a = lo + span * i / panels;
    const double b = lo + span * (i + 1) / panels;
    total += integrate(integrand, a, b, tol / panels).value;
  }
  return total;
}

}  // namespace

BumpShape bump_shape(BumpKind kind) {
  return kind == BumpKind::Psi ? BumpShape{0.5, 1.0, 2.0, 2.5} : BumpShape{-2.0, -1.0, 1.0, 2.0};
}

double bump_eval(BumpKind kind, double x, int order) {
  if (order < 0 || order > kMaxBumpOrder) {
    throw DomainError("bump derivative order " + std::to_string(order) + " outside [0, " +
                      std::to_string(kMaxBumpOrder) + "]");
  }
  const BumpShape s = bump_shape(kind);
  if (x <= s.support_lo || x >= s.support_hi) return 0.0;
  if (x >= s.plateau_lo && x <= s.plateau_hi) return order == 0 ? 1.0 : 0.0;
  Jet j;
  if (x < s.plateau_lo) {
    const double w = s.plateau_lo - s.support_lo;
    j = transition((x - s.support_lo) / w, 1.0 / w);
  } else {
    const double w = s.support_hi - s.plateau_hi;
    j = transition((s.support_hi - x) / w, -1.0 / w);
  }
  return factorial(order) * j.c[order];
}

QuadResult integrate(const std::function<cplx(double)>& f, double a, double b, double tol,
                     std::size_t max_panels) {
  if (b == a) return {0.0, 0.0};
  if (b < a) {
    QuadResult r = integrate(f, b, a, tol, max_panels);
    return {-r.value, r.error};
  }
  auto checked = [](const Panel& p) {
    if (!std::isfinite(p.part.value.real()) || !std::isfinite(p.part.value.imag())) {
      throw NumericalError("integrand is not finite near x = " + std::to_string(0.5 * (p.lo + p.hi)),
                           INFINITY);
    }
    return p;
  };
  std::priority_queue<Panel> heap;
  heap.push(checked({a, b, gk15(f, a, b)}));
  double error = heap.top().part.error;
  double magnitude = std::abs(heap.top().part.value);
  // Below this the estimate is dominated by rounding.
  auto rounding = [&] { return 1e-15 * magnitude; };
  while (error > tol && error > rounding()) {
    if (heap.size() >= max_panels) {
      throw NumericalError("quadrature did not converge on [" + std::to_string(a) + ", " +
                               std::to_string(b) + "]",
                           error);
    }
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Panel left = checked({worst.lo, mid, gk15(f, worst.lo, mid)});
    const Panel right = checked({mid, worst.hi, gk15(f, mid, worst.hi)});
    error += left.part.error + right.part.error - worst.part.error;
    magnitude += std::abs(left.part.value) + std::abs(right.part.value) - std::abs(worst.part.value);
    heap.push(left);
    heap.push(right);
  }
  // Sum in order of position so the result does not depend on heap layout.
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
  std::vector<cplx> values;
  std::vector<double> errors;
  for (const auto& p : panels) {
    values.push_back(p.part.value);
    errors.push_back(p.part.error);
  }
  return {pairwise_sum(values), pairwise_sum(errors)};
}

SupportedFunction triangle_function() {
  SupportedFunction f;
  f.value = [](double u) { return std::max(0.0, 1.0 - std::abs(u)); };
  f.breakpoints = {-1.0, 0.0, 1.0};
  f.transform = [](double k) -> cplx {
    if (k == 0.0) return 1.0;
    const double s = std::sin(std::numbers::pi * k) / (std::numbers::pi * k);
    return s * s;
  };
  f.decay = {{2, 1.0 / (std::numbers::pi * std::numbers::pi)}};
  return f;
}

SupportedFunction bump_function(BumpKind kind) {
  static const auto decay_for = [](BumpKind which) {
    // |hat f(k)| <= ||f^(j)||_1 / (2 pi |k|)^j by j integrations by parts.
    std::vector<SupportedFunction::Decay> out;
    const BumpShape s = bump_shape(which);
    for (int j = 2; j <= 8; ++j) {
      const std::function<cplx(double)> abs_deriv = [which, j](double u) {
        return cplx(std::abs(bump_eval(which, u, j)), 0.0);
      };
      // A coarse pass sets the scale for a relative accuracy of 1e-9.
      double l1 = 0.0;
      for (auto [lo, hi] : {std::pair{s.support_lo, s.plateau_lo}, std::pair{s.plateau_hi, s.support_hi}}) {
        const double rough = integrate(abs_deriv, lo, hi, INFINITY).value.real();
        l1 += integrate(abs_deriv, lo, hi, 1e-9 * rough, 1 << 16).value.real();
      }
      out.push_back({j, l1 * (1 + 1e-6) / std::pow(kTwoPi, j)});
    }
    return out;
  };
  static const std::vector<SupportedFunction::Decay> psi_decay = decay_for(BumpKind::Psi);
  static const std::vector<SupportedFunction::Decay> phi_decay = decay_for(BumpKind::Phi);

  const BumpShape s = bump_shape(kind);
  SupportedFunction f;
  f.value = [kind](double u) { return bump_eval(kind, u, 0); };
  f.breakpoints = {s.support_lo, s.plateau_lo, s.plateau_hi, s.support_hi};
  f.transform = [kind](double k) { return fourier_transform(kind, k); };
  f.decay = kind == BumpKind::Psi ? psi_decay : phi_decay;
  return f;
}

cplx fourier_transform(BumpKind kind, double k) {
  const BumpShape s = bump_shape(kind);
  // Internal quadrature target, below the advertised kFourierTolerance.
  const double tol = kFourierTolerance / 10;
  if (std::abs(k) <= 1.0) {
    const std::function<double(double)> g = [kind](double u) { return bump_eval(kind, u, 0); };
    return plateau_transform(s.plateau_lo, s.plateau_hi, k) +
           oscillating_piece(g, s.support_lo, s.plateau_lo, k, tol / 2) +
           oscillating_piece(g, s.plateau_hi, s.support_hi, k, tol / 2);
  }
  // Two integrations by parts: hat f(k) = (2 pi i k)^-2 int f''(u) e(-ku) du.
  // f'' vanishes on the plateau, and boundary terms vanish at every ramp end.
  const cplx factor = 1.0 / (cplx(0.0, kTwoPi * k) * cplx(0.0, kTwoPi * k));
  const double scaled_tol = tol / std::abs(factor);
  const std::function<double(double)> g2 = [kind](double u) { return bump_eval(kind, u, 2); };
  return factor * (oscillating_piece(g2, s.support_lo, s.plateau_lo, k, scaled_tol / 2) +
                   oscillating_piece(g2, s.plateau_hi, s.support_hi, k, scaled_tol / 2));
}

cplx fourier_transform(const SupportedFunction& f, double k) {
  if (f.transform) return f.transform(k);
  if (f.breakpoints.size() < 2) throw DomainError("function support needs two breakpoints");
  const double tol = kFourierTolerance / 10 / static_cast<double>(f.breakpoints.size() - 1);
  cplx total = 0.0;
  for (std::size_t i = 0; i + 1 < f.breakpoints.size(); ++i) {
    total += oscillating_piece(f.value, f.breakpoints[i], f.breakpoints[i + 1], k, tol);
  }
  return total;
}

QuadResult oscillatory_integral(const PhaseSpec& spec, double tol, unsigned threads) {
  if (!(spec.a <= spec.b)) throw DomainError("oscillatory integral needs a <= b");
  if (spec.a == spec.b) return {0.0, 0.0};
  // Panels on which |F'| * width stays under four full turns.
  std::vector<std::pair<double, double>> panels;
  std::vector<std::pair<double, double>> todo{{spec.a, spec.b}};
  constexpr double kMaxTurn = 4.0 * kTwoPi;
  while (!todo.empty()) {
    auto [lo, hi] = todo.back();
    todo.pop_back();
    double slope = 0.0;
    for (int i = 0; i <= 8; ++i) slope = std::max(slope, std::abs(spec.dF(lo + (hi - lo) * i / 8)));
    if (slope * (hi - lo) <= kMaxTurn || hi - lo < 1e-12 * (spec.b - spec.a)) {
      panels.emplace_back(lo, hi);
    } else {
      const double mid = 0.5 * (lo + hi);
      todo.emplace_back(mid, hi);
      todo.emplace_back(lo, mid);
    }
  }
  const std::function<cplx(double)> integrand = [&spec](double x) {
    return spec.G(x) * std::polar(1.0, spec.F(x));
  };
  const double length = spec.b - spec.a;
  auto parts = parallel_map(panels.size(), threads, [&](std::size_t i) {
    const auto [lo, hi] = panels[i];
    return integrate(integrand, lo, hi, tol * (hi - lo) / length);
  });
  std::vector<cplx> values(parts.size());
  std::vector<double> errors(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    values[i] = parts[i].value;
    errors[i] = parts[i].error;
  }
  return {pairwise_sum(values), pairwise_sum(errors)};
}

BoundReport check_first_derivative_bound(const PhaseSpec& spec, double m) {
  if (!(m > 0)) throw DomainError("first-derivative bound needs m > 0");
  BoundReport report;
  report.bound = 4.0 * spec.M / m;
  std::vector<double> xs, dF, g;
  sample_grid(spec.a, spec.b, xs);
  for (double x : xs) {
    dF.push_back(spec.dF(x));
    g.push_back(spec.G(x));
  }
  const bool above = std::all_of(dF.begin(), dF.end(), [m](double v) { return v >= m; });
  const bool below = std::all_of(dF.begin(), dF.end(), [m](double v) { return v <= -m; });
  if (!above && !below) {
    report.rejection = "F' does not stay beyond m with one sign";
    return report;
  }
  if (!is_monotone(dF, 1e-12 * std::abs(dF.front()))) {
    report.rejection = "F' is not monotone";
    return report;
  }
  if (auto why = amplitude_problem(g, spec.M); !why.empty()) {
    report.rejection = why;
    return report;
  }
  if (!is_monotone(g, 1e-12 * spec.M)) {
    report.rejection = "G is not monotone";
    return report;
  }
  return finish(spec, report);
}

BoundReport check_second_derivative_bound(const PhaseSpec& spec, double r, int K) {
  if (!(r > 0)) throw DomainError("second-derivative bound needs r > 0");
  if (K < 1) throw DomainError("second-derivative bound needs K >= 1");
  BoundReport report;
  report.bound = 8.0 * K * spec.M / std::sqrt(r);
  std::vector<double> xs, d2F, g;
  sample_grid(spec.a, spec.b, xs);
  for (double x : xs) {
    d2F.push_back(spec.d2F(x));
    g.push_back(spec.G(x));
  }
  const bool above = std::all_of(d2F.begin(), d2F.end(), [r](double v) { return v >= r; });
  const bool below = std::all_of(d2F.begin(), d2F.end(), [r](double v) { return v <= -r; });
  if (!above && !below) {
    report.rejection = "F'' does not stay beyond r with one sign";
    return report;
  }
  if (auto why = amplitude_problem(g, spec.M); !why.empty()) {
    report.rejection = why;
    return report;
  }
  if (monotone_pieces(g, 1e-12 * spec.M) > K) {
    report.rejection = "G has more than K monotone pieces";
    return report;
  }
  return finish(spec, report);
}

DecayReport check_nonstationary_decay(const PhaseSpec& spec, int N) {
  if (N < 1) throw DomainError("decay order N must be at least 1");
  if (!(spec.a < spec.b)) throw DomainError("decay check needs a < b");
  DecayReport report;
  const double len = spec.b - spec.a;
  std::vector<double> xs;
  sample_grid(spec.a, spec.b, xs);
  double phi = INFINITY;
  bool positive = false, negative = false;
  for (double x : xs) {
    const double d = spec.dF(x);
    positive |= d > 0;
    negative |= d < 0;
    phi = std::min(phi, std::abs(d));
  }
  if (!(phi > 0) || (positive && negative)) {
    report.rejection = "F' vanishes or changes sign";
    return report;
  }
  const double C = kDecayHypothesisConstant;
  for (double x : xs) {
    if (std::abs(spec.dF(x)) > C * phi) {
      report.rejection = "|F'| exceeds C * Phi";
      return report;
    }
    if (std::abs(spec.d2F(x)) > C * phi / len) {
      report.rejection = "|F''| exceeds C * Phi / (b - a)";
      return report;
    }
    if (std::abs(spec.G(x)) > C) {
      report.rejection = "|W| exceeds C";
      return report;
    }
    if (spec.dG && std::abs(spec.dG(x)) > C / len) {
      report.rejection = "|W'| exceeds C / (b - a)";
      return report;
    }
  }
  report.accepted = true;
  report.phi = phi;
  report.magnitude = std::abs(oscillatory_integral(spec).value);
  report.scale = std::pow(len, 1 - N) * std::pow(phi, -N);
  report.ratio = report.magnitude / report.scale;
  return report;
}

DecayFit fit_nonstationary_decay(const std::vector<PhaseSpec>& family, int N) {
  DecayFit fit;
  double early = 0.0, late = 0.0;
  bool all_accepted = true;
  for (std::size_t i = 0; i < family.size(); ++i) {
    DecayReport r = check_nonstationary_decay(family[i], N);
    all_accepted &= r.accepted;
    if (r.accepted) {
      fit.fitted_constant = std::max(fit.fitted_constant, r.ratio);
      (2 * i < family.size() ? early : late) = std::max(2 * i < family.size() ? early : late, r.ratio);
    }
    fit.reports.push_back(std::move(r));
  }
  fit.bounded = all_accepted && !family.empty() && late <= early;
  return fit;
}

PhaseSpec linear_phase_window(double lambda) {
  PhaseSpec s;
  s.F = [lambda](double x) { return lambda * x; };
  s.dF = [lambda](double) { return lambda; };
  s.d2F = [](double) { return 0.0; };
  s.G = [](double x) { return bump_eval(BumpKind::Phi, 4.0 * (x - 0.5), 0); };
  s.dG = [](double x) { return 4.0 * bump_eval(BumpKind::Phi, 4.0 * (x - 0.5), 1); };
  s.a = 0.0;
  s.b = 1.0;
  s.M = 1.0;
  return s;
}

}  // namespace pallab
