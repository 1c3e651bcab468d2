#include "pallab/expsum.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "pallab/errors.hpp"
#include "pallab/parallel.hpp"

namespace pallab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e(r / c) for an exact residue r in [0, c).
cplx unit_root(std::uint64_t r, std::uint64_t c) {
  return std::polar(1.0, kTwoPi * (static_cast<double>(r) / static_cast<double>(c)));
}

void check_modulus(std::uint64_t c) {
  if (c == 0) throw DomainError("exponential sum modulus must be >= 1");
  if (c > kMaxExpSumModulus) throw UnsupportedError("exponential sum modulus too large");
}

// Coefficients reduced mod c once, so phases stay exact integers.
struct Reduced {
  std::uint64_t a1, a2, a3, q, c;
  explicit Reduced(const ExpSumParams& p)
      : a1(reduce_mod(p.a1, p.c)),
        a2(reduce_mod(p.a2, p.c)),
        a3(reduce_mod(p.a3, p.c)),
        q(reduce_mod(p.q, p.c)),
        c(p.c) {}

  // F(w) mod c, given the inverses of w and w + q mod c.
  std::uint64_t phase(std::uint64_t w, std::uint64_t w_inv, std::uint64_t v_inv) const {
    std::uint64_t f = mulmod(a1, w, c);
    f = (f + mulmod(a2, mulmod(w_inv, w_inv, c), c)) % c;
    f = (f + mulmod(a3, mulmod(v_inv, v_inv, c), c)) % c;
    return f;
  }
};

std::uint64_t cube(std::uint64_t x, std::uint64_t m) { return mulmod(mulmod(x, x, m), x, m); }

}  // namespace

cplx k2_full(const ExpSumParams& p) {
  check_modulus(p.c);
  if (p.c == 1) return 1.0;
  const Reduced r(p);
  std::vector<cplx> terms;
  terms.reserve(p.c);
  for (std::uint64_t x = 0; x < r.c; ++x) {
    const std::uint64_t x_inv = try_inverse(x, r.c);
    if (x_inv == 0) continue;
    const std::uint64_t y_inv = try_inverse((x + r.q) % r.c, r.c);
    if (y_inv == 0) continue;
    terms.push_back(unit_root(r.phase(x, x_inv, y_inv), r.c));
  }
  return pairwise_sum(terms) / std::sqrt(static_cast<double>(r.c));
}

cplx k2_simple(std::int64_t a1, std::int64_t a2, std::uint64_t c) {
  return k2_full({a1, a2, 0, 0, c});
}

StationarySplit stationary_split(std::uint64_t c) {
  if (c < 2) throw DomainError("stationary split needs c >= 2");
  StationarySplit s;
  s.c = c;
  s.factorization = factorize(c);
  for (const auto& [p, e] : s.factorization) {
    const auto prime = static_cast<std::uint64_t>(p);
    for (unsigned i = 0; i < e / 2; ++i) s.c1 *= prime;
    for (unsigned i = 0; i < (e + 1) / 2; ++i) s.c2 *= prime;
  }
  return s;
}

cplx k2_stationary_phase(const ExpSumParams& p) {
  check_modulus(p.c);
  if (p.c < 2) throw DomainError("stationary-phase evaluation needs c >= 2");
  const StationarySplit split = stationary_split(p.c);
  const std::uint64_t c1 = split.c1, c2 = split.c2;
  const Reduced r(p);

  // Critical residues w0 mod c1. With u = w0, v = w0 + q units mod c1, the
  // condition a1 - 2 a2 ubar^3 - 2 a3 vbar^3 = 0 is multiplied through by u^3 v^3.
  const std::uint64_t b1 = reduce_mod(p.a1, c1);
  const std::uint64_t b2 = reduce_mod(2 * static_cast<i128>(p.a2), c1);
  const std::uint64_t b3 = reduce_mod(2 * static_cast<i128>(p.a3), c1);
  const std::uint64_t q1 = reduce_mod(p.q, c1);
  std::vector<cplx> terms;
  for (std::uint64_t w0 = 0; w0 < c1; ++w0) {
    if (c1 > 1) {
      const std::uint64_t u = w0, v = (w0 + q1) % c1;
      if (gcd64(u, c1) != 1 || gcd64(v, c1) != 1) continue;
      const std::uint64_t u3 = cube(u, c1), v3 = cube(v, c1);
      const std::uint64_t lhs = mulmod(b1, mulmod(u3, v3, c1), c1);
      const std::uint64_t rhs = (mulmod(b2, v3, c1) + mulmod(b3, u3, c1)) % c1;
      if (lhs != rhs) continue;
    }
    // Lifts w mod c2; the unit condition is checked against c itself.
    for (std::uint64_t w = w0; w < c2; w += c1) {
      const std::uint64_t w_inv = try_inverse(w, r.c);
      if (w_inv == 0) continue;
      const std::uint64_t v_inv = try_inverse((w + r.q) % r.c, r.c);
      if (v_inv == 0) continue;
      terms.push_back(unit_root(r.phase(w, w_inv, v_inv), r.c));
    }
  }
  return static_cast<double>(c1) * pairwise_sum(terms) / std::sqrt(static_cast<double>(r.c));
}

std::uint64_t count_critical_points(const ExpSumParams& p) {
  check_modulus(p.c);
  if (p.c < 2) throw DomainError("critical points need c >= 2");
  const std::uint64_t c1 = stationary_split(p.c).c1;
  if (c1 == 1) return 1;
  const std::uint64_t b1 = reduce_mod(p.a1, c1);
  const std::uint64_t b2 = reduce_mod(2 * static_cast<i128>(p.a2), c1);
  const std::uint64_t b3 = reduce_mod(2 * static_cast<i128>(p.a3), c1);
  const std::uint64_t q1 = reduce_mod(p.q, c1);
  std::uint64_t count = 0;
  for (std::uint64_t w = 0; w < c1; ++w) {
    const std::uint64_t w_inv = try_inverse(w, c1);
    const std::uint64_t v_inv = try_inverse((w + q1) % c1, c1);
    if (w_inv == 0 || v_inv == 0) continue;
    const std::uint64_t derivative =
        (b1 + 2 * c1 - mulmod(b2, cube(w_inv, c1), c1) - mulmod(b3, cube(v_inv, c1), c1)) % c1;
    if (derivative == 0) ++count;
  }
  return count;
}

double k2_q_average(std::int64_t m, std::int64_t a, std::uint64_t Q, std::uint64_t c,
                    std::uint64_t threshold) {
  check_modulus(c);
  if (Q > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max() / 2)) {
    throw DomainError("Q too large");
  }
  const auto bound = static_cast<std::int64_t>(Q);
  double total = 0.0;
  for (std::int64_t q = -bound; q <= bound; ++q) {
    const ExpSumParams p{m, a, -a, q, c};
    total += std::abs(c > threshold ? k2_stationary_phase(p) : k2_full(p));
  }
  return total;
}

PoissonResult poisson_check(const SupportedFunction& f, std::span<const cplx> g, double tol) {
  if (g.empty()) throw DomainError("poisson_check needs the q values of g, q >= 1");
  if (f.breakpoints.size() < 2) throw DomainError("poisson_check needs the support of f");
  const std::uint64_t q = g.size();
  const auto qd = static_cast<double>(q);
  PoissonResult out;

  for (auto n = static_cast<std::int64_t>(std::ceil(f.lo()));
       n <= static_cast<std::int64_t>(std::floor(f.hi())); ++n) {
    out.lhs += f.value(static_cast<double>(n)) * g[reduce_mod(n, q)];
  }

  // hat g(m) = q^{-1/2} sum_y g(y) e(m y / q) depends on m mod q only.
  std::vector<cplx> g_hat(q);
  double g_max = 0.0;
  for (std::uint64_t m = 0; m < q; ++m) {
    cplx s = 0.0;
    for (std::uint64_t y = 0; y < q; ++y) s += g[y] * unit_root(m * y % q, q);
    g_hat[m] = s / std::sqrt(qd);
    g_max = std::max(g_max, std::abs(g_hat[m]));
  }
  if (g_max == 0.0) {
    out.tail_ok = true;
    return out;
  }

  // Tail over |m| > M with |hat f(m/q)| <= C (q/|m|)^j:
  //   <= g_max * 2 C q^j M^{1-j} / (j - 1).
  auto tail_at = [&](const SupportedFunction::Decay& d, double M) {
    return g_max * 2.0 * d.constant * std::pow(qd, d.order) * std::pow(M, 1.0 - d.order) /
           (d.order - 1);
  };
  const double target = tol / 2;
  out.m_cut = kMaxPoissonCut;
  out.tail_bound = std::numeric_limits<double>::infinity();
  for (const auto& d : f.decay) {
    if (d.order < 2) continue;
    // Smallest M with tail_at(M) <= target.
    const double needed =
        std::pow(g_max * 2.0 * d.constant * std::pow(qd, d.order) / ((d.order - 1) * target),
                 1.0 / (d.order - 1));
    const std::uint64_t M = needed >= static_cast<double>(kMaxPoissonCut)
                                ? kMaxPoissonCut
                                : std::max<std::uint64_t>(q, static_cast<std::uint64_t>(std::ceil(needed)));
    const double tail = tail_at(d, static_cast<double>(M));
    if (M < out.m_cut || (M == out.m_cut && tail < out.tail_bound)) {
      out.m_cut = M;
      out.tail_bound = tail;
    }
  }
  if (f.decay.empty()) out.m_cut = 64 * q;
  out.tail_ok = out.tail_bound <= target;

  // Residues whose hat g vanishes contribute nothing.
  const double negligible = 1e-14 * g_max;
  std::vector<cplx> terms;
  const auto M = static_cast<std::int64_t>(out.m_cut);
  for (std::int64_t m = -M; m <= M; ++m) {
    const cplx gh = g_hat[reduce_mod(m, q)];
    if (std::abs(gh) <= negligible) continue;
    terms.push_back(fourier_transform(f, static_cast<double>(m) / qd) * gh);
  }
  out.rhs = pairwise_sum(terms) / std::sqrt(qd);
  out.difference = std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace pallab
