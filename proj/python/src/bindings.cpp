#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pallab/census.hpp"
#include "pallab/cli.hpp"
#include "pallab/digits.hpp"
#include "pallab/enumerate.hpp"
#include "pallab/errors.hpp"
#include "pallab/expsum.hpp"
#include "pallab/harness.hpp"
#include "pallab/oscillate.hpp"

namespace py = pybind11;
using pallab::u128;

// Python int <-> unsigned 128-bit, through the decimal text form.
namespace pybind11::detail {
template <>
struct type_caster<u128> {
  PYBIND11_TYPE_CASTER(u128, const_name("int"));

  bool load(handle src, bool) {
    if (!src || !PyLong_Check(src.ptr())) return false;
    const std::string text = py::str(src);
    if (!text.empty() && text.front() == '-') throw py::value_error("expected a non-negative integer");
    value = pallab::parse_u128(text);
    return true;
  }
  static handle cast(u128 v, return_value_policy, handle) {
    return PyLong_FromString(pallab::to_string(v).c_str(), nullptr, 10);
  }
};
}  // namespace pybind11::detail

namespace {

pallab::SbStrategy strategy_from(const std::string& s) {
  if (s == "auto") return pallab::SbStrategy::Auto;
  if (s == "stream") return pallab::SbStrategy::StreamPalindromes;
  if (s == "multiples") return pallab::SbStrategy::EnumerateMultiples;
  throw py::value_error("strategy must be auto, stream or multiples");
}

pallab::BumpKind bump_from(const std::string& s) {
  if (s == "psi") return pallab::BumpKind::Psi;
  if (s == "phi") return pallab::BumpKind::Phi;
  throw py::value_error("bump must be psi or phi");
}

py::dict census_dict(const pallab::CensusRecord& r) {
  py::dict d;
  d["base"] = r.base;
  d["restricted"] = r.restricted;
  d["scope_kind"] = r.scope_kind;
  d["scope"] = py::cast(r.scope);
  d["total"] = py::cast(r.total);
  d["squarefree"] = py::cast(r.squarefree);
  d["ratio"] = r.ratio;
  d["predicted"] = r.predicted;
  d["predicted_count"] = r.predicted_count;
  d["abs_error"] = r.abs_error;
  return d;
}

pallab::ExpSumParams k2_params(std::int64_t a1, std::int64_t a2, std::int64_t a3, std::int64_t q,
                               std::uint64_t c) {
  return pallab::ExpSumParams{a1, a2, a3, q, c};
}

}  // namespace

PYBIND11_MODULE(_pallab, m) {
  m.doc() = "Palindromes, square-free censuses and the exponential sums behind them.";

  py::register_exception<pallab::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<pallab::OverflowError>(m, "OverflowError", PyExc_OverflowError);
  py::register_exception<pallab::UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);
  py::register_exception<pallab::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<pallab::BudgetError>(m, "BudgetError", PyExc_RuntimeError);

  // digits and enumeration
  m.def("to_digits", [](u128 n, std::uint64_t b) {
    const pallab::DigitVec d = pallab::to_digits(n, pallab::Base(b));
    return std::vector<std::uint64_t>(d.digits().begin(), d.digits().end());
  }, py::arg("n"), py::arg("base"), "Little-endian base-b digits of n >= 1.");
  m.def("from_digits", [](const std::vector<std::uint64_t>& digits, std::uint64_t b) {
    return pallab::from_digits(pallab::DigitVec(pallab::Base(b), digits));
  }, py::arg("digits"), py::arg("base"));
  m.def("digital_reverse", [](u128 n, std::uint64_t b) { return pallab::digital_reverse(n, pallab::Base(b)); },
        py::arg("n"), py::arg("base"));
  m.def("is_palindrome", [](u128 n, std::uint64_t b) { return pallab::is_palindrome(n, pallab::Base(b)); },
        py::arg("n"), py::arg("base"));
  m.def("palindromes", [](std::uint64_t b, u128 limit, bool restricted) {
    return pallab::collect(pallab::PalindromeStream::up_to(pallab::Base(b), limit, restricted));
  }, py::arg("base"), py::arg("limit"), py::arg("restricted") = false, "Palindromes <= limit, ascending.");
  m.def("palindromes_of_length", [](std::uint64_t b, unsigned digits, bool restricted) {
    return pallab::collect(pallab::PalindromeStream::fixed_length(pallab::Base(b), digits, restricted));
  }, py::arg("base"), py::arg("digits"), py::arg("restricted") = false);
  m.def("count_up_to", [](std::uint64_t b, u128 limit) { return pallab::count_up_to(pallab::Base(b), limit); },
        py::arg("base"), py::arg("limit"));

  // arithmetic
  m.def("factorize", [](u128 n) {
    std::vector<std::pair<u128, unsigned>> out;
    for (const auto& pp : pallab::factorize(n)) out.emplace_back(pp.prime, pp.exponent);
    return out;
  }, py::arg("n"));
  m.def("is_prime", [](u128 n) { return pallab::is_prime(n); }, py::arg("n"));
  m.def("mobius", [](u128 n) { return pallab::mobius(n); }, py::arg("n"));
  m.def("is_squarefree", [](u128 n) { return pallab::is_squarefree(n); }, py::arg("n"));
  m.def("kth_residue_solutions", [](std::int64_t a, unsigned k, std::uint64_t q) {
    return pallab::kth_residue_solutions(a, k, q);
  }, py::arg("a"), py::arg("k"), py::arg("q"));

  // censuses
  m.def("density_constant", [](std::uint64_t b) {
    const auto d = pallab::density_constant(pallab::Base(b));
    return py::make_tuple(py::cast(d.numerator), py::cast(d.denominator), d.value);
  }, py::arg("base"), "(numerator, denominator, value) of the restricted square-free density.");
  m.def("census", [](std::uint64_t b, u128 x, unsigned threads) {
    return census_dict(pallab::census_up_to(pallab::Base(b), x, threads));
  }, py::arg("base"), py::arg("x"), py::arg("threads") = 1);
  m.def("census_fixed_length", [](std::uint64_t b, unsigned digits, unsigned threads) {
    return census_dict(pallab::q_fixed_length(pallab::Base(b), digits, threads));
  }, py::arg("base"), py::arg("digits"), py::arg("threads") = 1);
  m.def("q_star_direct", [](std::uint64_t b, u128 x, unsigned t) { return pallab::q_star_direct(pallab::Base(b), x, t); },
        py::arg("base"), py::arg("x"), py::arg("threads") = 1);
  m.def("q_star_mobius", [](std::uint64_t b, u128 x, unsigned t) { return pallab::q_star_mobius(pallab::Base(b), x, t); },
        py::arg("base"), py::arg("x"), py::arg("threads") = 1);
  m.def("s_b", [](std::uint64_t b, u128 x, u128 D, const std::string& strategy, unsigned threads) {
    return pallab::s_b(pallab::Base(b), x, D, strategy_from(strategy), threads);
  }, py::arg("base"), py::arg("x"), py::arg("D"), py::arg("strategy") = "auto", py::arg("threads") = 1);

  // exponential sums
  m.def("k2_full", [](std::int64_t a1, std::int64_t a2, std::int64_t a3, std::int64_t q, std::uint64_t c) {
    return pallab::k2_full(k2_params(a1, a2, a3, q, c));
  }, py::arg("a1"), py::arg("a2"), py::arg("a3"), py::arg("q"), py::arg("c"));
  m.def("k2_stationary_phase", [](std::int64_t a1, std::int64_t a2, std::int64_t a3, std::int64_t q, std::uint64_t c) {
    return pallab::k2_stationary_phase(k2_params(a1, a2, a3, q, c));
  }, py::arg("a1"), py::arg("a2"), py::arg("a3"), py::arg("q"), py::arg("c"));
  m.def("count_critical_points", [](std::int64_t a1, std::int64_t a2, std::int64_t a3, std::int64_t q, std::uint64_t c) {
    return pallab::count_critical_points(k2_params(a1, a2, a3, q, c));
  }, py::arg("a1"), py::arg("a2"), py::arg("a3"), py::arg("q"), py::arg("c"));
  m.def("stationary_split", [](std::uint64_t c) {
    const auto s = pallab::stationary_split(c);
    return py::make_tuple(s.c1, s.c2);
  }, py::arg("c"));
  m.def("k2_q_average", [](std::int64_t m_, std::int64_t a, std::uint64_t Q, std::uint64_t c) {
    return pallab::k2_q_average(m_, a, Q, c);
  }, py::arg("m"), py::arg("a"), py::arg("Q"), py::arg("c"));

  // bumps and transforms
  m.def("bump_eval", [](const std::string& kind, double x, int order) {
    return pallab::bump_eval(bump_from(kind), x, order);
  }, py::arg("kind"), py::arg("x"), py::arg("order") = 0);
  m.def("fourier_transform", [](const std::string& kind, double k) {
    return pallab::fourier_transform(bump_from(kind), k);
  }, py::arg("kind"), py::arg("k"));

  // whole-program entry points
  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = 0;
    {
      py::gil_scoped_release release;
      code = pallab::run_cli(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command-line tool in-process; returns (exit_code, stdout, stderr).");
  m.def("run_acceptance", [](bool quick, unsigned threads) {
    pallab::AcceptanceOptions o;
    o.quick = quick;
    o.threads = threads;
    std::vector<pallab::CriterionResult> results;
    {
      py::gil_scoped_release release;
      results = pallab::run_acceptance(o);
    }
    py::list out;
    for (const auto& r : results) {
      py::dict d;
      d["id"] = r.id;
      d["name"] = r.name;
      d["passed"] = r.passed;
      d["details"] = r.details;
      out.append(d);
    }
    return out;
  }, py::arg("quick") = true, py::arg("threads") = 1);
}
