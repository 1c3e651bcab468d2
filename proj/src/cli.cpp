#include "pallab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "pallab/arith.hpp"
#include "pallab/census.hpp"
#include "pallab/enumerate.hpp"
#include "pallab/errors.hpp"
#include "pallab/expsum.hpp"
#include "pallab/harness.hpp"
#include "pallab/parallel.hpp"
#include "pallab/oscillate.hpp"

namespace pallab {
namespace {

using Cell = std::variant<std::string, u128, std::int64_t, double, bool>;

struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string cell_text(const Cell& c) {
  struct {
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(u128 v) const { return to_string(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  } visit;
  return std::visit(visit, c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  struct {
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    nlohmann::ordered_json operator()(u128 v) const {
      if (v <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(v);
      return to_string(v);  // beyond 64 bits: exact decimal string
    }
    nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
    nlohmann::ordered_json operator()(double v) const {
      if (!std::isfinite(v)) return nullptr;
      return nlohmann::ordered_json::parse(format_real(v));
    }
    nlohmann::ordered_json operator()(bool v) const { return v; }
  } visit;
  return std::visit(visit, c);
}

enum class Format { Csv, Json };

void write_table(const Table& t, Format f, std::ostream& out) {
  if (f == Format::Json) {
    nlohmann::ordered_json doc;
    doc["command"] = t.command;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
      doc["rows"].push_back(std::move(obj));
    }
    out << doc.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    out << (i ? "," : "") << csv_field(t.columns[i]);
  }
  out << "\r\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(cell_text(row[i]));
    out << "\r\n";
  }
}

const std::vector<std::string> kCensusColumns = {
    "base", "restricted", "scope_kind", "scope", "total", "squarefree",
    "ratio", "predicted", "predicted_count", "abs_error"};

std::vector<Cell> census_row(const CensusRecord& r) {
  return {u128{r.base}, r.restricted, r.scope_kind, r.scope,           r.total,
          r.squarefree, r.ratio,      r.predicted,  r.predicted_count, r.abs_error};
}

const std::vector<std::string> kFitColumns = {
    "label", "x", "D", "observed", "shape", "ratio", "skipped", "note",
    "fitted_constant", "first_constant", "stable", "aborted", "abort_reason", "strategies_agree"};

void append_fit(Table& t, const BoundFit& f) {
  for (const auto& p : f.points) {
    t.rows.push_back({f.label, p.coords.at(0).second, p.coords.at(1).second, p.observed, p.shape,
                      p.ratio, p.skipped, p.note, f.fitted_constant, f.first_constant, f.stable,
                      f.aborted, f.abort_reason, f.strategies_agree});
  }
}

std::string render_digits(u128 n, Base b) {
  const DigitVec d = to_digits(n, b);
  std::string s;
  const auto digits = d.digits();
  for (std::size_t i = digits.size(); i-- > 0;) {
    const std::uint64_t v = digits[i];
    if (b.value() <= 36) {
      s += static_cast<char>(v < 10 ? '0' + v : 'a' + (v - 10));
    } else {
      if (i + 1 != digits.size()) s += ':';
      s += std::to_string(v);
    }
  }
  return s;
}

u128 parse_number(const std::string& text, const char* flag) {
  try {
    return parse_u128(text);
  } catch (const std::exception& e) {
    throw CLI::ValidationError(flag, e.what());
  }
}

// Failed check: reported as exit code 1 with the check named.
struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  unsigned threads = 1;
  std::string format = "csv";
  std::string output;
  std::uint64_t seed = kDefaultSeed;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Square-free palindromes: enumeration, censuses and exponential-sum checks",
               "palindrome-lab"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--output", common.output, "Write the report to this file instead of stdout");
  app.add_option("--seed", common.seed, "Seed for randomized checks")->capture_default_str();

  // enumerate
  auto* en = app.add_subcommand("enumerate", "List palindromes, one per line");
  std::uint64_t en_base = 0;
  std::string en_max;
  unsigned en_digits = 0;
  bool en_restricted = false, en_show = false;
  en->add_option("--base", en_base, "Base b >= 2")->required();
  auto* en_max_opt = en->add_option("--max", en_max, "Upper limit x");
  auto* en_digits_opt = en->add_option("--digits", en_digits, "Exact digit count N");
  en_max_opt->excludes(en_digits_opt);
  en->add_flag("--restricted", en_restricted, "Only n coprime to b^3 - b");
  en->add_flag("--show-digits", en_show, "Add the base-b digit string");

  // census
  auto* ce = app.add_subcommand("census", "Square-free census with the Moebius cross-check");
  std::uint64_t ce_base = 0;
  std::vector<std::string> ce_max;
  unsigned ce_digits = 0;
  bool ce_lengths = false, ce_fault = false;
  ce->add_option("--base", ce_base, "Base b >= 2")->required();
  auto* ce_max_opt = ce->add_option("--max", ce_max, "Upper limit(s) x for the restricted census")
                         ->delimiter(',');
  auto* ce_digits_opt = ce->add_option("--digits", ce_digits, "Unrestricted census of N-digit palindromes");
  ce_max_opt->excludes(ce_digits_opt);
  ce->add_flag("--with-lengths", ce_lengths, "Also emit unrestricted rows for every N with b^N <= max x");
  ce->add_flag("--inject-fault", ce_fault, "Perturb the Moebius count (testing aid)")->group("");

  // sbd
  auto* sb = app.add_subcommand("sbd", "Count S_b(x, D) or fit its bound shapes");
  std::uint64_t sb_base = 0;
  std::vector<std::string> sb_max;
  std::string sb_D, sb_exponent = "2/5", sb_strategy = "auto", sb_fit;
  sb->add_option("--base", sb_base, "Base b >= 2")->required();
  sb->add_option("--max", sb_max, "Upper limit(s) x")->required()->delimiter(',');
  sb->add_option("--D", sb_D, "Dyadic parameter D (default ceil(x^exponent))");
  sb->add_option("--exponent", sb_exponent, "D = ceil(x^(num/den)) when --D is absent")
      ->capture_default_str();
  sb->add_option("--strategy", sb_strategy, "auto, stream or multiples")
      ->check(CLI::IsMember({"auto", "stream", "multiples", "both"}))
      ->capture_default_str();
  sb->add_option("--fit", sb_fit, "Fit a bound shape: large-d or windowed")
      ->check(CLI::IsMember({"large-d", "windowed"}));

  // k2
  auto* k2 = app.add_subcommand("k2", "Quadratic Kloosterman sums");
  ExpSumParams kp;
  std::int64_t k2_m = 0, k2_a = 1;
  std::uint64_t k2_Q = 0;
  bool k2_identity = false;
  k2->add_option("--a1", kp.a1);
  k2->add_option("--a2", kp.a2);
  k2->add_option("--a3", kp.a3);
  k2->add_option("--q", kp.q);
  k2->add_option("--c", kp.c, "Modulus c >= 1")->required();
  k2->add_flag("--check-identity", k2_identity, "Compare with the stationary-phase evaluation");
  auto* k2_avg = k2->add_option("--average-Q", k2_Q, "Sum |K2(m, a, -a, q; c)| over |q| <= Q");
  k2->add_option("--m", k2_m)->needs(k2_avg);
  k2->add_option("--a", k2_a)->needs(k2_avg);

  // poisson
  auto* po = app.add_subcommand("poisson", "Twisted Poisson summation check");
  std::string po_demo = "triangle", po_twist = "linear";
  std::uint64_t po_q = 1;
  double po_tol = 1e-8;
  po->add_option("--demo", po_demo, "triangle or psi")
      ->check(CLI::IsMember({"triangle", "psi"}))
      ->capture_default_str();
  po->add_option("--q", po_q, "Period of g")->capture_default_str();
  po->add_option("--twist", po_twist, "g(n): one, zero, linear e(n/q) or quadratic e(n^2/q)")
      ->check(CLI::IsMember({"one", "zero", "linear", "quadratic"}))
      ->capture_default_str();
  po->add_option("--tol", po_tol, "Largest accepted |LHS - RHS|")->capture_default_str();

  // oscillate
  auto* os = app.add_subcommand("oscillate", "Explicit oscillatory-integral bounds");
  std::string os_check = "all";
  int os_count = 100;
  os->add_option("--check", os_check, "first, second, decay or all")
      ->check(CLI::IsMember({"first", "second", "decay", "all"}))
      ->capture_default_str();
  os->add_option("--count", os_count, "Random specs per bound")->capture_default_str();

  // vdc
  auto* vd = app.add_subcommand("vdc", "Smoothed Weyl-van der Corput inequality");
  std::uint64_t vd_D = 0, vd_Q = 1;
  std::string vd_seq = "random";
  bool vd_family = false;
  auto* vd_D_opt = vd->add_option("--D", vd_D, "Length parameter D");
  vd->add_option("--Q", vd_Q, "Shift range Q <= sqrt(D)")->capture_default_str();
  vd->add_option("--sequence", vd_seq, "constant, random, linear or quadratic")
      ->check(CLI::IsMember({"constant", "random", "linear", "quadratic"}))
      ->capture_default_str();
  vd->add_flag("--family", vd_family, "Fit the constant over the standard family")->excludes(vd_D_opt);

  // discrepancy
  auto* di = app.add_subcommand("discrepancy", "Equidistribution of P_b*(x) in classes mod d^2");
  std::uint64_t di_base = 0, di_dmax = 0;
  std::string di_max;
  di->add_option("--base", di_base, "Base b >= 2")->required();
  di->add_option("--max", di_max, "Upper limit x")->required();
  di->add_option("--dmax", di_dmax, "Largest d")->required();

  // verify-all
  auto* va = app.add_subcommand("verify-all", "Run the acceptance suite");
  bool va_quick = false;
  va->add_flag("--quick", va_quick, "Reduced grids");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  if (const char* env = std::getenv(kThreadsEnv); env != nullptr && *env != '\0') {
    try {
      common.threads = static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      err << "error: " << kThreadsEnv << " must be a non-negative integer\n";
      return 2;
    }
  }
  const unsigned threads = resolve_threads(common.threads);
  const Format format = common.format == "json" ? Format::Json : Format::Csv;

  std::ostringstream report;
  int status = 0;
  try {
    if (*en) {
      const Base b(en_base);
      if (en_max.empty() && en_digits_opt->count() == 0) {
        throw CLI::ValidationError("enumerate", "one of --max or --digits is required");
      }
      PalindromeStream stream = en_max.empty()
                                    ? PalindromeStream::fixed_length(b, en_digits, en_restricted)
                                    : PalindromeStream::up_to(b, parse_number(en_max, "--max"), en_restricted);
      if (format == Format::Json) {
        Table t{"enumerate", {"n"}, {}};
        if (en_show) t.columns.push_back("digits");
        stream.for_each([&](u128 n) {
          std::vector<Cell> row{n};
          if (en_show) row.emplace_back(render_digits(n, b));
          t.rows.push_back(std::move(row));
        });
        write_table(t, format, report);
      } else {
        stream.for_each([&](u128 n) {
          report << to_string(n);
          if (en_show) report << ',' << render_digits(n, b);
          report << '\n';
        });
      }
    } else if (*ce) {
      const Base b(ce_base);
      Table t{"census", kCensusColumns, {}};
      if (ce_max.empty()) {
        if (ce_digits_opt->count() == 0) throw CLI::ValidationError("census", "one of --max or --digits is required");
        t.rows.push_back(census_row(q_fixed_length(b, ce_digits, threads)));
      } else {
        std::vector<u128> xs;
        for (const auto& m : ce_max) xs.push_back(parse_number(m, "--max"));
        std::string failure;
        for (u128 x : xs) {
          const CensusRecord rec = census_up_to(b, x, threads);
          u128 inverted = q_star_mobius(b, x, threads);
          if (ce_fault) inverted += 1;
          if (inverted != rec.squarefree && failure.empty()) {
            failure = "mobius identity: direct=" + to_string(rec.squarefree) +
                      " mobius=" + to_string(inverted) + " at x=" + to_string(x);
          }
          t.rows.push_back(census_row(rec));
        }
        if (ce_lengths) {
          std::sort(xs.begin(), xs.end());
          const auto all = asymptotic_report(b, xs, threads);
          for (std::size_t i = xs.size(); i < all.size(); ++i) t.rows.push_back(census_row(all[i]));
        }
        write_table(t, format, report);
        if (!failure.empty()) throw CheckFailed(failure);
        t.rows.clear();
      }
      if (!t.rows.empty()) write_table(t, format, report);
    } else if (*sb) {
      const Base b(sb_base);
      std::vector<u128> xs;
      for (const auto& m : sb_max) xs.push_back(parse_number(m, "--max"));
      std::vector<SbProbe> grid;
      if (!sb_D.empty()) {
        for (u128 x : xs) grid.push_back({x, parse_number(sb_D, "--D")});
      } else {
        unsigned num = 0, den = 0;
        char slash = 0;
        std::istringstream ex(sb_exponent);
        if (!(ex >> num >> slash >> den) || slash != '/' || den == 0) {
          throw CLI::ValidationError("--exponent", "expected num/den");
        }
        grid = power_grid(xs, num, den);
      }
      if (!sb_fit.empty()) {
        Table t{"sbd", kFitColumns, {}};
        if (sb_fit == "large-d") {
          append_fit(t, fit_large_divisor_shape(b, grid, threads));
        } else {
          auto [mid, low] = fit_windowed_shapes(b, grid, threads);
          append_fit(t, mid);
          append_fit(t, low);
        }
        write_table(t, format, report);
      } else {
        Table t{"sbd", {"base", "x", "D", "strategy", "S", "stream_cost", "multiples_cost"}, {}};
        std::string disagreement;
        for (const auto& g : grid) {
          const SbCost cost = s_b_cost(b, g.x, g.D);
          auto run = [&](SbStrategy s, const char* name) {
            const u128 v = s_b(b, g.x, g.D, s, threads);
            t.rows.push_back({u128{sb_base}, g.x, g.D, std::string(name), v,
                              cost.stream_palindromes, cost.enumerate_multiples});
            return v;
          };
          if (sb_strategy == "both") {
            const u128 a = run(SbStrategy::StreamPalindromes, "stream");
            const u128 m = run(SbStrategy::EnumerateMultiples, "multiples");
            if (a != m && disagreement.empty()) {
              disagreement = "s_b strategies disagree at x=" + to_string(g.x) + " D=" + to_string(g.D);
            }
          } else if (sb_strategy == "stream") {
            run(SbStrategy::StreamPalindromes, "stream");
          } else if (sb_strategy == "multiples") {
            run(SbStrategy::EnumerateMultiples, "multiples");
          } else {
            run(SbStrategy::Auto, cost.cheaper() == SbStrategy::StreamPalindromes ? "stream" : "multiples");
          }
        }
        write_table(t, format, report);
        if (!disagreement.empty()) throw CheckFailed(disagreement);
      }
    } else if (*k2) {
      if (*k2_avg) {
        Table t{"k2", {"m", "a", "Q", "c", "sum_abs_k2"}, {}};
        t.rows.push_back({k2_m, k2_a, u128{k2_Q}, u128{kp.c}, k2_q_average(k2_m, k2_a, k2_Q, kp.c)});
        write_table(t, format, report);
      } else {
        Table t{"k2", {"a1", "a2", "a3", "q", "c", "full_re", "full_im", "full_abs"}, {}};
        const cplx full = k2_full(kp);
        std::vector<Cell> row{kp.a1, kp.a2, kp.a3, kp.q, u128{kp.c}, full.real(), full.imag(), std::abs(full)};
        std::string failure;
        if (k2_identity) {
          if (kp.c < 2) throw CLI::ValidationError("--check-identity", "needs c >= 2");
          const cplx sp = k2_stationary_phase(kp);
          const double diff = std::abs(full - sp);
          for (const char* col : {"stationary_re", "stationary_im", "difference", "critical_points"}) {
            t.columns.emplace_back(col);
          }
          row.insert(row.end(), {sp.real(), sp.imag(), diff, u128{count_critical_points(kp)}});
          if (!(diff < 1e-9 * std::sqrt(static_cast<double>(kp.c)))) {
            failure = "stationary-phase identity: difference " + format_real(diff);
          }
        }
        t.rows.push_back(std::move(row));
        write_table(t, format, report);
        if (!failure.empty()) throw CheckFailed(failure);
      }
    } else if (*po) {
      if (po_q == 0) throw CLI::ValidationError("--q", "must be >= 1");
      std::vector<cplx> g;
      for (std::uint64_t y = 0; y < po_q; ++y) {
        const double turn = 2.0 * std::numbers::pi / static_cast<double>(po_q);
        if (po_twist == "one") g.emplace_back(1.0);
        else if (po_twist == "zero") g.emplace_back(0.0);
        else if (po_twist == "linear") g.push_back(std::polar(1.0, turn * static_cast<double>(y)));
        else g.push_back(std::polar(1.0, turn * static_cast<double>(y * y % po_q)));
      }
      const SupportedFunction f = po_demo == "triangle" ? triangle_function() : bump_function(BumpKind::Psi);
      const PoissonResult p = poisson_check(f, g);
      Table t{"poisson",
              {"demo", "q", "twist", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "difference", "m_cut",
               "tail_bound", "tail_ok"},
              {}};
      t.rows.push_back({po_demo, u128{po_q}, po_twist, p.lhs.real(), p.lhs.imag(), p.rhs.real(),
                        p.rhs.imag(), p.difference, u128{p.m_cut}, p.tail_bound, p.tail_ok});
      write_table(t, format, report);
      if (!(p.difference < po_tol)) throw CheckFailed("poisson identity: |LHS - RHS| = " + format_real(p.difference));
    } else if (*os) {
      Table t{"oscillate", {"check", "specs", "rejected", "violations", "max_ratio"}, {}};
      std::string failure;
      for (bool second : {false, true}) {
        if (os_check != "all" && os_check != (second ? "second" : "first")) continue;
        const BoundCampaign c = run_bound_campaign(second, os_count, common.seed, threads);
        t.rows.push_back({c.label, u128{c.specs}, std::int64_t{c.rejected}, std::int64_t{c.violations}, c.worst});
        if (c.violations > 0 && failure.empty()) failure = "oscillatory bound " + c.label + " violated";
      }
      if (os_check == "all" || os_check == "decay") {
        std::vector<PhaseSpec> family;
        for (double lambda : {10.0, 30.0, 100.0, 300.0, 1000.0, 3000.0, 10000.0}) {
          family.push_back(linear_phase_window(lambda));
        }
        const DecayFit fit = fit_nonstationary_decay(family, 2);
        int rejected = 0;
        for (const auto& r : fit.reports) rejected += r.accepted ? 0 : 1;
        t.rows.push_back({std::string("decay N=2"), u128{family.size()}, std::int64_t{rejected},
                          std::int64_t{fit.bounded ? 0 : 1}, fit.fitted_constant});
        if (!fit.bounded && failure.empty()) failure = "non-stationary decay ratio not bounded";
      }
      write_table(t, format, report);
      if (!failure.empty()) throw CheckFailed(failure);
    } else if (*vd) {
      Table t{"vdc", {"sequence", "D", "Q", "lhs", "rhs", "ratio"}, {}};
      if (vd_family) {
        const VdcFamilyFit fit = weyl_vdc_family(common.seed);
        for (const auto& [name, r] : fit.reports) {
          t.rows.push_back({name, u128{r.D}, u128{r.Q}, r.lhs, r.rhs, r.ratio});
        }
        write_table(t, format, report);
        if (!(fit.fitted_constant <= 4.0)) {
          throw CheckFailed("Weyl-van der Corput constant " + format_real(fit.fitted_constant) + " exceeds 4");
        }
      } else {
        if (vd_D == 0) throw CLI::ValidationError("--D", "required unless --family");
        const std::uint64_t start = (vd_D + 1) / 2, stop = 5 * vd_D / 2 + vd_Q;
        SplitMix64 rng(common.seed);
        const double theta = rng.unit(), alpha = rng.unit() / static_cast<double>(vd_D);
        std::vector<cplx> z;
        for (std::uint64_t n = start; n <= stop; ++n) {
          const auto x = static_cast<double>(n);
          const double turn = 2.0 * std::numbers::pi;
          if (vd_seq == "constant") z.emplace_back(1.0);
          else if (vd_seq == "random") z.push_back(std::polar(1.0, turn * rng.unit()));
          else if (vd_seq == "linear") z.push_back(std::polar(1.0, turn * theta * x));
          else z.push_back(std::polar(1.0, turn * std::fmod(alpha * x * x, 1.0)));
        }
        const VdcReport r = weyl_vdc_check(z, start, vd_D, vd_Q);
        t.rows.push_back({vd_seq, u128{r.D}, u128{r.Q}, r.lhs, r.rhs, r.ratio});
        write_table(t, format, report);
      }
    } else if (*di) {
      const Base b(di_base);
      const u128 x = parse_number(di_max, "--max");
      Table t{"discrepancy", {"base", "x", "dmax", "discrepancy"}, {}};
      t.rows.push_back({u128{di_base}, x, u128{di_dmax}, equidistribution_discrepancy(b, x, di_dmax, threads)});
      write_table(t, format, report);
    } else if (*va) {
      AcceptanceOptions opts;
      opts.quick = va_quick;
      opts.threads = threads;
      opts.seed = common.seed;
      const auto results = run_acceptance(opts);
      bool all = true;
      for (const auto& r : results) all &= r.passed;
      if (format == Format::Json) {
        nlohmann::ordered_json doc;
        doc["command"] = "verify-all";
        doc["quick"] = va_quick;
        doc["passed"] = all;
        doc["criteria"] = nlohmann::ordered_json::array();
        for (const auto& r : results) {
          doc["criteria"].push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"details", r.details}});
        }
        report << doc.dump(2) << '\n';
      } else {
        report << render_acceptance(results);
      }
      if (!all) {
        std::string names;
        for (const auto& r : results) {
          if (!r.passed) names += (names.empty() ? "" : ", ") + r.name;
        }
        throw CheckFailed("acceptance criteria failed: " + names);
      }
    }
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const CheckFailed& e) {
    err << "check failed: " << e.what() << '\n';
    status = 1;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  if (common.output.empty()) {
    out << report.str();
  } else {
    std::ofstream file(common.output, std::ios::binary);
    file << report.str();
    if (!file) {
      err << "error: cannot write " << common.output << '\n';
      return 1;
    }
  }
  return status;
}

}  // namespace pallab
