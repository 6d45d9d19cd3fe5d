// Acceptance run: one PASS/FAIL line per criterion. Usage:
//   acsv_acceptance [path to acsv_unit_tests]
// The unit test binary is needed for the invariant suites (criterion 8).

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "acsv/acsv.hpp"
#include "acsv/asymptotics.hpp"
#include "acsv/oracle.hpp"

using namespace acsv;
using cplx = std::complex<double>;

namespace {

// Tolerances and budgets.
constexpr double kBinomialWidth = 1e-8;
constexpr double kBinomialGrowthTol = 1e-10;
constexpr double kBinomialConstantTol = 1e-9;
constexpr double kDisplayTol = 5e-3;
constexpr double kWalkTol = 1e-6;
constexpr double kOracleLastError = 0.15;
constexpr double kBinomialSeconds = 10;
constexpr double kCombSeconds = 60;
constexpr double kGeneralSeconds = 30 * 60;
constexpr double kHeuristicSeconds = 10 * 60;
const std::vector<long> kOracleN{10, 20, 40};

struct Problem {
  std::string name;
  VarRoster roster;
  SparsePoly G, H, Hsf;
  Direction r;
};

Problem problem(const std::string& name, const std::string& den, const std::string& num = "1") {
  VarRoster R(scan_identifiers(den));
  SparsePoly H = parse_poly(den, R);
  SparsePoly Hsf = square_free_part(H);
  return {name, R, parse_poly(num, R), std::move(H), std::move(Hsf), Direction::ones(R.size())};
}

struct Run {
  MinimalityResult result;
  std::optional<AsymptoticExpansion> exp;
  double seconds = 0;
  std::string error;
};

enum class Which { comb, general, approx };

Run run(const Problem& p, Which which, const AcsvOptions& opts = {}) {
  Run out;
  const auto t0 = std::chrono::steady_clock::now();
  switch (which) {
    case Which::comb: out.result = min_crits_comb(p.Hsf, p.r, opts); break;
    case Which::general: out.result = min_crits_general(p.Hsf, p.r, opts); break;
    case Which::approx: out.result = approx_crit_heuristic(p.Hsf, p.r, opts); break;
  }
  if (!is_failure(out.result.status)) {
    ExpansionOptions eo;
    eo.cert = opts.solve.cert;
    try {
      out.exp = expansion(p.G, p.H, p.r, out.result, eo);
    } catch (const std::exception& e) {
      out.error = e.what();
    }
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

cplx coord(const Problem& p, const CertifiedSolution& s, const std::string& name) {
  for (std::size_t k = 0; k < p.roster.size(); ++k)
    if (p.roster.name(k) == name) return s.box[k].mid_d();
  throw std::logic_error("no variable " + name);
}

// Largest distance of the point from `target`, coordinates given by name.
double distance(const Problem& p, const CertifiedSolution& s, const std::vector<std::pair<std::string, cplx>>& target) {
  double d = 0;
  for (const auto& [name, v] : target) d = std::max(d, std::abs(coord(p, s, name) - v));
  return d;
}

// Reference points are shown to two decimals, each real and imaginary part
// separately, so the tolerance applies per part.
double display_distance(const Problem& p, const CertifiedSolution& s,
                        const std::vector<std::pair<std::string, cplx>>& target) {
  double d = 0;
  for (const auto& [name, v] : target) {
    const cplx z = coord(p, s, name);
    d = std::max({d, std::abs(z.real() - v.real()), std::abs(z.imag() - v.imag())});
  }
  return d;
}

std::string show(const Problem& p, const CertifiedSolution& s) {
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < p.roster.size(); ++k) {
    const cplx z = s.box[k].mid_d();
    os << (k ? ", " : "") << p.roster.name(k) << "=" << z.real();
    if (z.imag() != 0) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  }
  return os.str() + ")";
}

std::string show_points(const Problem& p, const Run& r) {
  std::string s;
  for (const auto& m : r.result.minimal_points) s += (s.empty() ? "" : " ") + show(p, m);
  return s.empty() ? "none" : s;
}

// Value of a 2-significant-digit display, read back as a number.
double displayed(cplx z) { return std::stod(format_complex(z, 2)); }

// Reference values are truncated digits: v matches "0.001" when its first three
// decimals are 0.001.
bool truncated_match(double v, double shown, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::abs(std::trunc(v * scale) - std::round(shown * scale)) < 0.5;
}

// Diagnostic only: whether every real coordinate truncates to the shown value.
bool truncates_to(const Problem& p, const CertifiedSolution& s,
                  const std::vector<std::pair<std::string, cplx>>& target) {
  for (const auto& [name, v] : target)
    if (!truncated_match(coord(p, s, name).real(), v.real(), 2)) return false;
  return true;
}

struct Corpus {
  const Problem* problem;
  const Run* run;
};

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << "criterion " << id << " [" << (pass ? "PASS" : "FAIL") << "] " << title << ": " << detail << std::endl;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string unit_binary = argc > 1 ? argv[1] : "";
  std::vector<Corpus> corpus;

  // 1. Binomial pipeline.
  const Problem binom = problem("1-x-y", "1-x-y");
  const Run r1 = run(binom, Which::comb);
  {
    bool ok = r1.result.status == MinStatus::ok && r1.result.minimal_points.size() == 1 && r1.exp;
    std::string detail = "status " + to_string(r1.result.status);
    if (ok) {
      const auto& pt = r1.result.minimal_points[0];
      for (const auto& b : pt.box)
        ok = ok && b.re.contains(mpq_class(1, 2)) && b.im.contains(mpq_class(0)) &&
             b.width().to_double() <= kBinomialWidth;
      const cplx g = r1.exp->terms[0].growth_base_d(), c = r1.exp->terms[0].constant_d();
      ok = ok && std::abs(g - 0.25) <= kBinomialGrowthTol;
      ok = ok && std::abs(c - 1 / std::sqrt(std::numbers::pi)) <= kBinomialConstantTol;
      detail += ", point " + show(binom, pt) + ", width " + fmt(max_width(pt.box).to_double()) + ", growth " +
                fmt(g.real()) + ", constant " + fmt(c.real());
    }
    ok = ok && r1.seconds <= kBinomialSeconds;
    report(1, "binomial pipeline", ok, detail + ", " + fmt(r1.seconds) + " s");
  }
  corpus.push_back({&binom, &r1});

  // 2. Apery zeta(2), combinatorial.
  const Problem apery = problem("Apery zeta(2)", "1-(1+z)*(x+y-x*y)");
  const Run r2 = run(apery, Which::comb);
  {
    bool ok = r2.result.status == MinStatus::ok && r2.result.minimal_points.size() == 1 && r2.exp;
    std::string detail = "status " + to_string(r2.result.status) + (r2.error.empty() ? "" : ", " + r2.error);
    if (ok) {
      const auto& pt = r2.result.minimal_points[0];
      const std::vector<std::pair<std::string, cplx>> shown{{"x", 0.38}, {"y", 0.38}, {"z", 0.61}};
      const double dist = display_distance(apery, pt, shown);
      const double g = displayed(r2.exp->terms[0].growth_base_d());
      const double c = displayed(r2.exp->terms[0].constant_d());
      const bool point_ok = dist <= kDisplayTol, growth_ok = std::abs(g - 0.09) <= kDisplayTol,
                 constant_ok = std::abs(c - 0.47) <= kDisplayTol;
      ok = point_ok && growth_ok && constant_ok;
      detail += ", point " + show(apery, pt) + (point_ok ? " ok" : " off (max deviation " + fmt(dist) + ")") +
                (truncates_to(apery, pt, shown) ? ", two-decimal truncation matches" : "") + ", formatted " + r2.exp->formatted +
                ", growth " + (growth_ok ? "ok" : "off") + ", constant " + fmt(c) + " vs 0.47 " +
                (constant_ok ? "ok" : "off") + " (series oracle: " +
                fmt(r2.exp->terms[0].constant_d().real()) + ")";
    }
    ok = ok && r2.seconds <= kCombSeconds;
    report(2, "Apery zeta(2) combinatorial", ok, detail + ", " + fmt(r2.seconds) + " s");
  }
  corpus.push_back({&apery, &r2});

  // 3. 3D walk, combinatorial.
  const Problem walk = problem("3D walk", "1-z*(x^2*y+y+x*y^2+x)");
  const Run r3 = run(walk, Which::comb);
  const std::vector<std::pair<std::string, cplx>> walk_plus{{"x", 1.0}, {"y", 1.0}, {"z", 0.25}};
  const std::vector<std::pair<std::string, cplx>> walk_minus{{"x", -1.0}, {"y", -1.0}, {"z", -0.25}};
  auto walk_points_ok = [&](const Run& r) {
    if (r.result.minimal_points.size() != 2) return false;
    bool plus = false, minus = false;
    for (const auto& m : r.result.minimal_points) {
      plus = plus || distance(walk, m, walk_plus) <= kWalkTol;
      minus = minus || distance(walk, m, walk_minus) <= kWalkTol;
    }
    return plus && minus;
  };
  {
    const bool ok = r3.result.status == MinStatus::ok && walk_points_ok(r3) && r3.seconds <= kCombSeconds;
    report(3, "3D walk combinatorial", ok,
           "status " + to_string(r3.result.status) + ", points " + show_points(walk, r3) + ", " + fmt(r3.seconds) + " s");
  }
  corpus.push_back({&walk, &r3});

  // 4. General case in two variables.
  const Run r4a = run(binom, Which::general);
  const Problem ms = problem("(1-x-y)*(20-x-40*y)-1", "(1-x-y)*(20-x-40*y)-1");
  const Run r4b = run(ms, Which::general);
  const std::vector<std::pair<std::string, cplx>> ms_shown{{"x", 0.54}, {"y", 0.31}};
  {
    bool a_ok = r4a.result.status == MinStatus::ok && r4a.result.minimal_points.size() == 1 &&
                distance(binom, r4a.result.minimal_points[0], {{"x", 0.5}, {"y", 0.5}}) <= 1e-12 &&
                r4a.seconds <= kGeneralSeconds;
    bool b_ok = r4b.result.status == MinStatus::ok && r4b.result.minimal_points.size() == 1 &&
                display_distance(ms, r4b.result.minimal_points[0], ms_shown) <= kDisplayTol &&
                r4b.seconds <= kGeneralSeconds;
    int positive = 0, rejected = 0;
    std::string witness;
    for (const auto& info : r4b.result.diagnostics) {
      if (info.positive != Verdict::yes) continue;
      ++positive;
      if (!info.minimal && info.witness) {
        ++rejected;
        witness = show(ms, info.point) + " by t in " + info.witness_t + " (" + info.witness_system + ")";
      }
    }
    b_ok = b_ok && positive == 2 && rejected == 1;
    report(4, "general case, two variables", a_ok && b_ok,
           "(a) status " + to_string(r4a.result.status) + ", points " + show_points(binom, r4a) + ", " +
               fmt(r4a.seconds) + " s; (b) status " + to_string(r4b.result.status) + ", points " +
               show_points(ms, r4b) +
               (r4b.result.minimal_points.size() == 1
                    ? " (max deviation " + fmt(display_distance(ms, r4b.result.minimal_points[0], ms_shown)) +
                          (truncates_to(ms, r4b.result.minimal_points[0], ms_shown) ? ", two-decimal truncation matches"
                                                                                    : "") +
                          ")"
                    : "") +
               ", rejected " + (witness.empty() ? "none" : witness) + ", " +
               fmt(r4b.seconds) + " s");
  }
  corpus.push_back({&binom, &r4a});
  corpus.push_back({&ms, &r4b});

  // 5. approx-crit heuristic.
  const Problem grz = problem("1-(x+y+z)+5*x*y*z", "1-(x+y+z)+5*x*y*z");
  const Run r5a = run(grz, Which::approx);
  const Problem rnd = problem("random", "1-(72*x^3*z+97*y*z^3+53*x*z^2+47*x*y+39*z^2+71*x)");
  const Run r5b = run(rnd, Which::approx);
  {
    bool a_ok = !is_failure(r5a.result.status) && r5a.result.minimal_points.size() == 2 && r5a.seconds <= kHeuristicSeconds;
    if (a_ok) {
      bool plus = false, minus = false;
      const cplx p{0.45, 0.12}, m{0.45, -0.12};
      for (const auto& pt : r5a.result.minimal_points) {
        plus = plus || display_distance(grz, pt, {{"x", p}, {"y", p}, {"z", p}}) <= kDisplayTol;
        minus = minus || display_distance(grz, pt, {{"x", m}, {"y", m}, {"z", m}}) <= kDisplayTol;
      }
      a_ok = plus && minus;
    }
    bool b_ok = !is_failure(r5b.result.status) && r5b.result.minimal_points.size() == 1 && r5b.seconds <= kHeuristicSeconds;
    if (b_ok) {
      const auto& pt = r5b.result.minimal_points[0];
      const cplx x = coord(rnd, pt, "x"), y = coord(rnd, pt, "y"), z = coord(rnd, pt, "z");
      b_ok = truncated_match(x.real(), 0.001, 3) && truncated_match(y.real(), 6.2, 1) &&
             truncated_match(z.real(), 0.06, 2) && std::abs(x.imag()) + std::abs(y.imag()) + std::abs(z.imag()) < 1e-9;
    }
    report(5, "approx-crit heuristic", a_ok && b_ok,
           "GRZ status " + to_string(r5a.result.status) + ", points " + show_points(grz, r5a) + ", " +
               fmt(r5a.seconds) + " s; random status " + to_string(r5b.result.status) + ", points " +
               show_points(rnd, r5b) + ", " + fmt(r5b.seconds) + " s");
  }
  corpus.push_back({&grz, &r5a});
  corpus.push_back({&rnd, &r5b});

  // 6. Completeness accounting on the combinatorial extended system.
  {
    struct Row {
      std::string den;
      std::uint64_t expected;
      bool stretch;
    };
    const std::vector<Row> rows{{"1-x-y", 1, false}, {"1-x*y-x*y^2-2*x^2*y", 9, false}, {"1-x-y^2-w^3-z^4", 96, true}};
    bool ok = true;
    std::string detail;
    for (const auto& row : rows) {
      const Problem p = problem(row.den, row.den);
      SolveOptions so;
      so.compute_mixed_volume = true;
      const auto t0 = std::chrono::steady_clock::now();
      const SolveReport rep = solve_system(build_comb_system(p.Hsf, p.r, false), so);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const bool exact = rep.mixed_volume == row.expected && rep.torus_count() == row.expected && rep.complete;
      detail += (detail.empty() ? "" : "; ") + row.den + ": mixed volume " +
                (rep.mixed_volume ? std::to_string(*rep.mixed_volume) : "n/a (" + rep.mixed_volume_failure + ")") +
                ", solutions " + std::to_string(rep.torus_count()) + (rep.complete ? ", complete" : ", incomplete") +
                ", " + fmt(secs) + " s";
      if (row.stretch) {
        // Allowed to run out of resources, never to report a wrong bound.
        ok = ok && (!rep.mixed_volume || *rep.mixed_volume == row.expected);
        detail += exact ? " (stretch reached)" : " (stretch not reached)";
      } else {
        ok = ok && exact;
      }
    }
    report(6, "completeness accounting", ok, detail);
  }

  // 7. Oracle concordance over the corpus.
  {
    bool ok = true;
    std::string detail;
    for (const auto& item : corpus) {
      const Problem& p = *item.problem;
      detail += (detail.empty() ? "" : "; ") + p.name + (item.run == &r4a ? " (general)" : "") + ":";
      if (!item.run->exp) {
        ok = false;
        detail += " no expansion";
        continue;
      }
      const auto seq = diagonal_terms(p.G, p.H, p.r, static_cast<std::size_t>(kOracleN.back() + 1));
      const OracleReport rep = check_asymptotics(seq, *item.run->exp, kOracleN);
      for (const auto& row : rep.rows)
        detail += " " + (row.relative_error ? fmt(*row.relative_error) : std::string("zero"));
      const auto last = rep.last_error();
      ok = ok && rep.strictly_decreasing() && last && *last <= kOracleLastError;
    }
    report(7, "oracle concordance", ok, detail);
  }

  // 8. Invariant suites.
  {
    if (unit_binary.empty()) {
      report(8, "invariant suites", false, "unit test binary not given");
    } else {
      const std::string cmd = "\"" + unit_binary + "\" --test-suite=interval,solver,asymptotics,oracle,poly --minimal";
      const int rc = std::system(cmd.c_str());
      report(8, "invariant suites", rc == 0, "unit suites exit status " + std::to_string(rc));
    }
  }

  // 9. Failure modes.
  {
    const Problem none = problem("1+x+y", "1+x+y");
    const Run r9a = run(none, Which::comb);
    const bool a_ok = r9a.result.status == MinStatus::fail_no_candidate && r9a.result.minimal_points.empty();
    AcsvOptions capped;
    capped.solve.cert.max_bits = 64;
    const Run r9b = run(walk, Which::comb, capped);
    const bool b_ok = r9b.result.status == MinStatus::warn_precision_cap && walk_points_ok(r9b);
    report(9, "failure modes", a_ok && b_ok,
           "no positive point: status " + to_string(r9a.result.status) + "; 64-bit cap: status " +
               to_string(r9b.result.status) + ", points " + show_points(walk, r9b));
  }

  std::cout << (9 - failures) << "/9 criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
