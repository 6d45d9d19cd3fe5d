#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <chrono>
#include <set>
#include <sstream>

#include "acsv/acsv.hpp"
#include "acsv/asymptotics.hpp"
#include "acsv/oracle.hpp"

namespace acsv::cli {

using nlohmann::ordered_json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Input {
  VarRoster roster;
  SparsePoly G;
  SparsePoly H;
  Direction r;
};

Input read_input(const RunConfig& cfg) {
  if (cfg.denom.empty()) throw ConfigError("a denominator is required (--den)");
  const auto names = scan_identifiers(cfg.denom);
  if (names.empty()) throw ConfigError("the denominator has no variables");
  const VarRoster roster(names);
  const std::set<std::string> known(names.begin(), names.end());
  for (const auto& n : scan_identifiers(cfg.numer))
    if (!known.count(n)) throw ConfigError("numerator variable '" + n + "' does not occur in the denominator");
  SparsePoly H, G;
  try {
    H = parse_poly(cfg.denom, roster);
    G = parse_poly(cfg.numer, roster);
  } catch (const ParseError& e) {
    throw ConfigError(std::string("parse error: ") + e.what());
  }
  if (H.constant_term() == 0) throw ConfigError("the denominator vanishes at the origin");
  Direction r = Direction::ones(roster.size());
  if (cfg.direction) {
    try {
      r = Direction::parse(*cfg.direction);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("bad direction: ") + e.what());
    }
    if (r.size() != roster.size())
      throw ConfigError("direction has " + std::to_string(r.size()) + " entries but the denominator has " +
                        std::to_string(roster.size()) + " variables");
  }
  return {roster, std::move(G), std::move(H), std::move(r)};
}

AcsvOptions acsv_options(const RunConfig& cfg) {
  if (cfg.start_system == "polyhedral")
    throw ConfigError("the polyhedral start system is not available in this build; use --start-system total-degree");
  if (cfg.start_system != "total-degree") throw ConfigError("unknown start system '" + cfg.start_system + "'");
  if (!(cfg.tol > 0.0)) throw ConfigError("--tol must be positive");
  if (cfg.max_refine_bits < 53) throw ConfigError("--max-refine-bits must be at least 53");
  AcsvOptions o;
  o.solve.seed = cfg.seed;
  o.solve.track.tol = cfg.tol;
  o.solve.cert.max_bits = cfg.max_refine_bits;
  return o;
}

ordered_json complex_json(std::complex<double> z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json point_json(const CertifiedSolution& s, const VarRoster& roster) {
  ordered_json coords = ordered_json::array();
  for (std::size_t k = 0; k < s.box.size(); ++k) {
    const auto& b = s.box[k];
    coords.push_back({{"variable", roster.name(k)},
                      {"value", complex_json(b.mid_d())},
                      {"re", b.re.to_string(20)},
                      {"im", b.im.to_string(20)}});
  }
  return coords;
}

std::string point_text(const CertifiedSolution& s, int digits) {
  std::string out = "(";
  for (std::size_t k = 0; k < s.box.size(); ++k) {
    if (k) out += ", ";
    out += format_complex(s.box[k].mid_d(), digits);
  }
  return out + ")";
}

ordered_json report_json(const SolveReport& rep) {
  ordered_json j;
  j["paths"] = rep.paths_tracked;
  j["solutions"] = rep.solutions.size();
  j["torus_solutions"] = rep.torus_count();
  j["bezout"] = rep.bezout;
  j["mixed_volume"] = rep.mixed_volume ? ordered_json(*rep.mixed_volume) : ordered_json(nullptr);
  j["bound"] = rep.bound_kind == "mixed_volume" && rep.mixed_volume ? *rep.mixed_volume : rep.bezout;
  j["bound_kind"] = rep.bound_kind;
  j["complete"] = rep.complete;
  return j;
}

std::string complex_text(std::complex<double> z) {
  std::string out = shortest_double(z.real());
  if (z.imag() != 0.0) out += (z.imag() < 0 ? " - " : " + ") + shortest_double(std::abs(z.imag())) + "i";
  return out;
}

}  // namespace

std::string shortest_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Mode parse_mode(const std::string& s) {
  if (s == "comb") return Mode::comb;
  if (s == "general") return Mode::general;
  if (s == "approx-crit") return Mode::approx_crit;
  throw ConfigError("unknown mode '" + s + "' (expected comb, general or approx-crit)");
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::comb: return "comb";
    case Mode::general: return "general";
    case Mode::approx_crit: return "approx-crit";
  }
  return "general";
}

CommandResult cmd_solve(const RunConfig& cfg) {
  const auto t0 = Clock::now();
  const Input in = read_input(cfg);
  const AcsvOptions opts = acsv_options(cfg);

  ordered_json doc;
  doc["input"] = {{"numerator", cfg.numer},
                  {"denominator", cfg.denom},
                  {"variables", in.roster.names()},
                  {"direction", in.r.values()},
                  {"mode", to_string(cfg.mode)},
                  {"seed", cfg.seed},
                  {"tol", cfg.tol},
                  {"max_refine_bits", cfg.max_refine_bits},
                  {"start_system", cfg.start_system}};
  ordered_json warnings = ordered_json::array();

  const SparsePoly Hsf = square_free_part(in.H);
  if (Hsf.total_degree() != in.H.total_degree())
    warnings.push_back("the denominator has repeated factors; critical points are computed for its square-free part");

  MinimalityResult res;
  switch (cfg.mode) {
    case Mode::comb: res = min_crits_comb(Hsf, in.r, opts); break;
    case Mode::general: res = min_crits_general(Hsf, in.r, opts); break;
    case Mode::approx_crit: res = approx_crit_heuristic(Hsf, in.r, opts); break;
  }
  const double t_min = seconds_since(t0);

  doc["status"] = to_string(res.status);
  doc["heuristic"] = res.heuristic;

  ordered_json crit = ordered_json::array();
  for (const auto& info : res.diagnostics) {
    ordered_json c;
    c["point"] = point_json(info.point, in.roster);
    c["certified"] = info.point.certified;
    c["real"] = to_string(info.real);
    c["positive"] = to_string(info.positive);
    c["minimal"] = info.minimal;
    if (info.witness)
      c["witness"] = {{"t", info.witness_t}, {"system", info.witness_system}};
    else
      c["witness"] = nullptr;
    crit.push_back(std::move(c));
  }
  doc["critical_points"] = std::move(crit);

  ordered_json minimal = ordered_json::array();
  for (const auto& p : res.minimal_points) minimal.push_back(point_json(p, in.roster));
  doc["minimal_points"] = std::move(minimal);

  int exit_code = is_failure(res.status) ? 2 : 0;
  std::optional<AsymptoticExpansion> exp;
  const auto t1 = Clock::now();
  if (!is_failure(res.status)) {
    ExpansionOptions eo;
    eo.digits = cfg.digits;
    eo.cert = opts.solve.cert;
    try {
      exp = expansion(in.G, in.H, in.r, res, eo);
    } catch (const AsymptoticFailure& e) {
      warnings.push_back(std::string("asymptotics unavailable: ") + e.what());
      exit_code = 2;
    }
  }
  const double t_asym = seconds_since(t1);
  if (exp) {
    ordered_json terms = ordered_json::array();
    for (const auto& t : exp->terms)
      terms.push_back({{"growth_base", complex_json(t.growth_base_d())},
                       {"power", format_rational(t.power)},
                       {"constant", complex_json(t.constant_d())},
                       {"distinguished_variable", in.roster.name(t.distinguished)},
                       {"branch_flipped", t.branch_flipped}});
    doc["asymptotics"] = {{"terms", std::move(terms)}, {"formatted", exp->formatted}};
    for (const auto& w : exp->warnings) warnings.push_back(w);
  } else {
    doc["asymptotics"] = nullptr;
  }

  ordered_json completeness;
  if (res.critical) completeness["critical_system"] = report_json(res.critical->report);
  ordered_json ext = ordered_json::array();
  for (const auto& e : res.extended)
    ext.push_back({{"system", e.name},
                   {"paths", e.paths},
                   {"solutions", e.solutions},
                   {"real_solutions", e.real_solutions},
                   {"bezout", e.bezout},
                   {"mixed_volume", e.mixed_volume ? ordered_json(*e.mixed_volume) : ordered_json(nullptr)},
                   {"complete", e.complete}});
  completeness["extended_systems"] = std::move(ext);
  doc["completeness"] = std::move(completeness);

  if (res.status == MinStatus::warn_precision_cap)
    warnings.push_back("precision cap of " + std::to_string(cfg.max_refine_bits) +
                       " bits reached before coordinate moduli could be separated");
  if (res.heuristic) warnings.push_back("approx-crit result is heuristic: the full-rank condition is not checked");
  for (const auto& n : res.notes) warnings.push_back(n);
  if (res.critical)
    for (const auto& n : res.critical->notes) warnings.push_back(n);
  doc["warnings"] = warnings;
  doc["timings"] = {{"minimality_s", t_min}, {"asymptotics_s", t_asym}, {"total_s", seconds_since(t0)}};

  std::ostringstream os;
  os << "variables: ";
  for (std::size_t k = 0; k < in.roster.size(); ++k) os << (k ? ", " : "") << in.roster.name(k);
  os << "\nstatus: " << to_string(res.status) << "\n";
  os << "critical points: " << res.diagnostics.size() << "\n";
  for (const auto& info : res.diagnostics) {
    os << "  " << point_text(info.point, cfg.digits) << (info.minimal ? "  minimal" : "");
    if (info.witness) os << "  rejected, t in " << info.witness_t;
    os << "\n";
  }
  os << "minimal points: " << res.minimal_points.size() << "\n";
  for (const auto& p : res.minimal_points) {
    os << "  ";
    for (std::size_t k = 0; k < p.box.size(); ++k) {
      os << (k ? ", " : "") << in.roster.name(k) << " = " << complex_text(p.box[k].mid_d());
    }
    os << "\n";
  }
  if (exp) {
    os << "asymptotics: " << exp->formatted << "\n";
    for (const auto& t : exp->terms)
      os << "  growth_base " << complex_text(t.growth_base_d()) << ", power " << format_rational(t.power)
         << ", constant " << complex_text(t.constant_d()) << "\n";
  }
  if (res.critical) {
    const auto& rep = res.critical->report;
    os << "completeness: " << rep.solutions.size() << " critical solutions, bound "
       << doc["completeness"]["critical_system"]["bound"].get<std::uint64_t>() << " (" << rep.bound_kind << "), "
       << (rep.complete ? "complete" : "incomplete") << "\n";
  }
  for (const auto& w : warnings) os << "warning: " << w.get<std::string>() << "\n";
  os << "time: " << shortest_double(seconds_since(t0)) << " s\n";

  return {std::move(doc), os.str(), exit_code};
}

CommandResult cmd_oracle(const RunConfig& cfg) {
  const Input in = read_input(cfg);
  if (cfg.terms <= 0) throw ConfigError("--terms must be positive");
  std::vector<mpq_class> seq;
  try {
    seq = diagonal_terms(in.G, in.H, in.r, static_cast<std::size_t>(cfg.terms));
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
  ordered_json doc;
  doc["input"] = {{"numerator", cfg.numer},
                  {"denominator", cfg.denom},
                  {"variables", in.roster.names()},
                  {"direction", in.r.values()},
                  {"terms", cfg.terms}};
  ordered_json values = ordered_json::array();
  ordered_json table = ordered_json::array();
  std::ostringstream os;
  for (std::size_t n = 0; n < seq.size(); ++n) {
    values.push_back(seq[n].get_str());
    os << (n ? " " : "") << seq[n].get_str();
  }
  os << "\n\n" << "n\tf_n^(1/n)\tf_n/f_(n-1)\n";
  for (std::size_t n = 1; n < seq.size(); ++n) {
    const double f = to_double(seq[n]);
    const double root = f > 0 ? std::pow(f, 1.0 / static_cast<double>(n)) : std::nan("");
    const double ratio = seq[n - 1] != 0 ? to_double(seq[n] / seq[n - 1]) : std::nan("");
    table.push_back({{"n", n},
                     {"root", std::isfinite(root) ? ordered_json(root) : ordered_json(nullptr)},
                     {"ratio", std::isfinite(ratio) ? ordered_json(ratio) : ordered_json(nullptr)}});
    os << n << "\t" << (std::isfinite(root) ? shortest_double(root) : "-") << "\t"
       << (std::isfinite(ratio) ? shortest_double(ratio) : "-") << "\n";
  }
  doc["diagonal"] = std::move(values);
  doc["growth"] = std::move(table);
  return {std::move(doc), os.str(), 0};
}

CommandResult cmd_critical(const RunConfig& cfg) {
  const auto t0 = Clock::now();
  const Input in = read_input(cfg);
  AcsvOptions opts = acsv_options(cfg);
  opts.solve.compute_mixed_volume = true;
  const SparsePoly Hsf = square_free_part(in.H);
  const CriticalPoints cp = critical_points(Hsf, in.r, opts);

  // Torus solutions of the extended positivity system without the t = 1
  // filter, compared against its mixed volume.
  const PolySystem ext = build_comb_system(Hsf, in.r, false);
  const SolveReport ext_rep = solve_system(ext, opts.solve);

  ordered_json doc;
  doc["input"] = {{"denominator", cfg.denom},
                  {"variables", in.roster.names()},
                  {"direction", in.r.values()},
                  {"seed", cfg.seed}};
  ordered_json pts = ordered_json::array();
  for (const auto& p : cp.points) pts.push_back(point_json(p, in.roster));
  doc["critical_points"] = std::move(pts);
  doc["infinite"] = cp.infinite;
  doc["critical_system"] = report_json(cp.report);
  doc["extended_system"] = report_json(ext_rep);
  doc["warnings"] = cp.notes;
  doc["timings"] = {{"total_s", seconds_since(t0)}};

  std::ostringstream os;
  os << "critical points: " << cp.points.size() << "\n";
  for (const auto& p : cp.points) os << "  " << point_text(p, cfg.digits) << "\n";
  os << "\nsystem\tsolutions\tbound\tkind\tcomplete\n";
  auto row = [&](const char* name, const ordered_json& j, std::size_t found) {
    os << name << "\t" << found << "\t" << j["bound"].get<std::uint64_t>() << "\t" << j["bound_kind"].get<std::string>()
       << "\t" << (j["complete"].get<bool>() ? "yes" : "no") << "\n";
  };
  row("critical", doc["critical_system"], cp.report.torus_count());
  row("extended", doc["extended_system"], ext_rep.torus_count());
  for (const auto& n : cp.notes) os << "warning: " << n << "\n";
  return {std::move(doc), os.str(), cp.infinite ? 2 : 0};
}

}  // namespace acsv::cli
