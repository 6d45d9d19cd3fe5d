#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acsv/certify.hpp"
#include "acsv/poly.hpp"
#include "acsv/solver.hpp"
#include "acsv/system.hpp"

namespace acsv {

/// H = 0 together with r_k z_1 H_{z_1} - r_1 z_k H_{z_k} = 0 for k = 2..d.
PolySystem build_critical_system(const SparsePoly& H, const Direction& r);

/// Unknowns (z_1..z_d, lambda, t[, mu]): H(z), H(t z), z_j H_{z_j} - r_j lambda
/// and, when `with_mu`, (1 - t) mu - 1 which removes the t = 1 solutions.
PolySystem build_comb_system(const SparsePoly& H, const Direction& r, bool with_mu = true);

/// Real formulation of the minimality test for arbitrary H. Unknowns are
/// ordered a_1..a_d, b_1..b_d, x_1..x_d, y_1..y_d, lambda_R, lambda_I, then
/// nu (nu system only) and t.
struct GeneralSystems {
  PolySystem nu_system;
  PolySystem nu0_system;
};
GeneralSystems build_general_systems(const SparsePoly& H, const Direction& r);

/// The (x, y, nu, t) and (x, y, t) parts of the general systems with
/// m_j = a_j^2 + b_j^2 as trailing parameters.
struct GeneralSubsystems {
  std::vector<SparsePoly> nu_family;
  VarRoster nu_roster;
  std::vector<SparsePoly> nu0_family;
  VarRoster nu0_roster;
};
GeneralSubsystems build_general_subsystems(const SparsePoly& H, const Direction& r);

struct AcsvOptions {
  SolveOptions solve;          // seed, tracking, certification; cert.max_bits is the refinement cap
  long zero_test_bits = 100;   // a coordinate box still containing 0 at this width is taken as 0
  long t_test_bits = 100;      // likewise for t = 0 or t = 1
};

struct CriticalPoints {
  PolySystem system;
  SolveReport report;
  std::vector<CertifiedSolution> points;  // torus solutions only
  std::size_t discarded_zero = 0;
  bool infinite = false;
  std::vector<std::string> notes;
};

CriticalPoints critical_points(const SparsePoly& H, const Direction& r, const AcsvOptions& opts = {});

enum class MinStatus { ok, fail_infinite, fail_no_candidate, fail_lambda_zero, fail_mixed_torus, warn_precision_cap };
std::string to_string(MinStatus s);
bool is_failure(MinStatus s);

struct CriticalPointInfo {
  CertifiedSolution point;
  Verdict real = Verdict::unknown;
  Verdict positive = Verdict::unknown;
  bool witness = false;        // a certified t in (0, 1) solution rejects it
  std::string witness_t;       // enclosure of the witness t
  std::string witness_system;  // which extended system produced the witness
  bool minimal = false;
};

struct ExtendedSolve {
  std::string name;
  std::uint64_t paths = 0;
  std::uint64_t solutions = 0;
  std::uint64_t real_solutions = 0;
  std::uint64_t bezout = 0;
  std::optional<std::uint64_t> mixed_volume;
  bool complete = false;
};

struct MinimalityResult {
  MinStatus status = MinStatus::fail_no_candidate;
  std::vector<CertifiedSolution> minimal_points;
  std::vector<Interval> torus_moduli;
  std::vector<CriticalPointInfo> diagnostics;
  std::vector<ExtendedSolve> extended;
  std::vector<std::string> notes;
  bool heuristic = false;
  std::optional<CriticalPoints> critical;
};

/// Bits to which coordinate moduli are compared before two points are
/// declared to lie on the same torus: 32 d delta (h + 1).
long required_modulus_bits(const SparsePoly& H);

struct ModulusGroup {
  std::vector<std::size_t> members;  // indices into points, reference included
  std::vector<CertifiedSolution> refined;
  bool precision_cap = false;
};

/// Points of `sys` whose coordinate-wise moduli equal those of
/// points[reference], refining until the moduli separate or `required_bits`
/// is reached. Points still indistinguishable at the precision cap are
/// included and flagged.
ModulusGroup group_by_modulus(const PolySystem& sys, const std::vector<CertifiedSolution>& points,
                              std::size_t reference, long required_bits, const CertifyOptions& cert);

MinimalityResult min_crits_comb(const SparsePoly& H, const Direction& r, const AcsvOptions& opts = {});
MinimalityResult min_crits_general(const SparsePoly& H, const Direction& r, const AcsvOptions& opts = {});
/// Critical points first, then the minimality systems with (a, b) fixed per
/// point. Valid only under a full-rank condition that is not checked, so the
/// result is flagged heuristic.
MinimalityResult approx_crit_heuristic(const SparsePoly& H, const Direction& r, const AcsvOptions& opts = {});

/// Enclosure of lambda = w_1 H_{z_1}(w) / r_1 at a critical point.
ComplexBox critical_lambda(const SparsePoly& H, const Direction& r, const CertifiedSolution& w);

}  // namespace acsv
