#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "acsv/certify.hpp"
#include "acsv/system.hpp"

namespace acsv {

using CVector = std::vector<std::complex<double>>;

/// Total-degree start system G_i = x_i^{d_i} - 1 together with the random
/// constants of one homotopy run. Tracking is done on the projective closure
/// with the affine chart patch . (1, x) = 1, so the patch lives here too.
struct StartSystem {
  std::vector<SparsePoly> start_polys;
  std::vector<int> degrees;
  std::complex<double> gamma;
  CVector patch;  // length n + 1

  /// Bezout number, the product of the degrees.
  std::uint64_t num_solutions() const;
  /// Start solution with the given mixed-radix index: a tuple of roots of unity.
  CVector solution(std::uint64_t index) const;
};

struct TrackOptions {
  double tol = 1e-10;             // endpoint Newton tolerance (relative step)
  double divergence = 1e14;       // affine magnitude regarded as infinite
  double min_step = 1e-14;
  double max_step = 0.05;
  double initial_step = 0.01;
  double corrector_tol = 1e-8;
  int max_steps = 50000;
};

enum class PathStatus { success, diverged, truncated };
std::string to_string(PathStatus s);

struct PathResult {
  CVector endpoint;          // affine coordinates, empty when diverged at infinity
  PathStatus status = PathStatus::truncated;
  std::size_t steps = 0;
  double residual = 0.0;     // last relative Newton step at s = 1
  double affine_magnitude = 0.0;
};

StartSystem total_degree_start(const PolySystem& sys, std::uint64_t seed);

/// Follows gamma (1 - s) G + s F from s = 0 to 1 for one start solution, with
/// an RK4 predictor on the Davidenko equation and a Newton corrector.
PathResult track_path(const PolySystem& sys, const StartSystem& start, std::uint64_t index,
                      const TrackOptions& opts = {});

/// Family F(x; p) whose last `nparams` roster entries are parameters. Tracks
/// each start point (a solution at p0) along p(s) = (1 - s) p0 + s p1.
class ParameterHomotopy {
 public:
  ParameterHomotopy(std::vector<SparsePoly> family, VarRoster roster, std::size_t nparams);
  ~ParameterHomotopy();
  ParameterHomotopy(ParameterHomotopy&&) noexcept;

  std::size_t num_unknowns() const;
  /// The square system obtained by fixing the parameters to exact rationals.
  PolySystem specialize(const std::vector<mpq_class>& params, SystemTag tag) const;
  PathResult track(const CVector& start, const CVector& p0, const CVector& p1, std::uint64_t seed,
                   const TrackOptions& opts = {}) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Vertices of the convex hull of the exponent vectors, in term order.
std::vector<std::vector<long>> newton_polytope(const SparsePoly& p);

struct MixedVolumeOptions {
  std::uint64_t seed = 0;
  std::uint64_t node_budget = 5'000'000;
  int max_liftings = 8;
};

struct MixedVolumeResult {
  std::optional<std::uint64_t> value;
  std::string failure;  // "resource" or a degeneracy note when value is empty
  std::uint64_t cells = 0;
  std::uint64_t nodes = 0;
};

/// Normalized mixed volume of n point configurations in Z^n by mixed-cell
/// enumeration under a random integer lifting.
MixedVolumeResult mixed_volume(const std::vector<std::vector<std::vector<long>>>& polytopes,
                               const MixedVolumeOptions& opts = {});
/// Mixed volume of the Newton polytopes of a square system.
MixedVolumeResult mixed_volume(const PolySystem& sys, const MixedVolumeOptions& opts = {});

enum class StartKind { total_degree, polyhedral };

struct SolveOptions {
  std::uint64_t seed = 0;
  TrackOptions track;
  CertifyOptions cert;
  StartKind start = StartKind::total_degree;
  bool compute_mixed_volume = false;
  MixedVolumeOptions mv;
  unsigned threads = 0;  // 0: ACSV_THREADS or 1
  /// Skip certification of endpoints that are clearly not real.
  bool real_only = false;
};

struct SolveReport {
  std::vector<CertifiedSolution> solutions;
  std::uint64_t paths_tracked = 0;
  std::uint64_t paths_success = 0;
  std::uint64_t paths_diverged = 0;
  std::uint64_t paths_truncated = 0;
  /// Converged finite endpoints whose certification failed with a singular Jacobian.
  std::vector<CVector> singular_endpoints;
  std::uint64_t uncertified = 0;
  std::uint64_t bezout = 0;
  std::optional<std::uint64_t> mixed_volume;
  std::string mixed_volume_failure;
  bool complete = false;
  std::string bound_kind;  // "bezout" or "mixed_volume"

  std::size_t torus_count() const;
};

/// Threads to use when the option is 0: ACSV_THREADS if set, else 1.
unsigned resolve_threads(unsigned requested);

SolveReport solve_system(const PolySystem& sys, const SolveOptions& opts = {});

/// Tracks every total-degree path without certifying; results in path order.
std::vector<PathResult> track_all(const PolySystem& sys, const SolveOptions& opts = {});

/// Runs fn(i) for i in [0, n) on up to `threads` threads.
void parallel_for(std::uint64_t n, unsigned threads, const std::function<void(std::uint64_t)>& fn);

/// Adds certified, deduplicated solutions from endpoints to `out`.
void certify_endpoints(const PolySystem& sys, const std::vector<PathResult>& paths, const CertifyOptions& cert,
                       SolveReport& out, bool real_only = false);

}  // namespace acsv
