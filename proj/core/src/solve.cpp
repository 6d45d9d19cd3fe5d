#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "tracker.hpp"

namespace acsv {

std::size_t SolveReport::torus_count() const {
  std::size_t n = 0;
  for (const auto& s : solutions) {
    bool torus = true;
    for (const auto& b : s.box)
      if (b.contains_zero()) torus = false;
    n += torus;
  }
  return n;
}

unsigned resolve_threads(unsigned requested) {
  if (requested) return requested;
  if (const char* env = std::getenv("ACSV_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(std::min<long>(v, 256));
  }
  return 1;
}

void parallel_for(std::uint64_t n, unsigned threads, const std::function<void(std::uint64_t)>& fn) {
  const unsigned T = static_cast<unsigned>(std::min<std::uint64_t>(std::max(threads, 1u), n));
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t i; (i = next.fetch_add(1)) < n;) fn(i);
  };
  if (T <= 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < T; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

std::vector<PathResult> track_all(const PolySystem& sys, const SolveOptions& opts) {
  if (opts.start == StartKind::polyhedral)
    throw std::invalid_argument("polyhedral start systems are not implemented; use total-degree");
  const StartSystem start = total_degree_start(sys, opts.seed);
  const std::uint64_t N = start.num_solutions();
  if (N > 50'000'000) throw std::runtime_error("Bezout number " + std::to_string(N) + " is too large to track");
  detail::TotalDegreeHomotopy h(sys, start);
  std::vector<PathResult> paths(N);
  parallel_for(N, resolve_threads(opts.threads), [&](std::uint64_t i) { paths[i] = h.track_index(i, opts.track); });
  return paths;
}

namespace {

bool inside(const CertifiedSolution& s, const CVector& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!s.box[i].re.contains(x[i].real()) || !s.box[i].im.contains(x[i].imag())) return false;
  return true;
}

}  // namespace

static bool nearly_real(const CVector& x) {
  for (const auto& z : x)
    if (std::abs(z.imag()) > 1e-4 * (1.0 + std::abs(z.real()))) return false;
  return true;
}

void certify_endpoints(const PolySystem& sys, const std::vector<PathResult>& paths, const CertifyOptions& cert,
                       SolveReport& out, bool real_only) {
  for (const auto& p : paths) {
    if (p.status == PathStatus::diverged || p.endpoint.empty()) continue;
    if (real_only && !nearly_real(p.endpoint)) continue;
    bool seen = false;
    for (const auto& s : out.solutions)
      if (inside(s, p.endpoint)) {
        seen = true;
        break;
      }
    if (seen) continue;
    bool near_singular = false;
    for (const auto& e : out.singular_endpoints) {
      double d = 0.0, m = 1.0;
      for (std::size_t i = 0; i < e.size(); ++i) {
        d = std::max(d, std::abs(e[i] - p.endpoint[i]));
        m = std::max(m, std::abs(e[i]));
      }
      if (d <= 1e-6 * m) near_singular = true;
    }
    if (near_singular) continue;

    auto c = certify(sys, p.endpoint, cert);
    if (!c) {
      ++out.uncertified;
      if (p.status == PathStatus::success && c.failure().kind == CertFailureKind::singular_jacobian)
        out.singular_endpoints.push_back(p.endpoint);
      continue;
    }
    CertifiedSolution sol = std::move(c).value();
    bool duplicate = false;
    for (const auto& s : out.solutions) {
      if (!overlaps(s.box, sol.box)) continue;
      const Verdict v = same_solution(sys, s, sol, cert);
      if (v != Verdict::no) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) out.solutions.push_back(std::move(sol));
  }
}

SolveReport solve_system(const PolySystem& sys, const SolveOptions& opts) {
  SolveReport rep;
  const std::vector<PathResult> paths = track_all(sys, opts);
  const std::uint64_t N = paths.size();
  rep.bezout = N;
  rep.paths_tracked = N;
  for (const auto& p : paths) {
    switch (p.status) {
      case PathStatus::success: ++rep.paths_success; break;
      case PathStatus::diverged: ++rep.paths_diverged; break;
      case PathStatus::truncated: ++rep.paths_truncated; break;
    }
  }
  certify_endpoints(sys, paths, opts.cert, rep, opts.real_only);

  if (opts.compute_mixed_volume) {
    const auto mv = mixed_volume(sys, opts.mv);
    rep.mixed_volume = mv.value;
    rep.mixed_volume_failure = mv.failure;
  }
  if (rep.mixed_volume && rep.torus_count() == *rep.mixed_volume) {
    rep.complete = true;
    rep.bound_kind = "mixed_volume";
  } else if (rep.solutions.size() == rep.bezout) {
    rep.complete = true;
    rep.bound_kind = "bezout";
  } else {
    rep.bound_kind = rep.mixed_volume ? "mixed_volume" : "bezout";
  }
  return rep;
}

}  // namespace acsv
