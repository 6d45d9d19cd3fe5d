#include <random>

#include "minimal_detail.hpp"

namespace acsv {

namespace {

bool close(const CVector& a, const CVector& b) {
  double d = 0.0, m = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
    m = std::max(m, std::abs(a[i]));
  }
  return d <= 1e-8 * m;
}

bool nearly_real(const CVector& x) {
  for (const auto& z : x)
    if (std::abs(z.imag()) > 1e-6 * (1.0 + std::abs(z.real()))) return false;
  return true;
}

}  // namespace

MinimalityResult approx_crit_heuristic(const SparsePoly& H, const Direction& r, const AcsvOptions& opts) {
  const CertifyOptions& cert = opts.solve.cert;
  const std::size_t d = H.nvars();
  MinimalityResult res;
  res.heuristic = true;
  res.critical = critical_points(H, r, opts);
  CriticalPoints& crit = *res.critical;
  if (crit.infinite) {
    res.status = MinStatus::fail_infinite;
    return res;
  }
  for (auto& p : crit.points) {
    CriticalPointInfo info;
    info.point = p;
    info.real = detail::ensure_real(crit.system, info.point, cert);
    if (info.real == Verdict::yes) info.positive = classify(info.point, Query::is_positive_real);
    res.diagnostics.push_back(std::move(info));
  }
  std::vector<CertifiedSolution> pts;
  for (const auto& info : res.diagnostics) pts.push_back(info.point);

  // Per critical point: a, b and lambda as doubles.
  std::vector<CVector> prefix(pts.size());
  std::vector<CVector> moduli(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const CVector c = [&] {
      CVector v;
      for (const auto& b : pts[i].box) v.push_back(b.mid_d());
      return v;
    }();
    const auto lam = critical_lambda(H, r, pts[i]).mid_d();
    for (const auto& z : c) prefix[i].push_back(z.real());
    for (const auto& z : c) prefix[i].push_back(z.imag());
    prefix[i].push_back(lam.real());
    prefix[i].push_back(lam.imag());
    for (const auto& z : c) moduli[i].push_back(std::norm(z));
  }

  const GeneralSubsystems subs = build_general_subsystems(H, r);
  const GeneralSystems full = build_general_systems(H, r);
  std::mt19937_64 rng(opts.solve.seed * 0x2545f4914f6cdd1dULL + 0xac);
  std::uniform_int_distribution<long> num(512, 2048);
  const unsigned threads = resolve_threads(opts.solve.threads);

  for (int which = 0; which < 2; ++which) {
    const bool with_nu = which == 0;
    const PolySystem& full_sys = with_nu ? full.nu_system : full.nu0_system;
    ParameterHomotopy ph(with_nu ? subs.nu_family : subs.nu0_family, with_nu ? subs.nu_roster : subs.nu0_roster, d);
    std::vector<mpq_class> p0;
    CVector p0c;
    for (std::size_t j = 0; j < d; ++j) {
      p0.emplace_back(num(rng), 1024);
      p0.back().canonicalize();
      p0c.emplace_back(p0.back().get_d(), 0.0);
    }
    const PolySystem generic = ph.specialize(p0, full_sys.tag());
    const auto start_paths = track_all(generic, opts.solve);
    std::vector<CVector> starts;
    for (const auto& p : start_paths) {
      if (p.status != PathStatus::success) continue;
      bool dup = false;
      for (const auto& s : starts)
        if (close(s, p.endpoint)) {
          dup = true;
          break;
        }
      if (!dup) starts.push_back(p.endpoint);
    }
    ExtendedSolve ext{to_string(full_sys.tag()) + "_parameter", start_paths.size(), 0, 0, start_paths.size(),
                      std::nullopt, false};
    const std::size_t t_index = full_sys.size() - 1;

    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::vector<PathResult> ends(starts.size());
      parallel_for(starts.size(), threads, [&](std::uint64_t k) {
        ends[k] = ph.track(starts[k], p0c, moduli[i], opts.solve.seed + i, opts.solve.track);
      });
      ext.paths += starts.size();
      for (const auto& e : ends) {
        if (e.status != PathStatus::success || !nearly_real(e.endpoint)) continue;
        const double t = e.endpoint.back().real();
        if (!(t > -1e-6 && t < 1.0 + 1e-6)) continue;
        ++ext.solutions;
        CVector tuple;
        for (std::size_t k = 0; k < 2 * d; ++k) tuple.push_back(prefix[i][k]);
        for (std::size_t k = 0; k < 2 * d; ++k) tuple.emplace_back(e.endpoint[k].real(), 0.0);
        tuple.push_back(prefix[i][2 * d]);
        tuple.push_back(prefix[i][2 * d + 1]);
        for (std::size_t k = 2 * d; k < e.endpoint.size(); ++k) tuple.emplace_back(e.endpoint[k].real(), 0.0);
        auto c = certify(full_sys, tuple, cert, true);
        if (!c) continue;
        CertifiedSolution s = std::move(c).value();
        ++ext.real_solutions;
        if (detail::in_open_unit(full_sys, s, t_index, opts.t_test_bits, cert) != Verdict::yes) continue;
        auto proj = [d](const CertifiedSolution& x) { return detail::project_ab(x, d); };
        const auto hit = detail::match_point(full_sys, s, proj, crit.system, pts, cert);
        if (!hit) continue;
        auto& info = res.diagnostics[*hit];
        if (!info.witness) {
          info.witness = true;
          info.witness_t = s.box[t_index].re.to_string(8);
          info.witness_system = to_string(full_sys.tag());
        }
      }
    }
    res.extended.push_back(ext);
  }
  for (std::size_t i = 0; i < pts.size(); ++i) res.diagnostics[i].point = pts[i];
  detail::finish_general(res, H, r, opts);
  return res;
}

}  // namespace acsv
