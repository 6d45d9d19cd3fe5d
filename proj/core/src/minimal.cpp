#include <algorithm>
#include <climits>

#include "minimal_detail.hpp"

namespace acsv {

std::string to_string(MinStatus s) {
  switch (s) {
    case MinStatus::ok: return "ok";
    case MinStatus::fail_infinite: return "fail_infinite";
    case MinStatus::fail_no_candidate: return "fail_no_candidate";
    case MinStatus::fail_lambda_zero: return "fail_lambda_zero";
    case MinStatus::fail_mixed_torus: return "fail_mixed_torus";
    case MinStatus::warn_precision_cap: return "warn_precision_cap";
  }
  return "ok";
}

bool is_failure(MinStatus s) { return s != MinStatus::ok && s != MinStatus::warn_precision_cap; }

long required_modulus_bits(const SparsePoly& H) {
  const long d = static_cast<long>(H.nvars());
  const long delta = std::max(1, H.total_degree());
  const long h = static_cast<long>(coefficient_height_bits(H));
  return 32 * d * delta * (h + 1);
}

ComplexBox critical_lambda(const SparsePoly& H, const Direction& r, const CertifiedSolution& w) {
  const mpfr_prec_t p = w.precision_bits;
  const ComplexBox g = eval(partial(H, 0), w.box);
  return Interval(mpq_class(1, r[0]), p) * (w.box[0] * g);
}

namespace detail {

namespace {

long width_bits(const CertifiedSolution& s) {
  const BigFloat w = max_width(s.box);
  return w.is_zero() ? LONG_MAX / 4 : -w.exponent2();
}

}  // namespace

Verdict ensure_real(const PolySystem& sys, CertifiedSolution& sol, const CertifyOptions& cert) {
  if (sol.real) return Verdict::yes;
  for (int round = 0; round < 3; ++round) {
    if (classify(sol, Query::is_real) == Verdict::no) return Verdict::no;
    auto rr = certify_real(sol, sys, cert);
    if (rr) {
      sol = std::move(rr).value();
      return Verdict::yes;
    }
    auto ref = refine_bits(sol, sys, std::max<long>(60, 2 * width_bits(sol)), cert);
    if (!ref) return Verdict::unknown;
    sol = std::move(ref).value();
  }
  return classify(sol, Query::is_real);
}

Verdict in_open_unit(const PolySystem& sys, CertifiedSolution& sol, std::size_t index, long bits,
                     const CertifyOptions& cert) {
  for (int round = 0; round < 6; ++round) {
    const Verdict v = classify(sol, Query::coord_in_open_unit, index);
    if (v != Verdict::unknown) return v;
    if (width_bits(sol) >= bits) return Verdict::no;
    auto ref = refine_bits(sol, sys, std::min(bits, std::max<long>(60, 2 * width_bits(sol))), cert);
    if (!ref) return Verdict::unknown;
    sol = std::move(ref).value();
  }
  return Verdict::unknown;
}

std::optional<std::size_t> match_point(const PolySystem& sys, CertifiedSolution& sol, const Projector& proj,
                                       const PolySystem& crit_sys, std::vector<CertifiedSolution>& crits,
                                       const CertifyOptions& cert) {
  for (int round = 0; round < 5; ++round) {
    const BoxVector z = proj(sol);
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < crits.size(); ++i)
      if (overlaps(z, crits[i].box)) hits.push_back(i);
    if (hits.size() == 1) return hits[0];
    if (hits.empty()) return std::nullopt;
    const long target = std::max<long>(60, 2 * width_bits(sol));
    auto ref = refine_bits(sol, sys, target, cert);
    if (!ref) return std::nullopt;
    sol = std::move(ref).value();
    for (std::size_t i : hits) {
      auto rc = refine_bits(crits[i], crit_sys, target, cert);
      if (rc) crits[i] = std::move(rc).value();
    }
  }
  return std::nullopt;
}

BoxVector project_ab(const CertifiedSolution& s, std::size_t d) {
  BoxVector z;
  for (std::size_t j = 0; j < d; ++j) z.emplace_back(s.box[j].re, s.box[d + j].re);
  return z;
}

bool lambda_is_zero(const SparsePoly& H, const Direction& r, const PolySystem& crit_sys, CertifiedSolution& w,
                    const CertifyOptions& cert) {
  for (long bits : {0L, 120L, 240L}) {
    if (bits) {
      auto ref = refine_bits(w, crit_sys, bits, cert);
      if (!ref) return true;
      w = std::move(ref).value();
    }
    if (!critical_lambda(H, r, w).contains_zero()) return false;
  }
  return true;
}

void finish_general(MinimalityResult& res, const SparsePoly& H, const Direction& r, const AcsvOptions& opts) {
  const CertifyOptions& cert = opts.solve.cert;
  const PolySystem& crit_sys = res.critical->system;
  std::vector<std::size_t> U;
  for (std::size_t i = 0; i < res.diagnostics.size(); ++i)
    if (!res.diagnostics[i].witness) U.push_back(i);
  if (U.empty()) {
    res.status = MinStatus::fail_no_candidate;
    res.notes.push_back("every critical point has a minimality witness");
    return;
  }
  for (std::size_t i : U)
    if (lambda_is_zero(H, r, crit_sys, res.diagnostics[i].point, cert)) {
      res.status = MinStatus::fail_lambda_zero;
      res.notes.push_back("lambda vanishes at an unrejected critical point");
      return;
    }
  std::vector<CertifiedSolution> pts;
  for (std::size_t i : U) pts.push_back(res.diagnostics[i].point);
  const ModulusGroup g = group_by_modulus(crit_sys, pts, 0, required_modulus_bits(H), cert);
  for (std::size_t k = 0; k < U.size(); ++k) res.diagnostics[U[k]].point = g.refined[k];
  if (g.members.size() != U.size()) {
    res.status = MinStatus::fail_mixed_torus;
    res.notes.push_back(std::to_string(U.size()) + " unrejected critical points lie on " +
                        "more than one torus");
    return;
  }
  for (std::size_t i : U) {
    res.diagnostics[i].minimal = true;
    res.minimal_points.push_back(res.diagnostics[i].point);
  }
  for (const auto& b : res.minimal_points[0].box) res.torus_moduli.push_back(abs(b));
  res.status = g.precision_cap ? MinStatus::warn_precision_cap : MinStatus::ok;
}

}  // namespace detail

ModulusGroup group_by_modulus(const PolySystem& sys, const std::vector<CertifiedSolution>& points,
                              std::size_t reference, long required_bits, const CertifyOptions& cert) {
  if (reference >= points.size()) throw std::out_of_range("group_by_modulus: reference index");
  ModulusGroup g;
  g.refined = points;
  auto moduli_overlap = [](const CertifiedSolution& a, const CertifiedSolution& b) {
    for (std::size_t j = 0; j < a.box.size(); ++j)
      if (!abs(a.box[j]).overlaps(abs(b.box[j]))) return false;
    return true;
  };
  auto bits_of = [](const CertifiedSolution& s) {
    const BigFloat w = max_width(s.box);
    return w.is_zero() ? LONG_MAX / 4 : -w.exponent2();
  };
  CertifiedSolution& ref = g.refined[reference];
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i == reference) {
      g.members.push_back(i);
      continue;
    }
    CertifiedSolution& pt = g.refined[i];
    while (true) {
      if (!moduli_overlap(ref, pt)) break;
      const long cur = std::min(bits_of(ref), bits_of(pt));
      if (cur >= required_bits) {
        g.members.push_back(i);
        break;
      }
      const long target = std::min(std::max<long>(2 * cur, 64), required_bits);
      auto r1 = refine_bits(ref, sys, target, cert);
      auto r2 = r1 ? refine_bits(pt, sys, target, cert) : r1;
      if (!r1 || !r2) {
        g.members.push_back(i);
        g.precision_cap = true;
        break;
      }
      ref = std::move(r1).value();
      pt = std::move(r2).value();
    }
  }
  return g;
}

CriticalPoints critical_points(const SparsePoly& H, const Direction& r, const AcsvOptions& opts) {
  PolySystem sys = build_critical_system(H, r);
  SolveReport rep = solve_system(sys, opts.solve);
  CriticalPoints out{sys, rep, {}, 0, false, {}};
  for (const auto& s : rep.solutions) {
    CertifiedSolution sol = s;
    bool zero = false;
    for (const auto& b : sol.box)
      if (b.contains_zero()) zero = true;
    if (zero) {
      auto ref = refine_bits(sol, sys, opts.zero_test_bits, opts.solve.cert);
      if (ref) {
        sol = std::move(ref).value();
        zero = false;
        for (const auto& b : sol.box)
          if (b.contains_zero()) zero = true;
      }
    }
    if (zero) {
      ++out.discarded_zero;
      continue;
    }
    out.points.push_back(std::move(sol));
  }
  for (const auto& e : rep.singular_endpoints) {
    bool torus = true;
    for (const auto& z : e)
      if (std::abs(z) < 1e-6) torus = false;
    if (torus) out.infinite = true;
  }
  if (out.infinite)
    out.notes.push_back("critical point system has non-isolated or singular solutions in the torus");
  if (!rep.complete)
    out.notes.push_back("critical point count " + std::to_string(rep.solutions.size()) +
                        " is below the Bezout number " + std::to_string(rep.bezout));
  return out;
}

MinimalityResult min_crits_comb(const SparsePoly& H, const Direction& r, const AcsvOptions& opts) {
  const CertifyOptions& cert = opts.solve.cert;
  const std::size_t d = H.nvars();
  MinimalityResult res;
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
    info.positive = Verdict::no;
    if (info.real == Verdict::yes) info.positive = classify(info.point, Query::is_positive_real);
    else if (info.real == Verdict::unknown) info.positive = Verdict::unknown;
    res.diagnostics.push_back(std::move(info));
  }

  const PolySystem comb = build_comb_system(H, r, true);
  SolveOptions so = opts.solve;
  so.real_only = true;
  const SolveReport rep = solve_system(comb, so);
  ExtendedSolve ext{"comb_extended", rep.paths_tracked, rep.solutions.size(), 0, rep.bezout, rep.mixed_volume,
                    rep.complete};

  std::vector<CertifiedSolution> positives;
  std::vector<std::size_t> positive_index;
  for (std::size_t i = 0; i < res.diagnostics.size(); ++i)
    if (res.diagnostics[i].positive == Verdict::yes) {
      positives.push_back(res.diagnostics[i].point);
      positive_index.push_back(i);
    }

  for (auto s : rep.solutions) {
    if (detail::ensure_real(comb, s, cert) != Verdict::yes) continue;
    ++ext.real_solutions;
    bool zpos = true;
    for (std::size_t j = 0; j < d; ++j) zpos = zpos && s.box[j].re.positive();
    if (!zpos) continue;
    if (detail::in_open_unit(comb, s, d + 1, opts.t_test_bits, cert) != Verdict::yes) continue;
    auto proj = [d](const CertifiedSolution& x) { return BoxVector(x.box.begin(), x.box.begin() + d); };
    const auto hit = detail::match_point(comb, s, proj, crit.system, positives, cert);
    if (!hit) {
      res.notes.push_back("a witness with t in (0,1) did not match a positive critical point");
      continue;
    }
    auto& info = res.diagnostics[positive_index[*hit]];
    info.witness = true;
    info.witness_t = s.box[d + 1].re.to_string(8);
    info.witness_system = "comb_extended";
  }
  res.extended.push_back(ext);
  for (std::size_t k = 0; k < positives.size(); ++k)
    if (positives[k].box[0].re.width() < res.diagnostics[positive_index[k]].point.box[0].re.width())
      res.diagnostics[positive_index[k]].point = positives[k];

  std::vector<std::size_t> zeta;
  for (std::size_t i : positive_index)
    if (!res.diagnostics[i].witness) zeta.push_back(i);
  if (zeta.size() != 1) {
    res.status = MinStatus::fail_no_candidate;
    res.notes.push_back(std::to_string(zeta.size()) + " positive critical points without a witness (need exactly 1)");
    return res;
  }
  CertifiedSolution& z = res.diagnostics[zeta[0]].point;
  if (detail::lambda_is_zero(H, r, crit.system, z, cert)) {
    res.status = MinStatus::fail_lambda_zero;
    res.notes.push_back("lambda vanishes at the positive candidate");
    return res;
  }

  std::vector<CertifiedSolution> all;
  for (const auto& info : res.diagnostics) all.push_back(info.point);
  const ModulusGroup g = group_by_modulus(crit.system, all, zeta[0], required_modulus_bits(H), cert);
  for (std::size_t i : g.members) {
    res.diagnostics[i].minimal = true;
    res.diagnostics[i].point = g.refined[i];
    res.minimal_points.push_back(g.refined[i]);
  }
  for (const auto& b : g.refined[zeta[0]].box) res.torus_moduli.push_back(abs(b));
  res.status = g.precision_cap ? MinStatus::warn_precision_cap : MinStatus::ok;
  if (g.precision_cap) res.notes.push_back("modulus comparison reached the refinement cap");
  return res;
}

MinimalityResult min_crits_general(const SparsePoly& H, const Direction& r, const AcsvOptions& opts) {
  const CertifyOptions& cert = opts.solve.cert;
  const std::size_t d = H.nvars();
  MinimalityResult res;
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

  const GeneralSystems gs = build_general_systems(H, r);
  SolveOptions so = opts.solve;
  so.real_only = true;
  for (const PolySystem* sys : {&gs.nu_system, &gs.nu0_system}) {
    const SolveReport rep = solve_system(*sys, so);
    ExtendedSolve ext{to_string(sys->tag()), rep.paths_tracked, rep.solutions.size(), 0, rep.bezout,
                      rep.mixed_volume, rep.complete};
    const std::size_t t_index = sys->size() - 1;
    for (auto s : rep.solutions) {
      if (detail::ensure_real(*sys, s, cert) != Verdict::yes) continue;
      ++ext.real_solutions;
      if (detail::in_open_unit(*sys, s, t_index, opts.t_test_bits, cert) != Verdict::yes) continue;
      auto proj = [d](const CertifiedSolution& x) { return detail::project_ab(x, d); };
      const auto hit = detail::match_point(*sys, s, proj, crit.system, pts, cert);
      if (!hit) {
        res.notes.push_back("a witness with t in (0,1) did not match a critical point");
        continue;
      }
      auto& info = res.diagnostics[*hit];
      if (!info.witness) {
        info.witness = true;
        info.witness_t = s.box[t_index].re.to_string(8);
        info.witness_system = to_string(sys->tag());
      }
    }
    res.extended.push_back(ext);
  }
  for (std::size_t i = 0; i < pts.size(); ++i) res.diagnostics[i].point = pts[i];
  detail::finish_general(res, H, r, opts);
  return res;
}

}  // namespace acsv
