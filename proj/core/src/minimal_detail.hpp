#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "acsv/acsv.hpp"

namespace acsv::detail {

/// Tries to prove `sol` real (replacing it by the real-certified box) or
/// non-real, refining a few times before giving up.
Verdict ensure_real(const PolySystem& sys, CertifiedSolution& sol, const CertifyOptions& cert);

/// Whether coordinate `index` of a real-certified solution lies in (0, 1).
/// A box that still touches 0 or 1 at width 2^-bits counts as the endpoint.
Verdict in_open_unit(const PolySystem& sys, CertifiedSolution& sol, std::size_t index, long bits,
                     const CertifyOptions& cert);

using Projector = std::function<BoxVector(const CertifiedSolution&)>;

/// Index of the unique critical point whose box meets the projection of
/// `sol`, refining both sides to separate ambiguous overlaps.
std::optional<std::size_t> match_point(const PolySystem& sys, CertifiedSolution& sol, const Projector& proj,
                                       const PolySystem& crit_sys, std::vector<CertifiedSolution>& crits,
                                       const CertifyOptions& cert);

/// z = a + i b from the first 2d real coordinates.
BoxVector project_ab(const CertifiedSolution& s, std::size_t d);

/// Candidate set, lambda test and torus test shared by the general and
/// heuristic algorithms, applied to res.diagnostics.
void finish_general(MinimalityResult& res, const SparsePoly& H, const Direction& r, const AcsvOptions& opts);

/// Whether lambda provably vanishes at the point (refining when needed).
bool lambda_is_zero(const SparsePoly& H, const Direction& r, const PolySystem& crit_sys, CertifiedSolution& w,
                    const CertifyOptions& cert);

}  // namespace acsv::detail
