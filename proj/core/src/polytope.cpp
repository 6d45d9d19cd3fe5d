#include <algorithm>

#include "acsv/solver.hpp"
#include "lp.hpp"

namespace acsv {

std::vector<std::vector<long>> newton_polytope(const SparsePoly& p) {
  std::vector<std::vector<long>> pts;
  for (const auto& [e, c] : p.terms()) pts.emplace_back(e.begin(), e.end());
  if (pts.size() <= 2) return pts;

  const std::size_t n = p.nvars();
  std::vector<std::vector<long>> vertices;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    // pts[k] is a vertex iff it is not a convex combination of the others.
    std::vector<std::vector<double>> A(n + 1);
    std::vector<double> b(n + 1);
    for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<double>(pts[k][i]);
    b[n] = 1.0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j == k) continue;
      for (std::size_t i = 0; i < n; ++i) A[i].push_back(static_cast<double>(pts[j][i]));
      A[n].push_back(1.0);
    }
    if (!detail::feasible_standard(std::move(A), std::move(b))) vertices.push_back(pts[k]);
  }
  return vertices;
}

}  // namespace acsv
