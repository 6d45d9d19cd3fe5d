#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include <gmpxx.h>

#include "acsv/solver.hpp"
#include "lp.hpp"

namespace acsv {

namespace {

using Point = std::vector<long>;

struct Edge {
  std::size_t a, b;
};

struct Enumerator {
  std::size_t n;
  std::vector<std::vector<Point>> pts;      // per polytope, in processing order
  std::vector<std::vector<long>> lift;      // per polytope, per point
  std::vector<std::vector<Edge>> edges;
  std::vector<Edge> chosen;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::uint64_t cells = 0;
  mpz_class total = 0;
  bool degenerate = false;
  bool exhausted = false;

  // Linear constraints on alpha saying that the chosen edges 0..k-1 are lower
  // edges of their lifted polytopes.
  void constraints(std::size_t k, std::vector<std::vector<double>>& Aeq, std::vector<double>& beq,
                   std::vector<std::vector<double>>& Age, std::vector<double>& bge) const {
    for (std::size_t i = 0; i < k; ++i) {
      const auto& P = pts[i];
      const auto& w = lift[i];
      const Edge e = chosen[i];
      std::vector<double> row(n);
      for (std::size_t j = 0; j < n; ++j) row[j] = static_cast<double>(P[e.a][j] - P[e.b][j]);
      Aeq.push_back(row);
      beq.push_back(static_cast<double>(w[e.b] - w[e.a]));
      for (std::size_t c = 0; c < P.size(); ++c) {
        if (c == e.a || c == e.b) continue;
        for (std::size_t j = 0; j < n; ++j) row[j] = static_cast<double>(P[c][j] - P[e.a][j]);
        Age.push_back(row);
        bge.push_back(static_cast<double>(w[e.a] - w[c]));
      }
    }
  }

  bool feasible(std::size_t k) const {
    std::vector<std::vector<double>> Aeq, Age;
    std::vector<double> beq, bge;
    constraints(k, Aeq, beq, Age, bge);
    return detail::feasible_free(Aeq, beq, Age, bge, n, 1e-7);
  }

  // Exact verification of a full choice of edges.
  void leaf() {
    std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
      const Edge e = chosen[i];
      for (std::size_t j = 0; j < n; ++j) M[i][j] = pts[i][e.a][j] - pts[i][e.b][j];
      M[i][n] = lift[i][e.b] - lift[i][e.a];
    }
    mpq_class det = 1;
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      while (piv < n && M[piv][col] == 0) ++piv;
      if (piv == n) return;  // edges not independent: no cell
      if (piv != col) {
        std::swap(M[piv], M[col]);
        det = -det;
      }
      det *= M[col][col];
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col || M[r][col] == 0) continue;
        const mpq_class f = M[r][col] / M[col][col];
        for (std::size_t c = col; c <= n; ++c) M[r][c] -= f * M[col][c];
      }
    }
    std::vector<mpq_class> alpha(n);
    for (std::size_t i = 0; i < n; ++i) alpha[i] = M[i][n] / M[i][i];

    for (std::size_t i = 0; i < n; ++i) {
      const Edge e = chosen[i];
      const auto& P = pts[i];
      for (std::size_t c = 0; c < P.size(); ++c) {
        if (c == e.a || c == e.b) continue;
        mpq_class v = lift[i][c] - lift[i][e.a];
        for (std::size_t j = 0; j < n; ++j) v += alpha[j] * (P[c][j] - P[e.a][j]);
        if (v < 0) return;
        if (v == 0) {
          degenerate = true;
          return;
        }
      }
    }
    ++cells;
    mpz_class d = abs(det.get_num());
    total += d;
  }

  void dfs(std::size_t k) {
    if (exhausted || degenerate) return;
    if (++nodes > budget) {
      exhausted = true;
      return;
    }
    if (k == n) {
      leaf();
      return;
    }
    for (const Edge& e : edges[k]) {
      chosen.push_back(e);
      if (k == 0 || k + 1 == n || feasible(k + 1)) dfs(k + 1);
      chosen.pop_back();
      if (exhausted || degenerate) return;
    }
  }
};

}  // namespace

MixedVolumeResult mixed_volume(const std::vector<std::vector<Point>>& polytopes, const MixedVolumeOptions& opts) {
  const std::size_t n = polytopes.size();
  MixedVolumeResult out;
  std::vector<std::vector<Point>> pts;
  for (const auto& P : polytopes) {
    std::set<Point> uniq;
    for (const auto& q : P) {
      if (q.size() != n) throw std::invalid_argument("mixed_volume: point dimension differs from polytope count");
      uniq.insert(q);
    }
    if (uniq.size() < 2) {
      out.value = 0;
      return out;
    }
    pts.emplace_back(uniq.begin(), uniq.end());
  }
  if (n == 0) {
    out.value = 1;
    return out;
  }

  std::mt19937_64 rng(opts.seed ^ 0x6d766f6cULL);
  std::uniform_int_distribution<long> dist(1, 1L << 20);
  for (int attempt = 0; attempt < opts.max_liftings; ++attempt) {
    Enumerator en;
    en.n = n;
    en.budget = opts.node_budget;
    std::vector<std::vector<long>> lift(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < pts[i].size(); ++c) lift[i].push_back(dist(rng));

    // Lower edges of each lifted polytope.
    std::vector<std::vector<Edge>> edges(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& P = pts[i];
      for (std::size_t a = 0; a < P.size(); ++a)
        for (std::size_t b = a + 1; b < P.size(); ++b) {
          Enumerator one;
          one.n = n;
          one.pts = {P};
          one.lift = {lift[i]};
          one.chosen = {Edge{a, b}};
          if (one.feasible(1)) edges[i].push_back(Edge{a, b});
        }
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return edges[x].size() < edges[y].size(); });
    for (std::size_t i : order) {
      en.pts.push_back(pts[i]);
      en.lift.push_back(lift[i]);
      en.edges.push_back(edges[i]);
    }
    en.dfs(0);
    out.nodes += en.nodes;
    if (en.exhausted) {
      out.failure = "resource";
      return out;
    }
    if (en.degenerate) continue;
    out.cells = en.cells;
    out.value = en.total.get_ui();
    return out;
  }
  out.failure = "degenerate lifting";
  return out;
}

MixedVolumeResult mixed_volume(const PolySystem& sys, const MixedVolumeOptions& opts) {
  std::vector<std::vector<Point>> polys;
  for (const auto& p : sys.polys()) {
    if (p.is_zero()) throw std::invalid_argument("mixed_volume: zero polynomial in system");
    polys.push_back(newton_polytope(p));
  }
  return mixed_volume(polys, opts);
}

}  // namespace acsv
