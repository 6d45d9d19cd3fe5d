#include "lp.hpp"

#include <cmath>

namespace acsv::detail {

bool feasible_standard(std::vector<std::vector<double>> A, std::vector<double> b, double tol) {
  const std::size_t m = A.size();
  if (m == 0) return true;
  const std::size_t n = A[0].size();
  const std::size_t cols = n + m;  // original then artificial

  double scale = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i] < 0) {
      b[i] = -b[i];
      for (auto& v : A[i]) v = -v;
    }
    scale = std::max(scale, std::abs(b[i]));
  }

  // Tableau rows: [A | I | b]; objective row holds reduced costs of the
  // phase-one objective sum(artificials).
  std::vector<std::vector<double>> T(m + 1, std::vector<double>(cols + 1, 0.0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
    T[i][n + i] = 1.0;
    T[i][cols] = b[i];
    basis[i] = n + i;
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= cols; ++j)
      if (j < n || j == cols) T[m][j] -= T[i][j];

  const double eps = 1e-11;
  const std::size_t max_iter = 50 * (m + cols) + 100;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    // Bland's rule: first column with negative reduced cost.
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (T[m][j] < -eps) {
        enter = j;
        break;
      }
    if (enter == cols) break;
    std::size_t leave = m;
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][enter] > eps) {
        const double ratio = T[i][cols] / T[i][enter];
        if (leave == m || ratio < best - 1e-12 || (ratio <= best + 1e-12 && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave == m) break;  // unbounded direction; cannot happen for phase one
    const double piv = T[leave][enter];
    for (auto& v : T[leave]) v /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = T[i][enter];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) T[i][j] -= f * T[leave][j];
    }
    basis[leave] = enter;
  }
  return -T[m][cols] <= tol * scale;
}

bool feasible_free(const std::vector<std::vector<double>>& Aeq, const std::vector<double>& beq,
                   const std::vector<std::vector<double>>& Age, const std::vector<double>& bge, std::size_t n,
                   double tol) {
  const std::size_t ms = Age.size();
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  for (std::size_t i = 0; i < Aeq.size(); ++i) {
    std::vector<double> row(2 * n + ms, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = Aeq[i][j];
      row[n + j] = -Aeq[i][j];
    }
    A.push_back(std::move(row));
    b.push_back(beq[i]);
  }
  for (std::size_t i = 0; i < ms; ++i) {
    std::vector<double> row(2 * n + ms, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = Age[i][j];
      row[n + j] = -Age[i][j];
    }
    row[2 * n + i] = -1.0;
    A.push_back(std::move(row));
    b.push_back(bge[i]);
  }
  return feasible_standard(std::move(A), std::move(b), tol);
}

}  // namespace acsv::detail
