#include "acsv/oracle.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include <mpfr.h>

#include "acsv/asymptotics.hpp"

namespace acsv {

namespace {

// C(n, k), zero outside 0 <= k <= n.
std::size_t binom(long n, long k) {
  if (k < 0 || n < k) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (long i = 1; i <= k; ++i) acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return static_cast<std::size_t>(acc);
}

std::size_t layered_rank(const Exponent& e) {
  const long d = static_cast<long>(e.size());
  long k = 0;
  for (unsigned v : e) k += v;
  // Exponents of lower total degree come first.
  std::size_t rank = d == 0 ? 0 : binom(k - 1 + d, d);
  long s = k;
  for (long j = 0; j + 1 < d; ++j) {
    const long q = d - j - 2;  // parts after position j, minus one
    const long m = e[static_cast<std::size_t>(j)];
    // Tuples over positions j..d-1 summing to s whose first entry is below m.
    rank += binom(s + q + 1, q + 1) - binom(s - m + q + 1, q + 1);
    s -= m;
  }
  return rank;
}

struct IntegerData {
  std::vector<std::pair<Exponent, mpz_class>> g_terms;
  std::vector<std::pair<Exponent, mpz_class>> h_terms;  // without the constant term
  mpz_class h0;
};

// Clears denominators of G and H with one common factor, which leaves G/H
// unchanged and lets the recurrence run over the integers.
IntegerData integer_data(const SparsePoly& G, const SparsePoly& H) {
  if (!(G.roster() == H.roster())) throw std::invalid_argument("series: numerator and denominator rosters differ");
  if (H.constant_term() == 0) throw std::domain_error("series: H(0) = 0, no power series at the origin");
  mpz_class l = 1;
  for (const auto* p : {&G, &H})
    for (const auto& [e, c] : p->terms()) l = lcm(l, mpz_class(c.get_den()));
  IntegerData out;
  const Exponent zero(H.nvars(), 0);
  for (const auto& [e, c] : G.terms()) out.g_terms.emplace_back(e, mpz_class(c * l));
  for (const auto& [e, c] : H.terms()) {
    if (e == zero)
      out.h0 = mpz_class(c * l);
    else
      out.h_terms.emplace_back(e, mpz_class(c * l));
  }
  return out;
}

unsigned total(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0u); }

}  // namespace

SeriesTable::SeriesTable(VarRoster roster, int max_degree, std::vector<mpq_class> coeffs)
    : roster_(std::move(roster)), max_degree_(max_degree), coeffs_(std::move(coeffs)) {}

std::size_t SeriesTable::index_of(const Exponent& e) const {
  if (e.size() != roster_.size()) throw std::invalid_argument("SeriesTable: exponent length");
  if (static_cast<int>(total(e)) > max_degree_) throw std::out_of_range("SeriesTable: beyond the computed degree");
  return layered_rank(e);
}

const mpq_class& SeriesTable::at(const Exponent& e) const { return coeffs_[index_of(e)]; }

SeriesTable series_coeffs(const SparsePoly& G, const SparsePoly& H, int max_degree) {
  if (max_degree < 0) throw std::invalid_argument("series_coeffs: negative degree bound");
  const IntegerData data = integer_data(G, H);
  const std::size_t d = H.nvars();
  const std::size_t count = binom(max_degree + static_cast<long>(d), static_cast<long>(d));

  // f_i = g_i / h0^(|i|+1) with
  //   g_i = h0^|i| G_i - sum_{e != 0} h_e h0^(|e|-1) g_{i-e}.
  std::vector<mpz_class> h0pow(static_cast<std::size_t>(max_degree) + 1);
  h0pow[0] = 1;
  for (std::size_t k = 1; k < h0pow.size(); ++k) h0pow[k] = h0pow[k - 1] * data.h0;
  std::vector<mpz_class> hscaled;
  for (const auto& [e, c] : data.h_terms) hscaled.push_back(c * h0pow[total(e) - 1]);

  std::vector<mpz_class> g(count);
  std::vector<mpq_class> f(count);
  for (const auto& [e, c] : data.g_terms) {
    if (static_cast<int>(total(e)) > max_degree) continue;
    g[layered_rank(e)] = c * h0pow[total(e)];
  }

  Exponent cur(d, 0), prev(d, 0);
  std::size_t idx = 0;
  for (int k = 0; k <= max_degree; ++k) {
    // Enumerate the degree-k layer in lexicographic order.
    std::fill(cur.begin(), cur.end(), 0u);
    if (d == 0) {
      if (k == 0) {
        f[0] = mpq_class(g[0], data.h0);
        f[0].canonicalize();
        idx = 1;
      }
      continue;
    }
    cur[d - 1] = static_cast<unsigned>(k);
    while (true) {
      mpz_class& gi = g[idx];
      for (std::size_t t = 0; t < data.h_terms.size(); ++t) {
        const Exponent& e = data.h_terms[t].first;
        bool inside = true;
        for (std::size_t v = 0; v < d && inside; ++v) inside = e[v] <= cur[v];
        if (!inside) continue;
        for (std::size_t v = 0; v < d; ++v) prev[v] = cur[v] - e[v];
        gi -= hscaled[t] * g[layered_rank(prev)];
      }
      f[idx] = mpq_class(gi, h0pow[static_cast<std::size_t>(k)] * data.h0);
      f[idx].canonicalize();
      ++idx;
      // Next composition of k in lexicographic order: bump the rightmost
      // position that can grow, moving the remainder to the last slot.
      std::size_t pos = d;
      for (std::size_t q = d - 1; q-- > 0;) {
        unsigned rest = 0;
        for (std::size_t s = q + 1; s < d; ++s) rest += cur[s];
        if (rest > 0) {
          pos = q;
          break;
        }
      }
      if (pos == d) break;
      unsigned rest = 0;
      for (std::size_t s = pos + 1; s < d; ++s) rest += cur[s];
      ++cur[pos];
      for (std::size_t s = pos + 1; s < d; ++s) cur[s] = 0;
      cur[d - 1] = rest - 1;
    }
  }
  return SeriesTable(H.roster(), max_degree, std::move(f));
}

std::vector<mpq_class> diagonal_terms(const SparsePoly& G, const SparsePoly& H, const Direction& r,
                                      std::size_t count) {
  if (r.size() != H.nvars()) throw std::invalid_argument("diagonal: direction length does not match the roster");
  if (count == 0) return {};
  const IntegerData data = integer_data(G, H);
  const std::size_t d = H.nvars();
  std::vector<std::size_t> extent(d), stride(d);
  std::size_t cells = 1;
  for (std::size_t v = d; v-- > 0;) {
    extent[v] = static_cast<std::size_t>(r[v]) * (count - 1) + 1;
    stride[v] = cells;
    cells *= extent[v];
  }
  const unsigned max_total = static_cast<unsigned>(r.sum() * static_cast<long>(count - 1));
  std::vector<mpz_class> h0pow(max_total + 1);
  h0pow[0] = 1;
  for (std::size_t k = 1; k < h0pow.size(); ++k) h0pow[k] = h0pow[k - 1] * data.h0;
  std::vector<mpz_class> hscaled;
  std::vector<std::size_t> hoffset;
  for (const auto& [e, c] : data.h_terms) {
    hscaled.push_back(c * h0pow[total(e) - 1]);
    std::size_t off = 0;
    for (std::size_t v = 0; v < d; ++v) off += e[v] * stride[v];
    hoffset.push_back(off);
  }

  std::vector<mpz_class> g(cells);
  for (const auto& [e, c] : data.g_terms) {
    bool inside = true;
    std::size_t off = 0;
    for (std::size_t v = 0; v < d && inside; ++v) {
      inside = e[v] < extent[v];
      off += e[v] * stride[v];
    }
    if (inside) g[off] = c * h0pow[total(e)];
  }

  // Row-major sweep: every i - e with e >= 0 is visited before i.
  Exponent cur(d, 0);
  for (std::size_t idx = 0; idx < cells; ++idx) {
    mpz_class& gi = g[idx];
    for (std::size_t t = 0; t < hscaled.size(); ++t) {
      const Exponent& e = data.h_terms[t].first;
      bool inside = true;
      for (std::size_t v = 0; v < d && inside; ++v) inside = e[v] <= cur[v];
      if (inside) gi -= hscaled[t] * g[idx - hoffset[t]];
    }
    for (std::size_t v = d; v-- > 0;) {
      if (++cur[v] < extent[v]) break;
      cur[v] = 0;
    }
  }

  std::vector<mpq_class> out(count);
  for (std::size_t n = 0; n < count; ++n) {
    std::size_t off = 0;
    for (std::size_t v = 0; v < d; ++v) off += static_cast<std::size_t>(r[v]) * n * stride[v];
    const unsigned deg = static_cast<unsigned>(r.sum() * static_cast<long>(n));
    out[n] = mpq_class(g[off], h0pow[deg] * data.h0);
    out[n].canonicalize();
  }
  return out;
}

std::vector<mpq_class> diagonal(const SparsePoly& G, const SparsePoly& H, const Direction& r, int max_degree) {
  if (max_degree < 0) throw std::invalid_argument("diagonal: negative degree bound");
  return diagonal_terms(G, H, r, static_cast<std::size_t>(max_degree / r.sum()) + 1);
}

double to_double(const mpq_class& q) {
  mpfr_t t;
  mpfr_init2(t, 64);
  mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDN);
  const double v = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return v;
}

bool OracleReport::strictly_decreasing() const {
  std::optional<double> last;
  for (const auto& row : rows) {
    if (!row.relative_error) continue;
    if (last && !(*row.relative_error < *last)) return false;
    last = row.relative_error;
  }
  return true;
}

std::optional<double> OracleReport::last_error() const {
  for (auto it = rows.rbegin(); it != rows.rend(); ++it)
    if (it->relative_error) return it->relative_error;
  return std::nullopt;
}

OracleReport check_asymptotics(const std::vector<mpq_class>& seq, const AsymptoticExpansion& exp,
                               const std::vector<long>& n_values) {
  OracleReport report;
  for (long n : n_values) {
    if (n < 0 || static_cast<std::size_t>(n) >= seq.size())
      throw std::out_of_range("check_asymptotics: sequence too short for n = " + std::to_string(n));
    OracleComparison row;
    row.n = n;
    row.exact = seq[static_cast<std::size_t>(n)];
    row.predicted = exp.evaluate(n);
    const double scale = std::abs(row.predicted);
    // A cancelling sum is flagged, not compared.
    double term_scale = 0.0;
    for (const auto& t : exp.terms) term_scale = std::max(term_scale, std::abs(t.evaluate(n)));
    if (scale > 1e-12 * term_scale && scale > 0.0)
      row.relative_error = std::abs(std::complex<double>(to_double(row.exact), 0.0) / row.predicted - 1.0);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace acsv
