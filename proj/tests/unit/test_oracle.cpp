#include <random>

#include "acsv/asymptotics.hpp"
#include "acsv/oracle.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace acsv;
using testing::P;

namespace {

mpq_class binomial(unsigned long n, unsigned long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return mpq_class(b);
}

// All exponents of total degree at most `deg` in `d` variables.
std::vector<Exponent> exponents(std::size_t d, unsigned deg) {
  std::vector<Exponent> out;
  Exponent e(d, 0);
  while (true) {
    unsigned s = 0;
    for (unsigned k : e) s += k;
    if (s <= deg) out.push_back(e);
    std::size_t i = 0;
    while (i < d && ++e[i] > deg) e[i++] = 0;
    if (i == d) break;
  }
  return out;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("binomial coefficients of 1/(1-x-y)") {
  const VarRoster xy = testing::roster({"x", "y"});
  const SeriesTable t = series_coeffs(P("1", xy), P("1-x-y", xy), 12);
  CHECK(t.size() == 13 * 14 / 2);
  for (unsigned i = 0; i <= 12; ++i)
    for (unsigned j = 0; i + j <= 12; ++j) CHECK(t.at({i, j}) == binomial(i + j, i));
  CHECK_THROWS_AS(t.at({7, 6}), std::out_of_range);
}

TEST_CASE("layered order") {
  const VarRoster xy = testing::roster({"x", "y"});
  const SeriesTable t = series_coeffs(P("1", xy), P("1-x-y", xy), 3);
  CHECK(t.index_of({0, 0}) == 0);
  CHECK(t.index_of({0, 1}) == 1);
  CHECK(t.index_of({1, 0}) == 2);
  CHECK(t.index_of({0, 2}) == 3);
  CHECK(t.index_of({2, 0}) == 5);
  CHECK(t.index_of({0, 3}) == 6);
  CHECK(t.index_of({3, 0}) == 9);
  const VarRoster xyz = testing::roster({"x", "y", "z"});
  const SeriesTable u = series_coeffs(P("1", xyz), P("1-x-y-z", xyz), 4);
  for (std::size_t k = 0; k < u.size(); ++k) CHECK(u.coeffs()[k] != 0);
  CHECK(u.index_of({4, 0, 0}) + 1 == u.size());
}

TEST_CASE("the origin must not be a pole") {
  const VarRoster xy = testing::roster({"x", "y"});
  CHECK_THROWS_AS(series_coeffs(P("1", xy), P("x+y", xy), 4), std::domain_error);
}

TEST_CASE("H times the series reproduces G") {
  std::mt19937_64 rng(31);
  const VarRoster xyz = testing::roster({"x", "y", "z"});
  const unsigned D = 6;
  for (int i = 0; i < 10; ++i) {
    SparsePoly H = testing::random_poly(rng, xyz, 5, 2);
    H += SparsePoly::constant(xyz, mpq_class(2, 3) - H.constant_term());
    const SparsePoly G = testing::random_poly(rng, xyz, 4, 2);
    const SeriesTable f = series_coeffs(G, H, D);
    for (const Exponent& e : exponents(3, D)) {
      mpq_class acc = 0;
      for (const auto& [h, c] : H.terms()) {
        bool fits = true;
        Exponent rest(3);
        for (std::size_t k = 0; k < 3; ++k) {
          fits = fits && h[k] <= e[k];
          if (fits) rest[k] = e[k] - h[k];
        }
        if (fits) acc += c * f.at(rest);
      }
      CHECK(acc == G.coeff(e));
    }
  }
}

TEST_CASE("diagonals") {
  const VarRoster xy = testing::roster({"x", "y"});
  const auto d = diagonal(P("1", xy), P("1-x-y", xy), Direction::ones(2), 40);
  REQUIRE(d.size() == 21);
  for (unsigned n = 0; n < d.size(); ++n) CHECK(d[n] == binomial(2 * n, n));
  const auto fast = diagonal_terms(P("1", xy), P("1-x-y", xy), Direction::ones(2), 21);
  CHECK(fast == d);

  const auto skew = diagonal_terms(P("1", xy), P("1-x-y", xy), Direction({1, 2}), 15);
  for (unsigned n = 0; n < skew.size(); ++n) CHECK(skew[n] == binomial(3 * n, n));

  // Delannoy numbers: 1/(1-x-y-xy).
  const auto del = diagonal_terms(P("1", xy), P("1-x-y-x*y", xy), Direction::ones(2), 6);
  CHECK(del == std::vector<mpq_class>{1, 3, 13, 63, 321, 1683});

  const VarRoster xyz = testing::roster({"x", "y", "z"});
  const auto tri = diagonal_terms(P("1", xyz), P("1-x-y-z", xyz), Direction::ones(3), 5);
  CHECK(tri == std::vector<mpq_class>{1, 6, 90, 1680, 34650});
  CHECK(diagonal(P("1", xyz), P("1-x-y-z", xyz), Direction::ones(3), 12) == tri);
}

TEST_CASE("relative error against the leading term") {
  const VarRoster xy = testing::roster({"x", "y"});
  const SparsePoly H = P("1-x-y", xy);
  const MinimalityResult res = min_crits_comb(H, Direction::ones(2));
  REQUIRE(res.status == MinStatus::ok);
  const AsymptoticExpansion e = expansion(P("1", xy), H, Direction::ones(2), res);
  const auto seq = diagonal_terms(P("1", xy), H, Direction::ones(2), 41);
  const OracleReport rep = check_asymptotics(seq, e, {10, 20, 40});
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.strictly_decreasing());
  // binom(2n, n) sqrt(pi n) / 4^n = 1 - 1/(8n) + O(1/n^2).
  for (const auto& row : rep.rows) {
    REQUIRE(row.relative_error);
    CHECK(*row.relative_error == doctest::Approx(1.0 / (8 * row.n)).epsilon(0.02));
  }
  CHECK(rep.last_error() == rep.rows.back().relative_error);
}

TEST_CASE("zero predictions are flagged") {
  const VarRoster z = testing::roster({"z"});
  const SparsePoly H = P("1-4*z^2", z);
  const MinimalityResult res = min_crits_comb(H, Direction::ones(1));
  REQUIRE(res.status == MinStatus::ok);
  const AsymptoticExpansion e = expansion(P("1", z), H, Direction::ones(1), res);
  const auto seq = diagonal_terms(P("1", z), H, Direction::ones(1), 22);
  const OracleReport rep = check_asymptotics(seq, e, {10, 11, 20, 21});
  REQUIRE(rep.rows.size() == 4);
  CHECK(rep.rows[0].relative_error);
  CHECK_FALSE(rep.rows[1].relative_error);
  CHECK_FALSE(rep.rows[3].relative_error);
}

TEST_CASE("conversion of huge rationals") {
  const mpq_class big(mpz_class("1" + std::string(400, '0')), mpz_class("3" + std::string(399, '0')));
  CHECK(to_double(big) == doctest::Approx(10.0 / 3.0));
  CHECK(to_double(mpq_class(1, 3)) == doctest::Approx(1.0 / 3.0));
}

}  // TEST_SUITE
