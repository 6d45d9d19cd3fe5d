#include <cmath>
#include <numbers>
#include <random>

#include "acsv/asymptotics.hpp"
#include "acsv/oracle.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace acsv;
using testing::P;

namespace {

BoxVector exact_point(const std::vector<mpq_class>& v, mpfr_prec_t prec = 200) {
  BoxVector out;
  for (const auto& c : v) out.emplace_back(c, prec);
  return out;
}

AsymptoticExpansion comb_expansion(const SparsePoly& G, const SparsePoly& H, const Direction& r) {
  const MinimalityResult res = min_crits_comb(square_free_part(H), r);
  REQUIRE(res.status == MinStatus::ok);
  return expansion(G, H, r, res);
}

bool near(std::complex<double> a, std::complex<double> b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

}  // namespace

TEST_SUITE("asymptotics") {

TEST_CASE("phase Hessian of 1-x-y") {
  const VarRoster xy = testing::roster({"x", "y"});
  const PhaseHessian ph = phase_hessian(P("1-x-y", xy), Direction::ones(2), exact_point({mpq_class(1, 2), mpq_class(1, 2)}));
  REQUIRE(ph.entries.size() == 1);
  CHECK(ph.entries[0][0].re.contains(mpq_class(2)));
  CHECK(ph.det.re.contains(mpq_class(2)));
  CHECK(ph.det.im.contains(mpq_class(0)));
}

TEST_CASE("phase Hessian is symmetric with determinant of its entries") {
  std::mt19937_64 rng(12);
  const VarRoster r4 = testing::roster({"a", "b", "c", "d"});
  for (int i = 0; i < 20; ++i) {
    const SparsePoly H = P("1", r4) - testing::random_poly(rng, r4, 6, 2);
    std::vector<mpq_class> w;
    for (int k = 0; k < 4; ++k) w.push_back(testing::random_rational(rng, 3, 5));
    PhaseHessian ph;
    try {
      ph = phase_hessian(H, Direction({1, 2, 1, 3}), exact_point(w));
    } catch (const AsymptoticFailure&) {
      continue;
    }
    REQUIRE(ph.entries.size() == 3);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) {
        CHECK(ph.entries[a][b].overlaps(ph.entries[b][a]));
        CHECK(ph.entries[a][b].im.contains(mpq_class(0)));
      }
    const auto& m = ph.entries;
    const ComplexBox det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    CHECK(det.overlaps(ph.det));
  }
}

TEST_CASE("vanishing gradient is reported") {
  const VarRoster xy = testing::roster({"x", "y"});
  CHECK_THROWS_AS(phase_hessian(P("1-x-y", xy), Direction::ones(2), exact_point({0, 0})), AsymptoticFailure);
  try {
    leading_term(P("x-y", xy), P("1-x-y", xy), Direction::ones(2), exact_point({mpq_class(1, 2), mpq_class(1, 2)}));
    FAIL("expected a failure");
  } catch (const AsymptoticFailure& e) {
    CHECK(e.kind() == AsymptoticFailureKind::numerator_vanishes);
  }
}

TEST_CASE("leading term of the central binomial coefficients") {
  const VarRoster xy = testing::roster({"x", "y"});
  const AsymptoticTerm t =
      leading_term(P("1", xy), P("1-x-y", xy), Direction::ones(2), exact_point({mpq_class(1, 2), mpq_class(1, 2)}));
  CHECK(t.power == mpq_class(-1, 2));
  CHECK(t.growth_base.re.contains(mpq_class(1, 4)));
  const BigFloat pi_inv_sqrt = BigFloat(1.0, 200) / sqrt(Interval::pi(200).mid());
  CHECK(std::abs(t.constant_d().real() - 1 / std::sqrt(std::numbers::pi)) < 1e-14);
  CHECK(t.constant.re.width().to_double() < 1e-30);
  CHECK(std::abs((t.constant.re.mid() - pi_inv_sqrt).to_double()) < 1e-40);
  CHECK_FALSE(t.branch_ambiguous);
}

TEST_CASE("formatting") {
  CHECK(format_complex({0.25, 0.0}) == "0.25");
  CHECK(format_complex({0.5641895835477564, 0.0}) == "0.56");
  CHECK(format_complex({0.0901699, 0.0}) == "0.09");
  CHECK(format_complex({0.4512, -0.1234}) == "0.45-0.12im");
  CHECK(format_complex({0.4512, 0.1234}, 3) == "0.451+0.123im");
  CHECK(format_rational(mpq_class(-1, 2)) == "-1/2");
  CHECK(format_rational(mpq_class(-1)) == "-1");
  const VarRoster xy = testing::roster({"x", "y"});
  const AsymptoticExpansion e = comb_expansion(P("1", xy), P("1-x-y", xy), Direction::ones(2));
  CHECK(e.formatted == "(0.25)^(-n)n^(-1/2)(0.56)");
  CHECK(format_asymptotics(e, 4) == "(0.25)^(-n)n^(-1/2)(0.5642)");
}

TEST_CASE("scaling the variables scales only the growth base") {
  const VarRoster xy = testing::roster({"x", "y"});
  const AsymptoticExpansion base = comb_expansion(P("1", xy), P("1-x-y", xy), Direction::ones(2));
  const AsymptoticExpansion scaled = comb_expansion(P("1", xy), P("1-2*x-3*y", xy), Direction::ones(2));
  REQUIRE(scaled.terms.size() == 1);
  CHECK(scaled.terms[0].growth_base.re.contains(mpq_class(1, 24)));
  CHECK(scaled.terms[0].constant.overlaps(base.terms[0].constant));
  CHECK(scaled.terms[0].point[0].re.contains(mpq_class(1, 4)));
  CHECK(scaled.terms[0].point[1].re.contains(mpq_class(1, 6)));
}

TEST_CASE("permuting the variables leaves the term unchanged") {
  const VarRoster xyz = testing::roster({"x", "y", "z"});
  const Direction r = Direction::ones(3);
  const AsymptoticExpansion a = comb_expansion(P("1", xyz), P("1-x-2*y-3*z", xyz), r);
  const AsymptoticExpansion b = comb_expansion(P("1", xyz), P("1-3*x-y-2*z", xyz), r);
  REQUIRE(a.terms.size() == 1);
  REQUIRE(b.terms.size() == 1);
  CHECK(a.terms[0].growth_base.overlaps(b.terms[0].growth_base));
  CHECK(a.terms[0].constant.overlaps(b.terms[0].constant));
  // Multinomial (3n; n, n, n) 6^n ~ 162^n sqrt(3) / (2 pi n).
  CHECK(a.terms[0].growth_base.re.contains(mpq_class(1, 162)));
  CHECK(near(a.terms[0].constant_d(), std::sqrt(3.0) / (2 * std::numbers::pi), 1e-12));
  CHECK(a.terms[0].power == -1);
}

TEST_CASE("univariate terms are residues") {
  // G/H with H = (1 - a z)(1 - b z), a > b > 0: f_n ~ -G(1/a) / (w H'(w)) a^n.
  const VarRoster z = testing::roster({"z"});
  const std::vector<std::pair<mpq_class, mpq_class>> roots{
      {3, 1}, {mpq_class(5, 2), mpq_class(1, 3)}, {7, 2}, {mpq_class(9, 4), mpq_class(3, 2)}, {4, mpq_class(1, 5)}};
  const std::vector<std::string> numerators{"1", "2+z", "1-z^2", "3/2", "1+z+z^3"};
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const auto& [a, b] = roots[i];
    const SparsePoly H = (P("1", z) - a * P("z", z)) * (P("1", z) - b * P("z", z));
    const SparsePoly G = P(numerators[i], z);
    const mpq_class w = 1 / a;
    const std::vector<mpq_class> pt{w};
    const mpq_class residue = -eval(G, pt) / (w * eval(partial(H, 0), pt));
    const AsymptoticExpansion e = comb_expansion(G, H, Direction::ones(1));
    REQUIRE(e.terms.size() == 1);
    CHECK(e.terms[0].power == 0);
    CHECK(e.terms[0].growth_base.re.contains(w));
    CHECK(e.terms[0].constant.re.contains(residue));
    CHECK(e.terms[0].constant.im.contains(mpq_class(0)));
    // The series agrees to the subdominant ratio (b/a)^n.
    const auto seq = diagonal_terms(G, H, Direction::ones(1), 41);
    const double rel = std::abs(to_double(seq[40]) / e.evaluate(40).real() - 1);
    CHECK(rel < 2 * std::pow(to_double(b / a), 40) + 1e-10);
  }
}

TEST_CASE("terms on one torus are all kept") {
  // 1/(1-4z^2) has coefficients 2^n for even n and 0 for odd n.
  const VarRoster z = testing::roster({"z"});
  const AsymptoticExpansion e = comb_expansion(P("1", z), P("1-4*z^2", z), Direction::ones(1));
  REQUIRE(e.terms.size() == 2);
  for (const auto& t : e.terms) {
    CHECK(std::abs(std::abs(t.growth_base_d()) - 0.5) < 1e-15);
    CHECK(t.constant.re.contains(mpq_class(1, 2)));
  }
  CHECK(std::abs(e.evaluate(10) - 1024.0) < 1e-9);
  CHECK(std::abs(e.evaluate(11)) < 1e-9);
}

}  // TEST_SUITE
