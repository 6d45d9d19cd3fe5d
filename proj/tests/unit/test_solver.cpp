#include <random>

#include "acsv/acsv.hpp"
#include "acsv/solver.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace acsv;
using testing::P;

namespace {

bool has_point(const SolveReport& rep, const std::vector<mpq_class>& pt) {
  for (const auto& s : rep.solutions) {
    bool all = true;
    for (std::size_t k = 0; k < pt.size(); ++k)
      all = all && s.box[k].re.contains(pt[k]) && s.box[k].im.contains(mpq_class(0));
    if (all) return true;
  }
  return false;
}

mpq_class lead(const SparsePoly& p) { return p.coeff({static_cast<unsigned>(p.total_degree())}); }

// Number of distinct real roots of a square-free univariate polynomial,
// from the sign changes of its Sturm sequence at -inf and +inf.
int sturm_real_roots(const SparsePoly& p) {
  std::vector<SparsePoly> seq{p, partial(p, 0)};
  while (!seq.back().is_constant()) {
    SparsePoly r = divide(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  auto changes = [&](bool at_plus) {
    int count = 0, prev = 0;
    for (const auto& s : seq) {
      int sg = sgn(lead(s));
      if (!at_plus && s.total_degree() % 2 == 1) sg = -sg;
      if (sg != 0 && prev != 0 && sg != prev) ++count;
      if (sg != 0) prev = sg;
    }
    return count;
  };
  return changes(false) - changes(true);
}

bool conjugate_closed(const SolveReport& rep) {
  for (const auto& s : rep.solutions) {
    BoxVector c;
    for (const auto& b : s.box) c.push_back(b.conj());
    bool found = false;
    for (const auto& o : rep.solutions) found = found || overlaps(c, o.box);
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("total-degree start system") {
  const VarRoster xy = testing::roster({"x", "y"});
  const PolySystem sys({P("x^2+y^2-5", xy), P("x*y^3-2", xy)}, xy);
  const StartSystem st = total_degree_start(sys, 1);
  CHECK(st.degrees == std::vector<int>{2, 4});
  CHECK(st.num_solutions() == 8);
  CHECK(st.patch.size() == 3);
  for (std::uint64_t i = 0; i < st.num_solutions(); ++i) {
    const CVector s = st.solution(i);
    REQUIRE(s.size() == 2);
    CHECK(std::abs(std::pow(s[0], 2) - 1.0) < 1e-12);
    CHECK(std::abs(std::pow(s[1], 4) - 1.0) < 1e-12);
  }
}

TEST_CASE("solves small systems with known solutions") {
  const VarRoster xy = testing::roster({"x", "y"});
  const PolySystem sys({P("x^2+y^2-5", xy), P("x*y-2", xy)}, xy);
  const SolveReport rep = solve_system(sys);
  CHECK(rep.solutions.size() == 4);
  CHECK(has_point(rep, {1, 2}));
  CHECK(has_point(rep, {2, 1}));
  CHECK(has_point(rep, {-1, -2}));
  CHECK(has_point(rep, {-2, -1}));
  CHECK(rep.complete);

  const PolySystem lin({P("x+y-1", xy), P("x-y", xy)}, xy);
  const SolveReport one = solve_system(lin);
  REQUIRE(one.solutions.size() == 1);
  CHECK(has_point(one, {mpq_class(1, 2), mpq_class(1, 2)}));
}

TEST_CASE("diverging paths are counted") {
  const VarRoster xy = testing::roster({"x", "y"});
  // Two conics meeting in two affine points; the other two go to infinity.
  const PolySystem sys({P("x^2-y", xy), P("x^2-y+x-1", xy)}, xy);
  const SolveReport rep = solve_system(sys);
  CHECK(rep.paths_tracked == 4);
  CHECK(rep.solutions.size() == 1);
  CHECK(has_point(rep, {1, 1}));
}

TEST_CASE("newton polytope vertices") {
  const VarRoster xy = testing::roster({"x", "y"});
  CHECK(newton_polytope(P("1-x-y", xy)).size() == 3);
  const auto sq = newton_polytope(P("1+x^2+y^2+x^2*y^2+x*y", xy));
  CHECK(sq.size() == 4);
  for (const auto& v : sq) CHECK(v != std::vector<long>{1, 1});
  CHECK(newton_polytope(P("1+x+x^2+x^3", testing::roster({"x"}))).size() == 2);
}

TEST_CASE("mixed volume examples") {
  const std::vector<std::vector<long>> square{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  CHECK(mixed_volume({square, square}).value == 2u);
  const std::vector<std::vector<long>> simplex{{0, 0}, {1, 0}, {0, 1}};
  CHECK(mixed_volume({simplex, simplex}).value == 1u);
  const std::vector<std::vector<long>> s2{{0, 0}, {2, 0}, {0, 2}};
  const std::vector<std::vector<long>> s3{{0, 0}, {3, 0}, {0, 3}};
  CHECK(mixed_volume({s2, s3}).value == 6u);
  // Bernstein is sharper than Bezout for sparse systems.
  const VarRoster xy = testing::roster({"x", "y"});
  const PolySystem sparse({P("1+x*y+x^2*y^2", xy), P("x+y", xy)}, xy);
  CHECK(mixed_volume(sparse).value == 4u);
}

TEST_CASE("mixed volume of the combinatorial extended system") {
  const VarRoster xy = testing::roster({"x", "y"});
  const Direction r = Direction::ones(2);
  CHECK(mixed_volume(build_comb_system(P("1-x-y", xy), r, false)).value == 1u);
  CHECK(mixed_volume(build_comb_system(P("1-x*y-x*y^2-2*x^2*y", xy), r, false)).value == 9u);
}

TEST_CASE("mixed volume is independent of the lifting seed") {
  const VarRoster xy = testing::roster({"x", "y"});
  const PolySystem sys = build_comb_system(P("1-x*y-x*y^2-2*x^2*y", xy), Direction::ones(2), false);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    MixedVolumeOptions o;
    o.seed = seed;
    CHECK(mixed_volume(sys, o).value == 9u);
  }
}

TEST_CASE("residual soundness and conjugate closure") {
  std::mt19937_64 rng(21);
  const VarRoster xy = testing::roster({"x", "y"});
  for (int i = 0; i < 6; ++i) {
    const SparsePoly f = P("1", xy) + testing::random_poly(rng, xy, 3, 2);
    const SparsePoly g = P("1", xy) + testing::random_poly(rng, xy, 3, 2);
    if (f.total_degree() == 0 || g.total_degree() == 0) continue;
    const PolySystem sys({f, g}, xy);
    const SolveReport rep = solve_system(sys);
    for (const auto& s : rep.solutions) {
      CHECK(s.certified);
      const BoxVector v = eval_system(sys, s.box);
      for (const auto& b : v) CHECK(b.contains_zero());
    }
    CHECK(conjugate_closed(rep));
  }
}

TEST_CASE("same seed gives the same endpoints") {
  const VarRoster xy = testing::roster({"x", "y"});
  const PolySystem sys({P("x^3+y-2", xy), P("x*y^2-3*x+1", xy)}, xy);
  SolveOptions o;
  o.seed = 42;
  const auto a = track_all(sys, o), b = track_all(sys, o);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].status == b[i].status);
    CHECK(a[i].endpoint == b[i].endpoint);
  }
}

TEST_CASE("univariate real root counts agree with Sturm sequences") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> coef(-9, 9);
  const VarRoster x = testing::roster({"x"});
  int tried = 0;
  while (tried < 25) {
    const int deg = 2 + static_cast<int>(rng() % 6);
    SparsePoly p = SparsePoly::constant(x, coef(rng));
    for (int k = 1; k <= deg; ++k) p += SparsePoly::constant(x, coef(rng)) * P("x^" + std::to_string(k), x);
    if (static_cast<int>(p.total_degree()) != deg || p.constant_term() == 0) continue;
    if (square_free_part(p).total_degree() != p.total_degree()) continue;
    ++tried;
    const PolySystem sys({p}, x);
    const SolveReport rep = solve_system(sys);
    CHECK(rep.solutions.size() == static_cast<std::size_t>(deg));
    int real = 0;
    for (const auto& s : rep.solutions)
      if (s.real || certify_real(s, sys, CertifyOptions{})) ++real;
    CHECK_MESSAGE(real == sturm_real_roots(p), p.to_string());
    CHECK(conjugate_closed(rep));
  }
}

}  // TEST_SUITE
