#include <algorithm>
#include <map>

#include "acsv/poly.hpp"

namespace acsv {

namespace {

bool divides(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

// Scales to a primitive integer polynomial with positive leading coefficient.
SparsePoly normalize(const SparsePoly& p) {
  if (p.is_zero()) return p;
  mpz_class lcm_den = 1, gcd_num = 0;
  for (const auto& [e, c] : p.terms()) {
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), c.get_num_mpz_t());
  }
  mpq_class scale(lcm_den, gcd_num);
  scale.canonicalize();
  if (sgn(p.leading_term().second) < 0) scale = -scale;
  return p * scale;
}

int top_variable(const SparsePoly& p) {
  for (int v = static_cast<int>(p.nvars()) - 1; v >= 0; --v)
    if (p.degree_in(v) > 0) return v;
  return -1;
}

// Coefficients of p viewed as a univariate polynomial in `var`.
std::map<unsigned, SparsePoly> coefficients_in(const SparsePoly& p, std::size_t var) {
  std::map<unsigned, PolyBuilder> builders;
  for (const auto& [e, c] : p.terms()) {
    Exponent rest = e;
    rest[var] = 0;
    builders.try_emplace(e[var], p.roster()).first->second.add(rest, c);
  }
  std::map<unsigned, SparsePoly> out;
  for (auto& [k, b] : builders) out.emplace(k, std::move(b).build());
  return out;
}

SparsePoly content_in(const SparsePoly& p, std::size_t var) {
  SparsePoly g(p.roster());
  for (auto& [k, c] : coefficients_in(p, var)) {
    g = gcd(g, c);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

SparsePoly var_power(const VarRoster& roster, std::size_t var, unsigned k) {
  Exponent e(roster.size(), 0);
  e[var] = k;
  return SparsePoly::monomial(roster, e, 1);
}

SparsePoly pseudo_remainder(SparsePoly a, const SparsePoly& b, std::size_t var) {
  const int n = b.degree_in(var);
  auto bc = coefficients_in(b, var);
  const SparsePoly& lead_b = bc.rbegin()->second;
  while (!a.is_zero() && a.degree_in(var) >= n) {
    const int m = a.degree_in(var);
    auto ac = coefficients_in(a, var);
    const SparsePoly& lead_a = ac.rbegin()->second;
    a = lead_b * a - lead_a * var_power(a.roster(), var, static_cast<unsigned>(m - n)) * b;
  }
  return a;
}

}  // namespace

std::pair<SparsePoly, SparsePoly> divide(const SparsePoly& a, const SparsePoly& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (!(a.roster() == b.roster())) throw std::invalid_argument("divide: roster mismatch");
  PolyBuilder q(a.roster()), r(a.roster());
  SparsePoly p = a;
  const auto& [lb_e, lb_c] = b.leading_term();
  while (!p.is_zero()) {
    const auto [lp_e, lp_c] = p.leading_term();
    if (divides(lb_e, lp_e)) {
      Exponent qe = lp_e;
      for (std::size_t i = 0; i < qe.size(); ++i) qe[i] -= lb_e[i];
      const mpq_class qc = lp_c / lb_c;
      q.add(qe, qc);
      p -= SparsePoly::monomial(a.roster(), qe, qc) * b;
    } else {
      r.add(lp_e, lp_c);
      p -= SparsePoly::monomial(a.roster(), lp_e, lp_c);
    }
  }
  return {std::move(q).build(), std::move(r).build()};
}

SparsePoly divide_exact(const SparsePoly& a, const SparsePoly& b) {
  auto [q, r] = divide(a, b);
  if (!r.is_zero()) throw std::domain_error("polynomial division is not exact");
  return q;
}

SparsePoly gcd(const SparsePoly& a, const SparsePoly& b) {
  if (!(a.roster() == b.roster())) throw std::invalid_argument("gcd: roster mismatch");
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  const int va = top_variable(a), vb = top_variable(b);
  if (va < 0 || vb < 0) return SparsePoly::constant(a.roster(), 1);
  const std::size_t v = static_cast<std::size_t>(std::max(va, vb));
  if (a.degree_in(v) == 0) return gcd(a, content_in(b, v));
  if (b.degree_in(v) == 0) return gcd(content_in(a, v), b);

  const SparsePoly ca = content_in(a, v), cb = content_in(b, v);
  const SparsePoly g_content = gcd(ca, cb);
  SparsePoly pa = divide_exact(a, ca), pb = divide_exact(b, cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  for (;;) {
    SparsePoly r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) <= 0) {
      pb = SparsePoly::constant(a.roster(), 1);
      break;
    }
    pa = std::move(pb);
    pb = divide_exact(r, content_in(r, v));
  }
  pb = divide_exact(pb, content_in(pb, v));
  return normalize(g_content * pb);
}

SparsePoly square_free_part(const SparsePoly& p) {
  if (p.is_zero()) throw std::invalid_argument("square_free_part of the zero polynomial");
  SparsePoly g = p;
  for (std::size_t j = 0; j < p.nvars(); ++j) {
    if (g.is_constant()) break;
    g = gcd(g, partial(p, j));
  }
  return normalize(divide_exact(p, g));
}

}  // namespace acsv
