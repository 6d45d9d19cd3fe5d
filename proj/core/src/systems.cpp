#include <numeric>
#include <stdexcept>

#include "acsv/acsv.hpp"

namespace acsv {

namespace {

std::string fresh_name(const VarRoster& taken, std::string base) {
  while (taken.index_of(base) != taken.size()) base += "_";
  return base;
}

SparsePoly var(const VarRoster& r, std::size_t i) { return SparsePoly::variable(r, i); }

SparsePoly cst(const VarRoster& r, const mpq_class& c) { return SparsePoly::constant(r, c); }

// p(t z) for p over the first d variables of `target`, t at index t_index.
SparsePoly scale_by(const SparsePoly& p, const VarRoster& target, std::size_t t_index) {
  PolyBuilder b(target);
  for (const auto& [e, c] : p.terms()) {
    Exponent f(target.size(), 0);
    unsigned deg = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      f[i] = e[i];
      deg += e[i];
    }
    f[t_index] = deg;
    b.add(f, c);
  }
  return std::move(b).build();
}

void check_input(const SparsePoly& H, const Direction& r) {
  if (H.is_zero()) throw std::invalid_argument("denominator is zero");
  if (H.constant_term() == 0) throw std::invalid_argument("denominator has zero constant term");
  if (r.size() != H.nvars())
    throw std::invalid_argument("direction has " + std::to_string(r.size()) + " entries for " +
                                std::to_string(H.nvars()) + " variables");
}

struct SplitParts {
  SparsePoly re, im;
  std::vector<SparsePoly> re_x, re_y, im_x, im_y;
};

SplitParts split_parts(const SparsePoly& H) {
  const std::size_t d = H.nvars();
  auto s = re_im_split(H);
  SplitParts out{s.re, s.im, {}, {}, {}, {}};
  for (std::size_t j = 0; j < d; ++j) {
    out.re_x.push_back(partial(s.re, j));
    out.re_y.push_back(partial(s.re, d + j));
    out.im_x.push_back(partial(s.im, j));
    out.im_y.push_back(partial(s.im, d + j));
  }
  return out;
}

std::vector<std::size_t> block_map(std::size_t first, std::size_t second, std::size_t d) {
  std::vector<std::size_t> m(2 * d);
  for (std::size_t j = 0; j < d; ++j) {
    m[j] = first + j;
    m[d + j] = second + j;
  }
  return m;
}

// Equations H^R(x,y) = H^I(x,y) = 0, x_j^2 + y_j^2 - t m_j and the nu or
// nu = infinity conditions, over `R`; `m` holds the m_j expressions.
void append_minimality(std::vector<SparsePoly>& eqs, const SplitParts& sp, const VarRoster& R, std::size_t x0,
                       std::size_t y0, std::size_t t, std::optional<std::size_t> nu, const std::vector<SparsePoly>& m,
                       std::size_t d) {
  const auto mxy = block_map(x0, y0, d);
  eqs.push_back(sp.re.embed(R, mxy));
  eqs.push_back(sp.im.embed(R, mxy));
  for (std::size_t j = 0; j < d; ++j)
    eqs.push_back(var(R, x0 + j) * var(R, x0 + j) + var(R, y0 + j) * var(R, y0 + j) - var(R, t) * m[j]);
  for (std::size_t j = 0; j < d; ++j) {
    const SparsePoly hx = sp.re_x[j].embed(R, mxy), hy = sp.re_y[j].embed(R, mxy);
    const SparsePoly xj = var(R, x0 + j), yj = var(R, y0 + j);
    if (nu) {
      const SparsePoly v = var(R, *nu);
      eqs.push_back((yj - v * xj) * hx - (xj + v * yj) * hy);
    } else if (j + 1 < d) {
      // The last instance is dropped to keep the system square.
      eqs.push_back(-(xj * hx) - yj * hy);
    }
  }
}

}  // namespace

PolySystem build_critical_system(const SparsePoly& H, const Direction& r) {
  check_input(H, r);
  const std::size_t d = H.nvars();
  const VarRoster& R = H.roster();
  std::vector<SparsePoly> eqs{H};
  const SparsePoly g1 = var(R, 0) * partial(H, 0);
  for (std::size_t k = 1; k < d; ++k)
    eqs.push_back(mpq_class(r[k]) * g1 - mpq_class(r[0]) * (var(R, k) * partial(H, k)));
  return PolySystem(std::move(eqs), R, SystemTag::critical);
}

PolySystem build_comb_system(const SparsePoly& H, const Direction& r, bool with_mu) {
  check_input(H, r);
  const std::size_t d = H.nvars();
  std::vector<std::string> names = H.roster().names();
  const std::string lam = fresh_name(H.roster(), "lambda");
  const std::string t = fresh_name(H.roster(), "t");
  names.push_back(lam);
  names.push_back(t);
  if (with_mu) names.push_back(fresh_name(H.roster(), "mu"));
  const VarRoster R(names);
  std::vector<std::size_t> id(d);
  std::iota(id.begin(), id.end(), 0);

  const SparsePoly Hz = H.embed(R, id);
  std::vector<SparsePoly> eqs{Hz, scale_by(H, R, d + 1)};
  for (std::size_t j = 0; j < d; ++j)
    eqs.push_back(var(R, j) * partial(Hz, j) - mpq_class(r[j]) * var(R, d));
  if (with_mu) eqs.push_back((cst(R, 1) - var(R, d + 1)) * var(R, d + 2) - cst(R, 1));
  return PolySystem(std::move(eqs), R, SystemTag::comb_extended);
}

GeneralSystems build_general_systems(const SparsePoly& H, const Direction& r) {
  check_input(H, r);
  const std::size_t d = H.nvars();
  const SplitParts sp = split_parts(H);

  auto make = [&](bool with_nu) {
    std::vector<std::string> names;
    for (const char* pre : {"a_", "b_", "x_", "y_"})
      for (const auto& n : H.roster().names()) names.push_back(pre + n);
    names.push_back("lambda_R");
    names.push_back("lambda_I");
    if (with_nu) names.push_back("nu");
    names.push_back("t");
    const VarRoster R(names);
    const std::size_t a0 = 0, b0 = d, x0 = 2 * d, y0 = 3 * d, lR = 4 * d, lI = 4 * d + 1;
    const std::size_t t = R.size() - 1;
    const auto mab = block_map(a0, b0, d);

    std::vector<SparsePoly> eqs{sp.re.embed(R, mab), sp.im.embed(R, mab)};
    for (std::size_t j = 0; j < d; ++j)
      eqs.push_back(var(R, a0 + j) * sp.re_x[j].embed(R, mab) + var(R, b0 + j) * sp.re_y[j].embed(R, mab) -
                    mpq_class(r[j]) * var(R, lR));
    for (std::size_t j = 0; j < d; ++j)
      eqs.push_back(var(R, a0 + j) * sp.im_x[j].embed(R, mab) + var(R, b0 + j) * sp.im_y[j].embed(R, mab) -
                    mpq_class(r[j]) * var(R, lI));
    std::vector<SparsePoly> m;
    for (std::size_t j = 0; j < d; ++j)
      m.push_back(var(R, a0 + j) * var(R, a0 + j) + var(R, b0 + j) * var(R, b0 + j));
    append_minimality(eqs, sp, R, x0, y0, t, with_nu ? std::optional<std::size_t>(4 * d + 2) : std::nullopt, m, d);
    return PolySystem(std::move(eqs), R, with_nu ? SystemTag::general_nu : SystemTag::general_nu0);
  };
  return GeneralSystems{make(true), make(false)};
}

GeneralSubsystems build_general_subsystems(const SparsePoly& H, const Direction& r) {
  check_input(H, r);
  const std::size_t d = H.nvars();
  const SplitParts sp = split_parts(H);
  GeneralSubsystems out;
  for (bool with_nu : {true, false}) {
    std::vector<std::string> names;
    for (const char* pre : {"x_", "y_"})
      for (const auto& n : H.roster().names()) names.push_back(pre + n);
    if (with_nu) names.push_back("nu");
    names.push_back("t");
    const std::size_t t = names.size() - 1;
    for (const auto& n : H.roster().names()) names.push_back("m_" + n);
    const VarRoster R(names);
    std::vector<SparsePoly> m;
    for (std::size_t j = 0; j < d; ++j) m.push_back(var(R, t + 1 + j));
    std::vector<SparsePoly> eqs;
    append_minimality(eqs, sp, R, 0, d, t, with_nu ? std::optional<std::size_t>(2 * d) : std::nullopt, m, d);
    if (with_nu) {
      out.nu_family = std::move(eqs);
      out.nu_roster = R;
    } else {
      out.nu0_family = std::move(eqs);
      out.nu0_roster = R;
    }
  }
  return out;
}

}  // namespace acsv
