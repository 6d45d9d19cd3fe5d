#include "acsv/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "acsv/oracle.hpp"

namespace acsv {

std::string to_string(AsymptoticFailureKind kind) {
  switch (kind) {
    case AsymptoticFailureKind::hzd_zero: return "hzd_zero";
    case AsymptoticFailureKind::degenerate_hessian: return "degenerate_hessian";
    case AsymptoticFailureKind::numerator_vanishes: return "numerator_vanishes";
  }
  return "unknown";
}

namespace {

ComplexBox real_box(const mpq_class& q, mpfr_prec_t prec) { return ComplexBox(q, prec); }

ComplexBox det_box(const BoxMatrix& m, mpfr_prec_t prec) {
  const std::size_t n = m.size();
  if (n == 0) return real_box(1, prec);
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  // Laplace expansion along the first row; sizes here are tiny.
  ComplexBox acc = real_box(0, prec);
  for (std::size_t c = 0; c < n; ++c) {
    BoxMatrix minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<ComplexBox> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[i][j]);
      minor.push_back(std::move(row));
    }
    const ComplexBox term = m[0][c] * det_box(minor, prec);
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

mpfr_prec_t box_prec(const BoxVector& w) {
  mpfr_prec_t p = 53;
  for (const auto& b : w) p = std::max(p, b.prec());
  return p;
}

bool meets_cut(const ComplexBox& z) { return z.im.contains_zero() && z.re.lo().sign() <= 0; }

}  // namespace

PhaseHessian phase_hessian(const SparsePoly& H, const Direction& r, const BoxVector& w) {
  const std::size_t d = H.nvars();
  if (w.size() != d || r.size() != d) throw std::invalid_argument("phase_hessian: dimension mismatch");
  const mpfr_prec_t prec = box_prec(w);

  std::vector<SparsePoly> dH(d);
  std::vector<ComplexBox> Hk;
  std::size_t best = d;
  double best_mag = -1.0;
  for (std::size_t k = 0; k < d; ++k) {
    dH[k] = partial(H, k);
    Hk.push_back(eval(dH[k], w));
    if (Hk[k].contains_zero() || (w[k] * Hk[k]).contains_zero()) continue;
    const double mag = std::abs(w[k].mid_d() * Hk[k].mid_d());
    if (mag > best_mag) {
      best_mag = mag;
      best = k;
    }
  }
  if (best == d) throw AsymptoticFailure(AsymptoticFailureKind::hzd_zero, "every w_k H_{z_k}(w) may vanish");

  PhaseHessian ph;
  ph.distinguished = best;
  const std::size_t D = best;
  std::vector<std::size_t> others;
  for (std::size_t k = 0; k < d; ++k)
    if (k != D) others.push_back(k);

  const ComplexBox denom = w[D] * Hk[D];
  auto U = [&](std::size_t i, std::size_t j) {
    return (w[i] * w[j] * eval(partial(dH[i], j), w)) / denom;
  };
  auto V = [&](std::size_t i) { return real_box(mpq_class(r[i], r[D]), prec); };

  const std::size_t m = others.size();
  ph.entries.assign(m, std::vector<ComplexBox>(m, ComplexBox(prec)));
  const ComplexBox Udd = U(D, D);
  std::vector<ComplexBox> Uid;
  for (std::size_t i : others) Uid.push_back(U(i, D));
  for (std::size_t a = 0; a < m; ++a) {
    const std::size_t i = others[a];
    const ComplexBox Vi = V(i);
    ph.entries[a][a] = Vi + Vi * Vi + U(i, i) - real_box(2, prec) * Vi * Uid[a] + Vi * Vi * Udd;
    for (std::size_t b = a + 1; b < m; ++b) {
      const std::size_t j = others[b];
      const ComplexBox Vj = V(j);
      ph.entries[a][b] = Vi * Vj + U(i, j) - Vj * Uid[a] - Vi * Uid[b] + Vi * Vj * Udd;
      ph.entries[b][a] = ph.entries[a][b];
    }
  }
  ph.det = det_box(ph.entries, prec);
  return ph;
}

std::complex<double> AsymptoticTerm::evaluate(long n) const {
  const double p = power.get_d();
  return std::pow(growth_base_d(), -static_cast<double>(n)) * std::pow(static_cast<double>(n), p) * constant_d();
}

AsymptoticTerm leading_term(const SparsePoly& G, const SparsePoly& H, const Direction& r, const BoxVector& w) {
  const std::size_t d = H.nvars();
  const mpfr_prec_t prec = box_prec(w);
  const PhaseHessian ph = phase_hessian(H, r, w);
  if (ph.det.contains_zero())
    throw AsymptoticFailure(AsymptoticFailureKind::degenerate_hessian, "det of the phase Hessian may vanish");
  const ComplexBox Gw = eval(G, w);
  if (Gw.contains_zero()) throw AsymptoticFailure(AsymptoticFailureKind::numerator_vanishes, "G may vanish at w");

  AsymptoticTerm t;
  t.point = w;
  t.distinguished = ph.distinguished;
  t.power = mpq_class(1 - static_cast<long>(d), 2);
  t.power.canonicalize();
  t.growth_base = real_box(1, prec);
  for (std::size_t k = 0; k < d; ++k) t.growth_base = t.growth_base * pow(w[k], static_cast<unsigned>(r[k]));

  const std::size_t D = ph.distinguished;
  // (2 pi r_d)^((1-d)/2) as 1 / sqrt(2 pi r_d)^(d-1).
  const Interval s = sqrt(Interval(2.0, prec) * Interval::pi(prec) * Interval(mpq_class(r[D]), prec));
  Interval scale(1.0, prec);
  for (std::size_t k = 1; k < d; ++k) scale = scale / s;

  ComplexBox root(prec);
  if (meets_cut(ph.det)) {
    // On the negative real axis the principal branch is +i sqrt(-det).
    const ComplexBox q = sqrt(-ph.det);
    root = ComplexBox(-q.im, q.re);
    t.branch_ambiguous = true;
  } else {
    root = sqrt(ph.det);
  }
  const ComplexBox HD = eval(partial(H, D), w);
  t.constant = scale * ((-Gw) / (root * w[D] * HD));
  return t;
}

std::complex<double> AsymptoticExpansion::evaluate(long n) const {
  std::complex<double> acc = 0.0;
  for (const auto& t : terms) acc += t.evaluate(n);
  return acc;
}

namespace {

bool is_real_point(const BoxVector& w) {
  for (const auto& b : w)
    if (!b.im.contains_zero()) return false;
  return true;
}

bool conjugate_points(const BoxVector& a, const BoxVector& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!a[k].overlaps(b[k].conj())) return false;
  return true;
}

// Chooses signs of sqrt(det) for terms whose branch is not forced by a
// positive real point, by comparing against exact diagonal coefficients.
void resolve_branches(const SparsePoly& G, const SparsePoly& H, const Direction& r, AsymptoticExpansion& exp,
                      long max_n) {
  // Group conjugate pairs so they flip together.
  std::vector<std::vector<std::size_t>> groups;
  std::vector<bool> used(exp.terms.size(), false);
  for (std::size_t i = 0; i < exp.terms.size(); ++i) {
    if (used[i]) continue;
    const auto& ti = exp.terms[i];
    if (is_real_point(ti.point) && !ti.branch_ambiguous) continue;
    used[i] = true;
    std::vector<std::size_t> grp{i};
    for (std::size_t j = i + 1; j < exp.terms.size(); ++j)
      if (!used[j] && conjugate_points(ti.point, exp.terms[j].point)) {
        used[j] = true;
        grp.push_back(j);
        break;
      }
    groups.push_back(std::move(grp));
  }
  if (groups.empty()) return;
  if (groups.size() > 6) {
    exp.warnings.push_back("square-root branch left unchecked: too many complex terms");
    return;
  }

  std::vector<mpq_class> seq;
  try {
    seq = diagonal_terms(G, H, r, static_cast<std::size_t>(max_n) + 1);
  } catch (const std::exception& e) {
    exp.warnings.push_back(std::string("square-root branch left unchecked: ") + e.what());
    return;
  }
  std::vector<long> ns;
  for (long n = std::max<long>(1, max_n - 5); n <= max_n; ++n) ns.push_back(n);

  auto score = [&](unsigned mask) {
    double err = 0.0;
    for (long n : ns) {
      std::complex<double> pred = 0.0;
      for (std::size_t t = 0; t < exp.terms.size(); ++t) {
        bool flip = false;
        for (std::size_t g = 0; g < groups.size(); ++g)
          if ((mask >> g) & 1u)
            for (std::size_t k : groups[g]) flip = flip || k == t;
        pred += (flip ? -1.0 : 1.0) * exp.terms[t].evaluate(n);
      }
      const double f = to_double(seq[static_cast<std::size_t>(n)]);
      err += std::abs(pred - f) / std::max(std::abs(f), 1e-300);
    }
    return err;
  };

  unsigned best = 0;
  double best_err = score(0);
  for (unsigned mask = 1; mask < (1u << groups.size()); ++mask) {
    const double e = score(mask);
    if (e < best_err) {
      best_err = e;
      best = mask;
    }
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (!((best >> g) & 1u)) continue;
    for (std::size_t k : groups[g]) {
      auto& t = exp.terms[k];
      t.constant = -t.constant;
      t.branch_flipped = true;
      exp.warnings.push_back("sign of sqrt(det) for term " + std::to_string(k) +
                             " chosen by comparison with the series coefficients up to n = " + std::to_string(max_n));
    }
  }
}

}  // namespace

AsymptoticExpansion expansion(const SparsePoly& G, const SparsePoly& H, const Direction& r,
                              const MinimalityResult& result, const ExpansionOptions& opts) {
  if (is_failure(result.status))
    throw std::invalid_argument("expansion: minimality status " + to_string(result.status));
  if (result.minimal_points.empty()) throw std::invalid_argument("expansion: no minimal points");
  AsymptoticExpansion exp;
  if (result.status == MinStatus::warn_precision_cap)
    exp.warnings.push_back("minimal points could not be separated by modulus at the precision cap");

  for (const auto& p : result.minimal_points) {
    CertifiedSolution sol = p;
    if (result.critical && p.certified) {
      auto refined = refine_bits(p, result.critical->system, opts.refine_bits, opts.cert);
      if (refined) sol = std::move(refined).value();
    }
    if (sol.real)
      for (auto& b : sol.box) b.im = Interval(0.0, b.prec());
    exp.terms.push_back(leading_term(G, H, r, sol.box));
  }

  for (std::size_t k = 1; k < exp.terms.size(); ++k)
    if (!abs(exp.terms[k].growth_base).overlaps(abs(exp.terms[0].growth_base)))
      exp.warnings.push_back("term " + std::to_string(k) + " has a different growth modulus");

  if (opts.branch_check_n > 0) resolve_branches(G, H, r, exp, opts.branch_check_n);
  exp.formatted = format_asymptotics(exp, opts.digits);
  return exp;
}

namespace {

// Shortest decimal that reads back as v, in the style 0.25, 1.0, 6.2e-39.
std::string shortest(double v) {
  if (v == 0.0) return "0.0";
  char buf[64];
  for (int p = 1; p <= 17; ++p) {
    std::snprintf(buf, sizeof buf, "%.*g", p, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  std::string s(buf);
  const auto epos = s.find('e');
  std::string mant = epos == std::string::npos ? s : s.substr(0, epos);
  if (mant.find('.') == std::string::npos) mant += ".0";
  if (epos == std::string::npos) return mant;
  const int ex = std::atoi(s.c_str() + epos + 1);
  return mant + "e" + std::to_string(ex);
}

double round_sig(double v, int digits) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", std::max(digits, 1) - 1, v);
  return std::strtod(buf, nullptr);
}

}  // namespace

std::string format_complex(std::complex<double> z, int digits) {
  const double re = round_sig(z.real(), digits);
  const double im = round_sig(z.imag(), digits);
  std::string out = shortest(re == 0.0 ? 0.0 : re);
  if (z.imag() == 0.0) return out;
  out += im < 0 ? "-" : "+";
  out += shortest(std::abs(im));
  out += "im";
  return out;
}

std::string format_rational(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string format_term(const AsymptoticTerm& t, int digits) {
  return "(" + format_complex(t.growth_base_d(), digits) + ")^(-n)n^(" + format_rational(t.power) + ")(" +
         format_complex(t.constant_d(), digits) + ")";
}

std::string format_asymptotics(const AsymptoticExpansion& exp, int digits) {
  std::string out;
  for (std::size_t i = 0; i < exp.terms.size(); ++i) {
    if (i) out += " + ";
    out += format_term(exp.terms[i], digits);
  }
  return out;
}

}  // namespace acsv
