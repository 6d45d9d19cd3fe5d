#include <algorithm>
#include <cmath>

#include "acsv/certify.hpp"

namespace acsv {

std::string to_string(CertFailureKind kind) {
  switch (kind) {
    case CertFailureKind::non_contracting: return "non_contracting";
    case CertFailureKind::singular_jacobian: return "singular_jacobian";
    case CertFailureKind::precision_cap: return "precision_cap";
  }
  return "unknown";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::unknown: return "unknown";
  }
  return "unknown";
}

std::vector<BigComplex> CertifiedSolution::center() const {
  std::vector<BigComplex> c;
  c.reserve(box.size());
  for (const auto& b : box) c.push_back(b.mid());
  return c;
}

namespace {

template <class T, class Vec>
std::vector<std::vector<T>> power_table(const PolySystem& sys, const Vec& x, const T& one) {
  std::vector<std::vector<T>> pw(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    int deg = 0;
    for (const auto& p : sys.polys()) deg = std::max(deg, p.degree_in(i));
    pw[i].push_back(one);
    for (int k = 1; k <= deg; ++k) pw[i].push_back(pw[i].back() * x[i]);
  }
  return pw;
}

template <class T, class FromCoeff>
T eval_with(const SparsePoly& p, const std::vector<std::vector<T>>& pw, const T& zero, FromCoeff from) {
  T acc = zero;
  for (const auto& [e, c] : p.terms()) {
    T term = from(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) term = term * pw[i][e[i]];
    acc = acc + term;
  }
  return acc;
}

mpfr_prec_t max_prec(std::span<const ComplexBox> box) {
  mpfr_prec_t p = 53;
  for (const auto& b : box) p = std::max(p, b.prec());
  return p;
}

mpfr_prec_t max_prec(std::span<const BigComplex> pt) {
  mpfr_prec_t p = 53;
  for (const auto& z : pt) p = std::max(p, z.prec());
  return p;
}

std::vector<BigComplex> eval_point(const PolySystem& sys, std::span<const BigComplex> y) {
  const mpfr_prec_t p = max_prec(y);
  BigComplex one(p), zero(p);
  one.re = BigFloat(1.0, p);
  auto pw = power_table(sys, y, one);
  auto from = [p](const mpq_class& c) { return BigComplex(BigFloat(c, p), BigFloat(p)); };
  std::vector<BigComplex> out;
  out.reserve(sys.size());
  for (const auto& poly : sys.polys()) out.push_back(eval_with(poly, pw, zero, from));
  return out;
}

std::vector<std::vector<BigComplex>> jacobian_point(const PolySystem& sys, std::span<const BigComplex> y) {
  const mpfr_prec_t p = max_prec(y);
  BigComplex one(p), zero(p);
  one.re = BigFloat(1.0, p);
  auto pw = power_table(sys, y, one);
  auto from = [p](const mpq_class& c) { return BigComplex(BigFloat(c, p), BigFloat(p)); };
  std::vector<std::vector<BigComplex>> out(sys.size());
  for (std::size_t i = 0; i < sys.size(); ++i)
    for (const auto& d : sys.jacobian()[i]) out[i].push_back(eval_with(d, pw, zero, from));
  return out;
}

Interval around(const BigFloat& c, const BigFloat& r) {
  const mpfr_prec_t p = std::max(c.prec(), r.prec());
  BigFloat lo(p), hi(p);
  mpfr_sub(lo.get(), c.get(), r.get(), MPFR_RNDD);
  mpfr_add(hi.get(), c.get(), r.get(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

BigFloat abs_max(const BigComplex& z) {
  BigFloat a = abs(z.re), b = abs(z.im);
  return a < b ? b : a;
}

}  // namespace

BoxVector eval_system(const PolySystem& sys, std::span<const ComplexBox> box) {
  if (box.size() != sys.roster().size()) throw std::invalid_argument("eval_system: dimension mismatch");
  const mpfr_prec_t p = max_prec(box);
  const ComplexBox one(mpq_class(1), p), zero(mpq_class(0), p);
  auto pw = power_table(sys, box, one);
  auto from = [p](const mpq_class& c) { return ComplexBox(c, p); };
  BoxVector out;
  out.reserve(sys.size());
  for (const auto& poly : sys.polys()) out.push_back(eval_with(poly, pw, zero, from));
  return out;
}

BoxMatrix eval_jacobian(const PolySystem& sys, std::span<const ComplexBox> box) {
  if (box.size() != sys.roster().size()) throw std::invalid_argument("eval_jacobian: dimension mismatch");
  const mpfr_prec_t p = max_prec(box);
  const ComplexBox one(mpq_class(1), p), zero(mpq_class(0), p);
  auto pw = power_table(sys, box, one);
  auto from = [p](const mpq_class& c) { return ComplexBox(c, p); };
  BoxMatrix out(sys.size());
  for (std::size_t i = 0; i < sys.size(); ++i)
    for (const auto& d : sys.jacobian()[i]) out[i].push_back(eval_with(d, pw, zero, from));
  return out;
}

std::optional<std::vector<std::vector<BigComplex>>> invert(std::vector<std::vector<BigComplex>> m) {
  const std::size_t n = m.size();
  if (n == 0) return m;
  const mpfr_prec_t p = m[0][0].prec();
  std::vector<std::vector<BigComplex>> inv(n, std::vector<BigComplex>(n, BigComplex(p)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i].re = BigFloat(1.0, p);

  BigFloat scale(p);
  for (const auto& row : m)
    for (const auto& z : row) {
      BigFloat a = z.norm_sq();
      if (a > scale) scale = a;
    }
  if (scale.is_zero()) return std::nullopt;
  // Pivots below 2^-(p-8) relative to the largest entry count as zero.
  BigFloat tiny = scale;
  mpfr_div_2si(tiny.get(), tiny.get(), 2 * (static_cast<long>(p) - 8), MPFR_RNDN);

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    BigFloat best = m[col][col].norm_sq();
    for (std::size_t r = col + 1; r < n; ++r) {
      BigFloat a = m[r][col].norm_sq();
      if (a > best) {
        best = a;
        piv = r;
      }
    }
    if (best <= tiny) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    const BigComplex d = m[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      m[col][c] = m[col][c] / d;
      inv[col][c] = inv[col][c] / d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const BigComplex f = m[r][col];
      if (f.re.is_zero() && f.im.is_zero()) continue;
      for (std::size_t c = 0; c < n; ++c) {
        m[r][c] = m[r][c] - f * m[col][c];
        inv[r][c] = inv[r][c] - f * inv[col][c];
      }
    }
  }
  return inv;
}

Outcome<CertifiedSolution> krawczyk_test(const PolySystem& sys, std::span<const BigComplex> approx,
                                         std::span<const BigFloat> radius, bool real_mode) {
  const std::size_t n = sys.size();
  if (approx.size() != n || radius.size() != n || sys.roster().size() != n)
    throw std::invalid_argument("krawczyk_test: dimension mismatch");
  const mpfr_prec_t p = max_prec(approx);

  std::vector<BigComplex> y;
  y.reserve(n);
  for (const auto& z : approx) {
    BigComplex c = z.with_prec(p);
    if (real_mode) c.im = BigFloat(p);
    y.push_back(std::move(c));
  }

  BoxVector X, Y0;
  for (std::size_t i = 0; i < n; ++i) {
    if (radius[i].sign() <= 0) throw std::invalid_argument("krawczyk radius must be positive");
    Interval re = around(y[i].re, radius[i]);
    Interval im = real_mode ? Interval(0.0, p) : around(y[i].im, radius[i]);
    X.emplace_back(std::move(re), std::move(im));
    Y0.emplace_back(y[i]);
  }

  auto inv = invert(jacobian_point(sys, y));
  if (!inv) return CertFailure{CertFailureKind::singular_jacobian, "approximate inverse unavailable"};
  BoxMatrix Y(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      BigComplex z = (*inv)[i][j];
      if (real_mode) z.im = BigFloat(p);
      Y[i].emplace_back(z);
    }

  const BoxVector Fy = eval_system(sys, Y0);
  const BoxMatrix JX = eval_jacobian(sys, X);

  BoxVector dX;
  for (std::size_t j = 0; j < n; ++j) dX.push_back(X[j] - Y0[j]);

  CertifiedSolution sol;
  sol.certified = true;
  sol.real = real_mode;
  sol.precision_bits = p;
  const ComplexBox zero(mpq_class(0), p);
  for (std::size_t i = 0; i < n; ++i) {
    ComplexBox yf = zero;
    for (std::size_t j = 0; j < n; ++j) yf = yf + Y[i][j] * Fy[j];
    ComplexBox acc = Y0[i] - yf;
    for (std::size_t j = 0; j < n; ++j) {
      ComplexBox yj = zero;
      for (std::size_t k = 0; k < n; ++k) yj = yj + Y[i][k] * JX[k][j];
      ComplexBox mij = (i == j ? ComplexBox(mpq_class(1), p) : zero) - yj;
      acc = acc + mij * dX[j];
    }
    const bool inside = acc.re.interior_of(X[i].re) && (real_mode || acc.im.interior_of(X[i].im));
    if (!inside)
      return CertFailure{CertFailureKind::non_contracting,
                         "Krawczyk image not interior in coordinate " + std::to_string(i)};
    sol.box.push_back(intersect(acc, X[i]));
  }
  for (const auto& b : sol.box) sol.approx.push_back(b.mid_d());
  return sol;
}

Outcome<CertifiedSolution> krawczyk_certify(const PolySystem& sys, std::span<const std::complex<double>> approx,
                                            double radius, bool real_mode) {
  if (!(radius > 0)) throw std::invalid_argument("krawczyk radius must be positive");
  std::vector<BigComplex> y;
  std::vector<BigFloat> r;
  for (const auto& z : approx) {
    y.emplace_back(z, 53);
    r.emplace_back(radius, 53);
  }
  return krawczyk_test(sys, y, r, real_mode);
}

std::optional<std::vector<BigComplex>> newton_polish(const PolySystem& sys, std::vector<BigComplex> y,
                                                     int max_iterations, long stop_bits, bool real_mode) {
  const std::size_t n = sys.size();
  const mpfr_prec_t p = max_prec(y);
  if (real_mode)
    for (auto& z : y) z.im = BigFloat(p);
  double prev_step = INFINITY;
  int growth = 0;
  for (int it = 0; it < max_iterations; ++it) {
    auto F = eval_point(sys, y);
    auto inv = invert(jacobian_point(sys, y));
    if (!inv) return std::nullopt;
    BigFloat step(p), scale(1.0, p);
    for (std::size_t i = 0; i < n; ++i) {
      BigComplex delta(p);
      for (std::size_t j = 0; j < n; ++j) delta = delta + (*inv)[i][j] * F[j];
      if (real_mode) delta.im = BigFloat(p);
      BigFloat a = abs_max(delta);
      if (a > step) step = a;
      BigFloat m = abs_max(y[i]);
      if (m > scale) scale = m;
      y[i] = y[i] - delta;
    }
    if (step.is_zero()) return y;
    const BigFloat rel = step / scale;
    if (rel.exponent2() < -stop_bits) return y;
    const double rel_d = rel.to_double();
    if (rel_d > 1e3) return std::nullopt;
    if (rel_d > prev_step && ++growth > 3) return std::nullopt;
    prev_step = rel_d;
  }
  // Not fully converged; let Krawczyk decide.
  return y;
}

Outcome<CertifiedSolution> certify(const PolySystem& sys, std::span<const std::complex<double>> approx,
                                   const CertifyOptions& opts, bool real_mode) {
  const std::size_t n = sys.size();
  if (approx.size() != n) throw std::invalid_argument("certify: dimension mismatch");
  CertFailure last{CertFailureKind::non_contracting, "no attempt"};
  for (mpfr_prec_t p = opts.start_bits; p <= opts.max_bits; p *= 2) {
    std::vector<BigComplex> y;
    for (const auto& z : approx) y.emplace_back(real_mode ? std::complex<double>(z.real(), 0.0) : z, p);
    const int iters = 8 + 2 * static_cast<int>(std::log2(static_cast<double>(p) / 53.0) + 1);
    auto polished = newton_polish(sys, std::move(y), iters, static_cast<long>(p) - 8, real_mode);
    if (!polished) {
      last = CertFailure{CertFailureKind::singular_jacobian, "Newton polish failed"};
      continue;
    }
    for (double scale : {1.0, 1e-3, 1e2}) {
      std::vector<BigFloat> r;
      for (const auto& z : *polished) {
        const double mag = std::abs(z.to_complex());
        r.emplace_back(std::max(opts.radius_factor * mag, opts.radius_floor) * scale, p);
      }
      auto out = krawczyk_test(sys, *polished, r, real_mode);
      if (out) return out;
      last = out.failure();
      if (last.kind == CertFailureKind::singular_jacobian) break;
    }
    if (last.kind == CertFailureKind::singular_jacobian) continue;
    // Ill-conditioned points only contract in boxes much tighter than the default radius.
    for (long shift : {static_cast<long>(p) / 3, static_cast<long>(p) / 2}) {
      std::vector<BigFloat> r;
      for (const auto& z : *polished) {
        BigFloat rad(std::max(std::abs(z.to_complex()), 1.0), p);
        mpfr_div_2si(rad.get(), rad.get(), shift, MPFR_RNDN);
        r.push_back(std::move(rad));
      }
      auto out = krawczyk_test(sys, *polished, r, real_mode);
      if (out) return out;
      last = out.failure();
    }
  }
  return last;
}

Outcome<CertifiedSolution> refine_bits(const CertifiedSolution& sol, const PolySystem& sys, long target_bits,
                                       const CertifyOptions& opts) {
  if (!sol.certified) throw std::invalid_argument("refine requires a certified solution");
  const BigFloat w = max_width(sol.box);
  if (w.is_zero() || w.exponent2() < -target_bits) return sol;

  long mag_bits = 0;
  for (const auto& b : sol.box) {
    const BigFloat m = abs_max(b.mid());
    if (!m.is_zero()) mag_bits = std::max(mag_bits, m.exponent2() + 1);
  }
  mpfr_prec_t p = std::max<mpfr_prec_t>(sol.precision_bits, target_bits + mag_bits + 64);
  CertFailure last{CertFailureKind::non_contracting, "refinement did not contract"};
  for (int attempt = 0; attempt < 3; ++attempt, p *= 2) {
    if (p > opts.max_bits)
      return CertFailure{CertFailureKind::precision_cap,
                         "refinement needs " + std::to_string(p) + " bits, cap is " + std::to_string(opts.max_bits)};
    std::vector<BigComplex> y;
    for (const auto& b : sol.box) y.push_back(b.mid().with_prec(p));
    auto polished = newton_polish(sys, std::move(y), 200, target_bits + 16, sol.real);
    if (!polished) {
      last = CertFailure{CertFailureKind::singular_jacobian, "Newton polish failed during refinement"};
      continue;
    }
    BigFloat r(1.0, p);
    mpfr_div_2si(r.get(), r.get(), target_bits + 2 + attempt, MPFR_RNDN);
    std::vector<BigFloat> radius(sys.size(), r);
    auto out = krawczyk_test(sys, *polished, radius, sol.real);
    if (!out) {
      last = out.failure();
      continue;
    }
    bool inside = true;
    for (std::size_t i = 0; i < sol.box.size() && inside; ++i) inside = out.value().box[i].subset_of(sol.box[i]);
    if (inside) return out;
    last = CertFailure{CertFailureKind::non_contracting, "refined box left the original enclosure"};
  }
  return last;
}

Outcome<CertifiedSolution> refine(const CertifiedSolution& sol, const PolySystem& sys, double target_width,
                                  const CertifyOptions& opts) {
  if (!(target_width > 0)) throw std::invalid_argument("target width must be positive");
  const long bits = static_cast<long>(std::ceil(-std::log2(target_width)));
  return refine_bits(sol, sys, bits, opts);
}

Outcome<CertifiedSolution> certify_real(const CertifiedSolution& sol, const PolySystem& sys,
                                        const CertifyOptions& opts) {
  if (sol.real) return sol;
  for (const auto& b : sol.box)
    if (!b.im.contains_zero()) return CertFailure{CertFailureKind::non_contracting, "box excludes the real axis"};
  const mpfr_prec_t p = sol.precision_bits;
  std::vector<BigComplex> y;
  for (const auto& b : sol.box) {
    BigComplex c = b.mid();
    c.im = BigFloat(p);
    y.push_back(std::move(c));
  }
  auto polished = newton_polish(sys, std::move(y), 40, static_cast<long>(p) - 8, true);
  if (!polished) return CertFailure{CertFailureKind::singular_jacobian, "real Newton polish failed"};

  // A complex box X around the real point that contains sol.box holds exactly
  // one solution when the complex test passes; the real test on the same
  // radius then shows that solution is real.
  const BigFloat ulp_scale = BigFloat(std::ldexp(1.0, -static_cast<int>(p) + 16), p);
  for (double grow : {2.0, 8.0}) {
    std::vector<BigFloat> r;
    for (std::size_t i = 0; i < sol.box.size(); ++i) {
      const BigFloat& c = (*polished)[i].re;
      const ComplexBox& b = sol.box[i];
      BigFloat need = abs(c - b.re.lo());
      for (const BigFloat& v : {abs(c - b.re.hi()), abs(b.im.lo()), abs(b.im.hi())})
        if (v > need) need = v;
      BigFloat floor = ulp_scale * (abs(c) + BigFloat(1.0, p));
      if (floor > need) need = floor;
      r.push_back(need * BigFloat(grow, p));
    }
    if (!krawczyk_test(sys, *polished, r, false)) continue;
    auto out = krawczyk_test(sys, *polished, r, true);
    if (out) return out;
  }
  (void)opts;
  return CertFailure{CertFailureKind::non_contracting, "real-restricted Krawczyk test failed"};
}

Verdict classify(const CertifiedSolution& sol, Query query, std::size_t coord) {
  if (!sol.certified) return Verdict::unknown;
  bool some_im_nonzero = false;
  for (const auto& b : sol.box)
    if (!b.im.contains_zero()) some_im_nonzero = true;
  switch (query) {
    case Query::is_real:
      if (sol.real) return Verdict::yes;
      return some_im_nonzero ? Verdict::no : Verdict::unknown;
    case Query::is_positive_real: {
      if (some_im_nonzero) return Verdict::no;
      bool all_pos = true;
      for (const auto& b : sol.box) {
        if (b.re.hi().sign() <= 0 && sol.real) return Verdict::no;
        if (!b.re.positive()) all_pos = false;
      }
      if (sol.real && all_pos) return Verdict::yes;
      return Verdict::unknown;
    }
    case Query::coord_in_open_unit: {
      if (coord >= sol.box.size()) throw std::out_of_range("classify: coordinate out of range");
      const ComplexBox& b = sol.box[coord];
      if (!b.im.contains_zero()) return Verdict::no;
      if (b.re.hi().sign() <= 0 || mpfr_cmp_ui(b.re.lo().get(), 1) >= 0) return Verdict::no;
      if (sol.real && b.re.positive() && mpfr_cmp_ui(b.re.hi().get(), 1) < 0) return Verdict::yes;
      return Verdict::unknown;
    }
  }
  return Verdict::unknown;
}

Verdict same_solution(const PolySystem& sys, const CertifiedSolution& a, const CertifiedSolution& b,
                      const CertifyOptions& opts) {
  CertifiedSolution A = a, B = b;
  auto subset = [](const BoxVector& x, const BoxVector& y) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!x[i].subset_of(y[i])) return false;
    return true;
  };
  for (int round = 0; round < 6; ++round) {
    if (!overlaps(A.box, B.box)) return Verdict::no;
    if (subset(A.box, B.box) || subset(B.box, A.box)) return Verdict::yes;

    const BoxVector H = hull(A.box, B.box);
    const bool both_real = A.real && B.real;
    std::vector<BigComplex> c;
    std::vector<BigFloat> r;
    const mpfr_prec_t p = std::max(A.precision_bits, B.precision_bits);
    for (const auto& h : H) {
      c.push_back(h.mid().with_prec(p));
      BigFloat rr = h.re.rad(), ri = h.im.rad();
      BigFloat m = rr < ri ? ri : rr;
      m = m * BigFloat(1.01, p);
      if (m.is_zero()) m = BigFloat(1e-300, p);
      r.push_back(m);
    }
    if (krawczyk_test(sys, c, r, both_real)) return Verdict::yes;

    const long bits = -std::min(max_width(A.box).exponent2(), max_width(B.box).exponent2()) + 4;
    auto ra = refine_bits(A, sys, bits, opts);
    auto rb = refine_bits(B, sys, bits, opts);
    if (!ra || !rb) return Verdict::unknown;
    A = std::move(ra).value();
    B = std::move(rb).value();
  }
  return Verdict::unknown;
}

}  // namespace acsv
