#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "tracker.hpp"

namespace acsv {

namespace detail {

CompiledPoly compile(const SparsePoly& poly, std::size_t nx) {
  CompiledPoly out;
  for (const auto& [e, c] : poly.terms()) {
    int deg = 0;
    for (std::size_t k = 0; k < nx; ++k) deg += static_cast<int>(e[k]);
    out.degree = std::max(out.degree, deg);
  }
  for (const auto& [e, c] : poly.terms()) {
    CompiledPoly::Term t;
    t.coef = cd(c.get_d(), 0.0);
    unsigned deg = 0;
    for (std::size_t k = 0; k < nx; ++k) {
      deg += e[k];
      if (e[k]) t.x.emplace_back(static_cast<std::uint32_t>(k + 1), e[k]);
    }
    if (static_cast<int>(deg) < out.degree) t.x.emplace_back(0u, static_cast<std::uint32_t>(out.degree - deg));
    for (std::size_t k = nx; k < e.size(); ++k)
      if (e[k]) t.p.emplace_back(static_cast<std::uint32_t>(k - nx), e[k]);
    out.terms.push_back(std::move(t));
  }
  return out;
}

namespace {

cd ipow(cd z, std::uint32_t e) {
  cd r(1.0, 0.0);
  while (e) {
    if (e & 1u) r *= z;
    z *= z;
    e >>= 1;
  }
  return r;
}

}  // namespace

void evaluate(const CompiledPoly& f, const Eigen::VectorXcd& X, const std::vector<cd>& P, cd& value,
              Eigen::Ref<Eigen::RowVectorXcd, 0, Eigen::InnerStride<>> grad_x, std::vector<cd>* grad_p) {
  value = 0.0;
  grad_x.setZero();
  if (grad_p) std::fill(grad_p->begin(), grad_p->end(), cd(0.0));
  cd fx[16], fp[16];
  for (const auto& t : f.terms) {
    const std::size_t nx = t.x.size(), np = t.p.size();
    if (nx > 16 || np > 16) throw std::length_error("term has too many factors");
    cd px = 1.0, pp = 1.0;
    for (std::size_t j = 0; j < nx; ++j) px *= (fx[j] = ipow(X[t.x[j].first], t.x[j].second));
    for (std::size_t j = 0; j < np; ++j) pp *= (fp[j] = ipow(P[t.p[j].first], t.p[j].second));
    value += t.coef * px * pp;
    for (std::size_t j = 0; j < nx; ++j) {
      cd g = t.coef * pp * static_cast<double>(t.x[j].second) * ipow(X[t.x[j].first], t.x[j].second - 1);
      for (std::size_t k = 0; k < nx; ++k)
        if (k != j) g *= fx[k];
      grad_x[t.x[j].first] += g;
    }
    if (grad_p)
      for (std::size_t j = 0; j < np; ++j) {
        cd g = t.coef * px * static_cast<double>(t.p[j].second) * ipow(P[t.p[j].first], t.p[j].second - 1);
        for (std::size_t k = 0; k < np; ++k)
          if (k != j) g *= fp[k];
        (*grad_p)[t.p[j].first] += g;
      }
  }
}

namespace {

double inf_norm(const Eigen::VectorXcd& v) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

bool finite(const Eigen::VectorXcd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
  return true;
}

struct Workspace {
  Eigen::VectorXcd H, Hs, rhs;
  Eigen::MatrixXcd JX, A;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu;
  Workspace(std::size_t n) : H(n), Hs(n), rhs(n + 1), JX(n, n + 1), A(n + 1, n + 1), lu(n + 1) {}
};

// Tangent dX/ds of the Davidenko equation with the patch held fixed.
bool tangent(const Homotopy& h, const Eigen::VectorXcd& patch, const Eigen::VectorXcd& X, double s, Workspace& w,
             Eigen::VectorXcd& dX) {
  const std::size_t n = h.size();
  h.eval(X, s, w.H, w.JX, w.Hs);
  w.A.topRows(n) = w.JX;
  w.A.row(n) = patch.transpose();
  w.rhs.head(n) = -w.Hs;
  w.rhs[n] = 0.0;
  w.lu.compute(w.A);
  dX = w.lu.solve(w.rhs);
  return finite(dX);
}

// One Newton step on (H(X, s), patch . X - 1); returns the step.
bool newton_step(const Homotopy& h, const Eigen::VectorXcd& patch, Eigen::VectorXcd& X, double s, Workspace& w,
                 double& step_norm) {
  const std::size_t n = h.size();
  h.eval(X, s, w.H, w.JX, w.Hs);
  w.A.topRows(n) = w.JX;
  w.A.row(n) = patch.transpose();
  w.rhs.head(n) = w.H;
  w.rhs[n] = (patch.transpose() * X)(0) - 1.0;
  w.lu.compute(w.A);
  Eigen::VectorXcd dX = w.lu.solve(w.rhs);
  if (!finite(dX)) return false;
  X -= dX;
  step_norm = inf_norm(dX);
  return true;
}

double affine_magnitude(const Eigen::VectorXcd& X) {
  const double x0 = std::abs(X[0]);
  double m = 0.0;
  for (Eigen::Index i = 1; i < X.size(); ++i) m = std::max(m, std::abs(X[i]));
  if (x0 == 0.0) return INFINITY;
  return m / x0;
}

}  // namespace

PathResult track(const Homotopy& h, const Eigen::VectorXcd& patch, Eigen::VectorXcd X, const TrackOptions& opts) {
  const std::size_t n = h.size();
  Workspace w(n);
  PathResult res;
  double s = 0.0, step = opts.initial_step;
  int streak = 0;
  Eigen::VectorXcd k1(n + 1), k2(n + 1), k3(n + 1), k4(n + 1), Xp(n + 1);
  // Affine magnitude as 1 - s passes 1e-2, 1e-4, 1e-6: growth across these
  // marks a path heading to infinity even when it ends short of it.
  double marks[3] = {0.0, 0.0, 0.0};
  int next_mark = 0;
  const double mark_at[3] = {1e-2, 1e-4, 1e-6};

  auto finish_diverged = [&](PathResult& r) {
    r.status = PathStatus::diverged;
    r.endpoint.clear();
    return r;
  };

  while (s < 1.0) {
    if (static_cast<int>(res.steps) >= opts.max_steps) {
      res.status = PathStatus::truncated;
      break;
    }
    const double hs = std::min(step, 1.0 - s);
    bool ok = tangent(h, patch, X, s, w, k1);
    if (ok) {
      Xp = X + 0.5 * hs * k1;
      ok = tangent(h, patch, Xp, s + 0.5 * hs, w, k2);
    }
    if (ok) {
      Xp = X + 0.5 * hs * k2;
      ok = tangent(h, patch, Xp, s + 0.5 * hs, w, k3);
    }
    if (ok) {
      Xp = X + hs * k3;
      ok = tangent(h, patch, Xp, s + hs, w, k4);
    }
    bool accepted = false;
    if (ok) {
      Xp = X + (hs / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      const double scale = std::max(1.0, inf_norm(Xp));
      double first = 0.0, last = 0.0;
      for (int it = 0; it < 3; ++it) {
        if (!newton_step(h, patch, Xp, s + hs, w, last)) break;
        if (it == 0) {
          first = last;
          if (first > 1e-3 * scale) break;
        }
        if (last <= opts.corrector_tol * scale) {
          accepted = true;
          break;
        }
      }
      (void)first;
    }
    ++res.steps;
    if (accepted) {
      X = Xp;
      s += hs;
      if (++streak >= 3) {
        step = std::min(2.0 * step, opts.max_step);
        streak = 0;
      }
      while (next_mark < 3 && 1.0 - s <= mark_at[next_mark]) marks[next_mark++] = affine_magnitude(X);
      const double mag = affine_magnitude(X);
      // The second test stops paths that crawl toward a singular point at
      // infinity with tiny steps and would otherwise run to max_steps.
      if (mag > opts.divergence || (next_mark >= 2 && mag > 1e8 && marks[1] > 3.0 * marks[0])) {
        res.affine_magnitude = mag;
        return finish_diverged(res);
      }
    } else {
      streak = 0;
      step *= 0.5;
      if (step < opts.min_step) {
        res.status = PathStatus::truncated;
        break;
      }
    }
  }

  res.affine_magnitude = affine_magnitude(X);
  if (s >= 1.0) {
    const double scale = std::max(1.0, inf_norm(X));
    double last = INFINITY;
    bool converged = false;
    for (int it = 0; it < 10; ++it) {
      Eigen::VectorXcd Y = X;
      double st = 0.0;
      if (!newton_step(h, patch, Y, 1.0, w, st)) break;
      X = Y;
      last = st;
      if (st <= opts.tol * scale) {
        converged = true;
        break;
      }
    }
    res.residual = last / scale;
    res.affine_magnitude = affine_magnitude(X);
    res.status = converged ? PathStatus::success : PathStatus::truncated;
  }
  if (res.affine_magnitude > opts.divergence) return finish_diverged(res);
  res.endpoint.resize(n);
  for (std::size_t i = 0; i < n; ++i) res.endpoint[i] = X[static_cast<Eigen::Index>(i + 1)] / X[0];
  if (res.status == PathStatus::truncated) {
    if (res.affine_magnitude > 1e8) return finish_diverged(res);
    if (next_mark >= 2 && marks[1] > 3.0 * marks[0] && res.affine_magnitude >= marks[1]) return finish_diverged(res);
  }
  return res;
}

TotalDegreeHomotopy::TotalDegreeHomotopy(const PolySystem& sys, const StartSystem& start) : start_(start) {
  for (const auto& p : sys.polys()) f_.push_back(compile(p, sys.roster().size()));
}

void TotalDegreeHomotopy::eval(const Eigen::VectorXcd& X, double s, Eigen::VectorXcd& H, Eigen::MatrixXcd& JX,
                               Eigen::VectorXcd& Hs) const {
  const std::size_t n = f_.size();
  const cd g = start_.gamma;
  static const std::vector<cd> no_params;
  for (std::size_t i = 0; i < n; ++i) {
    cd fv;
    evaluate(f_[i], X, no_params, fv, JX.row(static_cast<Eigen::Index>(i)), nullptr);
    const int d = start_.degrees[i];
    const Eigen::Index xi = static_cast<Eigen::Index>(i + 1);
    const cd xd1 = ipow(X[xi], d - 1), x0d1 = ipow(X[0], d - 1);
    const cd gv = xd1 * X[xi] - x0d1 * X[0];
    H[static_cast<Eigen::Index>(i)] = g * (1.0 - s) * gv + s * fv;
    Hs[static_cast<Eigen::Index>(i)] = fv - g * gv;
    auto row = JX.row(static_cast<Eigen::Index>(i));
    row *= s;
    row[xi] += g * (1.0 - s) * static_cast<double>(d) * xd1;
    row[0] -= g * (1.0 - s) * static_cast<double>(d) * x0d1;
  }
}

PathResult TotalDegreeHomotopy::track_index(std::uint64_t index, const TrackOptions& opts) const {
  const CVector start = start_.solution(index);
  const std::size_t n = start.size();
  Eigen::VectorXcd X(n + 1), patch(n + 1);
  X[0] = 1.0;
  for (std::size_t i = 0; i < n; ++i) X[static_cast<Eigen::Index>(i + 1)] = start[i];
  for (std::size_t i = 0; i <= n; ++i) patch[static_cast<Eigen::Index>(i)] = start_.patch[i];
  X /= (patch.transpose() * X)(0);
  return track(*this, patch, X, opts);
}

}  // namespace detail

std::string to_string(PathStatus s) {
  switch (s) {
    case PathStatus::success: return "success";
    case PathStatus::diverged: return "diverged";
    case PathStatus::truncated: return "truncated";
  }
  return "truncated";
}

std::uint64_t StartSystem::num_solutions() const {
  std::uint64_t n = 1;
  for (int d : degrees) n *= static_cast<std::uint64_t>(d);
  return n;
}

CVector StartSystem::solution(std::uint64_t index) const {
  if (index >= num_solutions()) throw std::out_of_range("start solution index out of range");
  CVector x(degrees.size());
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    const auto d = static_cast<std::uint64_t>(degrees[i]);
    const double k = static_cast<double>(index % d);
    index /= d;
    x[i] = std::polar(1.0, 2.0 * std::numbers::pi * k / static_cast<double>(d));
  }
  return x;
}

namespace {

CVector random_patch(std::mt19937_64& rng, std::size_t len) {
  std::normal_distribution<double> nd(0.0, 1.0);
  CVector p(len);
  for (auto& z : p) z = {nd(rng), nd(rng)};
  return p;
}

}  // namespace

StartSystem total_degree_start(const PolySystem& sys, std::uint64_t seed) {
  StartSystem st;
  const std::size_t n = sys.size();
  for (std::size_t i = 0; i < n; ++i) {
    const int d = sys[i].total_degree();
    if (d < 0) throw std::invalid_argument("total_degree_start: zero polynomial in system");
    if (d == 0) throw std::invalid_argument("total_degree_start: constant polynomial in system");
    st.degrees.push_back(d);
    Exponent e(n, 0);
    e[i] = static_cast<unsigned>(d);
    st.start_polys.push_back(SparsePoly::monomial(sys.roster(), e, 1) - SparsePoly::constant(sys.roster(), 1));
  }
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x5eed);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  st.gamma = std::polar(1.0, ang(rng));
  st.patch = random_patch(rng, n + 1);
  return st;
}

PathResult track_path(const PolySystem& sys, const StartSystem& start, std::uint64_t index, const TrackOptions& opts) {
  detail::TotalDegreeHomotopy h(sys, start);
  return h.track_index(index, opts);
}

struct ParameterHomotopy::Impl {
  std::size_t nx, np;
  std::vector<SparsePoly> family;
  VarRoster roster;
  std::vector<detail::CompiledPoly> f;
};

namespace {

class SegmentHomotopy final : public detail::Homotopy {
 public:
  SegmentHomotopy(const std::vector<detail::CompiledPoly>& f, std::size_t np, const CVector& p0, const CVector& p1,
                  const CVector& detour)
      : f_(f), p0_(p0), p1_(p1), detour_(detour), P_(np), gp_(np) {}
  std::size_t size() const override { return f_.size(); }
  void eval(const Eigen::VectorXcd& X, double s, Eigen::VectorXcd& H, Eigen::MatrixXcd& JX,
            Eigen::VectorXcd& Hs) const override {
    const std::size_t np = P_.size();
    std::vector<detail::cd> dP(np);
    for (std::size_t k = 0; k < np; ++k) {
      P_[k] = (1.0 - s) * p0_[k] + s * p1_[k] + s * (1.0 - s) * detour_[k];
      dP[k] = p1_[k] - p0_[k] + (1.0 - 2.0 * s) * detour_[k];
    }
    for (std::size_t i = 0; i < f_.size(); ++i) {
      detail::cd v;
      detail::evaluate(f_[i], X, P_, v, JX.row(static_cast<Eigen::Index>(i)), &gp_);
      H[static_cast<Eigen::Index>(i)] = v;
      detail::cd hs = 0.0;
      for (std::size_t k = 0; k < np; ++k) hs += gp_[k] * dP[k];
      Hs[static_cast<Eigen::Index>(i)] = hs;
    }
  }

 private:
  const std::vector<detail::CompiledPoly>& f_;
  const CVector &p0_, &p1_, &detour_;
  mutable std::vector<detail::cd> P_, gp_;
};

}  // namespace

ParameterHomotopy::ParameterHomotopy(std::vector<SparsePoly> family, VarRoster roster, std::size_t nparams)
    : impl_(std::make_unique<Impl>()) {
  if (nparams > roster.size()) throw std::invalid_argument("more parameters than variables");
  impl_->nx = roster.size() - nparams;
  impl_->np = nparams;
  if (family.size() != impl_->nx) throw std::invalid_argument("parameter family is not square in its unknowns");
  for (const auto& p : family) {
    if (!(p.roster() == roster)) throw std::invalid_argument("family polynomial over a different roster");
    impl_->f.push_back(detail::compile(p, impl_->nx));
  }
  impl_->family = std::move(family);
  impl_->roster = std::move(roster);
}

ParameterHomotopy::~ParameterHomotopy() = default;
ParameterHomotopy::ParameterHomotopy(ParameterHomotopy&&) noexcept = default;

std::size_t ParameterHomotopy::num_unknowns() const { return impl_->nx; }

PolySystem ParameterHomotopy::specialize(const std::vector<mpq_class>& params, SystemTag tag) const {
  if (params.size() != impl_->np) throw std::invalid_argument("wrong number of parameter values");
  const std::size_t nx = impl_->nx;
  VarRoster xr(std::vector<std::string>(impl_->roster.names().begin(), impl_->roster.names().begin() + nx));
  std::vector<SparsePoly> out;
  for (const auto& p : impl_->family) {
    PolyBuilder b(xr);
    for (const auto& [e, c] : p.terms()) {
      mpq_class v = c;
      for (std::size_t k = 0; k < impl_->np; ++k)
        for (unsigned j = 0; j < e[nx + k]; ++j) v *= params[k];
      b.add(Exponent(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(nx)), v);
    }
    out.push_back(std::move(b).build());
  }
  return PolySystem(std::move(out), xr, tag);
}

PathResult ParameterHomotopy::track(const CVector& start, const CVector& p0, const CVector& p1, std::uint64_t seed,
                                    const TrackOptions& opts) const {
  const std::size_t nx = impl_->nx, np = impl_->np;
  if (start.size() != nx || p0.size() != np || p1.size() != np)
    throw std::invalid_argument("parameter homotopy: dimension mismatch");
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x9a7a);
  CVector patch = random_patch(rng, nx + 1);
  CVector detour = random_patch(rng, np);
  for (std::size_t k = 0; k < np; ++k) detour[k] *= 0.5 * (std::abs(p1[k] - p0[k]) + 1e-3 * std::abs(p1[k]));
  SegmentHomotopy h(impl_->f, np, p0, p1, detour);
  Eigen::VectorXcd X(nx + 1), c(nx + 1);
  X[0] = 1.0;
  for (std::size_t i = 0; i < nx; ++i) X[static_cast<Eigen::Index>(i + 1)] = start[i];
  for (std::size_t i = 0; i <= nx; ++i) c[static_cast<Eigen::Index>(i)] = patch[i];
  X /= (c.transpose() * X)(0);
  return detail::track(h, c, X, opts);
}

}  // namespace acsv
