#include "acsv/interval.hpp"

#include <algorithm>
#include <climits>

namespace acsv {

// ---------------------------------------------------------------- BigFloat

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(double v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const mpq_class& v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(v_, o.prec());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

mpq_class BigFloat::to_rational() const {
  if (!mpfr_number_p(v_)) throw std::domain_error("non-finite value has no rational form");
  mpz_class m;
  const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
  mpq_class q(m);
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return q;
}

BigFloat BigFloat::with_prec(mpfr_prec_t prec) const {
  BigFloat r(prec);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

long BigFloat::exponent2() const {
  if (mpfr_zero_p(v_)) return LONG_MIN / 4;
  return static_cast<long>(mpfr_get_exp(v_)) - 1;
}

std::string BigFloat::to_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

#define ACSV_BINOP(OP, FN)                                   \
  BigFloat operator OP(const BigFloat& a, const BigFloat& b) { \
    BigFloat r(std::max(a.prec(), b.prec()));                \
    FN(r.v_, a.v_, b.v_, MPFR_RNDN);                          \
    return r;                                                \
  }
ACSV_BINOP(+, mpfr_add)
ACSV_BINOP(-, mpfr_sub)
ACSV_BINOP(*, mpfr_mul)
ACSV_BINOP(/, mpfr_div)
#undef ACSV_BINOP

BigFloat BigFloat::operator-() const {
  BigFloat r(prec());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat abs(const BigFloat& a) {
  BigFloat r(a.prec());
  mpfr_abs(r.v_, a.v_, MPFR_RNDN);
  return r;
}

BigFloat sqrt(const BigFloat& a) {
  BigFloat r(a.prec());
  mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
  return r;
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  const BigFloat den = b.norm_sq();
  if (den.is_zero()) throw std::domain_error("complex division by zero");
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

// ---------------------------------------------------------------- Interval

namespace {

mpfr_prec_t pmax(const Interval& a, const Interval& b) { return std::max(a.prec(), b.prec()); }

void set_min(mpfr_ptr acc, mpfr_srcptr v) {
  if (mpfr_less_p(v, acc)) mpfr_set(acc, v, MPFR_RNDD);
}
void set_max(mpfr_ptr acc, mpfr_srcptr v) {
  if (mpfr_greater_p(v, acc)) mpfr_set(acc, v, MPFR_RNDU);
}

}  // namespace

Interval::Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

Interval::Interval(double v, mpfr_prec_t prec) : lo_(prec), hi_(prec) {
  mpfr_set_d(lo_.get(), v, MPFR_RNDD);
  mpfr_set_d(hi_.get(), v, MPFR_RNDU);
}

Interval::Interval(double lo, double hi, mpfr_prec_t prec) : lo_(prec), hi_(prec) {
  if (lo > hi) throw std::invalid_argument("interval with lo > hi");
  mpfr_set_d(lo_.get(), lo, MPFR_RNDD);
  mpfr_set_d(hi_.get(), hi, MPFR_RNDU);
}

Interval::Interval(const mpq_class& v, mpfr_prec_t prec) : lo_(prec), hi_(prec) {
  mpfr_set_q(lo_.get(), v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_.get(), v.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const BigFloat& v) : lo_(v), hi_(v) {}

Interval::Interval(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) throw std::invalid_argument("interval with lo > hi");
}

BigFloat Interval::mid() const {
  BigFloat r(prec());
  mpfr_add(r.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(r.get(), r.get(), 1, MPFR_RNDN);
  return r;
}

BigFloat Interval::width() const {
  BigFloat r(prec());
  mpfr_sub(r.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return r;
}

BigFloat Interval::rad() const {
  BigFloat r = width();
  mpfr_div_2ui(r.get(), r.get(), 1, MPFR_RNDU);
  return r;
}

BigFloat Interval::mag() const {
  BigFloat r = abs(lo_);
  set_max(r.get(), abs(hi_).get());
  return r;
}

bool Interval::contains(const mpq_class& v) const {
  return mpfr_cmp_q(lo_.get(), v.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), v.get_mpq_t()) >= 0;
}

bool Interval::contains(double v) const {
  return mpfr_cmp_d(lo_.get(), v) <= 0 && mpfr_cmp_d(hi_.get(), v) >= 0;
}

Interval Interval::with_prec(mpfr_prec_t prec) const {
  Interval r(prec);
  mpfr_set(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_set(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(pmax(a, b));
  mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(pmax(a, b));
  mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
  mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::operator-() const {
  Interval r(prec());
  mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  const mpfr_prec_t p = pmax(a, b);
  Interval r(p);
  // Sign-case shortcuts for the common non-straddling operands.
  const bool a_pos = a.lo_.sign() >= 0, b_pos = b.lo_.sign() >= 0;
  if (a_pos && b_pos) {
    mpfr_mul(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_mul(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
  }
  mpfr_t t;
  mpfr_init2(t, p);
  const mpfr_srcptr as[2] = {a.lo_.get(), a.hi_.get()};
  const mpfr_srcptr bs[2] = {b.lo_.get(), b.hi_.get()};
  mpfr_mul(r.lo_.get(), as[0], bs[0], MPFR_RNDD);
  mpfr_mul(r.hi_.get(), as[0], bs[0], MPFR_RNDU);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (i == 0 && j == 0) continue;
      mpfr_mul(t, as[i], bs[j], MPFR_RNDD);
      set_min(r.lo_.get(), t);
      mpfr_mul(t, as[i], bs[j], MPFR_RNDU);
      set_max(r.hi_.get(), t);
    }
  }
  mpfr_clear(t);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw std::domain_error("interval division by a zero-containing interval");
  Interval inv(b.prec());
  mpfr_ui_div(inv.lo_.get(), 1, b.hi_.get(), MPFR_RNDD);
  mpfr_ui_div(inv.hi_.get(), 1, b.lo_.get(), MPFR_RNDU);
  return a * inv;
}

Interval sqr(const Interval& a) {
  Interval m = abs(a);
  Interval r(a.prec());
  mpfr_mul(r.lo_.get(), m.lo_.get(), m.lo_.get(), MPFR_RNDD);
  mpfr_mul(r.hi_.get(), m.hi_.get(), m.hi_.get(), MPFR_RNDU);
  return r;
}

Interval sqrt(const Interval& a) {
  if (a.lo_.sign() < 0) throw std::domain_error("interval square root of a negative interval");
  Interval r(a.prec());
  mpfr_sqrt(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
  mpfr_sqrt(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
  return r;
}

Interval abs(const Interval& a) {
  if (a.lo_.sign() >= 0) return a;
  if (a.hi_.sign() <= 0) return -a;
  Interval r(a.prec());
  mpfr_set_zero(r.lo_.get(), 1);
  mpfr_neg(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
  set_max(r.hi_.get(), a.hi_.get());
  return r;
}

Interval hull(const Interval& a, const Interval& b) {
  Interval r = a.with_prec(pmax(a, b));
  set_min(r.lo_.get(), b.lo_.get());
  set_max(r.hi_.get(), b.hi_.get());
  return r;
}

Interval intersect(const Interval& a, const Interval& b) {
  if (!a.overlaps(b)) throw std::domain_error("empty interval intersection");
  Interval r = a.with_prec(pmax(a, b));
  if (b.lo_ > r.lo_) mpfr_set(r.lo_.get(), b.lo_.get(), MPFR_RNDD);
  if (b.hi_ < r.hi_) mpfr_set(r.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::pi(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
  mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
  return r;
}

std::string Interval::to_string(int digits) const {
  return "[" + lo_.to_string(digits) + ", " + hi_.to_string(digits) + "]";
}

// ---------------------------------------------------------------- ComplexBox

BigFloat ComplexBox::width() const {
  BigFloat a = re.width(), b = im.width();
  return a < b ? b : a;
}

ComplexBox operator*(const ComplexBox& a, const ComplexBox& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Interval norm_sq(const ComplexBox& a) { return sqr(a.re) + sqr(a.im); }

Interval abs(const ComplexBox& a) { return sqrt(norm_sq(a)); }

ComplexBox operator/(const ComplexBox& a, const ComplexBox& b) {
  const Interval den = norm_sq(b);
  if (den.contains_zero()) throw std::domain_error("complex box division by a box containing zero");
  const ComplexBox num = a * b.conj();
  return {num.re / den, num.im / den};
}

ComplexBox sqr(const ComplexBox& a) {
  Interval two(2.0, a.prec());
  return {sqr(a.re) - sqr(a.im), two * (a.re * a.im)};
}

ComplexBox pow(const ComplexBox& a, unsigned k) {
  ComplexBox result(Interval(1.0, a.prec()), Interval(0.0, a.prec()));
  ComplexBox base = a;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = sqr(base);
  }
  return result;
}

namespace {

Interval clamp_nonneg(const Interval& a) {
  if (a.lo().sign() >= 0) return a;
  if (a.hi().sign() < 0) throw std::domain_error("clamp of a negative interval");
  return Interval(BigFloat(a.prec()), a.hi());
}

}  // namespace

// sqrt(x + iy) = a + ib with a = sqrt((|z| + x)/2), b = y / (2a), or the
// symmetric formula when the box sits off the real axis.
ComplexBox sqrt(const ComplexBox& z) {
  const mpfr_prec_t p = z.prec();
  const Interval half(0.5, p), two(2.0, p);
  const Interval m = abs(z);
  if (z.re.positive()) {
    Interval a = sqrt(clamp_nonneg(half * (m + z.re)));
    return {a, z.im / (two * a)};
  }
  if (z.im.positive() || z.im.negative()) {
    Interval b = sqrt(clamp_nonneg(half * (m - z.re)));
    if (z.im.negative()) b = -b;
    return {z.im / (two * b), b};
  }
  throw std::domain_error("complex square root across the branch cut");
}

// ---------------------------------------------------------------- evaluation

namespace {

template <class T, class FromCoeff>
T eval_terms(const SparsePoly& p, std::span<const T> point, T zero, T one, FromCoeff from_coeff) {
  if (point.size() != p.nvars()) throw std::invalid_argument("eval: dimension mismatch");
  std::vector<std::vector<T>> powers(p.nvars());
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    const int deg = std::max(0, p.degree_in(i));
    powers[i].push_back(one);
    for (int k = 1; k <= deg; ++k) powers[i].push_back(powers[i].back() * point[i]);
  }
  T acc = zero;
  for (const auto& [e, c] : p.terms()) {
    T term = from_coeff(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) term = term * powers[i][e[i]];
    acc = acc + term;
  }
  return acc;
}

}  // namespace

ComplexBox eval(const SparsePoly& p, std::span<const ComplexBox> box) {
  mpfr_prec_t prec = 53;
  for (const auto& b : box) prec = std::max(prec, b.prec());
  const ComplexBox zero(mpq_class(0), prec), one(mpq_class(1), prec);
  return eval_terms<ComplexBox>(p, box, zero, one,
                                [prec](const mpq_class& c) { return ComplexBox(c, prec); });
}

BigComplex eval(const SparsePoly& p, std::span<const BigComplex> point) {
  mpfr_prec_t prec = 53;
  for (const auto& z : point) prec = std::max(prec, z.prec());
  const BigComplex zero(prec);
  BigComplex one(prec);
  one.re = BigFloat(1.0, prec);
  return eval_terms<BigComplex>(p, point, zero, one, [prec](const mpq_class& c) {
    return BigComplex(BigFloat(c, prec), BigFloat(prec));
  });
}

BoxVector hull(const BoxVector& a, const BoxVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("hull: dimension mismatch");
  BoxVector r;
  r.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r.push_back(hull(a[i], b[i]));
  return r;
}

bool overlaps(const BoxVector& a, const BoxVector& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].overlaps(b[i])) return false;
  return true;
}

BigFloat max_width(const BoxVector& box) {
  BigFloat w(53);
  for (const auto& b : box) {
    BigFloat bw = b.width();
    if (bw > w) w = bw;
  }
  return w;
}

Interval box_arith(BoxArithOp op, const Interval& a, const Interval& b) {
  switch (op) {
    case BoxArithOp::add: return a + b;
    case BoxArithOp::sub: return a - b;
    case BoxArithOp::mul: return a * b;
    case BoxArithOp::div: return a / b;
    case BoxArithOp::sqrt: return sqrt(a);
    case BoxArithOp::abs: return abs(a);
  }
  throw std::invalid_argument("unknown interval operation");
}

ComplexBox box_arith(BoxArithOp op, const ComplexBox& a, const ComplexBox& b) {
  switch (op) {
    case BoxArithOp::add: return a + b;
    case BoxArithOp::sub: return a - b;
    case BoxArithOp::mul: return a * b;
    case BoxArithOp::div: return a / b;
    case BoxArithOp::sqrt: return sqrt(a);
    case BoxArithOp::abs: return {abs(a), Interval(0.0, a.prec())};
  }
  throw std::invalid_argument("unknown box operation");
}

}  // namespace acsv
