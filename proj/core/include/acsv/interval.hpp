#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

#include "acsv/poly.hpp"

namespace acsv {

/// Arbitrary-precision binary float, round-to-nearest. Results take the
/// larger precision of their operands.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 53);
  BigFloat(double v, mpfr_prec_t prec);
  BigFloat(const mpq_class& v, mpfr_prec_t prec);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  mpq_class to_rational() const;
  /// Copy rounded to another precision.
  BigFloat with_prec(mpfr_prec_t prec) const;
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// floor(log2|x|), or a very negative value for zero.
  long exponent2() const;
  std::string to_string(int digits = 20) const;

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  BigFloat operator-() const;
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_); }

  friend BigFloat abs(const BigFloat& a);
  friend BigFloat sqrt(const BigFloat& a);

 private:
  mpfr_t v_;
};

struct BigComplex {
  BigFloat re;
  BigFloat im;

  explicit BigComplex(mpfr_prec_t prec = 53) : re(prec), im(prec) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
  BigComplex(std::complex<double> z, mpfr_prec_t prec) : re(z.real(), prec), im(z.imag(), prec) {}

  mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
  BigComplex with_prec(mpfr_prec_t prec) const { return {re.with_prec(prec), im.with_prec(prec)}; }
  BigFloat norm_sq() const { return re * re + im * im; }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
  BigComplex operator-() const { return {-re, -im}; }
};

/// Closed real interval [lo, hi] with outward-rounded arithmetic.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 53);
  Interval(double v, mpfr_prec_t prec);
  Interval(double lo, double hi, mpfr_prec_t prec);
  Interval(const mpq_class& v, mpfr_prec_t prec);
  explicit Interval(const BigFloat& v);
  Interval(BigFloat lo, BigFloat hi);

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  mpfr_prec_t prec() const { return std::max(lo_.prec(), hi_.prec()); }

  BigFloat mid() const;
  /// Upper bound on hi - lo.
  BigFloat width() const;
  /// Upper bound on the half-width.
  BigFloat rad() const;
  /// Upper bound on max(|lo|, |hi|).
  BigFloat mag() const;

  bool contains(const BigFloat& v) const { return lo_ <= v && v <= hi_; }
  bool contains(const mpq_class& v) const;
  bool contains(double v) const;
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool is_point() const { return lo_ == hi_; }
  /// This interval lies strictly inside `outer`.
  bool interior_of(const Interval& outer) const { return outer.lo_ < lo_ && hi_ < outer.hi_; }
  bool subset_of(const Interval& outer) const { return outer.lo_ <= lo_ && hi_ <= outer.hi_; }
  bool overlaps(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
  bool positive() const { return lo_.sign() > 0; }
  bool negative() const { return hi_.sign() < 0; }

  Interval with_prec(mpfr_prec_t prec) const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Throws std::domain_error when `b` contains zero.
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval operator-() const;

  friend Interval sqr(const Interval& a);
  /// Throws std::domain_error when `a` has negative part.
  friend Interval sqrt(const Interval& a);
  friend Interval abs(const Interval& a);
  friend Interval hull(const Interval& a, const Interval& b);
  /// Throws std::domain_error on an empty intersection.
  friend Interval intersect(const Interval& a, const Interval& b);

  static Interval pi(mpfr_prec_t prec);
  std::string to_string(int digits = 17) const;

 private:
  BigFloat lo_;
  BigFloat hi_;
};

/// Rectangle re x im in the complex plane.
struct ComplexBox {
  Interval re;
  Interval im;

  explicit ComplexBox(mpfr_prec_t prec = 53) : re(prec), im(prec) {}
  ComplexBox(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}
  ComplexBox(std::complex<double> z, mpfr_prec_t prec) : re(z.real(), prec), im(z.imag(), prec) {}
  explicit ComplexBox(const BigComplex& z) : re(z.re), im(z.im) {}
  ComplexBox(const mpq_class& v, mpfr_prec_t prec) : re(v, prec), im(0.0, prec) {}

  mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
  BigComplex mid() const { return {re.mid(), im.mid()}; }
  std::complex<double> mid_d() const { return {re.mid().to_double(), im.mid().to_double()}; }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  bool contains(const BigComplex& z) const { return re.contains(z.re) && im.contains(z.im); }
  bool overlaps(const ComplexBox& o) const { return re.overlaps(o.re) && im.overlaps(o.im); }
  bool subset_of(const ComplexBox& o) const { return re.subset_of(o.re) && im.subset_of(o.im); }
  /// Upper bound on the larger side length.
  BigFloat width() const;
  ComplexBox conj() const { return {re, -im}; }
  ComplexBox with_prec(mpfr_prec_t prec) const { return {re.with_prec(prec), im.with_prec(prec)}; }

  friend ComplexBox operator+(const ComplexBox& a, const ComplexBox& b) { return {a.re + b.re, a.im + b.im}; }
  friend ComplexBox operator-(const ComplexBox& a, const ComplexBox& b) { return {a.re - b.re, a.im - b.im}; }
  friend ComplexBox operator*(const ComplexBox& a, const ComplexBox& b);
  friend ComplexBox operator*(const Interval& a, const ComplexBox& b) { return {a * b.re, a * b.im}; }
  /// Throws std::domain_error when `b` may vanish.
  friend ComplexBox operator/(const ComplexBox& a, const ComplexBox& b);
  ComplexBox operator-() const { return {-re, -im}; }

  friend ComplexBox sqr(const ComplexBox& a);
  /// Enclosure of |z|.
  friend Interval abs(const ComplexBox& a);
  /// Enclosure of |z|^2.
  friend Interval norm_sq(const ComplexBox& a);
  /// Principal square root; throws std::domain_error if the box meets the
  /// branch cut (non-positive real axis).
  friend ComplexBox sqrt(const ComplexBox& a);
  friend ComplexBox hull(const ComplexBox& a, const ComplexBox& b) {
    return {hull(a.re, b.re), hull(a.im, b.im)};
  }
  friend ComplexBox intersect(const ComplexBox& a, const ComplexBox& b) {
    return {intersect(a.re, b.re), intersect(a.im, b.im)};
  }
  friend ComplexBox pow(const ComplexBox& a, unsigned k);
};

using BoxVector = std::vector<ComplexBox>;
using BoxMatrix = std::vector<std::vector<ComplexBox>>;

/// Interval enclosure of p over the box.
ComplexBox eval(const SparsePoly& p, std::span<const ComplexBox> box);
/// Round-to-nearest evaluation at a high-precision point.
BigComplex eval(const SparsePoly& p, std::span<const BigComplex> point);

/// Hull of the two boxes' corners: the smallest box containing both vectors.
BoxVector hull(const BoxVector& a, const BoxVector& b);
bool overlaps(const BoxVector& a, const BoxVector& b);
/// Largest side length over all coordinates.
BigFloat max_width(const BoxVector& box);

enum class BoxArithOp { add, sub, mul, div, sqrt, abs };

/// Uniform entry point for the basic operations; `b` is ignored for unary ops.
Interval box_arith(BoxArithOp op, const Interval& a, const Interval& b);
ComplexBox box_arith(BoxArithOp op, const ComplexBox& a, const ComplexBox& b);

}  // namespace acsv
