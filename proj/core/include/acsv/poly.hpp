#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace acsv {

/// Exponent vector of a monomial; length always equals the roster size.
using Exponent = std::vector<unsigned>;

/// Graded lexicographic order: lower total degree first, then lexicographic
/// on the exponent vector (first roster variable most significant).
struct GradedLex {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Ordered, duplicate-free list of variable names. Cheap to copy.
class VarRoster {
 public:
  VarRoster() : names_(std::make_shared<const std::vector<std::string>>()) {}
  explicit VarRoster(std::vector<std::string> names);

  std::size_t size() const { return names_->size(); }
  const std::string& name(std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const { return *names_; }
  /// Index of `name`, or size() when absent.
  std::size_t index_of(std::string_view name) const;

  friend bool operator==(const VarRoster& a, const VarRoster& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

/// Exact complex rational, used for exact evaluation checks.
struct QComplex {
  mpq_class re;
  mpq_class im;
};

class SparsePoly {
 public:
  using TermMap = std::map<Exponent, mpq_class, GradedLex>;

  SparsePoly() = default;
  explicit SparsePoly(VarRoster roster) : roster_(std::move(roster)) {}
  SparsePoly(VarRoster roster, TermMap terms);

  static SparsePoly constant(VarRoster roster, const mpq_class& c);
  static SparsePoly variable(VarRoster roster, std::size_t index);
  static SparsePoly monomial(VarRoster roster, Exponent e, const mpq_class& c);

  const VarRoster& roster() const { return roster_; }
  std::size_t nvars() const { return roster_.size(); }
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  int total_degree() const;  // -1 for the zero polynomial
  int degree_in(std::size_t var) const;
  mpq_class coeff(const Exponent& e) const;
  mpq_class constant_term() const;
  /// Largest exponent vector in graded-lex order.
  const std::pair<const Exponent, mpq_class>& leading_term() const;

  SparsePoly operator-() const;
  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly& operator*=(const SparsePoly& o);
  SparsePoly& operator*=(const mpq_class& c);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator*(SparsePoly a, const mpq_class& c) { return a *= c; }
  friend SparsePoly operator*(const mpq_class& c, SparsePoly a) { return a *= c; }
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.roster_ == b.roster_ && a.terms_ == b.terms_;
  }

  SparsePoly pow(unsigned k) const;

  /// Same polynomial over a larger roster; variable i maps to index_map[i].
  SparsePoly embed(const VarRoster& target, std::span<const std::size_t> index_map) const;

  std::string to_string() const;

 private:
  friend class PolyBuilder;
  void add_term(const Exponent& e, const mpq_class& c);
  void check_same_roster(const SparsePoly& o) const;

  VarRoster roster_;
  TermMap terms_;
};

/// Accumulates terms and produces a canonical SparsePoly.
class PolyBuilder {
 public:
  explicit PolyBuilder(VarRoster roster) : poly_(std::move(roster)) {}
  void add(const Exponent& e, const mpq_class& c) { poly_.add_term(e, c); }
  SparsePoly build() && { return std::move(poly_); }

 private:
  SparsePoly poly_;
};

std::ostream& operator<<(std::ostream& os, const SparsePoly& p);

/// Error raised by the polynomial parser; `position` is a 0-based offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

SparsePoly parse_poly(std::string_view text, const VarRoster& roster);

/// Identifiers of `text` in first-appearance order.
std::vector<std::string> scan_identifiers(std::string_view text);

mpq_class eval(const SparsePoly& p, std::span<const mpq_class> point);
QComplex eval(const SparsePoly& p, std::span<const QComplex> point);
std::complex<double> eval(const SparsePoly& p, std::span<const std::complex<double>> point);

SparsePoly partial(const SparsePoly& p, std::size_t var);

/// H(u + i v) = re(u, v) + i im(u, v) over the roster (u_1..u_d, v_1..v_d).
struct ReImPair {
  SparsePoly re;
  SparsePoly im;
};
ReImPair re_im_split(const SparsePoly& p);

/// Roster used by re_im_split: "<name>_re" for each variable, then "<name>_im".
VarRoster split_roster(const VarRoster& roster);

/// Exact division; throws std::domain_error when `b` does not divide `a`.
SparsePoly divide_exact(const SparsePoly& a, const SparsePoly& b);
/// Quotient and remainder of multivariate division by a single divisor.
std::pair<SparsePoly, SparsePoly> divide(const SparsePoly& a, const SparsePoly& b);
SparsePoly gcd(const SparsePoly& a, const SparsePoly& b);
/// Product of the distinct irreducible factors, normalised to a primitive
/// integer polynomial with positive leading coefficient.
SparsePoly square_free_part(const SparsePoly& p);

/// Largest bit size among numerators and denominators after scaling the
/// polynomial to integer coefficients.
unsigned coefficient_height_bits(const SparsePoly& p);

/// Rational function G/H with a power-series expansion at the origin.
struct RationalGF {
  SparsePoly numer;
  SparsePoly denom;

  RationalGF(SparsePoly g, SparsePoly h);
  const VarRoster& roster() const { return denom.roster(); }
};

/// Positive integer direction vector r.
class Direction {
 public:
  explicit Direction(std::vector<long> r);
  static Direction ones(std::size_t d) { return Direction(std::vector<long>(d, 1)); }
  static Direction parse(std::string_view text);

  std::size_t size() const { return r_.size(); }
  long operator[](std::size_t i) const { return r_[i]; }
  const std::vector<long>& values() const { return r_; }
  long sum() const;

 private:
  std::vector<long> r_;
};

}  // namespace acsv
