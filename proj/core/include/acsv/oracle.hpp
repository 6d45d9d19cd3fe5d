#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "acsv/poly.hpp"

namespace acsv {

struct AsymptoticExpansion;

/// Exact coefficients of G/H for every exponent of total degree at most
/// max_degree, stored layer by layer (all degree-k exponents before k + 1,
/// lexicographic inside a layer).
class SeriesTable {
 public:
  SeriesTable(VarRoster roster, int max_degree, std::vector<mpq_class> coeffs);

  const VarRoster& roster() const { return roster_; }
  int max_degree() const { return max_degree_; }
  std::size_t size() const { return coeffs_.size(); }
  /// Coefficient of z^e; throws std::out_of_range beyond max_degree.
  const mpq_class& at(const Exponent& e) const;
  /// Position of e in the layered order.
  std::size_t index_of(const Exponent& e) const;
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }

 private:
  VarRoster roster_;
  int max_degree_;
  std::vector<mpq_class> coeffs_;
};

/// Throws std::domain_error when H(0) = 0.
SeriesTable series_coeffs(const SparsePoly& G, const SparsePoly& H, int max_degree);

/// f_{0 r}, f_{1 r}, ... for every n with n |r|_1 <= max_degree.
std::vector<mpq_class> diagonal(const SparsePoly& G, const SparsePoly& H, const Direction& r, int max_degree);
/// The first `count` diagonal terms. Only the exponent box below (count-1) r
/// is expanded, which is far smaller than the total-degree simplex.
std::vector<mpq_class> diagonal_terms(const SparsePoly& G, const SparsePoly& H, const Direction& r,
                                      std::size_t count);

struct OracleComparison {
  long n = 0;
  mpq_class exact;
  std::complex<double> predicted;
  std::optional<double> relative_error;  // empty when predicted(n) is 0
};

struct OracleReport {
  std::vector<OracleComparison> rows;
  /// Relative errors strictly decrease over the compared (unflagged) rows.
  bool strictly_decreasing() const;
  std::optional<double> last_error() const;
};

/// |f_{nr} / predicted(n) - 1| for each requested n; seq[n] is f_{nr}.
OracleReport check_asymptotics(const std::vector<mpq_class>& seq, const AsymptoticExpansion& exp,
                               const std::vector<long>& n_values);

/// Nearest double, computed through mpfr so huge numerators and denominators
/// do not overflow on the way.
double to_double(const mpq_class& q);

}  // namespace acsv
