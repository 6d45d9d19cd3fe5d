#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "acsv/acsv.hpp"
#include "acsv/interval.hpp"
#include "acsv/poly.hpp"

namespace acsv {

enum class AsymptoticFailureKind { hzd_zero, degenerate_hessian, numerator_vanishes };
std::string to_string(AsymptoticFailureKind kind);

class AsymptoticFailure : public std::runtime_error {
 public:
  AsymptoticFailure(AsymptoticFailureKind kind, const std::string& detail)
      : std::runtime_error(to_string(kind) + ": " + detail), kind_(kind) {}
  AsymptoticFailureKind kind() const { return kind_; }

 private:
  AsymptoticFailureKind kind_;
};

/// The (d-1)x(d-1) phase Hessian at w. Rows and columns follow roster order
/// with the distinguished coordinate removed.
struct PhaseHessian {
  BoxMatrix entries;
  ComplexBox det;
  std::size_t distinguished = 0;  // roster index playing the role of z_d
};

/// Throws AsymptoticFailure{hzd_zero} when every w_k H_{z_k}(w) box meets 0.
PhaseHessian phase_hessian(const SparsePoly& H, const Direction& r, const BoxVector& w);

struct AsymptoticTerm {
  BoxVector point;
  ComplexBox growth_base;    // w^r; the term grows like growth_base^(-n)
  mpq_class power;           // (1 - d) / 2
  ComplexBox constant;
  std::size_t distinguished = 0;
  /// det of the phase Hessian touched the negative real axis, so the square
  /// root branch was chosen by convention.
  bool branch_ambiguous = false;
  bool branch_flipped = false;  // sign changed by series comparison

  std::complex<double> growth_base_d() const { return growth_base.mid_d(); }
  std::complex<double> constant_d() const { return constant.mid_d(); }
  /// growth_base^(-n) n^power constant, in double precision.
  std::complex<double> evaluate(long n) const;
};

/// Leading term at a smooth minimal critical point, all hypotheses checked on
/// interval enclosures over the box w.
AsymptoticTerm leading_term(const SparsePoly& G, const SparsePoly& H, const Direction& r, const BoxVector& w);

struct AsymptoticExpansion {
  std::vector<AsymptoticTerm> terms;
  std::string formatted;
  std::vector<std::string> warnings;

  std::complex<double> evaluate(long n) const;
};

struct ExpansionOptions {
  int digits = 2;
  /// Bits the minimal points are refined to before evaluation.
  long refine_bits = 128;
  /// Largest n used when the square-root branch is checked against the series.
  long branch_check_n = 24;
  CertifyOptions cert;
};

/// One term per minimal point of `result`. Throws AsymptoticFailure from the
/// first point that violates a hypothesis and std::invalid_argument when the
/// result has a failure status.
AsymptoticExpansion expansion(const SparsePoly& G, const SparsePoly& H, const Direction& r,
                              const MinimalityResult& result, const ExpansionOptions& opts = {});

/// "a+bim" with `digits` significant digits; the imaginary part is omitted
/// when it is exactly zero.
std::string format_complex(std::complex<double> z, int digits = 2);
std::string format_rational(const mpq_class& q);
std::string format_term(const AsymptoticTerm& t, int digits = 2);
std::string format_asymptotics(const AsymptoticExpansion& exp, int digits = 2);

}  // namespace acsv
