#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "acsv/interval.hpp"
#include "acsv/system.hpp"

namespace acsv {

/// Enclosure of one solution of a square system. When `certified` holds, the
/// box contains exactly one solution (Krawczyk contraction witnessed). When
/// `real` also holds, the contraction was shown on the real-restricted system
/// and that solution is real.
struct CertifiedSolution {
  BoxVector box;
  std::vector<std::complex<double>> approx;
  bool certified = false;
  bool real = false;
  mpfr_prec_t precision_bits = 53;

  std::size_t size() const { return box.size(); }
  /// High-precision box midpoint.
  std::vector<BigComplex> center() const;
};

enum class CertFailureKind { non_contracting, singular_jacobian, precision_cap };

struct CertFailure {
  CertFailureKind kind;
  std::string detail;
};

std::string to_string(CertFailureKind kind);

/// Either a value or the reason it could not be produced.
template <class T>
class Outcome {
 public:
  Outcome(T value) : v_(std::move(value)) {}
  Outcome(CertFailure f) : v_(std::move(f)) {}

  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }
  const T& value() const& { return std::get<T>(v_); }
  T& value() & { return std::get<T>(v_); }
  T&& value() && { return std::get<T>(std::move(v_)); }
  const CertFailure& failure() const { return std::get<CertFailure>(v_); }

 private:
  std::variant<T, CertFailure> v_;
};

struct CertifyOptions {
  mpfr_prec_t start_bits = 53;
  mpfr_prec_t max_bits = 4096;
  double radius_factor = 1e-6;
  double radius_floor = 1e-8;
};

/// One Krawczyk test: X = approx + radius (per coordinate, complex square or
/// real segment), K(X) = y - Y F(y) + (I - Y J(X))(X - y). Succeeds iff K(X)
/// lies in the interior of X. Works at the precision of `approx`.
Outcome<CertifiedSolution> krawczyk_test(const PolySystem& sys, std::span<const BigComplex> approx,
                                         std::span<const BigFloat> radius, bool real_mode);

/// Double-precision convenience form with a single radius, at 53 bits.
Outcome<CertifiedSolution> krawczyk_certify(const PolySystem& sys,
                                            std::span<const std::complex<double>> approx,
                                            double radius, bool real_mode = false);

/// Newton iterations at the working precision of `point`. Returns nullopt if
/// the Jacobian is singular or the iteration does not settle.
std::optional<std::vector<BigComplex>> newton_polish(const PolySystem& sys, std::vector<BigComplex> point,
                                                     int max_iterations, long stop_bits, bool real_mode);

/// Polishes the approximation and certifies it, escalating precision (53,
/// doubling up to max_bits) and trying a few radii.
Outcome<CertifiedSolution> certify(const PolySystem& sys, std::span<const std::complex<double>> approx,
                                   const CertifyOptions& opts, bool real_mode = false);

/// Shrinks a certified box to side length at most 2^-target_bits (relative to
/// 1), raising precision as needed. The result is a subset of the input box.
Outcome<CertifiedSolution> refine_bits(const CertifiedSolution& sol, const PolySystem& sys, long target_bits,
                                       const CertifyOptions& opts);
Outcome<CertifiedSolution> refine(const CertifiedSolution& sol, const PolySystem& sys, double target_width,
                                  const CertifyOptions& opts);

/// Attempts to certify that the (complex-certified) solution is real by
/// re-certifying on the real-restricted system inside its box.
Outcome<CertifiedSolution> certify_real(const CertifiedSolution& sol, const PolySystem& sys,
                                        const CertifyOptions& opts);

enum class Verdict { yes, no, unknown };
enum class Query { is_real, is_positive_real, coord_in_open_unit };

std::string to_string(Verdict v);

/// Decides what the certified box proves; `coord` is used by coord_in_open_unit.
Verdict classify(const CertifiedSolution& sol, Query query, std::size_t coord = 0);

/// Whether two certified solutions of `sys` are the same point.
Verdict same_solution(const PolySystem& sys, const CertifiedSolution& a, const CertifiedSolution& b,
                      const CertifyOptions& opts);

/// Interval enclosures of the system and its Jacobian over a box.
BoxVector eval_system(const PolySystem& sys, std::span<const ComplexBox> box);
BoxMatrix eval_jacobian(const PolySystem& sys, std::span<const ComplexBox> box);

/// Gauss-Jordan inverse at the working precision; nullopt when singular.
std::optional<std::vector<std::vector<BigComplex>>> invert(std::vector<std::vector<BigComplex>> m);

}  // namespace acsv
