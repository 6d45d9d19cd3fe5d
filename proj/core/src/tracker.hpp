#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "acsv/solver.hpp"

namespace acsv::detail {

using cd = std::complex<double>;

/// Polynomial in n projective unknowns (index 0 is the homogenizing
/// coordinate) and optional parameters, with double coefficients.
struct CompiledPoly {
  struct Term {
    cd coef;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> x;  // (unknown index, exponent), x0 included
    std::vector<std::pair<std::uint32_t, std::uint32_t>> p;  // (parameter index, exponent)
  };
  std::vector<Term> terms;
  int degree = 0;
};

/// Homogenizes `poly` in its first `nx` roster variables; the remaining
/// variables become parameters.
CompiledPoly compile(const SparsePoly& poly, std::size_t nx);

/// Value, gradient in the unknowns (size nx + 1) and gradient in the
/// parameters at (X, P).
void evaluate(const CompiledPoly& f, const Eigen::VectorXcd& X, const std::vector<cd>& P, cd& value,
              Eigen::Ref<Eigen::RowVectorXcd, 0, Eigen::InnerStride<>> grad_x, std::vector<cd>* grad_p);

/// Homotopy H(X, s) in projective unknowns X (size n + 1), without the patch.
class Homotopy {
 public:
  virtual ~Homotopy() = default;
  virtual std::size_t size() const = 0;  // n
  virtual void eval(const Eigen::VectorXcd& X, double s, Eigen::VectorXcd& H, Eigen::MatrixXcd& JX,
                    Eigen::VectorXcd& Hs) const = 0;
};

/// Predictor-corrector tracking from s = 0 to s = 1 on the affine chart
/// patch . X = 1.
PathResult track(const Homotopy& h, const Eigen::VectorXcd& patch, Eigen::VectorXcd X, const TrackOptions& opts);

class TotalDegreeHomotopy final : public Homotopy {
 public:
  TotalDegreeHomotopy(const PolySystem& sys, const StartSystem& start);
  std::size_t size() const override { return f_.size(); }
  void eval(const Eigen::VectorXcd& X, double s, Eigen::VectorXcd& H, Eigen::MatrixXcd& JX,
            Eigen::VectorXcd& Hs) const override;
  PathResult track_index(std::uint64_t index, const TrackOptions& opts) const;

 private:
  std::vector<CompiledPoly> f_;
  const StartSystem& start_;
};

}  // namespace acsv::detail
