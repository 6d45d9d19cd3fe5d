#pragma once

#include <vector>

namespace acsv::detail {

/// Phase-one simplex: is { x >= 0 : A x = b } nonempty (up to `tol`)?
bool feasible_standard(std::vector<std::vector<double>> A, std::vector<double> b, double tol = 1e-9);

/// Is { x free : Aeq x = beq, Age x >= bge } nonempty (up to `tol`)?
bool feasible_free(const std::vector<std::vector<double>>& Aeq, const std::vector<double>& beq,
                   const std::vector<std::vector<double>>& Age, const std::vector<double>& bge, std::size_t n,
                   double tol = 1e-9);

}  // namespace acsv::detail
