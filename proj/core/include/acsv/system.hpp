#pragma once

#include <string>
#include <vector>

#include "acsv/poly.hpp"

namespace acsv {

/// Which construction a system encodes.
enum class SystemTag {
  critical,       ///< smooth critical point equations
  comb_extended,  ///< positive-minimality system with the t and lambda unknowns
  general_nu,     ///< general-case minimality system with the nu unknown
  general_nu0,    ///< general-case system for the nu_1 = 0 branch, squared
  user
};

std::string to_string(SystemTag tag);

/// Square polynomial system over a shared roster.
class PolySystem {
 public:
  PolySystem(std::vector<SparsePoly> polys, VarRoster roster, SystemTag tag = SystemTag::user);

  const std::vector<SparsePoly>& polys() const { return polys_; }
  const SparsePoly& operator[](std::size_t i) const { return polys_[i]; }
  const VarRoster& roster() const { return roster_; }
  SystemTag tag() const { return tag_; }
  std::size_t size() const { return polys_.size(); }

  /// Partial derivatives, jacobian()[i][j] = d polys[i] / d var j.
  const std::vector<std::vector<SparsePoly>>& jacobian() const { return jacobian_; }
  std::vector<int> degrees() const;
  bool real_coefficients() const { return true; }

 private:
  std::vector<SparsePoly> polys_;
  VarRoster roster_;
  SystemTag tag_;
  std::vector<std::vector<SparsePoly>> jacobian_;
};

}  // namespace acsv
