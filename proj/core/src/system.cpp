#include <stdexcept>

#include "acsv/system.hpp"

namespace acsv {

std::string to_string(SystemTag tag) {
  switch (tag) {
    case SystemTag::critical: return "critical";
    case SystemTag::comb_extended: return "comb_extended";
    case SystemTag::general_nu: return "general_nu";
    case SystemTag::general_nu0: return "general_nu0";
    case SystemTag::user: return "user";
  }
  return "user";
}

PolySystem::PolySystem(std::vector<SparsePoly> polys, VarRoster roster, SystemTag tag)
    : polys_(std::move(polys)), roster_(std::move(roster)), tag_(tag) {
  if (polys_.size() != roster_.size())
    throw std::invalid_argument("system is not square: " + std::to_string(polys_.size()) + " equations in " +
                                std::to_string(roster_.size()) + " unknowns");
  for (const auto& p : polys_)
    if (!(p.roster() == roster_)) throw std::invalid_argument("system polynomial over a different roster");
  jacobian_.resize(polys_.size());
  for (std::size_t i = 0; i < polys_.size(); ++i)
    for (std::size_t j = 0; j < roster_.size(); ++j) jacobian_[i].push_back(partial(polys_[i], j));
}

std::vector<int> PolySystem::degrees() const {
  std::vector<int> d;
  d.reserve(polys_.size());
  for (const auto& p : polys_) d.push_back(p.total_degree());
  return d;
}

}  // namespace acsv
