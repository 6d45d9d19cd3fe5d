#pragma once

#include <random>
#include <string>
#include <vector>

#include "acsv/poly.hpp"

namespace testing {

inline acsv::VarRoster roster(std::vector<std::string> names) { return acsv::VarRoster(std::move(names)); }

inline acsv::SparsePoly P(const std::string& text, const acsv::VarRoster& r) { return acsv::parse_poly(text, r); }

/// Roster taken from the identifiers of `text` in first-appearance order.
inline acsv::SparsePoly P(const std::string& text) {
  return acsv::parse_poly(text, acsv::VarRoster(acsv::scan_identifiers(text)));
}

inline mpq_class random_rational(std::mt19937_64& rng, long range = 9, long den = 7) {
  std::uniform_int_distribution<long> n(-range, range), q(1, den);
  mpq_class v(n(rng), q(rng));
  v.canonicalize();
  return v;
}

inline acsv::SparsePoly random_poly(std::mt19937_64& rng, const acsv::VarRoster& r, int terms, unsigned max_exp) {
  acsv::PolyBuilder b(r);
  std::uniform_int_distribution<unsigned> ex(0, max_exp);
  for (int i = 0; i < terms; ++i) {
    acsv::Exponent e(r.size());
    for (auto& k : e) k = ex(rng);
    b.add(e, random_rational(rng));
  }
  return std::move(b).build();
}

}  // namespace testing
