#pragma once

#include <string>
#include <vector>

#include "heckext/constructions.hpp"

namespace fixtures {

using namespace heckext;

inline AlgebraPtr algebra(const std::string& type, std::vector<Scalar> k = {}) {
  if (k.empty()) k.assign((type == "B2" || type == "G2" || type == "B3") ? 2 : 1, Scalar(1));
  return Algebra::create(build_root_datum(type, k));
}

/// A regular weight with gamma(beta) != +-k_beta on every positive root (checked by callers).
inline Weight generic_weight(const Algebra& alg) {
  static const long seeds[] = {3, 7, 19};
  Weight g(alg.dim_v());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = seeds[i % 3];
  return g;
}

inline Weight zero_weight(const Algebra& alg) { return Weight(alg.dim_v()); }

}  // namespace fixtures
