#pragma once

#include <span>
#include <vector>

#include "gramlocus/flatten.hpp"

namespace gramlocus {

/// Singular values of one principal flattening: the nonnegative roots of
/// x^4 - t x^2 + d.
struct SingularPair {
  double sigma_max = 0.0;
  double sigma_min = 0.0;
};

/// Discriminants t^2 - 4d down to -1e-12 t^2 are clamped to zero.
SingularPair singular_pair(double trace, double det);
std::vector<SingularPair> singular_pairs(const GramTuple& tuple);

/// d_i = s_i^2 (t - s_i^2), the inverse of the larger root. Requires
/// t/2 <= s_i^2 <= t up to rounding.
GramTuple dets_from_sigma_max(double trace, std::span<const double> sigmas);

}  // namespace gramlocus
