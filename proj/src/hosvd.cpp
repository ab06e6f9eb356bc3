#include "gramlocus/hosvd.hpp"

#include <algorithm>
#include <cmath>

#include "gramlocus/error.hpp"

namespace gramlocus {

namespace {
constexpr double kClamp = 1e-12;
}

SingularPair singular_pair(double trace, double det) {
  if (!std::isfinite(trace) || !std::isfinite(det) || trace < 0.0) {
    throw ValidationError("trace and determinant must be finite, trace nonnegative");
  }
  const double scale = trace * trace;
  if (det < -kClamp * scale) throw ValidationError("negative Gram determinant");
  double disc = scale - 4.0 * det;
  if (disc < 0.0) {
    if (disc < -kClamp * scale) throw ValidationError("determinant exceeds t^2/4");
    disc = 0.0;
  }
  const double root = std::sqrt(disc);
  SingularPair p;
  p.sigma_max = std::sqrt(0.5 * (trace + root));
  // d / sigma_max^2 avoids cancellation in (t - root) / 2.
  p.sigma_min = p.sigma_max > 0.0 ? std::sqrt(std::max(0.0, det)) / p.sigma_max : 0.0;
  return p;
}

std::vector<SingularPair> singular_pairs(const GramTuple& tuple) {
  std::vector<SingularPair> out;
  out.reserve(tuple.dets.size());
  for (double d : tuple.dets) out.push_back(singular_pair(tuple.trace, d));
  return out;
}

GramTuple dets_from_sigma_max(double trace, std::span<const double> sigmas) {
  if (!std::isfinite(trace) || trace < 0.0) throw ValidationError("trace must be finite and nonnegative");
  const double slack = kClamp * std::max(trace, 1.0);
  GramTuple g;
  g.trace = trace;
  for (double s : sigmas) {
    const double s2 = s * s;
    if (!std::isfinite(s) || s < 0.0 || s2 < 0.5 * trace - slack || s2 > trace + slack) {
      throw ValidationError("sigma_max out of range [sqrt(t/2), sqrt(t)]");
    }
    g.dets.push_back(std::max(0.0, s2 * (trace - s2)));
  }
  return g;
}

}  // namespace gramlocus
