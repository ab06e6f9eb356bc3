#pragma once

#include <optional>

#include "gramlocus/tensor.hpp"

namespace gramlocus {

/// Cayley hyperdeterminant of a 2x2x2 tensor.
double hyperdet(const BinaryTensor& tensor);

/// (d1, d2, d3, t, hyperdet), constant on O(2)^3 orbits.
struct InvariantVector {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  double t = 0.0;
  double hyperdet = 0.0;

  double operator[](int i) const;
};

InvariantVector invariant_vector(const BinaryTensor& tensor);

/// Largest coordinate-wise absolute difference.
double invariant_distance(const InvariantVector& a, const InvariantVector& b);

struct EquivOptions {
  int grid = 24;
  int refine_iters = 200;
  double threshold = 1e-6;
  double tolerance = 1e-8;
  double invariant_tolerance = 1e-6;
  int threads = 1;
};

struct EquivResult {
  OrthoTuple transform;
  double residual = 0.0;
};

/// Searches O(2)^3 for Q with ortho_act(t, Q) close to s. Returns nullopt
/// when the invariant vectors disagree or the best residual exceeds
/// options.threshold.
std::optional<EquivResult> equiv_search(const BinaryTensor& s, const BinaryTensor& t,
                                        const EquivOptions& options = {});

/// Best transform found, without the threshold cut or the invariant check.
EquivResult equiv_minimize(const BinaryTensor& s, const BinaryTensor& t, const EquivOptions& options = {});

}  // namespace gramlocus
