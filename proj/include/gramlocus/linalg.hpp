#pragma once

#include <span>

namespace gramlocus::linalg {

// Small dense row-major square matrices.

/// Cofactor expansion for size <= 4, partial-pivot elimination above.
double determinant(std::span<const double> a, int size);

/// Elimination with full pivoting; pivots below rel_tol * max|a| count as zero.
int rank(std::span<const double> a, int rows, int cols, double rel_tol = 1e-12);

}  // namespace gramlocus::linalg
