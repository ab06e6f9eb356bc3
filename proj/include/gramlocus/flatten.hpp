#pragma once

#include <span>
#include <vector>

#include "gramlocus/tensor.hpp"

namespace gramlocus {

/// Matrix unfolding of a tensor. Rows run over the chosen slots, columns over
/// the remaining slots, both in lexicographic order of the fixed layout.
struct Flattening {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;     // row-major
  std::vector<int> row_slots;   // slots grouped into the rows

  double operator()(int r, int c) const { return data[static_cast<std::size_t>(r * cols + c)]; }
};

/// Symmetric Gram matrix F * F^T of a flattening.
struct GramMatrix {
  int size = 0;
  std::vector<double> entries;

  double operator()(int r, int c) const { return entries[static_cast<std::size_t>(r * size + c)]; }
  double trace() const;
};

/// The n Gram determinants plus the common trace (squared Frobenius norm).
struct GramTuple {
  std::vector<double> dets;
  double trace = 0.0;

  int order() const { return static_cast<int>(dets.size()); }
};

Flattening principal_flattening(const BinaryTensor& tensor, int slot);
Flattening principal_flattening(const GeneralTensor& tensor, int slot);

/// `slots` must be a nonempty proper subset; it is sorted before use.
Flattening subset_flattening(const BinaryTensor& tensor, std::vector<int> slots);

/// Rows 0..j-1 grouped as rows: the j-th tensor-train bond unfolding.
Flattening bond_flattening(const BinaryTensor& tensor, int j);

int flattening_rank(const Flattening& f, double rel_tol = 1e-12);

GramMatrix gram_matrix(const Flattening& f);

/// Cauchy-Schwarz form |v|^2 |w|^2 - <v,w>^2 of the slot's principal
/// flattening. Rounding noise down to -1e-14 t^2 is clamped to zero.
double gram_det(const BinaryTensor& tensor, int slot);

/// Sum of squared 2x2 minors of the principal flattening (Cauchy-Binet).
/// Quadratic in the column count; meant as an independent check.
double gram_det_minors(const BinaryTensor& tensor, int slot);

GramTuple gram_tuple(const BinaryTensor& tensor);

/// Writes the n determinants into `dets` and returns the trace. Hot-loop
/// variant of gram_tuple without allocation.
double gram_dets_into(std::span<const double> entries, int order, std::span<double> dets);

/// Determinant of the m_i x m_i Gram matrix of the slot's flattening.
double gram_det_general(const GeneralTensor& tensor, int slot);
std::vector<double> gram_dets_general(const GeneralTensor& tensor);

}  // namespace gramlocus
