#include "gramlocus/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "gramlocus/error.hpp"

namespace gramlocus::linalg {
namespace {

double cofactor_det(const std::vector<double>& a, int size) {
  if (size == 1) return a[0];
  if (size == 2) return a[0] * a[3] - a[1] * a[2];
  double det = 0.0;
  std::vector<double> minor(static_cast<std::size_t>((size - 1) * (size - 1)));
  for (int col = 0; col < size; ++col) {
    const double pivot = a[static_cast<std::size_t>(col)];
    if (pivot == 0.0) continue;
    std::size_t k = 0;
    for (int r = 1; r < size; ++r)
      for (int c = 0; c < size; ++c)
        if (c != col) minor[k++] = a[static_cast<std::size_t>(r * size + c)];
    const double sign = (col % 2 == 0) ? 1.0 : -1.0;
    det += sign * pivot * cofactor_det(minor, size - 1);
  }
  return det;
}

double elimination_det(std::vector<double> a, int size) {
  double det = 1.0;
  const auto at = [&](int r, int c) -> double& { return a[static_cast<std::size_t>(r * size + c)]; };
  for (int k = 0; k < size; ++k) {
    int p = k;
    for (int r = k + 1; r < size; ++r)
      if (std::abs(at(r, k)) > std::abs(at(p, k))) p = r;
    if (at(p, k) == 0.0) return 0.0;
    if (p != k) {
      for (int c = 0; c < size; ++c) std::swap(at(p, c), at(k, c));
      det = -det;
    }
    det *= at(k, k);
    for (int r = k + 1; r < size; ++r) {
      const double f = at(r, k) / at(k, k);
      for (int c = k; c < size; ++c) at(r, c) -= f * at(k, c);
    }
  }
  return det;
}

}  // namespace

double determinant(std::span<const double> a, int size) {
  if (size < 1 || a.size() != static_cast<std::size_t>(size * size)) {
    throw ValidationError("determinant needs a square matrix");
  }
  std::vector<double> m(a.begin(), a.end());
  return size <= 4 ? cofactor_det(m, size) : elimination_det(std::move(m), size);
}

int rank(std::span<const double> a, int rows, int cols, double rel_tol) {
  if (a.size() != static_cast<std::size_t>(rows * cols)) throw ValidationError("matrix size mismatch");
  std::vector<double> m(a.begin(), a.end());
  const auto at = [&](int r, int c) -> double& { return m[static_cast<std::size_t>(r * cols + c)]; };
  double scale = 0.0;
  for (double v : m) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0;
  const double tol = rel_tol * scale;
  int r = 0;
  for (; r < std::min(rows, cols); ++r) {
    int pr = r;
    int pc = r;
    double best = 0.0;
    for (int i = r; i < rows; ++i)
      for (int j = r; j < cols; ++j)
        if (std::abs(at(i, j)) > best) {
          best = std::abs(at(i, j));
          pr = i;
          pc = j;
        }
    if (best <= tol) break;
    for (int j = 0; j < cols; ++j) std::swap(at(pr, j), at(r, j));
    for (int i = 0; i < rows; ++i) std::swap(at(i, pc), at(i, r));
    for (int i = r + 1; i < rows; ++i) {
      const double f = at(i, r) / at(r, r);
      for (int j = r; j < cols; ++j) at(i, j) -= f * at(r, j);
    }
  }
  return r;
}

}  // namespace gramlocus::linalg
