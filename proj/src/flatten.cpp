#include "gramlocus/flatten.hpp"

#include <algorithm>
#include <string>

#include "gramlocus/error.hpp"
#include "gramlocus/linalg.hpp"

namespace gramlocus {
namespace {

constexpr double kClampRelative = 1e-14;

void check_slot(int order, int slot) {
  if (slot < 0 || slot >= order) {
    throw ValidationError("slot " + std::to_string(slot) + " out of range for order " + std::to_string(order));
  }
}

double clamp_det(double det, double trace) {
  if (det < 0.0 && det >= -kClampRelative * trace * trace) return 0.0;
  return det;
}

}  // namespace

double GramMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < size; ++i) t += (*this)(i, i);
  return t;
}

Flattening principal_flattening(const BinaryTensor& tensor, int slot) {
  check_slot(tensor.order(), slot);
  return subset_flattening(tensor, {slot});
}

Flattening subset_flattening(const BinaryTensor& tensor, std::vector<int> slots) {
  const int n = tensor.order();
  std::sort(slots.begin(), slots.end());
  slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
  if (slots.empty() || static_cast<int>(slots.size()) >= n) {
    throw ValidationError("flattening needs a nonempty proper subset of slots");
  }
  for (int s : slots) check_slot(n, s);

  std::vector<int> rest;
  for (int s = 0; s < n; ++s)
    if (!std::binary_search(slots.begin(), slots.end(), s)) rest.push_back(s);

  Flattening f;
  f.rows = 1 << slots.size();
  f.cols = 1 << rest.size();
  f.row_slots = slots;
  f.data.resize(tensor.size());
  for (std::size_t o = 0; o < tensor.size(); ++o) {
    int r = 0;
    for (int s : slots) r = (r << 1) | ((o & slot_bit(n, s)) ? 1 : 0);
    int c = 0;
    for (int s : rest) c = (c << 1) | ((o & slot_bit(n, s)) ? 1 : 0);
    f.data[static_cast<std::size_t>(r * f.cols + c)] = tensor[o];
  }
  return f;
}

Flattening bond_flattening(const BinaryTensor& tensor, int j) {
  if (j < 1 || j >= tensor.order()) throw ValidationError("bond index out of range");
  std::vector<int> slots(static_cast<std::size_t>(j));
  for (int s = 0; s < j; ++s) slots[static_cast<std::size_t>(s)] = s;
  return subset_flattening(tensor, std::move(slots));
}

Flattening principal_flattening(const GeneralTensor& tensor, int slot) {
  const auto dims = tensor.dims();
  const int n = tensor.order();
  check_slot(n, slot);
  Flattening f;
  f.rows = dims[static_cast<std::size_t>(slot)];
  f.cols = static_cast<int>(tensor.entries().size()) / f.rows;
  f.row_slots = {slot};
  f.data.resize(tensor.entries().size());
  std::vector<int> index(static_cast<std::size_t>(n), 0);
  for (std::size_t o = 0; o < tensor.entries().size(); ++o) {
    int c = 0;
    for (int s = 0; s < n; ++s) {
      if (s == slot) continue;
      c = c * dims[static_cast<std::size_t>(s)] + index[static_cast<std::size_t>(s)];
    }
    f.data[static_cast<std::size_t>(index[static_cast<std::size_t>(slot)] * f.cols + c)] = tensor.entries()[o];
    // odometer increment, last slot fastest
    for (int s = n - 1; s >= 0; --s) {
      if (++index[static_cast<std::size_t>(s)] < dims[static_cast<std::size_t>(s)]) break;
      index[static_cast<std::size_t>(s)] = 0;
    }
  }
  return f;
}

int flattening_rank(const Flattening& f, double rel_tol) { return linalg::rank(f.data, f.rows, f.cols, rel_tol); }

GramMatrix gram_matrix(const Flattening& f) {
  GramMatrix g;
  g.size = f.rows;
  g.entries.assign(static_cast<std::size_t>(f.rows * f.rows), 0.0);
  for (int i = 0; i < f.rows; ++i) {
    for (int j = i; j < f.rows; ++j) {
      double s = 0.0;
      for (int c = 0; c < f.cols; ++c) s += f(i, c) * f(j, c);
      g.entries[static_cast<std::size_t>(i * f.rows + j)] = s;
      g.entries[static_cast<std::size_t>(j * f.rows + i)] = s;
    }
  }
  return g;
}

double gram_det(const BinaryTensor& tensor, int slot) {
  check_slot(tensor.order(), slot);
  const std::size_t bit = slot_bit(tensor.order(), slot);
  double vv = 0.0, ww = 0.0, vw = 0.0;
  for (std::size_t o = 0; o < tensor.size(); ++o) {
    if (o & bit) continue;
    const double v = tensor[o];
    const double w = tensor[o | bit];
    vv += v * v;
    ww += w * w;
    vw += v * w;
  }
  return clamp_det(vv * ww - vw * vw, vv + ww);
}

double gram_det_minors(const BinaryTensor& tensor, int slot) {
  const auto f = principal_flattening(tensor, slot);
  double s = 0.0;
  for (int c1 = 0; c1 < f.cols; ++c1) {
    for (int c2 = c1 + 1; c2 < f.cols; ++c2) {
      const double minor = f(0, c1) * f(1, c2) - f(0, c2) * f(1, c1);
      s += minor * minor;
    }
  }
  return s;
}

double gram_dets_into(std::span<const double> entries, int order, std::span<double> dets) {
  double trace = 0.0;
  for (double e : entries) trace += e * e;
  for (int s = 0; s < order; ++s) {
    const std::size_t bit = slot_bit(order, s);
    double vv = 0.0, ww = 0.0, vw = 0.0;
    for (std::size_t o = 0; o < entries.size(); ++o) {
      if (o & bit) continue;
      const double v = entries[o];
      const double w = entries[o | bit];
      vv += v * v;
      ww += w * w;
      vw += v * w;
    }
    dets[static_cast<std::size_t>(s)] = clamp_det(vv * ww - vw * vw, trace);
  }
  return trace;
}

GramTuple gram_tuple(const BinaryTensor& tensor) {
  GramTuple g;
  g.dets.resize(static_cast<std::size_t>(tensor.order()));
  g.trace = gram_dets_into(tensor.entries(), tensor.order(), g.dets);
  return g;
}

double gram_det_general(const GeneralTensor& tensor, int slot) {
  const auto g = gram_matrix(principal_flattening(tensor, slot));
  return clamp_det(linalg::determinant(g.entries, g.size), g.trace());
}

std::vector<double> gram_dets_general(const GeneralTensor& tensor) {
  std::vector<double> out;
  for (int s = 0; s < tensor.order(); ++s) out.push_back(gram_det_general(tensor, s));
  return out;
}

}  // namespace gramlocus
