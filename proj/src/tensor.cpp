#include "gramlocus/tensor.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gramlocus/error.hpp"

namespace gramlocus {

MultiIndex::MultiIndex(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw ValidationError("multi-index entries must be 0 or 1");
  }
}

MultiIndex MultiIndex::decode(int order, std::size_t offset) {
  if (order < 1 || order > kMaxBinaryOrder || offset >= (std::size_t{1} << order)) {
    throw ValidationError("offset out of range for order " + std::to_string(order));
  }
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(order));
  for (int s = 0; s < order; ++s) bits[static_cast<std::size_t>(s)] = (offset & slot_bit(order, s)) ? 1 : 0;
  return MultiIndex(std::move(bits));
}

std::size_t MultiIndex::encode() const {
  std::size_t offset = 0;
  for (auto b : bits_) offset = (offset << 1) | b;
  return offset;
}

BinaryTensor BinaryTensor::make(int order, std::vector<double> entries) {
  if (order < 2 || order > kMaxBinaryOrder) {
    throw ValidationError("binary tensor order must be in [2, " + std::to_string(kMaxBinaryOrder) +
                          "], got " + std::to_string(order));
  }
  if (entries.size() != (std::size_t{1} << order)) {
    throw ValidationError("expected " + std::to_string(std::size_t{1} << order) + " entries, got " +
                          std::to_string(entries.size()));
  }
  for (double e : entries) {
    if (!std::isfinite(e)) throw ValidationError("tensor entries must be finite");
  }
  return BinaryTensor(order, std::move(entries));
}

BinaryTensor BinaryTensor::zeros(int order) {
  if (order < 2 || order > kMaxBinaryOrder) throw ValidationError("binary tensor order out of range");
  return BinaryTensor(order, std::vector<double>(std::size_t{1} << order, 0.0));
}

double BinaryTensor::at(const MultiIndex& index) const {
  if (index.order() != order_) throw ValidationError("multi-index order mismatch");
  return entries_[index.encode()];
}

BinaryTensor BinaryTensor::scaled(double factor) const {
  auto out = entries_;
  for (double& e : out) e *= factor;
  return make(order_, std::move(out));
}

GeneralTensor GeneralTensor::make(std::vector<int> dims, std::vector<double> entries) {
  if (dims.empty()) throw ValidationError("tensor needs at least one dimension");
  std::size_t total = 1;
  for (int d : dims) {
    if (d < 1) throw ValidationError("tensor dimensions must be positive");
    total *= static_cast<std::size_t>(d);
    if (total > kMaxGeneralSize) throw ValidationError("tensor too large");
  }
  if (entries.size() != total) {
    throw ValidationError("expected " + std::to_string(total) + " entries, got " + std::to_string(entries.size()));
  }
  for (double e : entries) {
    if (!std::isfinite(e)) throw ValidationError("tensor entries must be finite");
  }
  return GeneralTensor(std::move(dims), std::move(entries));
}

GeneralTensor GeneralTensor::from_binary(const BinaryTensor& tensor) {
  return GeneralTensor(std::vector<int>(static_cast<std::size_t>(tensor.order()), 2),
                       std::vector<double>(tensor.entries().begin(), tensor.entries().end()));
}

std::size_t GeneralTensor::offset(std::span<const int> index) const {
  if (index.size() != dims_.size()) throw ValidationError("index length mismatch");
  std::size_t off = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (index[k] < 0 || index[k] >= dims_[k]) throw ValidationError("index out of range");
    off = off * static_cast<std::size_t>(dims_[k]) + static_cast<std::size_t>(index[k]);
  }
  return off;
}

bool GeneralTensor::is_binary() const {
  if (dims_.size() < 2) return false;
  for (int d : dims_) {
    if (d != 2) return false;
  }
  return true;
}

double squared_norm(std::span<const double> entries) {
  double s = 0.0;
  for (double e : entries) s += e * e;
  return s;
}

double frobenius_norm(const BinaryTensor& tensor) { return std::sqrt(squared_norm(tensor.entries())); }
double frobenius_norm(const GeneralTensor& tensor) { return std::sqrt(squared_norm(tensor.entries())); }

Matrix2 OrthoFactor::matrix() const {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  if (!reflect) return {{{c, -s}, {s, c}}};
  // R(angle) * [[0, 1], [1, 0]]
  return {{{-s, c}, {c, s}}};
}

OrthoFactor OrthoFactor::from_matrix(const Matrix2& m) {
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (det > 0) return {std::atan2(m[1][0], m[0][0]), false};
  // m = R * S  =>  R = m * S, whose first column is m's second column.
  return {std::atan2(m[1][1], m[0][1]), true};
}

OrthoTuple OrthoTuple::identity(int order) {
  return OrthoTuple(std::vector<OrthoFactor>(static_cast<std::size_t>(order)));
}

std::vector<Matrix2> OrthoTuple::matrices() const {
  std::vector<Matrix2> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.matrix());
  return out;
}

Matrix2 multiply(const Matrix2& a, const Matrix2& b) {
  Matrix2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

OrthoTuple OrthoTuple::compose(const OrthoTuple& outer, const OrthoTuple& inner) {
  if (outer.order() != inner.order()) throw ValidationError("cannot compose transforms of different order");
  std::vector<OrthoFactor> out;
  out.reserve(outer.factors_.size());
  for (std::size_t k = 0; k < outer.factors_.size(); ++k) {
    out.push_back(OrthoFactor::from_matrix(multiply(outer.factors_[k].matrix(), inner.factors_[k].matrix())));
  }
  return OrthoTuple(std::move(out));
}

BinaryTensor multilinear_multiply(const BinaryTensor& tensor, std::span<const Matrix2> factors) {
  const int n = tensor.order();
  if (static_cast<int>(factors.size()) != n) {
    throw ValidationError("expected " + std::to_string(n) + " factors, got " + std::to_string(factors.size()));
  }
  std::vector<double> a(tensor.entries().begin(), tensor.entries().end());
  for (int s = 0; s < n; ++s) {
    const auto& m = factors[static_cast<std::size_t>(s)];
    const std::size_t bit = slot_bit(n, s);
    for (std::size_t o = 0; o < a.size(); ++o) {
      if (o & bit) continue;
      const double x0 = a[o];
      const double x1 = a[o | bit];
      a[o] = m[0][0] * x0 + m[0][1] * x1;
      a[o | bit] = m[1][0] * x0 + m[1][1] * x1;
    }
  }
  return BinaryTensor::make(n, std::move(a));
}

BinaryTensor ortho_act(const BinaryTensor& tensor, const OrthoTuple& transform) {
  if (transform.order() != tensor.order()) throw ValidationError("transform order does not match tensor order");
  const auto ms = transform.matrices();
  return multilinear_multiply(tensor, ms);
}

UnitSampler::UnitSampler(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

void UnitSampler::next_into(std::span<double> out) {
  double s = 0.0;
  do {
    s = 0.0;
    for (double& e : out) {
      e = normal_(engine_);
      s += e * e;
    }
  } while (s == 0.0);
  const double inv = 1.0 / std::sqrt(s);
  for (double& e : out) e *= inv;
}

BinaryTensor UnitSampler::next(int order) {
  if (order < 2 || order > kMaxBinaryOrder) throw ValidationError("binary tensor order out of range");
  std::vector<double> e(std::size_t{1} << order);
  next_into(e);
  return BinaryTensor::make(order, std::move(e));
}

BinaryTensor UnitSampler::next_in_ball(int order) {
  auto t = next(order);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double dim = static_cast<double>(std::size_t{1} << order);
  return t.scaled(std::pow(unif(engine_), 1.0 / dim));
}

BinaryTensor sample_unit(int order, std::uint64_t seed, std::uint64_t stream) {
  return UnitSampler(seed, stream).next(order);
}

BinaryTensor sample_ball(int order, std::uint64_t seed, std::uint64_t stream) {
  return UnitSampler(seed, stream).next_in_ball(order);
}

BinaryTensor vertex_tensor(int order, int quarters) {
  if (order < 2 || order > kMaxBinaryOrder) throw ValidationError("binary tensor order out of range");
  if (quarters < 2 || quarters > order) {
    throw ValidationError("vertex tensor needs 2 <= k <= n, got k = " + std::to_string(quarters));
  }
  std::vector<double> e(std::size_t{1} << order, 0.0);
  std::size_t second = 0;
  for (int s = 0; s < quarters; ++s) second |= slot_bit(order, s);
  e[0] = std::numbers::sqrt2 / 2.0;
  e[second] = std::numbers::sqrt2 / 2.0;
  return BinaryTensor::make(order, std::move(e));
}

BinaryTensor corollary_tensor(const Matrix2& m, std::span<const Vector2> vectors, int slot) {
  const int n = static_cast<int>(vectors.size()) + 2;
  if (n > kMaxBinaryOrder) throw ValidationError("too many vectors");
  if (slot < 1 || slot >= n) {
    throw ValidationError("corollary slot must be in [1, " + std::to_string(n - 1) + "], got " + std::to_string(slot));
  }
  // Which vector feeds each slot; slots 0 and `slot` are covered by m.
  std::vector<int> source(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int s = 1; s < n; ++s) {
    if (s != slot) source[static_cast<std::size_t>(s)] = next++;
  }
  std::vector<double> e(std::size_t{1} << n);
  for (std::size_t o = 0; o < e.size(); ++o) {
    const int i0 = (o & slot_bit(n, 0)) ? 1 : 0;
    const int ij = (o & slot_bit(n, slot)) ? 1 : 0;
    double v = m[i0][ij];
    for (int s = 1; s < n; ++s) {
      const int src = source[static_cast<std::size_t>(s)];
      if (src < 0) continue;
      v *= vectors[static_cast<std::size_t>(src)][(o & slot_bit(n, s)) ? 1 : 0];
    }
    e[o] = v;
  }
  return BinaryTensor::make(n, std::move(e));
}

BinaryTensor example_counter() {
  std::vector<double> e(8, 0.0);
  const double side = std::sqrt(0.5 - 1.0 / (2.0 * std::numbers::sqrt2));
  e[0b000] = std::pow(2.0, -0.25);
  e[0b011] = side;
  e[0b101] = side;
  return BinaryTensor::make(3, std::move(e));
}

GeneralTensor example_223() {
  std::vector<double> e(12, 0.0);
  const std::vector<int> dims{2, 2, 3};
  auto t = GeneralTensor::make(dims, e);
  const std::array<int, 3> first{0, 0, 0};
  const std::array<int, 3> second{1, 0, 2};
  e[t.offset(first)] = std::numbers::sqrt2 / 2.0;
  e[t.offset(second)] = std::numbers::sqrt2 / 2.0;
  return GeneralTensor::make(dims, std::move(e));
}

}  // namespace gramlocus
