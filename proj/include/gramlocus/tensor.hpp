#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace gramlocus {

// Slots are 0-based throughout the library: slot 0 is the first tensor index.
// Linear layout: slot 0 is the most significant bit of the offset, slot n-1
// varies fastest.

inline constexpr int kMaxBinaryOrder = 12;
inline constexpr std::size_t kMaxGeneralSize = 4096;

using Matrix2 = std::array<std::array<double, 2>, 2>;
using Vector2 = std::array<double, 2>;

class MultiIndex {
 public:
  explicit MultiIndex(std::vector<std::uint8_t> bits);

  static MultiIndex decode(int order, std::size_t offset);
  std::size_t encode() const;

  int order() const { return static_cast<int>(bits_.size()); }
  int operator[](int slot) const { return bits_[static_cast<std::size_t>(slot)]; }
  std::span<const std::uint8_t> bits() const { return bits_; }

 private:
  std::vector<std::uint8_t> bits_;
};

/// Mask of `slot` inside a linear offset of an order-`order` binary tensor.
constexpr std::size_t slot_bit(int order, int slot) {
  return std::size_t{1} << (order - 1 - slot);
}

class BinaryTensor {
 public:
  /// Throws ValidationError unless order >= 2, entries.size() == 2^order and
  /// every entry is finite.
  static BinaryTensor make(int order, std::vector<double> entries);
  static BinaryTensor zeros(int order);

  int order() const { return order_; }
  std::size_t size() const { return entries_.size(); }
  std::span<const double> entries() const { return entries_; }

  double operator[](std::size_t offset) const { return entries_[offset]; }
  double at(const MultiIndex& index) const;

  BinaryTensor scaled(double factor) const;

  friend bool operator==(const BinaryTensor&, const BinaryTensor&) = default;

 private:
  BinaryTensor(int order, std::vector<double> entries)
      : order_(order), entries_(std::move(entries)) {}

  int order_;
  std::vector<double> entries_;
};

/// Dense m1 x ... x mn tensor; same most-significant-first layout.
class GeneralTensor {
 public:
  static GeneralTensor make(std::vector<int> dims, std::vector<double> entries);
  static GeneralTensor from_binary(const BinaryTensor& tensor);

  int order() const { return static_cast<int>(dims_.size()); }
  std::span<const int> dims() const { return dims_; }
  std::span<const double> entries() const { return entries_; }

  std::size_t offset(std::span<const int> index) const;
  double at(std::span<const int> index) const { return entries_[offset(index)]; }

  bool is_binary() const;

 private:
  GeneralTensor(std::vector<int> dims, std::vector<double> entries)
      : dims_(std::move(dims)), entries_(std::move(entries)) {}

  std::vector<int> dims_;
  std::vector<double> entries_;
};

double frobenius_norm(const BinaryTensor& tensor);
double frobenius_norm(const GeneralTensor& tensor);
double squared_norm(std::span<const double> entries);

/// One element of O(2): rotation by `angle`, composed on the right with the
/// coordinate swap when `reflect` is set, i.e. R(angle) * S^reflect.
struct OrthoFactor {
  double angle = 0.0;
  bool reflect = false;

  Matrix2 matrix() const;
  /// Inverse of matrix() for an orthogonal input; angle lands in (-pi, pi].
  static OrthoFactor from_matrix(const Matrix2& m);
};

class OrthoTuple {
 public:
  OrthoTuple() = default;
  explicit OrthoTuple(std::vector<OrthoFactor> factors) : factors_(std::move(factors)) {}

  static OrthoTuple identity(int order);

  int order() const { return static_cast<int>(factors_.size()); }
  std::span<const OrthoFactor> factors() const { return factors_; }
  const OrthoFactor& operator[](int slot) const { return factors_[static_cast<std::size_t>(slot)]; }

  std::vector<Matrix2> matrices() const;

  /// Slot-wise product outer_k * inner_k, so acting with the result equals
  /// acting with `inner` first and `outer` second.
  static OrthoTuple compose(const OrthoTuple& outer, const OrthoTuple& inner);

 private:
  std::vector<OrthoFactor> factors_;
};

Matrix2 multiply(const Matrix2& a, const Matrix2& b);

/// Multilinear multiplication (M_1 (x) ... (x) M_n) . T with arbitrary 2x2
/// factors. Throws ValidationError on an order mismatch.
BinaryTensor multilinear_multiply(const BinaryTensor& tensor, std::span<const Matrix2> factors);

BinaryTensor ortho_act(const BinaryTensor& tensor, const OrthoTuple& transform);

/// Deterministic stream of random tensors. Each (seed, stream) pair owns an
/// independent engine.
class UnitSampler {
 public:
  UnitSampler(std::uint64_t seed, std::uint64_t stream);

  /// Uniform on the unit sphere of R^(2^order): normalized Gaussian vector.
  BinaryTensor next(int order);
  /// Fills `out` (size 2^order) in place, avoiding allocation in hot loops.
  void next_into(std::span<double> out);
  /// Uniform in the unit ball: sphere point scaled by u^(1/2^order).
  BinaryTensor next_in_ball(int order);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

BinaryTensor sample_unit(int order, std::uint64_t seed, std::uint64_t stream);
BinaryTensor sample_ball(int order, std::uint64_t seed, std::uint64_t stream);

/// a_{0...0} = a_{1..1 0..0} = 1/sqrt(2), with `quarters` leading ones.
/// Its Gram tuple has exactly `quarters` coordinates equal to 1/4.
BinaryTensor vertex_tensor(int order, int quarters);

/// a_{i_1...i_n} = M[i_1][i_j] * prod_{k != 1, j} v^(k)[i_k].
/// `slot` is the 0-based position j (1 <= slot < order); `vectors` lists the
/// factors for the remaining slots in increasing slot order.
BinaryTensor corollary_tensor(const Matrix2& m, std::span<const Vector2> vectors, int slot);

/// Order-3 tensor whose Gram tuple is (1/8, 1/8, (sqrt2 - 1)/2): a boundary
/// point with pairwise distinct singular values in every flattening.
BinaryTensor example_counter();

/// 2 x 2 x 3 tensor with d = (1/4, 0, 0), violating d1 <= d2 + d3.
GeneralTensor example_223();

}  // namespace gramlocus
