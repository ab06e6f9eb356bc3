#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace gramlocus {

enum class FuzzMode { Hull, N3, Conjecture };

std::string to_string(FuzzMode mode);
/// "hull", "n3" or "conjecture".
FuzzMode parse_fuzz_mode(const std::string& text);

struct FuzzReport {
  int order = 0;
  FuzzMode mode = FuzzMode::Hull;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t violations = 0;
  std::uint64_t near_boundary = 0;
  double worst_margin = 0.0;
  std::vector<double> worst_point;
  double elapsed = 0.0;
};

inline constexpr std::uint64_t kFuzzChunk = 1 << 14;
inline constexpr double kViolationMargin = 1e-10;

/// Samples unit-sphere tensors in fixed chunks (chunk c uses stream c), maps
/// them to Gram tuples and evaluates the mode's margin. A sample is a
/// violation when its margin is below -margin and near the boundary when
/// |margin| <= margin. Everything but `elapsed` is independent of `threads`.
FuzzReport fuzz(int order, FuzzMode mode, std::uint64_t samples, std::uint64_t seed, int threads = 0,
                double margin = kViolationMargin);

struct SurfacePoint {
  std::array<double, 3> d{};
  std::array<double, 3> sigma{};
  bool touch = false;  // double root found by minimizing |Q|
};

enum class SurfaceCoords { Det, Sigma };

SurfaceCoords parse_surface_coords(const std::string& text);

/// sqrt((1 + sqrt(1 - 4d)) / 2): largest singular value at t = 1.
double sigma_max_unit(double d);

/// Roots d3 in [0, 1/4] of Q(d1, d2, .) for (d1, d2) on the resolution x
/// resolution grid i/(4(R-1)). Sign changes over 256 subintervals are
/// bisected to 1e-12; touch points need |Q| <= 1e-10.
std::vector<SurfacePoint> surface_grid(int resolution, int threads = 0);

/// Roots for one grid column, in increasing order.
std::vector<SurfacePoint> surface_roots(double d1, double d2);

struct ExampleCheck {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double expected = 0.0;
};

struct ExamplesReport {
  std::vector<ExampleCheck> checks;
  bool passed() const;
};

/// Recomputes the distinct-singular-value boundary example, the 2x2x3
/// hull violation and the vertex tensors, comparing against closed forms.
ExamplesReport boundary_examples_report();

}  // namespace gramlocus
