#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gramlocus {

// Points are Gram-determinant tuples (d_1, ..., d_n) of tensors in the unit
// ball, so the relevant box is [0, 1/4]^n.

inline constexpr double kQuarter = 0.25;
inline constexpr double kDefaultTolerance = 1e-9;

enum class Status { Inside, Boundary, Outside };

/// The constraint that decided a verdict.
enum class Region { HullViolation, Region1, Region2, CubeViolation, QSurface, CubeFace };

struct Membership {
  Status status = Status::Inside;
  std::optional<Region> region;
  double q1 = 0.0;
  double q2 = 0.0;
};

std::string to_string(Status s);
std::string to_string(Region r);

/// prod_i (sum_{j != i} d_j - d_i)
double q1(std::span<const double> d);

/// Product over the 2^(n-1) sign patterns with leading +1 of
/// sqrt(d_1) +- sqrt(d_2) +- ... +- sqrt(d_n). Throws on negative input.
double sign_pattern_product(std::span<const double> d);

/// (1/2) * sign_pattern_product(d)^2, a perfect square.
double q2(std::span<const double> d);

/// Closed form of q2 for n = 3:
/// (1/2) (d1^2 + d2^2 + d3^2 - 2 (d1 d2 + d1 d3 + d2 d3))^2.
double q2_closed_form_n3(std::span<const double> d);

/// Q = Q1 - Q2.
double q_surface(std::span<const double> d);

/// (d_i - d_j)^2 + (d_i + d_j)/2 - 3/16
double pair_curve(double di, double dj);

/// Smallest of d_i, 1/4 - d_i over all i.
double cube_slack(std::span<const double> d);
/// Smallest of sum_{j != i} d_j - d_i over all i.
double hull_slack(std::span<const double> d);

/// Signed slack of each classifier: negative exactly when the predicate
/// fails, in units of the most violated defining polynomial.
double hull_margin(std::span<const double> d);
double n3_margin(std::span<const double> d);
double conjecture_margin(std::span<const double> d);

/// Polytope d_i <= sum_{j != i} d_j, 0 <= d_i <= 1/4.
Membership hull_membership(std::span<const double> d, double tol = kDefaultTolerance);

/// The 2^n - n vertices: the origin and every 0/(1/4) vector with at least
/// two quarter coordinates.
std::vector<std::vector<double>> hull_vertices(int order);

/// Exact description for n = 3: inside the cube and the hull, either
/// Q1 >= Q2 (Region1) or Q1 <= Q2 with pair_curve >= 0 for every pair
/// (Region2). Region2 uses ">=": the orientation that contains the image of
/// a_000 = a_111 = 1/sqrt(2), which maps to (1/4, 1/4, 1/4).
Membership locus_membership_n3(std::span<const double> d, double tol = kDefaultTolerance);

/// Conjectured description for n >= 4: cube and Q1 >= Q2.
Membership locus_membership_conjecture(std::span<const double> d, double tol = kDefaultTolerance);

/// n = 3 branch-locus polynomials.
double branch_p(std::span<const double> d);
double branch_q(std::span<const double> d);

struct FractionEstimate {
  double fraction = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
};

/// Monte Carlo share of the cube [0, 1/4]^n that satisfies every linear
/// inequality d_i <= sum_{j != i} d_j. Deterministic in (seed, samples),
/// independent of `threads`.
FractionEstimate volume_fraction_linear(int order, std::uint64_t samples, std::uint64_t seed, int threads = 0);

/// 1 - 1/(n-1)!
double expected_linear_fraction(int order);

}  // namespace gramlocus
