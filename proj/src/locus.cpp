#include "gramlocus/locus.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "gramlocus/error.hpp"
#include "gramlocus/parallel.hpp"

namespace gramlocus {

std::string to_string(Status s) {
  switch (s) {
    case Status::Inside: return "Inside";
    case Status::Boundary: return "Boundary";
    case Status::Outside: return "Outside";
  }
  return "?";
}

std::string to_string(Region r) {
  switch (r) {
    case Region::HullViolation: return "Hull-violation";
    case Region::Region1: return "Region1";
    case Region::Region2: return "Region2";
    case Region::CubeViolation: return "Cube-violation";
    case Region::QSurface: return "Q-surface";
    case Region::CubeFace: return "Cube-face";
  }
  return "?";
}

double q1(std::span<const double> d) {
  double sum = 0.0;
  for (double x : d) sum += x;
  double prod = 1.0;
  for (double x : d) prod *= sum - 2.0 * x;
  return prod;
}

double sign_pattern_product(std::span<const double> d) {
  if (d.empty()) throw ValidationError("empty determinant tuple");
  const std::size_t n = d.size();
  std::vector<double> roots(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(d[i] >= 0.0)) throw ValidationError("q2 needs nonnegative determinants");
    roots[i] = std::sqrt(d[i]);
  }
  // Leading sign fixed at +1; bit k of `pattern` flips root k+1.
  double prod = 1.0;
  for (std::size_t pattern = 0; pattern < (std::size_t{1} << (n - 1)); ++pattern) {
    double term = roots[0];
    for (std::size_t k = 1; k < n; ++k) term += (pattern & (std::size_t{1} << (k - 1))) ? -roots[k] : roots[k];
    prod *= term;
  }
  return prod;
}

double q2(std::span<const double> d) {
  const double p = sign_pattern_product(d);
  return 0.5 * p * p;
}

double q2_closed_form_n3(std::span<const double> d) {
  if (d.size() != 3) throw ValidationError("closed form needs n = 3");
  const double inner = d[0] * d[0] + d[1] * d[1] + d[2] * d[2] - 2.0 * (d[0] * d[1] + d[0] * d[2] + d[1] * d[2]);
  return 0.5 * inner * inner;
}

double q_surface(std::span<const double> d) { return q1(d) - q2(d); }

double pair_curve(double di, double dj) { return (di - dj) * (di - dj) + 0.5 * (di + dj) - 3.0 / 16.0; }

double cube_slack(std::span<const double> d) {
  double s = std::numeric_limits<double>::infinity();
  for (double x : d) s = std::min({s, x, kQuarter - x});
  return s;
}

double hull_slack(std::span<const double> d) {
  double sum = 0.0;
  for (double x : d) sum += x;
  double s = std::numeric_limits<double>::infinity();
  for (double x : d) s = std::min(s, sum - 2.0 * x);
  return s;
}

namespace {

double min_pair_curve(std::span<const double> d) {
  double s = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) s = std::min(s, pair_curve(d[i], d[j]));
  return s;
}

void check_points(std::span<const double> d, std::size_t min_order) {
  if (d.size() < min_order) throw ValidationError("determinant tuple too short");
  for (double x : d) {
    if (!std::isfinite(x)) throw ValidationError("determinant tuple must be finite");
  }
}

Membership with_values(std::span<const double> d, Status status, std::optional<Region> region) {
  Membership m;
  m.status = status;
  m.region = region;
  m.q1 = q1(d);
  bool nonneg = std::all_of(d.begin(), d.end(), [](double x) { return x >= 0.0; });
  m.q2 = nonneg ? q2(d) : std::numeric_limits<double>::quiet_NaN();
  return m;
}

// Inside verdicts touching the cube or a hull facet become Boundary.
Membership settle_faces(std::span<const double> d, Membership m, double tol) {
  if (m.status != Status::Inside) return m;
  if (cube_slack(d) <= tol) {
    m.status = Status::Boundary;
    m.region = Region::CubeFace;
  } else if (hull_slack(d) <= tol) {
    m.status = Status::Boundary;
    m.region = Region::HullViolation;
  }
  return m;
}

}  // namespace

double hull_margin(std::span<const double> d) { return std::min(cube_slack(d), hull_slack(d)); }

double n3_margin(std::span<const double> d) {
  const double linear = hull_margin(d);
  if (linear < 0.0) return linear;
  return std::min(linear, std::max(q_surface(d), min_pair_curve(d)));
}

double conjecture_margin(std::span<const double> d) {
  const double cube = cube_slack(d);
  if (cube < 0.0) return cube;
  return std::min(cube, q_surface(d));
}

Membership hull_membership(std::span<const double> d, double tol) {
  check_points(d, 2);
  if (cube_slack(d) < -tol) return with_values(d, Status::Outside, Region::CubeViolation);
  if (hull_slack(d) < -tol) return with_values(d, Status::Outside, Region::HullViolation);
  return settle_faces(d, with_values(d, Status::Inside, std::nullopt), tol);
}

std::vector<std::vector<double>> hull_vertices(int order) {
  if (order < 2) throw ValidationError("hull needs n >= 2");
  std::vector<std::vector<double>> out;
  for (std::uint32_t mask = 0; mask < (1u << order); ++mask) {
    const int ones = std::popcount(mask);
    if (ones == 1) continue;
    std::vector<double> v(static_cast<std::size_t>(order), 0.0);
    for (int s = 0; s < order; ++s)
      if (mask & (1u << (order - 1 - s))) v[static_cast<std::size_t>(s)] = kQuarter;
    out.push_back(std::move(v));
  }
  return out;
}

Membership locus_membership_n3(std::span<const double> d, double tol) {
  check_points(d, 3);
  if (d.size() != 3) throw ValidationError("the exact classifier covers n = 3 only");
  if (cube_slack(d) < -tol) return with_values(d, Status::Outside, Region::CubeViolation);
  if (hull_slack(d) < -tol) return with_values(d, Status::Outside, Region::HullViolation);

  const double q = q_surface(d);
  const double pairs = min_pair_curve(d);
  Membership m;
  if (q > tol) {
    m = with_values(d, Status::Inside, Region::Region1);
  } else if (q < -tol) {
    if (pairs > tol) {
      m = with_values(d, Status::Inside, Region::Region2);
    } else if (pairs >= -tol) {
      m = with_values(d, Status::Boundary, Region::Region2);
    } else {
      m = with_values(d, Status::Outside, Region::QSurface);
    }
  } else if (pairs > tol) {
    // Both sides of the surface belong to the locus here.
    m = with_values(d, Status::Inside, Region::Region2);
  } else {
    m = with_values(d, Status::Boundary, Region::QSurface);
  }
  return settle_faces(d, m, tol);
}

Membership locus_membership_conjecture(std::span<const double> d, double tol) {
  check_points(d, 2);
  if (d.size() < 4) throw ValidationError("the conjectured description is stated for n >= 4");
  if (cube_slack(d) < -tol) return with_values(d, Status::Outside, Region::CubeViolation);
  const double q = q_surface(d);
  if (q < -tol) {
    return with_values(d, Status::Outside, hull_slack(d) < -tol ? Region::HullViolation : Region::QSurface);
  }
  if (q <= tol) return with_values(d, Status::Boundary, Region::QSurface);
  return settle_faces(d, with_values(d, Status::Inside, Region::Region1), tol);
}

double branch_p(std::span<const double> d) {
  if (d.size() != 3) throw ValidationError("branch polynomials are defined for n = 3");
  return d[0] * d[1] * d[2] * (d[0] - d[1]) * (d[0] - d[2]) * (d[1] - d[2]);
}

double branch_q(std::span<const double> d) {
  if (d.size() != 3) throw ValidationError("branch polynomials are defined for n = 3");
  const double diffs = (d[0] - d[1]) * (d[0] - d[2]) * (d[1] - d[2]);
  const double faces = (d[0] - kQuarter) * (d[1] - kQuarter) * (d[2] - kQuarter);
  return diffs * faces * q_surface(d);
}

FractionEstimate volume_fraction_linear(int order, std::uint64_t samples, std::uint64_t seed, int threads) {
  if (order < 2) throw ValidationError("order must be >= 2");
  constexpr std::uint64_t kChunk = 1 << 16;
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> hits(chunks, 0);
  for_each_chunk(chunks, threads, [&](std::size_t c) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unif(0.0, kQuarter);
    std::vector<double> d(static_cast<std::size_t>(order));
    const std::uint64_t count = std::min(kChunk, samples - c * kChunk);
    std::uint64_t h = 0;
    for (std::uint64_t s = 0; s < count; ++s) {
      for (double& x : d) x = unif(rng);
      if (hull_slack(d) >= 0.0) ++h;
    }
    hits[c] = h;
  });
  FractionEstimate est;
  est.samples = samples;
  for (auto h : hits) est.hits += h;
  if (samples > 0) {
    est.fraction = static_cast<double>(est.hits) / static_cast<double>(samples);
    est.std_error = std::sqrt(est.fraction * (1.0 - est.fraction) / static_cast<double>(samples));
  }
  return est;
}

double expected_linear_fraction(int order) {
  double fact = 1.0;
  for (int k = 2; k < order; ++k) fact *= k;
  return 1.0 - 1.0 / fact;
}

}  // namespace gramlocus
