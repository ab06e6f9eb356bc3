#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gramlocus/error.hpp"
#include "gramlocus/experiments.hpp"
#include "gramlocus/locus.hpp"

using namespace gramlocus;

TEST_CASE("fuzz modes and order checks") {
  CHECK(parse_fuzz_mode("hull") == FuzzMode::Hull);
  CHECK(to_string(FuzzMode::Conjecture) == "conjecture");
  CHECK_THROWS_AS(parse_fuzz_mode("cube"), ValidationError);
  CHECK_THROWS_AS(fuzz(4, FuzzMode::N3, 10, 1), ValidationError);
  CHECK_THROWS_AS(fuzz(3, FuzzMode::Conjecture, 10, 1), ValidationError);
}

TEST_CASE("small fuzz runs find no violations") {
  CHECK(fuzz(3, FuzzMode::Hull, 20000, 1, 1).violations == 0);
  CHECK(fuzz(3, FuzzMode::N3, 20000, 2, 1).violations == 0);
  for (int n = 4; n <= 6; ++n) CHECK(fuzz(n, FuzzMode::Conjecture, 20000, 3, 1).violations == 0);
}

TEST_CASE("fuzz reports are independent of the thread count") {
  const FuzzReport a = fuzz(5, FuzzMode::Conjecture, 50000, 9, 1);
  const FuzzReport b = fuzz(5, FuzzMode::Conjecture, 50000, 9, 3);
  CHECK(a.violations == b.violations);
  CHECK(a.near_boundary == b.near_boundary);
  CHECK(a.worst_margin == b.worst_margin);
  CHECK(a.worst_point == b.worst_point);
  const FuzzReport c = fuzz(5, FuzzMode::Conjecture, 50000, 10, 1);
  CHECK(a.worst_margin != c.worst_margin);
}

TEST_CASE("a zero margin flags the cube face as a violation-free boundary") {
  const FuzzReport r = fuzz(3, FuzzMode::Hull, 1000, 4, 1, 0.0);
  CHECK(r.worst_margin >= 0.0);
  CHECK(r.worst_point.size() == 3);
}

TEST_CASE("surface roots satisfy the root contract") {
  const auto points = surface_grid(21, 1);
  CHECK_FALSE(points.empty());
  for (const auto& p : points) {
    CHECK(std::abs(q_surface(p.d)) <= 1e-10);
    for (int i = 0; i < 3; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      CHECK(p.d[iu] >= 0.0);
      CHECK(p.d[iu] <= 0.25);
      CHECK(p.sigma[iu] == doctest::Approx(std::sqrt((1.0 + std::sqrt(1.0 - 4.0 * p.d[iu])) / 2.0)));
    }
  }
}

TEST_CASE("the boundary example lies on a grid column") {
  const auto roots = surface_roots(0.125, 0.125);
  const double target = (std::sqrt(2.0) - 1.0) / 2.0;
  bool hit = false;
  for (const auto& p : roots) hit = hit || std::abs(p.d[2] - target) < 1e-9;
  CHECK(hit);
  // Same column from the full grid: index 10 of 21 is exactly 1/8.
  bool in_grid = false;
  for (const auto& p : surface_grid(21, 2))
    in_grid = in_grid || (p.d[0] == 0.125 && p.d[1] == 0.125 && std::abs(p.d[2] - target) < 1e-9);
  CHECK(in_grid);
}

TEST_CASE("sigma coordinates of the star tip approach (1, 1, 1)") {
  // Q does not vanish at the all-quarter corner, so the surface stays away
  // from sigma = (1/sqrt2, 1/sqrt2, 1/sqrt2).
  CHECK(q_surface(std::vector<double>(3, 0.25)) == doctest::Approx(-1.0 / 512.0));
  for (double e : {1e-3, 1e-4, 1e-5}) {
    double best = 0.0;
    for (const auto& p : surface_roots(e, e)) best = std::max(best, std::min({p.sigma[0], p.sigma[1], p.sigma[2]}));
    CHECK(best > 1.0 - 10.0 * e);
  }
  CHECK(sigma_max_unit(0.25) == doctest::Approx(std::sqrt(0.5)));
  CHECK(sigma_max_unit(0.0) == 1.0);
}

TEST_CASE("surface grid is deterministic across threads") {
  const auto a = surface_grid(15, 1), b = surface_grid(15, 3);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].d == b[i].d);
  CHECK_THROWS_AS(surface_grid(1), ValidationError);
}

TEST_CASE("examples report passes") {
  const ExamplesReport r = boundary_examples_report();
  for (const auto& c : r.checks) {
    INFO(c.name);
    CHECK(c.passed);
  }
  CHECK(r.passed());
}
