#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "generators.hpp"
#include "gramlocus/error.hpp"
#include "gramlocus/flatten.hpp"
#include "gramlocus/locus.hpp"

using namespace gramlocus;

namespace {

// Product over every sign vector with s_1 = +1, enumerated recursively.
double sign_product_oracle(const std::vector<double>& d, std::size_t k, double partial) {
  if (k == d.size()) return partial;
  const double r = std::sqrt(d[k]);
  return sign_product_oracle(d, k + 1, partial + r) * sign_product_oracle(d, k + 1, partial - r);
}

double q2_oracle(const std::vector<double>& d) {
  const double p = sign_product_oracle(d, 1, std::sqrt(d[0]));
  return 0.5 * p * p;
}

std::vector<double> tuple_of(const BinaryTensor& t) { return gram_tuple(t).dets; }

}  // namespace

TEST_CASE("Q values on the all-quarter point") {
  for (int n = 3; n <= 7; ++n) {
    const std::vector<double> d(static_cast<std::size_t>(n), 0.25);
    CHECK(q1(d) == std::pow((n - 2) / 4.0, n));
  }
  const std::vector<double> d3(3, 0.25), d4(4, 0.25), d6(6, 0.25);
  CHECK(q2(d3) == doctest::Approx(9.0 / 512.0).epsilon(1e-15));
  CHECK(q2(d4) == 0.0);
  CHECK(q2(d6) == 0.0);
  CHECK(q1(d3) == doctest::Approx(1.0 / 64.0));
}

TEST_CASE("q2 agrees with the closed form and a recursive oracle") {
  auto r = gen::rng(60);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto d = gen::cube_point(r, 3);
    CHECK(std::abs(q2(d) - q2_closed_form_n3(d)) <= 1e-12);
  }
  for (int trial = 0; trial < 300; ++trial) {
    const auto d = gen::cube_point(r, gen::integer(r, 2, 7));
    CHECK(std::abs(q2(d) - q2_oracle(d)) <= 1e-14);
    auto shuffled = d;
    std::shuffle(shuffled.begin(), shuffled.end(), r);
    CHECK(std::abs(q2(shuffled) - q2(d)) <= 1e-14);
  }
  const std::vector<double> bad = {0.1, -0.01, 0.1};
  CHECK_THROWS_AS(q2(bad), ValidationError);
}

TEST_CASE("hull vertices") {
  for (int n = 2; n <= 6; ++n) {
    const auto v = hull_vertices(n);
    CHECK(v.size() == (std::size_t{1} << n) - static_cast<std::size_t>(n));
    for (const auto& p : v) CHECK(hull_membership(p).status != Status::Outside);
  }
  const std::vector<double> origin(3, 0.0);
  CHECK(hull_membership(origin).status == Status::Boundary);
}

TEST_CASE("hull membership agrees with the explicit inequalities") {
  auto r = gen::rng(61);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = gen::integer(r, 2, 6);
    auto d = gen::cube_point(r, n);
    if (trial % 5 == 0) d[0] = gen::uniform(r, -0.05, 0.3);
    bool inside = true;
    double sum = 0.0;
    for (double x : d) sum += x;
    for (double x : d) inside = inside && x >= 0.0 && x <= 0.25 && x <= sum - x;
    const Status s = hull_membership(d, 0.0).status;
    CHECK((s != Status::Outside) == inside);
    CHECK((hull_margin(d) >= 0.0) == inside);
  }
}

TEST_CASE("Gram tuples of random tensors satisfy every facet") {
  auto r = gen::rng(62);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = gen::integer(r, 2, 7);
    CHECK(hull_margin(tuple_of(gen::unit_tensor(r, n))) >= -1e-12);
  }
}

TEST_CASE("n = 3 classifier: named points") {
  const std::vector<double> diag(3, 0.25);
  CHECK(locus_membership_n3(diag).status != Status::Outside);
  const std::vector<double> lobe = {0.25 - 1e-3, 1e-4, 1e-4};
  const Membership m = locus_membership_n3(lobe);
  CHECK(m.status == Status::Outside);
  CHECK(m.region == Region::HullViolation);

  const auto counter = tuple_of(example_counter());
  const Membership c = locus_membership_n3(counter);
  CHECK(c.status == Status::Boundary);
  CHECK(std::abs(c.q1 - c.q2) <= 1e-10);

  const std::vector<double> cube_out = {0.3, 0.1, 0.1};
  CHECK(locus_membership_n3(cube_out).region == Region::CubeViolation);

  const std::vector<double> inner = {0.1, 0.1, 0.1};
  CHECK(locus_membership_n3(inner).status == Status::Inside);
  CHECK(locus_membership_n3(inner).region == Region::Region1);

  const std::vector<double> vertex = {0.25, 0.25, 0.0};
  CHECK(locus_membership_n3(vertex).status == Status::Boundary);
  CHECK_THROWS_AS(locus_membership_n3(std::vector<double>(4, 0.1)), ValidationError);
}

TEST_CASE("n = 3 classifier never rejects an image point") {
  auto r = gen::rng(63);
  for (int trial = 0; trial < 20000; ++trial) {
    const BinaryTensor t = trial % 2 ? gen::unit_tensor(r, 3) : sample_ball(3, 63, static_cast<std::uint64_t>(trial));
    const auto d = tuple_of(t);
    CHECK(locus_membership_n3(d).status != Status::Outside);
    CHECK(n3_margin(d) >= -1e-10);
  }
}

TEST_CASE("Region 2 is where Q < 0 but every pair curve is nonnegative") {
  auto r = gen::rng(64);
  int region2 = 0, lobes = 0;
  for (int trial = 0; trial < 200000; ++trial) {
    const auto d = gen::cube_point(r, 3);
    if (hull_slack(d) <= 1e-6 || cube_slack(d) <= 1e-6) continue;
    const double q = q_surface(d);
    if (q >= -1e-8) continue;
    double pairs = 1.0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) pairs = std::min(pairs, pair_curve(d[static_cast<std::size_t>(i)], d[static_cast<std::size_t>(j)]));
    const Membership m = locus_membership_n3(d);
    if (pairs > 1e-8) {
      ++region2;
      CHECK(m.status == Status::Inside);
      CHECK(m.region == Region::Region2);
    } else if (pairs < -1e-8) {
      ++lobes;
      CHECK(m.status == Status::Outside);
      CHECK(m.region == Region::QSurface);
    }
  }
  CHECK(region2 > 0);
  CHECK(lobes > 0);
}

TEST_CASE("some image points lie in Region 2") {
  // Tensors near a_000 = a_111 = 1/sqrt(2) land close to (1/4, 1/4, 1/4).
  auto r = gen::rng(65);
  int hits = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> e(8, 0.0);
    e[0] = e[7] = std::sqrt(0.5);
    for (auto& x : e) x += gen::uniform(r, -0.05, 0.05);
    const auto d = tuple_of(BinaryTensor::make(3, e).scaled(1.0 / std::sqrt(squared_norm(e))));
    const Membership m = locus_membership_n3(d);
    CHECK(m.status != Status::Outside);
    if (m.q1 < m.q2) ++hits;
  }
  CHECK(hits > 0);
}

TEST_CASE("conjecture classifier") {
  CHECK_THROWS_AS(locus_membership_conjecture(std::vector<double>(3, 0.1)), ValidationError);
  const std::vector<double> quarters(4, 0.25);
  CHECK(locus_membership_conjecture(quarters).status == Status::Boundary);
  const std::vector<double> facet_out = {0.25, 0.01, 0.01, 0.01};
  const Membership m = locus_membership_conjecture(facet_out);
  CHECK(m.status == Status::Outside);
  CHECK(m.region == Region::HullViolation);
  auto r = gen::rng(66);
  for (int trial = 0; trial < 3000; ++trial) {
    const int n = gen::integer(r, 4, 7);
    const auto d = tuple_of(gen::unit_tensor(r, n));
    CHECK(locus_membership_conjecture(d).status != Status::Outside);
  }
}

TEST_CASE("margins have the sign of the verdict") {
  auto r = gen::rng(67);
  for (int trial = 0; trial < 5000; ++trial) {
    auto d = gen::cube_point(r, trial % 2 ? 3 : 5);
    d[1] = gen::uniform(r, -0.02, 0.27);
    const double tol = 1e-9;
    if (d.size() == 3) {
      CHECK((locus_membership_n3(d, tol).status == Status::Outside) == (n3_margin(d) < -tol));
    } else {
      CHECK((locus_membership_conjecture(d, tol).status == Status::Outside) == (conjecture_margin(d) < -tol));
    }
  }
}

TEST_CASE("branch polynomials") {
  const std::vector<double> on_diag = {0.1, 0.1, 0.2};
  CHECK(branch_p(on_diag) == 0.0);
  CHECK(branch_q(on_diag) == 0.0);
  const auto counter = tuple_of(example_counter());
  CHECK(std::abs(branch_q(counter)) <= 1e-12);
  const std::vector<double> face = {0.25, 0.1, 0.2};
  CHECK(branch_q(face) == 0.0);
}

TEST_CASE("linear-inequality volume fraction") {
  CHECK(expected_linear_fraction(3) == 0.5);
  CHECK(expected_linear_fraction(4) == doctest::Approx(5.0 / 6.0));
  CHECK(expected_linear_fraction(5) == doctest::Approx(23.0 / 24.0));
  for (int n = 3; n <= 5; ++n) {
    const FractionEstimate e = volume_fraction_linear(n, 200000, 7, 2);
    CHECK(std::abs(e.fraction - expected_linear_fraction(n)) <= 4.0 * e.std_error);
  }
  const FractionEstimate a = volume_fraction_linear(4, 100000, 3, 1), b = volume_fraction_linear(4, 100000, 3, 3);
  CHECK(a.hits == b.hits);
}
