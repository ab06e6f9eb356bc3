#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "gramlocus/error.hpp"
#include "gramlocus/flatten.hpp"

using namespace gramlocus;

namespace {

BinaryTensor counting_tensor(int order) {
  std::vector<double> e(std::size_t{1} << order);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<double>(i);
  return BinaryTensor::make(order, e);
}

}  // namespace

TEST_CASE("2x2x2 flattenings follow the lexicographic column order") {
  // Entry at offset ijk is the number 4i + 2j + k.
  const BinaryTensor t = counting_tensor(3);
  const double f1[2][4] = {{0, 1, 2, 3}, {4, 5, 6, 7}};
  const double f2[2][4] = {{0, 1, 4, 5}, {2, 3, 6, 7}};
  const double f3[2][4] = {{0, 2, 4, 6}, {1, 3, 5, 7}};
  const Flattening a = principal_flattening(t, 0), b = principal_flattening(t, 1), c = principal_flattening(t, 2);
  for (int r = 0; r < 2; ++r)
    for (int col = 0; col < 4; ++col) {
      CHECK(a(r, col) == f1[r][col]);
      CHECK(b(r, col) == f2[r][col]);
      CHECK(c(r, col) == f3[r][col]);
    }
}

TEST_CASE("first Gram determinant of a 2x2x2 tensor equals its six squared minors") {
  auto r = gen::rng(30);
  for (int trial = 0; trial < 100; ++trial) {
    const BinaryTensor t = gen::wild_tensor(r, 3);
    const auto a = [&](int i, int j, int k) { return t[static_cast<std::size_t>(4 * i + 2 * j + k)]; };
    const auto sq = [](double x) { return x * x; };
    const double d1 = sq(a(0, 0, 0) * a(1, 0, 1) - a(0, 0, 1) * a(1, 0, 0)) +
                      sq(a(0, 0, 0) * a(1, 1, 0) - a(0, 1, 0) * a(1, 0, 0)) +
                      sq(a(0, 0, 0) * a(1, 1, 1) - a(0, 1, 1) * a(1, 0, 0)) +
                      sq(a(0, 0, 1) * a(1, 1, 0) - a(0, 1, 0) * a(1, 0, 1)) +
                      sq(a(0, 0, 1) * a(1, 1, 1) - a(0, 1, 1) * a(1, 0, 1)) +
                      sq(a(0, 1, 0) * a(1, 1, 1) - a(0, 1, 1) * a(1, 1, 0));
    const double scale = std::pow(squared_norm(t.entries()), 2);
    CHECK(std::abs(gram_det(t, 0) - d1) <= 1e-12 * scale);
  }
}

TEST_CASE("Cauchy-Schwarz and Cauchy-Binet forms agree") {
  auto r = gen::rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = gen::integer(r, 2, 7);
    const BinaryTensor t = gen::unit_tensor(r, n);
    for (int s = 0; s < n; ++s) {
      CHECK(std::abs(gram_det(t, s) - gram_det_minors(t, s)) <= 1e-12);
      const GramMatrix g = gram_matrix(principal_flattening(t, s));
      CHECK(std::abs(gram_det(t, s) - (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0))) <= 1e-12);
      CHECK(g.trace() == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("Gram determinants are bounded by t^2/4 and invariant under O(2)^n") {
  auto r = gen::rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = gen::integer(r, 2, 7);
    const BinaryTensor t = gen::wild_tensor(r, n);
    const GramTuple g = gram_tuple(t);
    const GramTuple h = gram_tuple(ortho_act(t, gen::ortho(r, n)));
    const double scale = g.trace * g.trace;
    CHECK(h.trace == doctest::Approx(g.trace).epsilon(1e-12));
    for (int s = 0; s < n; ++s) {
      const auto su = static_cast<std::size_t>(s);
      CHECK(g.dets[su] >= 0.0);
      CHECK(g.dets[su] <= scale / 4.0 * (1.0 + 1e-12));
      CHECK(std::abs(g.dets[su] - h.dets[su]) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("rank-one tensors have all Gram determinants zero") {
  auto r = gen::rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = gen::integer(r, 2, 6);
    const BinaryTensor t = gen::rank_one(r, n);
    for (double d : gram_tuple(t).dets) CHECK(d == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(flattening_rank(principal_flattening(t, gen::integer(r, 0, n - 1))) == 1);
  }
}

TEST_CASE("hot-loop determinants match gram_tuple") {
  auto r = gen::rng(34);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = gen::integer(r, 2, 8);
    const BinaryTensor t = gen::unit_tensor(r, n);
    std::vector<double> dets(static_cast<std::size_t>(n));
    const double tr = gram_dets_into(t.entries(), n, dets);
    const GramTuple g = gram_tuple(t);
    CHECK(tr == g.trace);
    for (int s = 0; s < n; ++s) CHECK(dets[static_cast<std::size_t>(s)] == g.dets[static_cast<std::size_t>(s)]);
  }
}

TEST_CASE("subset and bond flattenings") {
  const BinaryTensor t = counting_tensor(4);
  const Flattening p = principal_flattening(t, 2);
  const Flattening q = subset_flattening(t, {2});
  CHECK(p.data == q.data);
  const Flattening b = bond_flattening(t, 2);
  CHECK(b.rows == 4);
  CHECK(b.cols == 4);
  // Rows are (i1 i2), columns (i3 i4): entry = 4 * row + col.
  for (int row = 0; row < 4; ++row)
    for (int col = 0; col < 4; ++col) CHECK(b(row, col) == 4 * row + col);
  const Flattening s = subset_flattening(t, {3, 1, 3});
  CHECK(s.rows == 4);
  CHECK(s.row_slots == std::vector<int>{1, 3});
  CHECK(s(0b01, 0b10) == static_cast<double>(0b1001));
  CHECK_THROWS_AS(subset_flattening(t, {}), ValidationError);
  CHECK_THROWS_AS(subset_flattening(t, {0, 1, 2, 3}), ValidationError);
  CHECK_THROWS_AS(bond_flattening(t, 0), ValidationError);
}

TEST_CASE("bond ranks of a product state and a GHZ-type state") {
  auto r = gen::rng(35);
  const BinaryTensor prod = gen::rank_one(r, 5);
  for (int j = 1; j < 5; ++j) CHECK(flattening_rank(bond_flattening(prod, j)) == 1);
  const BinaryTensor ghz = vertex_tensor(5, 5);
  for (int j = 1; j < 5; ++j) CHECK(flattening_rank(bond_flattening(ghz, j)) == 2);
}

TEST_CASE("general-format Gram determinants") {
  auto r = gen::rng(36);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = gen::integer(r, 2, 5);
    const BinaryTensor t = gen::unit_tensor(r, n);
    const auto g = gram_dets_general(GeneralTensor::from_binary(t));
    for (int s = 0; s < n; ++s) CHECK(std::abs(g[static_cast<std::size_t>(s)] - gram_det(t, s)) < 1e-13);
  }
  const auto d = gram_dets_general(example_223());
  CHECK(std::abs(d[0] - 0.25) < 1e-14);
  CHECK(std::abs(d[1]) < 1e-14);
  CHECK(std::abs(d[2]) < 1e-14);
}
