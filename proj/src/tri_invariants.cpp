#include "gramlocus/tri_invariants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "gramlocus/error.hpp"
#include "gramlocus/flatten.hpp"
#include "gramlocus/parallel.hpp"

namespace gramlocus {

namespace {

void require_order3(const BinaryTensor& t) {
  if (t.order() != 3) throw ValidationError("expected a 2x2x2 tensor");
}

using Cube = std::array<double, 8>;
using Angles = std::array<double, 3>;

Matrix2 factor(double angle, bool reflect) { return OrthoFactor{angle, reflect}.matrix(); }

// d/d(angle) of R(angle) S^reflect.
Matrix2 factor_derivative(double angle, bool reflect) {
  return OrthoFactor{angle + std::numbers::pi / 2, reflect}.matrix();
}

Cube act(const Cube& a, const std::array<Matrix2, 3>& m) {
  Cube out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        double v = 0.0;
        for (int p = 0; p < 2; ++p)
          for (int q = 0; q < 2; ++q)
            for (int r = 0; r < 2; ++r) v += m[0][i][p] * m[1][j][q] * m[2][k][r] * a[4 * p + 2 * q + r];
        out[4 * i + 2 * j + k] = v;
      }
  return out;
}

struct Problem {
  Cube s;
  Cube t;
  int reflect;

  bool flag(int slot) const { return (reflect >> slot) & 1; }

  Cube residual_vector(const Angles& th) const {
    Cube r = act(t, {factor(th[0], flag(0)), factor(th[1], flag(1)), factor(th[2], flag(2))});
    for (int i = 0; i < 8; ++i) r[static_cast<std::size_t>(i)] -= s[static_cast<std::size_t>(i)];
    return r;
  }

  double residual(const Angles& th) const {
    const Cube r = residual_vector(th);
    double sum = 0.0;
    for (double x : r) sum += x * x;
    return std::sqrt(sum);
  }

  std::array<Cube, 3> jacobian(const Angles& th) const {
    std::array<Cube, 3> jac{};
    for (int k = 0; k < 3; ++k) {
      std::array<Matrix2, 3> m{factor(th[0], flag(0)), factor(th[1], flag(1)), factor(th[2], flag(2))};
      m[static_cast<std::size_t>(k)] = factor_derivative(th[static_cast<std::size_t>(k)], flag(k));
      jac[static_cast<std::size_t>(k)] = act(t, m);
    }
    return jac;
  }
};

double golden_min(const Problem& p, Angles& th, int axis, double lo, double hi, double tol) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  auto eval = [&](double x) {
    Angles a = th;
    a[static_cast<std::size_t>(axis)] = x;
    return p.residual(a);
  };
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = eval(c), fd = eval(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - g * (b - a); fc = eval(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + g * (b - a); fd = eval(d);
    }
  }
  const double x = 0.5 * (a + b);
  const double fx = eval(x);
  if (fx < p.residual(th)) th[static_cast<std::size_t>(axis)] = x;
  return std::min(fx, p.residual(th));
}

// Gauss-Newton on the 8 residuals; accepts a step only if it lowers the norm.
double polish(const Problem& p, Angles& th, int iters, double tol) {
  double best = p.residual(th);
  for (int it = 0; it < iters && best > tol * 1e-3; ++it) {
    const Cube r = p.residual_vector(th);
    const auto jac = p.jacobian(th);
    std::array<std::array<double, 3>, 3> jtj{};
    std::array<double, 3> jtr{};
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b)
        for (int i = 0; i < 8; ++i) jtj[a][b] += jac[a][i] * jac[b][i];
      for (int i = 0; i < 8; ++i) jtr[a] += jac[a][i] * r[i];
    }
    // Cramer's rule; small damping keeps the system regular.
    for (int a = 0; a < 3; ++a) jtj[a][a] += 1e-14;
    const auto det3 = [](const std::array<std::array<double, 3>, 3>& m) {
      return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    const double det = det3(jtj);
    if (!(std::abs(det) > 0.0)) break;
    Angles step{};
    for (int c = 0; c < 3; ++c) {
      auto m = jtj;
      for (int a = 0; a < 3; ++a) m[a][c] = jtr[a];
      step[c] = det3(m) / det;
    }
    Angles next{th[0] - step[0], th[1] - step[1], th[2] - step[2]};
    const double f = p.residual(next);
    if (!(f < best)) break;
    th = next;
    best = f;
  }
  return best;
}

EquivResult minimize_class(const Problem& p, const EquivOptions& opt) {
  const int grid = std::max(opt.grid, 1);
  const double h = 2.0 * std::numbers::pi / grid;
  Angles best{};
  double best_f = p.residual(best);
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j)
      for (int k = 0; k < grid; ++k) {
        const Angles th{-std::numbers::pi + i * h, -std::numbers::pi + j * h, -std::numbers::pi + k * h};
        const double f = p.residual(th);
        if (f < best_f) {
          best_f = f;
          best = th;
        }
      }

  double width = h;
  for (int it = 0; it < opt.refine_iters && best_f > opt.tolerance; ++it) {
    const double before = best_f;
    for (int axis = 0; axis < 3; ++axis) {
      const double c = best[static_cast<std::size_t>(axis)];
      best_f = golden_min(p, best, axis, c - width, c + width, 1e-12);
    }
    if (before - best_f < 1e-3 * before) width = std::max(width * 0.5, 1e-9);
    if (best_f < 1e-3) break;
  }
  best_f = polish(p, best, opt.refine_iters, opt.tolerance);

  EquivResult r;
  std::vector<OrthoFactor> factors;
  for (int k = 0; k < 3; ++k) {
    const OrthoFactor f{best[static_cast<std::size_t>(k)], p.flag(k)};
    factors.push_back(OrthoFactor::from_matrix(f.matrix()));
  }
  r.transform = OrthoTuple(std::move(factors));
  r.residual = best_f;
  return r;
}

}  // namespace

double hyperdet(const BinaryTensor& tensor) {
  require_order3(tensor);
  const auto a = [&](int i, int j, int k) { return tensor[static_cast<std::size_t>(4 * i + 2 * j + k)]; };
  const double a000 = a(0, 0, 0), a001 = a(0, 0, 1), a010 = a(0, 1, 0), a011 = a(0, 1, 1);
  const double a100 = a(1, 0, 0), a101 = a(1, 0, 1), a110 = a(1, 1, 0), a111 = a(1, 1, 1);
  return a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 + a010 * a010 * a101 * a101 +
         a011 * a011 * a100 * a100 + 4.0 * a000 * a011 * a101 * a110 + 4.0 * a001 * a010 * a100 * a111 -
         2.0 * a000 * a001 * a110 * a111 - 2.0 * a000 * a010 * a101 * a111 - 2.0 * a000 * a011 * a100 * a111 -
         2.0 * a001 * a010 * a101 * a110 - 2.0 * a001 * a011 * a100 * a110 - 2.0 * a010 * a011 * a100 * a101;
}

double InvariantVector::operator[](int i) const {
  switch (i) {
    case 0: return d1;
    case 1: return d2;
    case 2: return d3;
    case 3: return t;
    case 4: return hyperdet;
    default: throw ValidationError("invariant index out of range");
  }
}

InvariantVector invariant_vector(const BinaryTensor& tensor) {
  require_order3(tensor);
  const GramTuple g = gram_tuple(tensor);
  return {g.dets[0], g.dets[1], g.dets[2], g.trace, hyperdet(tensor)};
}

double invariant_distance(const InvariantVector& a, const InvariantVector& b) {
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

EquivResult equiv_minimize(const BinaryTensor& s, const BinaryTensor& t, const EquivOptions& options) {
  require_order3(s);
  require_order3(t);
  if (options.grid < 1) throw ValidationError("grid must be positive");
  Cube sc{}, tc{};
  std::copy(s.entries().begin(), s.entries().end(), sc.begin());
  std::copy(t.entries().begin(), t.entries().end(), tc.begin());

  std::array<EquivResult, 8> results;
  for_each_chunk(8, options.threads, [&](std::size_t c) {
    results[c] = minimize_class(Problem{sc, tc, static_cast<int>(c)}, options);
  });
  std::size_t best = 0;
  for (std::size_t c = 1; c < results.size(); ++c)
    if (results[c].residual < results[best].residual) best = c;
  return results[best];
}

std::optional<EquivResult> equiv_search(const BinaryTensor& s, const BinaryTensor& t, const EquivOptions& options) {
  require_order3(s);
  require_order3(t);
  if (invariant_distance(invariant_vector(s), invariant_vector(t)) > options.invariant_tolerance) return std::nullopt;
  EquivResult r = equiv_minimize(s, t, options);
  if (r.residual > options.threshold) return std::nullopt;
  return r;
}

}  // namespace gramlocus
