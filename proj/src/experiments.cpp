#include "gramlocus/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "gramlocus/error.hpp"
#include "gramlocus/flatten.hpp"
#include "gramlocus/hosvd.hpp"
#include "gramlocus/locus.hpp"
#include "gramlocus/parallel.hpp"
#include "gramlocus/tensor.hpp"

namespace gramlocus {

std::string to_string(FuzzMode mode) {
  switch (mode) {
    case FuzzMode::Hull: return "hull";
    case FuzzMode::N3: return "n3";
    case FuzzMode::Conjecture: return "conjecture";
  }
  return "?";
}

FuzzMode parse_fuzz_mode(const std::string& text) {
  if (text == "hull") return FuzzMode::Hull;
  if (text == "n3") return FuzzMode::N3;
  if (text == "conjecture") return FuzzMode::Conjecture;
  throw ValidationError("unknown mode '" + text + "' (expected hull, n3 or conjecture)");
}

namespace {

struct ChunkResult {
  std::uint64_t violations = 0;
  std::uint64_t near = 0;
  double worst = std::numeric_limits<double>::infinity();
  std::vector<double> worst_point;
};

double mode_margin(FuzzMode mode, std::span<const double> d) {
  switch (mode) {
    case FuzzMode::Hull: return hull_margin(d);
    case FuzzMode::N3: return n3_margin(d);
    case FuzzMode::Conjecture: return conjecture_margin(d);
  }
  return 0.0;
}

}  // namespace

FuzzReport fuzz(int order, FuzzMode mode, std::uint64_t samples, std::uint64_t seed, int threads, double margin) {
  if (order < 2 || order > kMaxBinaryOrder) throw ValidationError("order out of range");
  if (mode == FuzzMode::N3 && order != 3) throw ValidationError("mode n3 requires n = 3");
  if (mode == FuzzMode::Conjecture && order < 4) throw ValidationError("mode conjecture requires n >= 4");
  if (!(margin >= 0.0)) throw ValidationError("margin must be nonnegative");

  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t chunks = (samples + kFuzzChunk - 1) / kFuzzChunk;
  std::vector<ChunkResult> results(chunks);
  for_each_chunk(chunks, threads, [&](std::size_t c) {
    UnitSampler sampler(seed, c);
    std::vector<double> entries(std::size_t{1} << order);
    std::vector<double> dets(static_cast<std::size_t>(order));
    ChunkResult& out = results[c];
    const std::uint64_t count = std::min<std::uint64_t>(kFuzzChunk, samples - c * kFuzzChunk);
    for (std::uint64_t s = 0; s < count; ++s) {
      sampler.next_into(entries);
      gram_dets_into(entries, order, dets);
      const double m = mode_margin(mode, dets);
      if (m < -margin) ++out.violations;
      if (std::abs(m) <= margin) ++out.near;
      if (m < out.worst) {
        out.worst = m;
        out.worst_point = dets;
      }
    }
  });

  FuzzReport report;
  report.order = order;
  report.mode = mode;
  report.samples = samples;
  report.seed = seed;
  report.worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& r : results) {
    report.violations += r.violations;
    report.near_boundary += r.near;
    if (r.worst < report.worst_margin) {
      report.worst_margin = r.worst;
      report.worst_point = r.worst_point;
    }
  }
  if (samples == 0) report.worst_margin = 0.0;
  report.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

SurfaceCoords parse_surface_coords(const std::string& text) {
  if (text == "det") return SurfaceCoords::Det;
  if (text == "sigma") return SurfaceCoords::Sigma;
  throw ValidationError("unknown coords '" + text + "' (expected det or sigma)");
}

double sigma_max_unit(double d) { return std::sqrt(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * d)))); }

namespace {

constexpr int kScan = 256;
constexpr double kRootWidth = 1e-12;
constexpr double kTouchTol = 1e-10;

SurfacePoint make_point(double d1, double d2, double d3, bool touch) {
  SurfacePoint p;
  p.d = {d1, d2, d3};
  for (int i = 0; i < 3; ++i) p.sigma[static_cast<std::size_t>(i)] = sigma_max_unit(p.d[static_cast<std::size_t>(i)]);
  p.touch = touch;
  return p;
}

}  // namespace

std::vector<SurfacePoint> surface_roots(double d1, double d2) {
  const auto f = [&](double x) {
    const double d[3] = {d1, d2, x};
    return q_surface(d);
  };
  const double h = kQuarter / kScan;
  std::vector<double> xs(kScan + 1), fs(kScan + 1);
  for (int k = 0; k <= kScan; ++k) {
    xs[static_cast<std::size_t>(k)] = k == kScan ? kQuarter : k * h;
    fs[static_cast<std::size_t>(k)] = f(xs[static_cast<std::size_t>(k)]);
  }

  std::vector<SurfacePoint> out;
  const auto near_existing = [&](double x) {
    return std::any_of(out.begin(), out.end(), [&](const SurfacePoint& p) { return std::abs(p.d[2] - x) < 1e-9; });
  };

  for (int k = 0; k <= kScan; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    if (fs[ku] == 0.0) {
      if (!near_existing(xs[ku])) out.push_back(make_point(d1, d2, xs[ku], false));
      continue;
    }
    if (k < kScan && fs[ku] * fs[ku + 1] < 0.0) {
      double a = xs[ku], b = xs[ku + 1], fa = fs[ku];
      while (b - a > kRootWidth) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      const double x = 0.5 * (a + b);
      if (!near_existing(x)) out.push_back(make_point(d1, d2, x, false));
      continue;
    }
    // Interior local minimum of |Q| without a sign change: candidate touch.
    if (k > 0 && k < kScan && fs[ku - 1] * fs[ku] > 0.0 && fs[ku] * fs[ku + 1] > 0.0 &&
        std::abs(fs[ku]) <= std::abs(fs[ku - 1]) && std::abs(fs[ku]) <= std::abs(fs[ku + 1])) {
      const double g = (std::sqrt(5.0) - 1.0) / 2.0;
      double a = xs[ku - 1], b = xs[ku + 1];
      double c = b - g * (b - a), d = a + g * (b - a);
      double fc = std::abs(f(c)), fd = std::abs(f(d));
      while (b - a > kRootWidth) {
        if (fc < fd) {
          b = d; d = c; fd = fc;
          c = b - g * (b - a); fc = std::abs(f(c));
        } else {
          a = c; c = d; fc = fd;
          d = a + g * (b - a); fd = std::abs(f(d));
        }
      }
      const double x = 0.5 * (a + b);
      if (std::abs(f(x)) <= kTouchTol && !near_existing(x)) out.push_back(make_point(d1, d2, x, true));
    }
  }
  std::sort(out.begin(), out.end(), [](const SurfacePoint& a, const SurfacePoint& b) { return a.d[2] < b.d[2]; });
  return out;
}

std::vector<SurfacePoint> surface_grid(int resolution, int threads) {
  if (resolution < 2) throw ValidationError("resolution must be >= 2");
  const auto r = static_cast<std::size_t>(resolution);
  std::vector<std::vector<SurfacePoint>> rows(r);
  const double step = kQuarter / static_cast<double>(resolution - 1);
  for_each_chunk(r, threads, [&](std::size_t i) {
    const double d1 = i + 1 == r ? kQuarter : static_cast<double>(i) * step;
    for (std::size_t j = 0; j < r; ++j) {
      const double d2 = j + 1 == r ? kQuarter : static_cast<double>(j) * step;
      auto roots = surface_roots(d1, d2);
      rows[i].insert(rows[i].end(), roots.begin(), roots.end());
    }
  });
  std::vector<SurfacePoint> out;
  for (auto& row : rows) out.insert(out.end(), row.begin(), row.end());
  return out;
}

bool ExamplesReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ExampleCheck& c) { return c.passed; });
}

ExamplesReport boundary_examples_report() {
  ExamplesReport report;
  const auto close = [&](std::string name, double value, double expected, double tol) {
    report.checks.push_back({std::move(name), std::abs(value - expected) <= tol, value, expected});
  };
  const auto truth = [&](std::string name, bool ok) {
    report.checks.push_back({std::move(name), ok, ok ? 1.0 : 0.0, 1.0});
  };
  const double r2 = std::sqrt(2.0);

  const GramTuple g = gram_tuple(example_counter());
  close("counter.t", g.trace, 1.0, 1e-12);
  close("counter.d1", g.dets[0], 0.125, 1e-12);
  close("counter.d2", g.dets[1], 0.125, 1e-12);
  close("counter.d3", g.dets[2], (r2 - 1.0) / 2.0, 1e-12);
  close("counter.Q", q_surface(g.dets), 0.0, 1e-10);
  truth("counter.boundary", locus_membership_n3(g.dets).status == Status::Boundary);

  const auto pairs = singular_pairs(g);
  const double big12 = (1.0 + r2) / (2.0 * r2), small12 = 0.5 - 1.0 / (2.0 * r2);
  for (int i = 0; i < 2; ++i) {
    const auto& p = pairs[static_cast<std::size_t>(i)];
    const std::string tag = "counter.sigma" + std::to_string(i + 1);
    close(tag + ".max^2", p.sigma_max * p.sigma_max, big12, 1e-12);
    close(tag + ".min^2", p.sigma_min * p.sigma_min, small12, 1e-12);
  }
  close("counter.sigma3.max^2", pairs[2].sigma_max * pairs[2].sigma_max, 1.0 / r2, 1e-12);
  close("counter.sigma3.min^2", pairs[2].sigma_min * pairs[2].sigma_min, 1.0 - 1.0 / r2, 1e-12);
  bool distinct = true;
  for (const auto& p : pairs) distinct = distinct && p.sigma_max - p.sigma_min > 1e-6;
  truth("counter.distinct_within_flattenings", distinct);
  truth("counter.flattening3_differs", std::abs(pairs[2].sigma_max - pairs[0].sigma_max) > 1e-6);

  const auto d223 = gram_dets_general(example_223());
  close("gxg3.d1", d223[0], 0.25, 1e-14);
  close("gxg3.d2", d223[1], 0.0, 1e-14);
  close("gxg3.d3", d223[2], 0.0, 1e-14);
  truth("gxg3.hull_fails", d223[0] > d223[1] + d223[2]);

  for (int n = 3; n <= 5; ++n) {
    for (int k = 2; k <= n; ++k) {
      const GramTuple v = gram_tuple(vertex_tensor(n, k));
      double err = 0.0;
      for (int s = 0; s < n; ++s) err = std::max(err, std::abs(v.dets[static_cast<std::size_t>(s)] - (s < k ? kQuarter : 0.0)));
      close("vertex.n" + std::to_string(n) + ".k" + std::to_string(k), err, 0.0, 1e-14);
    }
  }
  return report;
}

}  // namespace gramlocus
