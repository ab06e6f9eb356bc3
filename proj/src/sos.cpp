#include "gramlocus/sos.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "gramlocus/error.hpp"
#include "gramlocus/parallel.hpp"

namespace gramlocus {
namespace {

using Offset = std::uint32_t;
using Label = std::pair<Offset, Offset>;  // monomial a_first * a_second

Offset bit_of(int order, int slot) { return static_cast<Offset>(slot_bit(order, slot)); }

void check_order_pivot(int order, int pivot) {
  if (order < 2 || order > kMaxBinaryOrder) throw ValidationError("certificate order out of range");
  if (pivot < 0 || pivot >= order) throw ValidationError("pivot out of range");
}

void add_minor_square(IntPolynomial& p, Offset a, Offset b, Offset c, Offset d, std::int64_t weight) {
  // weight * (a b - c d)^2
  const auto ab = Monomial::variable(static_cast<VarId>(a)) * Monomial::variable(static_cast<VarId>(b));
  const auto cd = Monomial::variable(static_cast<VarId>(c)) * Monomial::variable(static_cast<VarId>(d));
  p.add_term(ab * ab, weight);
  p.add_term(cd * cd, weight);
  p.add_term(ab * cd, -2 * weight);
}

QuadraticForm minor_form(Offset a, Offset b, Offset c, Offset d) {
  return QuadraticForm({{1, a, b}, {-1, c, d}}).canonical();
}

// Emits the squares certifying "edges minus antipodal diagonals" on a cube
// whose vertices (first coordinate most significant) carry `labels`.
void certify_cube(std::span<const Label> labels, std::vector<CertificateTerm>& out) {
  const std::size_t vertices = labels.size();
  if (vertices < 4) return;
  const std::size_t half = vertices / 2;
  const std::size_t mask = half - 1;
  for (std::size_t z = 0; z < half / 2; ++z) {
    const Label& u = labels[z];
    const Label& w = labels[half + z];
    const Label& w_bar = labels[mask ^ z];
    const Label& u_bar = labels[half + (mask ^ z)];
    QuadraticForm form({{1, u.first, u.second},
                        {-1, w.first, w.second},
                        {-1, w_bar.first, w_bar.second},
                        {1, u_bar.first, u_bar.second}});
    out.push_back({{1, 1}, form.canonical()});
  }
  certify_cube(labels.subspan(0, half), out);
  certify_cube(labels.subspan(half), out);
}

void pivot_cube_block(int order, int pivot, int m, std::vector<CertificateTerm>& out) {
  std::vector<int> others;
  for (int s = 0; s < order; ++s)
    if (s != pivot) others.push_back(s);
  const int k = m - 1;
  const auto n_others = static_cast<int>(others.size());
  const Offset full = (Offset{1} << order) - 1;
  const Offset p_bit = bit_of(order, pivot);

  // Subsets of the non-pivot slots of size k, as bitmasks over `others`.
  for (std::uint32_t sel = 0; sel < (1u << n_others); ++sel) {
    if (std::popcount(sel) != k) continue;
    std::vector<Offset> coord_bits;
    Offset cube_mask = p_bit;
    for (int t = 0; t < n_others; ++t) {
      if (sel & (1u << t)) {
        coord_bits.push_back(bit_of(order, others[static_cast<std::size_t>(t)]));
        cube_mask |= coord_bits.back();
      }
    }
    const Offset outside_mask = full & ~cube_mask;
    // Iterate the assignments of the outside slots as submasks.
    Offset outside = 0;
    for (;;) {
      std::vector<Label> labels(std::size_t{1} << k);
      for (std::size_t v = 0; v < labels.size(); ++v) {
        Offset on = 0;
        for (int c = 0; c < k; ++c) {
          if (v & (std::size_t{1} << (k - 1 - c))) on |= coord_bits[static_cast<std::size_t>(c)];
        }
        const Offset off = (cube_mask & ~p_bit) & ~on;
        labels[v] = {outside | on, outside | p_bit | off};
      }
      certify_cube(labels, out);
      if (outside == outside_mask) break;
      outside = (outside - outside_mask) & outside_mask;
    }
  }
}

}  // namespace

std::string to_string(const Rational& r) {
  return r.den == 1 ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  Rational r;
  try {
    std::size_t used = 0;
    r.num = std::stoll(text.substr(0, slash), &used);
    if (used != (slash == std::string::npos ? text.size() : slash)) throw ValidationError("bad rational");
    if (slash != std::string::npos) {
      const auto tail = text.substr(slash + 1);
      r.den = std::stoll(tail, &used);
      if (used != tail.size()) throw ValidationError("bad rational");
    }
  } catch (const std::logic_error&) {
    throw ValidationError("cannot parse coefficient '" + text + "'");
  }
  if (r.num <= 0 || r.den <= 0) throw ValidationError("certificate coefficients must be positive");
  const auto g = std::gcd(r.num, r.den);
  return {r.num / g, r.den / g};
}

IntPolynomial build_target(int order, int pivot) {
  check_order_pivot(order, pivot);
  IntPolynomial target;
  const Offset size = Offset{1} << order;
  for (int k = 0; k < order; ++k) {
    const Offset bit = bit_of(order, k);
    const std::int64_t weight = (k == pivot) ? -1 : 1;
    for (Offset b1 = 0; b1 < size; ++b1) {
      if (b1 & bit) continue;
      for (Offset b2 = b1 + 1; b2 < size; ++b2) {
        if (b2 & bit) continue;
        add_minor_square(target, b1, b2 | bit, b1 | bit, b2, weight);
      }
    }
  }
  return target;
}

SosCertificate build_certificate(int order, int pivot, bool verify, int max_order) {
  check_order_pivot(order, pivot);
  if (order > max_order) {
    throw ValidationError("certificate order " + std::to_string(order) + " exceeds configured bound " +
                          std::to_string(max_order));
  }
  SosCertificate cert;
  cert.order = order;
  cert.pivot = pivot;
  const Offset size = Offset{1} << order;
  const Offset p_bit = bit_of(order, pivot);

  // m = 2: faces spanned by two non-pivot slots.
  for (int k = 0; k < order; ++k) {
    for (int l = k + 1; l < order; ++l) {
      if (k == pivot || l == pivot) continue;
      const Offset bk = bit_of(order, k);
      const Offset bl = bit_of(order, l);
      for (Offset o = 0; o < size; ++o) {
        if (o & (bk | bl)) continue;
        cert.terms.push_back({{2, 1}, minor_form(o, o | bk | bl, o | bk, o | bl)});
      }
    }
  }

  for (int m = 3; m <= order; ++m) {
    pivot_cube_block(order, pivot, m, cert.terms);
    // Minors of d_q whose differing slots avoid the pivot.
    for (int q = 0; q < order; ++q) {
      if (q == pivot) continue;
      const Offset bq = bit_of(order, q);
      for (Offset b1 = 0; b1 < size; ++b1) {
        if (b1 & bq) continue;
        for (Offset b2 = b1 + 1; b2 < size; ++b2) {
          if (b2 & bq) continue;
          const Offset diff = b1 ^ b2;
          if (diff & p_bit) continue;
          if (std::popcount(diff) + 1 != m) continue;
          cert.terms.push_back({{1, 1}, minor_form(b1, b2 | bq, b1 | bq, b2)});
        }
      }
    }
  }

  if (verify) {
    auto check = check_certificate(cert);
    if (!check.passed) {
      throw CertificateError("certificate for order " + std::to_string(order) + ", pivot " +
                                 std::to_string(pivot + 1) + " does not expand to its target",
                             std::move(check.report));
    }
  }
  return cert;
}

namespace {

struct ScaledExpansion {
  IntPolynomial poly;
  std::int64_t scale = 1;
};

// lcm(denominators) * sum coeff * form^2, which is always integral.
ScaledExpansion expand_scaled(const SosCertificate& cert, int threads) {
  ScaledExpansion out;
  for (const auto& t : cert.terms) {
    if (t.coeff.num <= 0 || t.coeff.den <= 0) throw ValidationError("certificate coefficients must be positive");
    out.scale = std::lcm(out.scale, t.coeff.den);
  }
  constexpr std::size_t kChunk = 512;
  const std::size_t chunks = (cert.terms.size() + kChunk - 1) / kChunk;
  std::vector<IntPolynomial> partial(chunks);
  for_each_chunk(chunks, threads, [&](std::size_t c) {
    const std::size_t end = std::min(cert.terms.size(), (c + 1) * kChunk);
    for (std::size_t k = c * kChunk; k < end; ++k) {
      const auto& t = cert.terms[k];
      partial[c].add_scaled(square_form(t.form), checked_mul(t.coeff.num, out.scale / t.coeff.den));
    }
  });
  for (const auto& p : partial) out.poly.add_scaled(p, 1);
  return out;
}

}  // namespace

IntPolynomial expand_certificate(const SosCertificate& cert, int threads) {
  auto [poly, scale] = expand_scaled(cert, threads);
  if (scale == 1) return poly;
  IntPolynomial reduced;
  for (const auto& [key, c] : poly.terms()) {
    if (c % scale != 0) throw ValidationError("certificate expansion has non-integer coefficients");
    reduced.add_term(Monomial::from_key(key), c / scale);
  }
  return reduced;
}

CertificateCheck check_certificate(const SosCertificate& cert, int threads) {
  check_order_pivot(cert.order, cert.pivot);
  const auto [poly, scale] = expand_scaled(cert, threads);
  const auto target = poly_scale(build_target(cert.order, cert.pivot), scale);
  if (poly == target) return {true, "certificate expands exactly to the target"};
  return {false, describe_difference(poly, target)};
}

bool verify_certificate(const SosCertificate& cert, int threads) { return check_certificate(cert, threads).passed; }

int differing_positions(const QuadraticForm& form, int order) {
  if (form.empty()) return 0;
  const auto& t = form.terms().front();
  return std::popcount((t.i ^ t.j) & ((Offset{1} << order) - 1));
}

std::map<int, std::int64_t> block_sizes(const SosCertificate& cert) {
  std::map<int, std::int64_t> out;
  for (const auto& t : cert.terms) ++out[differing_positions(t.form, cert.order)];
  return out;
}

std::int64_t certificate_term_count(int order) {
  return static_cast<std::int64_t>(build_certificate(order, 0, false, kMaxBinaryOrder).terms.size());
}

std::int64_t formula_term_count(int order) {
  if (order < 1) throw ValidationError("order must be positive");
  // 8x the formula is integral for every n >= 1.
  const auto n = static_cast<std::int64_t>(order);
  const std::int64_t scaled = (std::int64_t{1} << (2 * n - 2)) * (3 * n - 5) - (std::int64_t{1} << n) * (n * n - n - 1);
  return scaled / 8;
}

std::int64_t expected_block_size(int order, int m) {
  const auto binom = [](std::int64_t n, std::int64_t k) -> std::int64_t {
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  const std::int64_t n = order;
  if (m == 2) return binom(n - 1, 2) * (std::int64_t{1} << (n - 2));
  if (m < 2 || m > n) return 0;
  return binom(n - 1, m - 1) * (std::int64_t{1} << (n - 3)) * (m - 2) + binom(n - 1, m) * (std::int64_t{1} << (n - 2)) * m;
}

double evaluate_certificate(const SosCertificate& cert, const BinaryTensor& tensor) {
  if (cert.order != tensor.order()) throw ValidationError("certificate and tensor orders differ");
  double sum = 0.0;
  for (const auto& t : cert.terms) {
    const double v = t.form.evaluate(tensor.entries());
    sum += static_cast<double>(t.coeff.num) / static_cast<double>(t.coeff.den) * v * v;
  }
  return sum;
}

SosCertificate relabel_certificate(const SosCertificate& cert, const std::vector<int>& perm) {
  const int n = cert.order;
  if (static_cast<int>(perm.size()) != n) throw ValidationError("permutation length mismatch");
  const auto map_offset = [&](Offset o) {
    Offset r = 0;
    for (int s = 0; s < n; ++s)
      if (o & bit_of(n, s)) r |= bit_of(n, perm[static_cast<std::size_t>(s)]);
    return r;
  };
  SosCertificate out;
  out.order = n;
  out.pivot = perm[static_cast<std::size_t>(cert.pivot)];
  for (const auto& t : cert.terms) {
    std::vector<FormTerm> terms;
    for (const auto& ft : t.form.terms()) terms.push_back({ft.sign, map_offset(ft.i), map_offset(ft.j)});
    out.terms.push_back({t.coeff, QuadraticForm(std::move(terms)).canonical()});
  }
  return out;
}

}  // namespace gramlocus
