#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gramlocus/polyalg.hpp"
#include "gramlocus/tensor.hpp"

namespace gramlocus {

// Sum-of-squares certificates for the facet polynomial
//
//   D(n, p) = sum_{k != p} d_k - d_p,
//
// where each Gram determinant d_k is expanded as the sum of squared 2x2
// minors of the k-th flattening. Variables are tensor entries, identified by
// their linear offset.
//
// The certificate is assembled block by block, grouped by m, the number of
// positions in which the two entries of a monomial a_i a_j differ:
//
//   m = 2   face minors not involving the pivot slot, each with weight 2
//           (they occur in two of the d_k with k != p and in no d_p term);
//   m >= 3  for every m-subset of slots that contains the pivot and every
//           assignment of the remaining slots, one relabeled copy of the
//           all-positions-differ piece of D(m, first);
//   m >= 3  minors of some d_k whose differing slots avoid the pivot, weight 1.
//
// The all-positions-differ piece lives on the (m-1)-cube whose vertices v
// stand for the monomials a_{0v} a_{1v'} (v' the complement of v). Cube
// edges carry the minors of d_k, k != p, with weight +1, and the antipodal
// diagonals carry those of d_p with weight -1. Pairing the diagonals through
// (0,z) and (1,z) gives the four-term square
//   (x_{0z} - x_{1z} - x_{0z'} + x_{1z'})^2,
// and what is left splits into the two half-cubes, each again "edges minus
// diagonals" one dimension lower. A 1-cube contributes nothing.

struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 1;

  friend bool operator==(const Rational&, const Rational&) = default;
};

std::string to_string(const Rational& r);
/// Accepts "p" or "p/q" with p, q > 0.
Rational parse_rational(const std::string& text);

struct CertificateTerm {
  Rational coeff;
  QuadraticForm form;
};

struct SosCertificate {
  int order = 0;
  int pivot = 0;   // 0-based slot
  std::vector<CertificateTerm> terms;
};

inline constexpr int kDefaultMaxCertificateOrder = 8;

/// Exact expansion of D(order, pivot). Zero polynomial for order 2.
IntPolynomial build_target(int order, int pivot);

/// Builds and, when `verify` is set, checks the certificate exactly. Throws
/// CertificateError (with a diff report) if the expansion misses the target.
SosCertificate build_certificate(int order, int pivot, bool verify = true,
                                 int max_order = kDefaultMaxCertificateOrder);

/// Sum of coeff * form^2, scaled by the lcm of the denominators.
IntPolynomial expand_certificate(const SosCertificate& cert, int threads = 1);

struct CertificateCheck {
  bool passed = false;
  std::string report;
};

CertificateCheck check_certificate(const SosCertificate& cert, int threads = 1);
bool verify_certificate(const SosCertificate& cert, int threads = 1);

/// Number of positions where the entries of the form's first monomial differ.
int differing_positions(const QuadraticForm& form, int order);

/// Term count per block m.
std::map<int, std::int64_t> block_sizes(const SosCertificate& cert);

std::int64_t certificate_term_count(int order);
/// 2^(2n-5) (3n-5) - 2^(n-3) (n^2 - n - 1)
std::int64_t formula_term_count(int order);

/// Expected block sizes for pivot-0 style certificates.
std::int64_t expected_block_size(int order, int m);

double evaluate_certificate(const SosCertificate& cert, const BinaryTensor& tensor);

/// Applies a slot permutation (new slot of old slot s is perm[s]) to every
/// variable, and to the pivot.
SosCertificate relabel_certificate(const SosCertificate& cert, const std::vector<int>& perm);

}  // namespace gramlocus
