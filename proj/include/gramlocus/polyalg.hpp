#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gramlocus {

/// Variables are tensor-entry offsets (a MultiIndex encoded under the fixed
/// layout), so at most 2^12 of them.
using VarId = std::uint16_t;
inline constexpr unsigned kMaxVarId = 0xFFF;

/// Product of at most four distinct variables, each with exponent <= 15.
///
/// Packed into 64 bits as four 16-bit slots (variable << 4 | exponent),
/// sorted by variable with the first factor in the most significant slot.
/// Unused slots are zero, so the packed integer order is lexicographic on
/// the factor list and equality of keys is equality of monomials.
class Monomial {
 public:
  constexpr Monomial() = default;

  static Monomial variable(VarId v, int exponent = 1);
  static Monomial from_key(std::uint64_t key) { return Monomial(key); }

  std::uint64_t key() const { return key_; }
  int degree() const;
  std::vector<std::pair<VarId, int>> factors() const;

  /// Throws OverflowError if the product needs more than four variables or
  /// an exponent above 15.
  friend Monomial operator*(Monomial a, Monomial b);
  friend bool operator==(Monomial, Monomial) = default;
  friend auto operator<=>(Monomial a, Monomial b) { return a.key_ <=> b.key_; }

 private:
  explicit constexpr Monomial(std::uint64_t key) : key_(key) {}

  std::uint64_t key_ = 0;
};

/// Sparse polynomial with checked int64 coefficients. Zero coefficients are
/// never stored.
class IntPolynomial {
 public:
  using Terms = std::unordered_map<std::uint64_t, std::int64_t>;

  IntPolynomial() = default;

  static IntPolynomial constant(std::int64_t c);
  static IntPolynomial variable(VarId v);

  void add_term(Monomial m, std::int64_t coeff);
  /// this += factor * other
  void add_scaled(const IntPolynomial& other, std::int64_t factor);

  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  std::int64_t coefficient(Monomial m) const;
  const Terms& terms() const { return terms_; }

  /// Terms in canonical (packed-key) order.
  std::vector<std::pair<Monomial, std::int64_t>> sorted_terms() const;

  double evaluate(std::span<const double> values) const;
  std::string to_string() const;

  friend IntPolynomial operator+(const IntPolynomial& p, const IntPolynomial& q);
  friend IntPolynomial operator-(const IntPolynomial& p, const IntPolynomial& q);
  friend IntPolynomial operator*(const IntPolynomial& p, const IntPolynomial& q);
  friend bool operator==(const IntPolynomial& p, const IntPolynomial& q) { return p.terms_ == q.terms_; }

 private:
  Terms terms_;
};

IntPolynomial poly_add(const IntPolynomial& p, const IntPolynomial& q);
IntPolynomial poly_sub(const IntPolynomial& p, const IntPolynomial& q);
IntPolynomial poly_scale(const IntPolynomial& p, std::int64_t c);
bool poly_equal(const IntPolynomial& p, const IntPolynomial& q);

/// Human-readable listing of the terms of p - q, at most `limit` of them.
std::string describe_difference(const IntPolynomial& p, const IntPolynomial& q, std::size_t limit = 12);

/// One signed product a_i * a_j of a quadratic form.
struct FormTerm {
  int sign = 1;
  std::uint32_t i = 0;
  std::uint32_t j = 0;

  friend bool operator==(const FormTerm&, const FormTerm&) = default;
};

/// Sum of signed degree-two monomials, e.g. a minor a_i a_j - a_k a_l.
class QuadraticForm {
 public:
  QuadraticForm() = default;
  explicit QuadraticForm(std::vector<FormTerm> terms);

  std::span<const FormTerm> terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Orders each pair so i <= j, sorts terms by (i, j) and flips the overall
  /// sign so the smallest monomial carries -1. The square is unchanged.
  QuadraticForm canonical() const;

  double evaluate(std::span<const double> values) const;
  IntPolynomial to_polynomial() const;

  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;

 private:
  std::vector<FormTerm> terms_;
};

/// Exact expansion of f^2.
IntPolynomial square_form(const QuadraticForm& f);

/// Checked int64 helpers; throw OverflowError.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace gramlocus
