#include "gramlocus/polyalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "gramlocus/error.hpp"

namespace gramlocus {
namespace {

constexpr int kSlots = 4;
constexpr int kMaxExponent = 15;

using Factors = std::array<std::pair<unsigned, int>, kSlots>;

int unpack(std::uint64_t key, Factors& out) {
  int count = 0;
  for (int k = 0; k < kSlots; ++k) {
    const auto slot = static_cast<unsigned>((key >> (48 - 16 * k)) & 0xFFFF);
    if (slot == 0) break;
    out[static_cast<std::size_t>(count++)] = {slot >> 4, static_cast<int>(slot & 0xF)};
  }
  return count;
}

std::uint64_t pack(const Factors& f, int count) {
  std::uint64_t key = 0;
  for (int k = 0; k < count; ++k) {
    const auto [var, exp] = f[static_cast<std::size_t>(k)];
    key |= static_cast<std::uint64_t>((var << 4) | static_cast<unsigned>(exp)) << (48 - 16 * k);
  }
  return key;
}

}  // namespace

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer coefficient overflow in addition");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer coefficient overflow in multiplication");
  return r;
}

Monomial Monomial::variable(VarId v, int exponent) {
  if (v > kMaxVarId) throw ValidationError("variable id out of range");
  if (exponent < 0 || exponent > kMaxExponent) throw OverflowError("monomial exponent out of range");
  if (exponent == 0) return Monomial();
  Factors f{};
  f[0] = {v, exponent};
  return Monomial(pack(f, 1));
}

int Monomial::degree() const {
  Factors f{};
  const int count = unpack(key_, f);
  int d = 0;
  for (int k = 0; k < count; ++k) d += f[static_cast<std::size_t>(k)].second;
  return d;
}

std::vector<std::pair<VarId, int>> Monomial::factors() const {
  Factors f{};
  const int count = unpack(key_, f);
  std::vector<std::pair<VarId, int>> out;
  for (int k = 0; k < count; ++k) {
    out.emplace_back(static_cast<VarId>(f[static_cast<std::size_t>(k)].first), f[static_cast<std::size_t>(k)].second);
  }
  return out;
}

Monomial operator*(Monomial a, Monomial b) {
  Factors fa{}, fb{}, out{};
  const int na = unpack(a.key_, fa);
  const int nb = unpack(b.key_, fb);
  int i = 0, j = 0, k = 0;
  const auto push = [&](unsigned var, int exp) {
    if (k == kSlots) throw OverflowError("monomial has more than four distinct variables");
    if (exp > kMaxExponent) throw OverflowError("monomial exponent out of range");
    out[static_cast<std::size_t>(k++)] = {var, exp};
  };
  while (i < na || j < nb) {
    if (j == nb || (i < na && fa[static_cast<std::size_t>(i)].first < fb[static_cast<std::size_t>(j)].first)) {
      push(fa[static_cast<std::size_t>(i)].first, fa[static_cast<std::size_t>(i)].second);
      ++i;
    } else if (i == na || fb[static_cast<std::size_t>(j)].first < fa[static_cast<std::size_t>(i)].first) {
      push(fb[static_cast<std::size_t>(j)].first, fb[static_cast<std::size_t>(j)].second);
      ++j;
    } else {
      push(fa[static_cast<std::size_t>(i)].first,
           fa[static_cast<std::size_t>(i)].second + fb[static_cast<std::size_t>(j)].second);
      ++i;
      ++j;
    }
  }
  return Monomial(pack(out, k));
}

IntPolynomial IntPolynomial::constant(std::int64_t c) {
  IntPolynomial p;
  p.add_term(Monomial(), c);
  return p;
}

IntPolynomial IntPolynomial::variable(VarId v) {
  IntPolynomial p;
  p.add_term(Monomial::variable(v), 1);
  return p;
}

void IntPolynomial::add_term(Monomial m, std::int64_t coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(m.key(), coeff);
  if (inserted) return;
  it->second = checked_add(it->second, coeff);
  if (it->second == 0) terms_.erase(it);
}

void IntPolynomial::add_scaled(const IntPolynomial& other, std::int64_t factor) {
  if (factor == 0) return;
  for (const auto& [key, c] : other.terms_) add_term(Monomial::from_key(key), checked_mul(c, factor));
}

std::int64_t IntPolynomial::coefficient(Monomial m) const {
  const auto it = terms_.find(m.key());
  return it == terms_.end() ? 0 : it->second;
}

std::vector<std::pair<Monomial, std::int64_t>> IntPolynomial::sorted_terms() const {
  std::vector<std::pair<Monomial, std::int64_t>> out;
  out.reserve(terms_.size());
  for (const auto& [key, c] : terms_) out.emplace_back(Monomial::from_key(key), c);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

double IntPolynomial::evaluate(std::span<const double> values) const {
  double sum = 0.0;
  for (const auto& [key, c] : terms_) {
    double term = static_cast<double>(c);
    for (const auto& [var, exp] : Monomial::from_key(key).factors()) {
      if (var >= values.size()) throw ValidationError("evaluation point too short");
      for (int e = 0; e < exp; ++e) term *= values[var];
    }
    sum += term;
  }
  return sum;
}

std::string IntPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : sorted_terms()) {
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    const auto mag = c < 0 ? -c : c;
    const auto fs = m.factors();
    if (mag != 1 || fs.empty()) os << mag;
    for (std::size_t k = 0; k < fs.size(); ++k) {
      if (k > 0 || mag != 1) os << '*';
      os << 'a' << fs[k].first;
      if (fs[k].second > 1) os << '^' << fs[k].second;
    }
    first = false;
  }
  return os.str();
}

IntPolynomial operator+(const IntPolynomial& p, const IntPolynomial& q) {
  IntPolynomial r = p;
  r.add_scaled(q, 1);
  return r;
}

IntPolynomial operator-(const IntPolynomial& p, const IntPolynomial& q) {
  IntPolynomial r = p;
  r.add_scaled(q, -1);
  return r;
}

IntPolynomial operator*(const IntPolynomial& p, const IntPolynomial& q) {
  IntPolynomial r;
  for (const auto& [kp, cp] : p.terms_)
    for (const auto& [kq, cq] : q.terms_)
      r.add_term(Monomial::from_key(kp) * Monomial::from_key(kq), checked_mul(cp, cq));
  return r;
}

IntPolynomial poly_add(const IntPolynomial& p, const IntPolynomial& q) { return p + q; }
IntPolynomial poly_sub(const IntPolynomial& p, const IntPolynomial& q) { return p - q; }

IntPolynomial poly_scale(const IntPolynomial& p, std::int64_t c) {
  IntPolynomial r;
  r.add_scaled(p, c);
  return r;
}

bool poly_equal(const IntPolynomial& p, const IntPolynomial& q) { return p == q; }

std::string describe_difference(const IntPolynomial& p, const IntPolynomial& q, std::size_t limit) {
  const auto diff = (p - q).sorted_terms();
  if (diff.empty()) return "no difference";
  std::ostringstream os;
  os << diff.size() << " differing monomial(s):";
  for (std::size_t k = 0; k < diff.size() && k < limit; ++k) {
    IntPolynomial single;
    single.add_term(diff[k].first, diff[k].second);
    os << "\n  " << single.to_string();
  }
  if (diff.size() > limit) os << "\n  ...";
  return os.str();
}

QuadraticForm::QuadraticForm(std::vector<FormTerm> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.sign != 1 && t.sign != -1) throw ValidationError("form term sign must be +1 or -1");
    if (t.i > kMaxVarId || t.j > kMaxVarId) throw ValidationError("form variable out of range");
  }
}

QuadraticForm QuadraticForm::canonical() const {
  auto terms = terms_;
  for (auto& t : terms) {
    if (t.i > t.j) std::swap(t.i, t.j);
  }
  std::sort(terms.begin(), terms.end(), [](const FormTerm& a, const FormTerm& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  if (!terms.empty() && terms.front().sign == 1) {
    for (auto& t : terms) t.sign = -t.sign;
  }
  return QuadraticForm(std::move(terms));
}

double QuadraticForm::evaluate(std::span<const double> values) const {
  double s = 0.0;
  for (const auto& t : terms_) s += t.sign * values[t.i] * values[t.j];
  return s;
}

IntPolynomial QuadraticForm::to_polynomial() const {
  IntPolynomial p;
  for (const auto& t : terms_) {
    p.add_term(Monomial::variable(static_cast<VarId>(t.i)) * Monomial::variable(static_cast<VarId>(t.j)), t.sign);
  }
  return p;
}

IntPolynomial square_form(const QuadraticForm& f) {
  const auto p = f.to_polynomial();
  return p * p;
}

}  // namespace gramlocus
