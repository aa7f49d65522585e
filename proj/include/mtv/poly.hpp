#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mtv/rational.hpp"

namespace mtv {

/// Dense univariate polynomial over Q, coefficients constant-first.
/// The zero polynomial has no coefficients; otherwise the last entry is
/// nonzero.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  UniPoly(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    trim();
  }

  static UniPoly constant(const Rational& v) { return UniPoly(std::vector<Rational>{v}); }
  static UniPoly x() { return UniPoly({0L, 1L}); }
  static UniPoly monomial(const Rational& v, std::size_t deg) {
    std::vector<Rational> c(deg + 1, Rational(0));
    c[deg] = v;
    return UniPoly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& leading() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  UniPoly monic() const {
    if (is_zero()) return *this;
    UniPoly r = *this;
    Rational lc = leading();
    for (auto& v : r.c_) v /= lc;
    return r;
  }

  UniPoly derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rational(static_cast<long>(i)));
    return UniPoly(std::move(d));
  }

  Rational eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return UniPoly(std::move(r));
  }
  friend UniPoly operator-(const UniPoly& a) {
    UniPoly r = a;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(r));
  }
  friend UniPoly operator*(const Rational& s, const UniPoly& a) {
    UniPoly r = a;
    for (auto& v : r.c_) v *= s;
    r.trim();
    return r;
  }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  /// Euclidean division; throws on a zero divisor.
  static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw DomainMismatch("polynomial division by zero");
    if (a.degree() < b.degree()) return {UniPoly{}, a};
    std::vector<Rational> rem = a.c_;
    std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rational(0));
    const Rational& lc = b.leading();
    for (int i = a.degree() - b.degree(); i >= 0; --i) {
      Rational f = rem[static_cast<std::size_t>(i + b.degree())] / lc;
      quo[static_cast<std::size_t>(i)] = f;
      if (sgn(f) == 0) continue;
      for (int j = 0; j <= b.degree(); ++j)
        rem[static_cast<std::size_t>(i + j)] -= f * b.c_[static_cast<std::size_t>(j)];
    }
    return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
  }
  friend UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divmod(a, b).first; }
  friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

  /// Lexicographic order on constant-first coefficient vectors.
  friend bool lex_less(const UniPoly& a, const UniPoly& b) {
    return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
  }

  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      const Rational& v = c_[static_cast<std::size_t>(i)];
      if (sgn(v) == 0) continue;
      Rational mag = abs(v);
      if (out.empty()) {
        if (sgn(v) < 0) out += "-";
      } else {
        out += sgn(v) < 0 ? " - " : " + ";
      }
      bool unit = (mag == 1 && i > 0);
      if (!unit) out += mtv::to_string(mag);
      if (i > 0) {
        if (!unit) out += "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline std::ostream& operator<<(std::ostream& os, const UniPoly& p) { return os << p.to_string(); }

/// Monic gcd (zero if both inputs are zero).
inline UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Returns (g, s, t) with s*a + t*b = g = gcd(a, b), g monic.
inline std::tuple<UniPoly, UniPoly, UniPoly> ext_gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly r0 = a, r1 = b;
  UniPoly s0 = UniPoly::constant(1), s1;
  UniPoly t0, t1 = UniPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = UniPoly::divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UniPoly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    UniPoly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Rational lc = r0.leading();
  Rational inv = 1 / lc;
  return {inv * r0, inv * s0, inv * t0};
}

/// Square-free decomposition (Yun): returns (f_i, i) with p = lc * prod f_i^i,
/// every f_i monic, square-free and pairwise coprime.  Constant factors omitted.
inline std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& p) {
  std::vector<std::pair<UniPoly, int>> out;
  if (p.degree() < 1) return out;
  UniPoly f = p.monic();
  UniPoly fp = f.derivative();
  UniPoly a = gcd(f, fp);
  UniPoly b = f / a;
  UniPoly c = fp / a;
  UniPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() >= 1) {
    UniPoly g = gcd(b, d);
    if (g.degree() >= 1) out.emplace_back(g.monic(), i);
    b = b / g;
    c = d / g;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

/// Scales p to a primitive integer polynomial with positive leading
/// coefficient.  Returns the integer coefficients and the rational factor
/// `unit` with p = unit * primitive.
inline std::pair<std::vector<Integer>, Rational> primitive_integer_part(const UniPoly& p) {
  std::vector<Integer> out;
  if (p.is_zero()) return {out, Rational(0)};
  Integer den = 1;
  for (const auto& v : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  Integer g = 0;
  for (const auto& v : p.coeffs()) {
    Integer n = v.get_num() * (den / v.get_den());
    out.push_back(n);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  if (sgn(out.back()) < 0) g = -g;
  for (auto& n : out) n /= g;
  Rational unit(g, den);
  unit.canonicalize();
  return {out, unit};
}

}  // namespace mtv
