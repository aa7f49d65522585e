#pragma once

// Truncated q-expansions in q^{1/e} with exact coefficients.
//
// A QSeries<C> with expansion denominator e and truncation order T stores
// the coefficients of q^{m/e} for 0 <= m <= e*T; everything above is
// unknown.  Truncation propagates pessimistically (min over operands), so an
// exact statement about a series is always a statement about the stored
// range only.

#include <algorithm>
#include <string>
#include <vector>

#include "mtv/cyclotomic.hpp"
#include "mtv/number_field.hpp"
#include "mtv/rational.hpp"

namespace mtv {

struct Character {
  enum class Kind { Trivial, Quadratic, None };
  Kind kind = Kind::Trivial;
  long disc = 1;  ///< fundamental discriminant for Kind::Quadratic

  static Character trivial() { return {}; }
  static Character quadratic(long d) { return {Kind::Quadratic, d}; }
  static Character none() { return {Kind::None, 0}; }

  std::string to_string() const {
    switch (kind) {
      case Kind::Trivial: return "trivial";
      case Kind::Quadratic: return "quadratic:" + std::to_string(disc);
      case Kind::None: return "none";
    }
    return "none";
  }
  static Character parse(const std::string& s) {
    if (s == "trivial") return trivial();
    if (s == "none") return none();
    if (s.rfind("quadratic:", 0) == 0) {
      try {
        return quadratic(std::stol(s.substr(10)));
      } catch (const std::exception&) {
      }
    }
    throw InputError("unknown character tag '" + s + "'");
  }
  friend bool operator==(const Character& a, const Character& b) {
    return a.kind == b.kind && (a.kind != Kind::Quadratic || a.disc == b.disc);
  }
  friend Character operator*(const Character& a, const Character& b) {
    if (a.kind == Kind::Trivial) return b;
    if (b.kind == Kind::Trivial) return a;
    if (a.kind == Kind::Quadratic && b.kind == Kind::Quadratic && a.disc == b.disc) return trivial();
    return none();
  }
};

/// Weight / level / character carried alongside a series.
struct FormMeta {
  int weight = 0;
  long level = 1;
  Character character;

  friend bool operator==(const FormMeta& a, const FormMeta& b) {
    return a.weight == b.weight && a.level == b.level && a.character == b.character;
  }
};

// Coefficient-domain hooks.  Rational is the base domain; NumberFieldElem and
// CycloElem carry their parent and provide zero_like() as a member.
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline NumberFieldElem one_like(const NumberFieldElem& c) { return NumberFieldElem(c.field(), Rational(1)); }
inline CycloElem one_like(const CycloElem& c) { return CycloElem(c.prime(), Rational(1)); }
template <class C>
C zero_like(const C& c) {
  return c.zero_like();
}

inline void add_mul(Rational& acc, const Rational& a, const Rational& b) {
  mpq_class t;
  mpq_mul(t.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
  mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), t.get_mpq_t());
}
inline void add_mul(NumberFieldElem& acc, const NumberFieldElem& a, const NumberFieldElem& b) { acc += a * b; }

template <class C>
class QSeries {
 public:
  using Coeff = C;

  QSeries() = default;
  QSeries(std::vector<C> coeffs, long trunc, int qdenom = 1, FormMeta meta = {})
      : c_(std::move(coeffs)), e_(qdenom), t_(trunc), meta_(meta) {
    if (e_ < 1) throw InputError("expansion denominator must be >= 1");
    if (t_ < 0) throw InputError("truncation order must be >= 0");
    if (static_cast<long>(c_.size()) != static_cast<long>(e_) * t_ + 1)
      throw InputError("coefficient array length must equal qdenom*trunc + 1");
  }

  /// Constant series v + O(q^{T+1}).
  static QSeries constant(const C& v, long trunc, FormMeta meta = {}) {
    std::vector<C> c(static_cast<std::size_t>(trunc + 1), zero_like(v));
    c[0] = v;
    return QSeries(std::move(c), trunc, 1, meta);
  }

  long trunc() const { return t_; }
  int qdenom() const { return e_; }
  const FormMeta& meta() const { return meta_; }
  int weight() const { return meta_.weight; }
  long level() const { return meta_.level; }
  const Character& character() const { return meta_.character; }
  std::size_t size() const { return c_.size(); }
  const std::vector<C>& coeffs() const { return c_; }

  /// Coefficient of q^{m/e}.
  const C& operator[](std::size_t m) const { return c_.at(m); }
  /// Coefficient of q^n (integral exponent).
  const C& coeff(long n) const {
    if (n < 0 || n > t_) throw TruncationError("coefficient of q^" + std::to_string(n) + " beyond truncation", n);
    return c_[static_cast<std::size_t>(n) * static_cast<std::size_t>(e_)];
  }
  C zero() const { return zero_like(c_.at(0)); }

  QSeries with_meta(FormMeta m) const {
    QSeries r = *this;
    r.meta_ = m;
    return r;
  }
  QSeries with_weight(int w) const {
    FormMeta m = meta_;
    m.weight = w;
    return with_meta(m);
  }
  QSeries with_level(long n) const {
    FormMeta m = meta_;
    m.level = n;
    return with_meta(m);
  }

  QSeries truncated(long t) const {
    if (t > t_) throw TruncationError("cannot extend truncation from " + std::to_string(t_) + " to " + std::to_string(t), t);
    std::vector<C> c(c_.begin(), c_.begin() + static_cast<long>(e_) * t + 1);
    return QSeries(std::move(c), t, e_, meta_);
  }

  /// Same series re-expressed in q^{1/new_e}; new_e must be a multiple of e.
  QSeries spread(int new_e) const {
    if (new_e % e_ != 0) throw DomainMismatch("spread target must be a multiple of the expansion denominator");
    if (new_e == e_) return *this;
    const auto f = static_cast<std::size_t>(new_e / e_);
    std::vector<C> c(static_cast<std::size_t>(new_e) * static_cast<std::size_t>(t_) + 1, zero());
    for (std::size_t m = 0; m < c_.size(); ++m) c[m * f] = c_[m];
    return QSeries(std::move(c), t_, new_e, meta_);
  }

  bool is_zero() const {
    for (const auto& v : c_)
      if (!mtv::is_zero(v)) return false;
    return true;
  }
  /// Index (in q^{1/e} units) of the first nonzero coefficient, or -1.
  long valuation() const {
    for (std::size_t m = 0; m < c_.size(); ++m)
      if (!mtv::is_zero(c_[m])) return static_cast<long>(m);
    return -1;
  }
  /// True when every coefficient of a non-integral power of q vanishes.
  bool has_integral_exponents() const {
    for (std::size_t m = 0; m < c_.size(); ++m)
      if (m % static_cast<std::size_t>(e_) != 0 && !mtv::is_zero(c_[m])) return false;
    return true;
  }
  /// Collapses to e = 1; requires integral exponents.
  QSeries integral() const {
    if (!has_integral_exponents()) throw InvariantViolation("series has non-integral exponents");
    std::vector<C> c;
    for (long n = 0; n <= t_; ++n) c.push_back(coeff(n));
    return QSeries(std::move(c), t_, 1, meta_);
  }

  /// Applies f to every coefficient.
  template <class F>
  auto map(F f) const -> QSeries<decltype(f(std::declval<const C&>()))> {
    using D = decltype(f(std::declval<const C&>()));
    std::vector<D> c;
    c.reserve(c_.size());
    for (const auto& v : c_) c.push_back(f(v));
    return QSeries<D>(std::move(c), t_, e_, meta_);
  }

  friend bool operator==(const QSeries& a, const QSeries& b) {
    return a.e_ == b.e_ && a.t_ == b.t_ && a.c_ == b.c_;
  }
  friend bool operator!=(const QSeries& a, const QSeries& b) { return !(a == b); }

  /// Coefficientwise equality over the common truncation, after merging e.
  friend bool agree(const QSeries& a, const QSeries& b) {
    int e = static_cast<int>(lcm(a.e_, b.e_));
    long t = std::min(a.t_, b.t_);
    return a.spread(e).truncated(t).c_ == b.spread(e).truncated(t).c_;
  }

  friend QSeries operator+(const QSeries& a, const QSeries& b) { return combine(a, b, false); }
  friend QSeries operator-(const QSeries& a, const QSeries& b) { return combine(a, b, true); }
  friend QSeries operator-(const QSeries& a) {
    QSeries r = a;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend QSeries operator*(const QSeries& a, const Rational& s) {
    QSeries r = a;
    for (auto& v : r.c_) v = v * s;
    return r;
  }
  friend QSeries operator*(const Rational& s, const QSeries& a) { return a * s; }
  /// Scalar from the coefficient domain.
  QSeries scaled(const C& s) const {
    QSeries r = *this;
    for (auto& v : r.c_) v = v * s;
    return r;
  }

  friend QSeries operator*(const QSeries& a0, const QSeries& b0) {
    const int e = static_cast<int>(lcm(a0.e_, b0.e_));
    const long t = std::min(a0.t_, b0.t_);
    QSeries a = a0.spread(e).truncated(t);
    QSeries b = b0.spread(e).truncated(t);
    const std::size_t len = a.c_.size();
    std::vector<C> r(len, a.zero());
    for (std::size_t i = 0; i < len; ++i) {
      if (mtv::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; i + j < len; ++j) {
        if (mtv::is_zero(b.c_[j])) continue;
        add_mul(r[i + j], a.c_[i], b.c_[j]);
      }
    }
    FormMeta m{a.meta_.weight + b.meta_.weight, lcm(a.meta_.level, b.meta_.level),
               a.meta_.character * b.meta_.character};
    return QSeries(std::move(r), t, e, m);
  }

 private:
  static QSeries combine(const QSeries& a0, const QSeries& b0, bool subtract) {
    if (a0.meta_.weight != b0.meta_.weight)
      throw DomainMismatch("adding series of weights " + std::to_string(a0.meta_.weight) + " and " +
                           std::to_string(b0.meta_.weight));
    const int e = static_cast<int>(lcm(a0.e_, b0.e_));
    const long t = std::min(a0.t_, b0.t_);
    QSeries a = a0.spread(e).truncated(t);
    QSeries b = b0.spread(e).truncated(t);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (subtract)
        a.c_[i] = a.c_[i] - b.c_[i];
      else
        a.c_[i] = a.c_[i] + b.c_[i];
    }
    Character chi = a0.meta_.character == b0.meta_.character ? a0.meta_.character : Character::none();
    a.meta_ = FormMeta{a0.meta_.weight, lcm(a0.meta_.level, b0.meta_.level), chi};
    return a;
  }

  std::vector<C> c_;
  int e_ = 1;
  long t_ = 0;
  FormMeta meta_;
};

using RSeries = QSeries<Rational>;

/// f^n by repeated squaring; f^0 is the constant 1 of weight 0.
template <class C>
QSeries<C> series_pow(const QSeries<C>& f, unsigned n) {
  QSeries<C> result = QSeries<C>::constant(one_like(f[0]), f.trunc(), FormMeta{0, 1, {}});
  if (f.qdenom() != 1) result = result.spread(f.qdenom());
  result = result.with_level(f.level());
  QSeries<C> base = f;
  bool first = true;
  while (n > 0) {
    if (n & 1U) {
      result = first ? base : result * base;
      first = false;
    }
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

/// A rational series with the given integer coefficients (q^0 first).
inline RSeries series_from_ints(std::initializer_list<long> coeffs, FormMeta meta = {}) {
  std::vector<Rational> c;
  for (long v : coeffs) c.emplace_back(v);
  long t = static_cast<long>(c.size()) - 1;
  return RSeries(std::move(c), t, 1, meta);
}

/// Embeds a rational series into a number field.
inline QSeries<NumberFieldElem> to_field(const RSeries& f, const FieldPtr& field) {
  return f.map([&](const Rational& v) { return NumberFieldElem(field, v); });
}

/// Embeds a rational series into Q(zeta_p).
inline QSeries<CycloElem> to_cyclotomic(const RSeries& f, long p) {
  return f.map([&](const Rational& v) { return CycloElem(p, v); });
}

}  // namespace mtv
