#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mtv/factor.hpp"
#include "mtv/matrix.hpp"

namespace mtv {

/// Absolute number field Q[x]/(p) with p monic and irreducible over Q.
class NumberField {
 public:
  /// Certifies irreducibility of the modulus unless `certified` is passed.
  static std::shared_ptr<const NumberField> make(const UniPoly& modulus, std::string name = {},
                                                 bool certified = false) {
    if (modulus.degree() < 1) throw InputError("number field modulus must have degree >= 1");
    if (!modulus.is_monic()) throw InputError("number field modulus must be monic");
    if (!certified && !is_irreducible_q(modulus))
      throw InputError("number field modulus " + modulus.to_string() + " is reducible over Q");
    return std::shared_ptr<const NumberField>(new NumberField(modulus, std::move(name)));
  }
  static std::shared_ptr<const NumberField> rationals() {
    return make(UniPoly({0L, 1L}), "Q", true);
  }

  const UniPoly& modulus() const { return modulus_; }
  int degree() const { return modulus_.degree(); }
  const std::string& name() const { return name_; }

  bool same_as(const NumberField& o) const { return this == &o || modulus_ == o.modulus_; }

 private:
  NumberField(UniPoly m, std::string name) : modulus_(std::move(m)), name_(std::move(name)) {}
  UniPoly modulus_;
  std::string name_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// Element of a NumberField in the power basis 1, x, ..., x^{d-1}.
class NumberFieldElem {
 public:
  NumberFieldElem() = default;  // detached zero; only valid as a placeholder
  NumberFieldElem(FieldPtr field, std::vector<Rational> coords) : field_(std::move(field)), c_(std::move(coords)) {
    if (static_cast<int>(c_.size()) != field_->degree())
      throw DomainMismatch("number field element has wrong coordinate count");
  }
  NumberFieldElem(FieldPtr field, const Rational& v) : field_(std::move(field)) {
    c_.assign(static_cast<std::size_t>(field_->degree()), Rational(0));
    c_[0] = v;
  }
  static NumberFieldElem from_poly(FieldPtr field, const UniPoly& p) {
    UniPoly r = p % field->modulus();
    std::vector<Rational> c(static_cast<std::size_t>(field->degree()), Rational(0));
    for (std::size_t i = 0; i < r.coeffs().size(); ++i) c[i] = r.coeffs()[i];
    return NumberFieldElem(std::move(field), std::move(c));
  }
  /// The class of x.  In a degree-one field this is the root of the modulus.
  static NumberFieldElem generator(FieldPtr field) { return from_poly(field, UniPoly::x()); }

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coords() const { return c_; }
  UniPoly as_poly() const { return UniPoly(c_); }

  bool is_zero() const {
    for (const auto& v : c_)
      if (sgn(v) != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (sgn(c_[i]) != 0) return false;
    return true;
  }
  Rational rational_part() const { return c_.empty() ? Rational(0) : c_[0]; }

  NumberFieldElem zero_like() const { return NumberFieldElem(field_, Rational(0)); }

  friend NumberFieldElem operator+(const NumberFieldElem& a, const NumberFieldElem& b) {
    const auto& f = common(a, b);
    if (a.c_.empty()) return b;
    if (b.c_.empty()) return a;
    std::vector<Rational> c = a.c_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
    return NumberFieldElem(f, std::move(c));
  }
  friend NumberFieldElem operator-(const NumberFieldElem& a) {
    NumberFieldElem r = a;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend NumberFieldElem operator-(const NumberFieldElem& a, const NumberFieldElem& b) { return a + (-b); }
  friend NumberFieldElem operator*(const NumberFieldElem& a, const NumberFieldElem& b) {
    const auto& f = common(a, b);
    if (a.c_.empty() || b.c_.empty()) return a.c_.empty() ? b.zero_like() : a.zero_like();
    return from_poly(f, a.as_poly() * b.as_poly());
  }
  friend NumberFieldElem operator*(const NumberFieldElem& a, const Rational& s) {
    NumberFieldElem r = a;
    for (auto& v : r.c_) v *= s;
    return r;
  }
  friend NumberFieldElem operator*(const Rational& s, const NumberFieldElem& a) { return a * s; }
  friend NumberFieldElem operator+(const NumberFieldElem& a, const Rational& s) {
    NumberFieldElem r = a;
    if (r.c_.empty()) throw DomainMismatch("detached number field element");
    r.c_[0] += s;
    return r;
  }
  NumberFieldElem& operator+=(const NumberFieldElem& b) { return *this = *this + b; }
  NumberFieldElem& operator-=(const NumberFieldElem& b) { return *this = *this - b; }
  NumberFieldElem& operator*=(const NumberFieldElem& b) { return *this = *this * b; }

  NumberFieldElem inverse() const {
    if (is_zero()) throw DomainMismatch("inverse of zero in a number field");
    auto [g, s, t] = ext_gcd(as_poly(), field_->modulus());
    if (g.degree() != 0) throw InvariantViolation("number field modulus is not irreducible");
    return from_poly(field_, s);
  }
  friend NumberFieldElem operator/(const NumberFieldElem& a, const NumberFieldElem& b) { return a * b.inverse(); }

  friend bool operator==(const NumberFieldElem& a, const NumberFieldElem& b) {
    if (a.c_.empty() || b.c_.empty()) return a.is_zero() && b.is_zero();
    return a.field_->same_as(*b.field_) && a.c_ == b.c_;
  }
  friend bool operator!=(const NumberFieldElem& a, const NumberFieldElem& b) { return !(a == b); }

  /// Matrix of multiplication by this element on the power basis (columns
  /// are the images of 1, x, ..., x^{d-1}).
  Matrix<Rational> multiplication_matrix() const {
    const auto d = static_cast<std::size_t>(field_->degree());
    Matrix<Rational> m(d, d, Rational(0));
    NumberFieldElem basis(field_, Rational(1));
    NumberFieldElem x = generator(field_);
    for (std::size_t j = 0; j < d; ++j) {
      NumberFieldElem img = *this * basis;
      for (std::size_t i = 0; i < d; ++i) m(i, j) = img.c_[i];
      basis = basis * x;
    }
    return m;
  }

  Rational trace() const { return multiplication_matrix().trace(); }
  UniPoly charpoly() const { return mtv::charpoly(multiplication_matrix()); }
  Rational norm() const {
    UniPoly cp = charpoly();
    Rational n = cp.coeff(0);
    return (cp.degree() % 2 == 0) ? n : -n;
  }

  /// Image under the embedding x -> root.
  Complex embed(const Complex& root) const {
    Complex acc(root.prec());
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * root + Complex(c_[i], root.prec());
    return acc;
  }

  std::string to_string(const std::string& var = "a") const { return as_poly().to_string(var); }

 private:
  static const FieldPtr& common(const NumberFieldElem& a, const NumberFieldElem& b) {
    if (!a.field_) {
      if (!b.field_) throw DomainMismatch("arithmetic on detached number field elements");
      return b.field_;
    }
    if (b.field_ && !a.field_->same_as(*b.field_))
      throw DomainMismatch("number field elements from distinct fields");
    return a.field_;
  }

  FieldPtr field_;
  std::vector<Rational> c_;
};

inline bool is_zero(const NumberFieldElem& a) { return a.is_zero(); }
inline NumberFieldElem field_inverse(const NumberFieldElem& a) { return a.inverse(); }

/// Absolute trace Tr_{F/Q}(a).
inline Rational nf_trace(const NumberFieldElem& a) { return a.trace(); }
inline Rational nf_norm(const NumberFieldElem& a) { return a.norm(); }

}  // namespace mtv
