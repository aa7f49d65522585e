#pragma once

// RAII wrappers over MPFR.  Every Real carries its own precision; binary
// operations round to the larger of the two operand precisions.

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "mtv/rational.hpp"

namespace mtv {

using Prec = mpfr_prec_t;
inline constexpr Prec kDefaultPrecBits = 256;

class Real {
 public:
  explicit Real(Prec prec = kDefaultPrecBits) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(double d, Prec prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, d, MPFR_RNDN);
  }
  Real(long n, Prec prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, n, MPFR_RNDN);
  }
  Real(const Integer& z, Prec prec) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
  }
  Real(const Rational& q, Prec prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  /// Parses a decimal string such as "-1.25e3".
  static Real parse(const std::string& s, Prec prec) {
    Real r(prec);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw InputError("malformed real number '" + s + "'");
    return r;
  }

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  Prec prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  static Real pi(Prec prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  /// log2 |x|, or a very negative number for zero.
  double log2_abs() const {
    if (mpfr_zero_p(v_)) return -1e300;
    long exp = 0;
    double m = mpfr_get_d_2exp(&exp, v_, MPFR_RNDN);
    return std::log2(std::fabs(m)) + static_cast<double>(exp);
  }

  /// Scientific notation with `digits` significant digits.
  std::string to_string(int digits = 30) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

#define MTV_REAL_BINOP(op, fn)                                        \
  friend Real operator op(const Real& a, const Real& b) {             \
    Real r(std::max(a.prec(), b.prec()));                             \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                  \
    return r;                                                         \
  }                                                                   \
  Real& operator op##=(const Real& b) {                               \
    if (b.prec() > prec()) mpfr_prec_round(v_, b.prec(), MPFR_RNDN);  \
    fn(v_, v_, b.v_, MPFR_RNDN);                                      \
    return *this;                                                     \
  }
  MTV_REAL_BINOP(+, mpfr_add)
  MTV_REAL_BINOP(-, mpfr_sub)
  MTV_REAL_BINOP(*, mpfr_mul)
  MTV_REAL_BINOP(/, mpfr_div)
#undef MTV_REAL_BINOP

  friend Real operator-(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, long s) {
    Real r(a.prec());
    mpfr_mul_si(r.v_, a.v_, s, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, long s) {
    Real r(a.prec());
    mpfr_div_si(r.v_, a.v_, s, MPFR_RNDN);
    return r;
  }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

#define MTV_REAL_UNARY(name, fn)            \
  friend Real name(const Real& a) {         \
    Real r(a.prec());                       \
    fn(r.v_, a.v_, MPFR_RNDN);              \
    return r;                               \
  }
  MTV_REAL_UNARY(sqrt, mpfr_sqrt)
  MTV_REAL_UNARY(exp, mpfr_exp)
  MTV_REAL_UNARY(log, mpfr_log)
  MTV_REAL_UNARY(sin, mpfr_sin)
  MTV_REAL_UNARY(cos, mpfr_cos)
  MTV_REAL_UNARY(abs, mpfr_abs)
  MTV_REAL_UNARY(cbrt, mpfr_cbrt)
#undef MTV_REAL_UNARY

  friend Real atan2(const Real& y, const Real& x) {
    Real r(std::max(y.prec(), x.prec()));
    mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend Real floor(const Real& a) {
    Real r(a.prec());
    mpfr_floor(r.v_, a.v_);
    return r;
  }
  friend Real round(const Real& a) {
    Real r(a.prec());
    mpfr_round(r.v_, a.v_);
    return r;
  }
  friend Real pow(const Real& a, long e) {
    Real r(a.prec());
    mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
    return r;
  }
  friend Real pow(const Real& a, const Real& e) {
    Real r(std::max(a.prec(), e.prec()));
    mpfr_pow(r.v_, a.v_, e.v_, MPFR_RNDN);
    return r;
  }

  /// Nearest integer (ties away from zero).
  Integer to_integer() const {
    Integer z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
  }

 private:
  mpfr_t v_;
};

class Complex {
 public:
  explicit Complex(Prec prec = kDefaultPrecBits) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(const Rational& r, Prec prec) : re(r, prec), im(prec) {}

  /// Parses "a+bi", "a-bi", "bi", "a" (decimal reals).
  static Complex parse(const std::string& text, Prec prec) {
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw InputError("empty complex string");
    if (s.back() != 'i') return Complex(Real::parse(s, prec), Real(prec));
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
      if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
        split = i;
        break;
      }
    }
    auto imag_of = [&](std::string t) {
      if (t.empty() || t == "+") t = "1";
      if (t == "-") t = "-1";
      if (t[0] == '+') t.erase(0, 1);
      return Real::parse(t, prec);
    };
    if (split == std::string::npos) return Complex(Real(prec), imag_of(s));
    return Complex(Real::parse(s.substr(0, split), prec), imag_of(s.substr(split)));
  }

  static Complex i(Prec prec) { return Complex(Real(prec), Real(1L, prec)); }

  Prec prec() const { return std::max(re.prec(), im.prec()); }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
  friend Complex operator*(const Real& s, const Complex& a) { return a * s; }
  friend Complex operator/(const Complex& a, const Real& s) { return {a.re / s, a.im / s}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
  }
  Complex& operator+=(const Complex& b) {
    re += b.re;
    im += b.im;
    return *this;
  }
  Complex& operator-=(const Complex& b) {
    re -= b.re;
    im -= b.im;
    return *this;
  }
  Complex& operator*=(const Complex& b) { return *this = *this * b; }

  Real norm2() const { return re * re + im * im; }
  friend Real abs(const Complex& a) { return sqrt(a.norm2()); }
  friend Real arg(const Complex& a) { return atan2(a.im, a.re); }
  Complex conj() const { return {re, -im}; }

  friend Complex exp(const Complex& a) {
    Real m = exp(a.re);
    return {m * cos(a.im), m * sin(a.im)};
  }
  friend Complex log(const Complex& a) { return {log(abs(a)), arg(a)}; }
  /// Principal square root.
  friend Complex sqrt(const Complex& a) {
    Real r = abs(a);
    Real two(2L, a.prec());
    Real zero(a.prec());
    Real re = sqrt(std::max(zero, (r + a.re) / two));
    Real im = sqrt(std::max(zero, (r - a.re) / two));
    if (a.im.sign() < 0) im = -im;
    return {re, im};
  }
  /// Principal value of a^(1/n).
  friend Complex principal_root(const Complex& a, long n) {
    if (a.re.is_zero() && a.im.is_zero()) return a;
    Real r = pow(abs(a), Real(1L, a.prec()) / Real(n, a.prec()));
    Real t = arg(a) / Real(n, a.prec());
    return {r * cos(t), r * sin(t)};
  }
  friend Complex pow(const Complex& a, long e) {
    if (e < 0) return Complex(Rational(1), a.prec()) / pow(a, -e);
    Complex result(Rational(1), a.prec());
    Complex base = a;
    while (e > 0) {
      if (e & 1) result = result * base;
      base = base * base;
      e >>= 1;
    }
    return result;
  }

  Real re, im;
};

/// exp(2 pi i t) for real t.
inline Complex exp_2pi_i(const Real& t) {
  Real a = Real::pi(t.prec()) * 2L * t;
  return {cos(a), sin(a)};
}

/// A complex value with an attached heuristic error magnitude.
struct BigComplex {
  Complex value;
  double err = 0.0;
};

}  // namespace mtv
