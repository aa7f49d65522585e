#pragma once

#include <vector>

#include "mtv/rational.hpp"
#include "mtv/real.hpp"

namespace mtv {

/// Element of the prime cyclotomic field Q(zeta_p), stored in the basis
/// 1, zeta, ..., zeta^{p-2}.  Products are formed in Q[x]/(x^p - 1) and then
/// reduced with zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2}).
class CycloElem {
 public:
  CycloElem() = default;  // detached zero placeholder
  CycloElem(long p, const Rational& v) : p_(p), c_(static_cast<std::size_t>(p), Rational(0)) {
    check_prime(p);
    c_[0] = v;
  }
  CycloElem(long p, std::vector<Rational> coords) : p_(p) {
    check_prime(p);
    if (static_cast<long>(coords.size()) != p - 1)
      throw DomainMismatch("cyclotomic element has wrong coordinate count");
    c_ = std::move(coords);
    c_.emplace_back(0);
  }
  /// zeta^j for any integer j.
  static CycloElem zeta_power(long p, long j) {
    CycloElem z(p, Rational(0));
    z.c_[0] = 0;
    z.c_[static_cast<std::size_t>(((j % p) + p) % p)] = 1;
    z.reduce();
    return z;
  }

  long prime() const { return p_; }
  /// Canonical coordinates (length p - 1).
  std::vector<Rational> coords() const { return {c_.begin(), c_.end() - 1}; }

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
  CycloElem zero_like() const { return CycloElem(p_, Rational(0)); }

  friend CycloElem operator+(const CycloElem& a, const CycloElem& b) {
    if (a.c_.empty()) return b;
    if (b.c_.empty()) return a;
    check_same(a, b);
    CycloElem r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
  }
  friend CycloElem operator-(const CycloElem& a) {
    CycloElem r = a;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend CycloElem operator-(const CycloElem& a, const CycloElem& b) { return a + (-b); }
  friend CycloElem operator*(const CycloElem& a, const CycloElem& b) {
    if (a.c_.empty()) return a;
    if (b.c_.empty()) return b;
    CycloElem r = a.zero_like();
    add_mul(r, a, b);
    return r;
  }
  friend CycloElem operator*(const CycloElem& a, const Rational& s) {
    CycloElem r = a;
    for (auto& v : r.c_) v *= s;
    return r;
  }
  friend CycloElem operator*(const Rational& s, const CycloElem& a) { return a * s; }
  CycloElem& operator+=(const CycloElem& b) { return *this = *this + b; }
  CycloElem& operator-=(const CycloElem& b) { return *this = *this - b; }

  /// acc += a * b, reduced.
  friend void add_mul(CycloElem& acc, const CycloElem& a, const CycloElem& b) {
    check_same(a, b);
    if (acc.c_.empty()) acc = a.zero_like();
    const auto p = static_cast<std::size_t>(a.p_);
    mpq_class t;
    for (std::size_t i = 0; i < p; ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (std::size_t j = 0; j < p; ++j) {
        if (sgn(b.c_[j]) == 0) continue;
        mpq_mul(t.get_mpq_t(), a.c_[i].get_mpq_t(), b.c_[j].get_mpq_t());
        std::size_t k = i + j >= p ? i + j - p : i + j;
        mpq_add(acc.c_[k].get_mpq_t(), acc.c_[k].get_mpq_t(), t.get_mpq_t());
      }
    }
    acc.reduce();
  }

  friend bool operator==(const CycloElem& a, const CycloElem& b) {
    if (a.c_.empty() || b.c_.empty()) return a.is_zero() && b.is_zero();
    return a.p_ == b.p_ && a.c_ == b.c_;
  }
  friend bool operator!=(const CycloElem& a, const CycloElem& b) { return !(a == b); }

  /// Value under zeta -> exp(2 pi i / p).
  Complex embed(Prec prec) const {
    Complex acc(prec);
    for (std::size_t j = 0; j + 1 < c_.size(); ++j) {
      if (sgn(c_[j]) == 0) continue;
      Complex z = exp_2pi_i(Real(make_rational(static_cast<long>(j), p_), prec));
      acc += z * Real(c_[j], prec);
    }
    return acc;
  }

 private:
  static void check_prime(long p) {
    if (!is_prime(p)) throw UnsupportedError("cyclotomic fields are limited to prime conductor");
  }
  static void check_same(const CycloElem& a, const CycloElem& b) {
    if (a.p_ != b.p_) throw DomainMismatch("cyclotomic elements of different conductors");
  }
  void reduce() {
    const Rational top = c_.back();
    if (sgn(top) == 0) return;
    for (auto& v : c_) v -= top;
  }

  long p_ = 0;
  std::vector<Rational> c_;  // p entries, last one always zero once reduced
};

inline bool is_zero(const CycloElem& a) { return a.is_zero(); }

}  // namespace mtv
