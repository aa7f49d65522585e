#pragma once

#include "mtv/qseries.hpp"
#include "mtv/roots.hpp"

namespace mtv {

/// U_t: coefficient n <- coefficient t n.  Truncation becomes floor(T / t).
template <class C>
QSeries<C> op_U(const QSeries<C>& f, long t) {
  if (t < 1) throw InputError("U_t needs t >= 1");
  if (f.qdenom() != 1) throw DomainMismatch("U_t needs integral exponents");
  const long nt = f.trunc() / t;
  std::vector<C> c;
  c.reserve(static_cast<std::size_t>(nt + 1));
  for (long n = 0; n <= nt; ++n) c.push_back(f.coeff(t * n));
  return QSeries<C>(std::move(c), nt, 1, f.meta());
}

/// V_t: coefficient t n <- coefficient n.  Level is multiplied by t.
template <class C>
QSeries<C> op_V(const QSeries<C>& f, long t) {
  if (t < 1) throw InputError("V_t needs t >= 1");
  if (f.qdenom() != 1) throw DomainMismatch("V_t needs integral exponents");
  const long nt = f.trunc() * t;
  std::vector<C> c(static_cast<std::size_t>(nt + 1), f.zero());
  for (long n = 0; n <= f.trunc(); ++n) c[static_cast<std::size_t>(t * n)] = f.coeff(n);
  FormMeta m = f.meta();
  m.level *= t;
  return QSeries<C>(std::move(c), nt, 1, m);
}

/// f |_k B_t = t^{k/2} V_t(f).  Only even weight keeps the scalar rational.
template <class C>
QSeries<C> slash_B(const QSeries<C>& f, long t) {
  if (f.weight() % 2 != 0) throw UnsupportedError("B_t scalar is irrational for odd weight");
  return op_V(f, t) * Rational(ipow(t, static_cast<unsigned long>(f.weight() / 2)));
}

/// T_n on level-one forms of weight k:
/// a_m(T_n f) = sum_{d | gcd(m, n)} d^{k-1} a_{m n / d^2}.
template <class C>
QSeries<C> hecke_T(const QSeries<C>& f, long n) {
  if (n < 1) throw InputError("T_n needs n >= 1");
  if (f.level() != 1) throw UnsupportedError("hecke_T is implemented for level one only");
  if (f.qdenom() != 1) throw DomainMismatch("hecke_T needs integral exponents");
  if (f.trunc() < n) throw TruncationError("T_" + std::to_string(n) + " needs truncation order at least " + std::to_string(n), n);
  const long k = f.weight();
  const long nt = f.trunc() / n;
  std::vector<C> c;
  c.reserve(static_cast<std::size_t>(nt + 1));
  for (long m = 0; m <= nt; ++m) {
    C acc = f.zero();
    if (m == 0) {
      // a_0(T_n f) = sigma_{k-1}(n) a_0.
      for (long d : divisors(n)) acc = acc + f.coeff(0) * Rational(ipow(d, static_cast<unsigned long>(k - 1)));
    } else {
      long g = gcd(m, n);
      for (long d : divisors(g)) acc = acc + f.coeff(m * n / (d * d)) * Rational(ipow(d, static_cast<unsigned long>(k - 1)));
    }
    c.push_back(acc);
  }
  return QSeries<C>(std::move(c), nt, 1, f.meta());
}

/// T_n f known to order `target`; throws naming the order f must have.
template <class C>
QSeries<C> hecke_T_to(const QSeries<C>& f, long n, long target) {
  if (f.trunc() < n * target)
    throw TruncationError("T_" + std::to_string(n) + " to order " + std::to_string(target) + " needs input order " +
                              std::to_string(n * target),
                          n * target);
  return hecke_T(f, n).truncated(target);
}

/// f^rho(z) = conj(f(-conj z)): conjugates coefficients.  Over Q and over
/// totally real fields this is the identity.
inline RSeries rho_conjugate(const RSeries& f) { return f; }

inline QSeries<NumberFieldElem> rho_conjugate(const QSeries<NumberFieldElem>& f) {
  const auto& field = f[0].field();
  if (field && field->degree() > 1 && !all_roots_real(root_cluster(field->modulus())))
    throw UnsupportedError("rho_conjugate over a field that is not totally real");
  return f;
}

}  // namespace mtv
