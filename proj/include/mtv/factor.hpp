#pragma once

// Factorization over Q for the small degrees that occur here (Hecke
// polynomials, specialized transformation polynomials).  Roots are
// clustered numerically, subsets are recombined into candidate integer
// factors, and every candidate is confirmed by exact division.  When no
// subset of the remaining roots yields a factor, the cofactor is certified
// irreducible.

#include <algorithm>
#include <cmath>
#include <vector>

#include "mtv/poly.hpp"
#include "mtv/roots.hpp"

namespace mtv {

struct Factorization {
  Rational unit;                                   ///< leading coefficient of the input
  std::vector<std::pair<UniPoly, int>> factors;    ///< monic irreducible factors, multiplicity
  Prec precision_used = 0;

  UniPoly expand() const {
    UniPoly r = UniPoly::constant(unit);
    for (const auto& [f, m] : factors)
      for (int i = 0; i < m; ++i) r = r * f;
    return r;
  }
  bool irreducible() const { return factors.size() == 1 && factors[0].second == 1; }
};

namespace detail {

inline UniPoly integer_poly(const std::vector<Integer>& c) {
  std::vector<Rational> q;
  for (const auto& v : c) q.emplace_back(v);
  return UniPoly(std::move(q));
}

/// Splits a square-free primitive integer polynomial into irreducible
/// monic factors over Q at the given precision.
inline std::vector<UniPoly> split_squarefree(const UniPoly& f, Prec prec) {
  std::vector<UniPoly> found;
  if (f.degree() <= 1) {
    found.push_back(f.monic());
    return found;
  }
  RootSet rs = root_cluster(f, prec);
  std::vector<Complex> remaining = rs.roots;
  auto [ints, unit] = primitive_integer_part(f);
  UniPoly cof = integer_poly(ints);
  const double tol_exp = -static_cast<double>(prec) / 4.0;

  std::size_t size = 1;
  while (2 * size <= remaining.size()) {
    bool progressed = false;
    const std::size_t n = remaining.size();
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      // lc * prod (x - r) over the subset, numerically.
      Real lc(Rational(cof.leading()), prec);
      std::vector<Complex> prod{Complex(Real(1L, prec), Real(prec))};
      for (auto k : idx) {
        std::vector<Complex> next(prod.size() + 1, Complex(prec));
        for (std::size_t i = 0; i < prod.size(); ++i) {
          next[i + 1] += prod[i];
          next[i] -= prod[i] * remaining[k];
        }
        prod = std::move(next);
      }
      bool near_integer = true;
      std::vector<Rational> cand;
      for (auto& v : prod) {
        Complex s = v * lc;
        Real rounded = round(s.re);
        double scale = std::max(1.0, std::fabs(s.re.to_double()));
        double dev = std::max(abs(s.re - rounded).log2_abs(), s.im.log2_abs());
        if (dev > tol_exp + std::log2(scale)) {
          near_integer = false;
          break;
        }
        cand.emplace_back(rounded.to_integer());
      }
      if (near_integer) {
        UniPoly g(cand);
        auto [gi, gu] = primitive_integer_part(g);
        UniPoly gp = integer_poly(gi);
        auto [q, r] = UniPoly::divmod(cof, gp);
        if (r.is_zero()) {
          found.push_back(gp.monic());
          cof = q;
          std::vector<Complex> rest;
          for (std::size_t i = 0; i < n; ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(remaining[i]);
          remaining = std::move(rest);
          progressed = true;
          break;
        }
      }
      // Next combination in lexicographic order.
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == n - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < size; ++i) idx[i] = idx[i - 1] + 1;
    }
    if (!progressed) ++size;
  }
  if (cof.degree() >= 1) found.push_back(cof.monic());
  return found;
}

inline Prec working_precision_for(const UniPoly& f) {
  // Mignotte-style: factor coefficients are bounded by 2^deg * |f|_2 * lc.
  auto [ints, unit] = primitive_integer_part(f);
  double log_norm = 0;
  for (const auto& v : ints) log_norm = std::max(log_norm, static_cast<double>(mpz_sizeinbase(v.get_mpz_t(), 2)));
  double bound_bits = f.degree() + log_norm + 0.5 * std::log2(static_cast<double>(ints.size())) +
                      static_cast<double>(mpz_sizeinbase(ints.back().get_mpz_t(), 2));
  return std::max<Prec>(kDefaultPrecBits, static_cast<Prec>(4 * bound_bits + 96));
}

}  // namespace detail

/// Factors a nonzero polynomial over Q.  Factors are monic, sorted by degree
/// and then lexicographically on constant-first coefficients.
inline Factorization poly_factor_q(const UniPoly& p) {
  if (p.is_zero()) throw InputError("poly_factor_q of the zero polynomial");
  Factorization out;
  out.unit = p.leading();
  Prec prec = 0;
  for (const auto& [sq, mult] : squarefree_decomposition(p)) {
    auto [ints, unit] = primitive_integer_part(sq);
    UniPoly prim = detail::integer_poly(ints);
    Prec wp = detail::working_precision_for(prim);
    std::vector<UniPoly> parts;
    for (;; wp *= 2) {
      try {
        parts = detail::split_squarefree(prim, wp);
        break;
      } catch (const PrecisionError&) {
        if (wp > 16384) throw;
      }
    }
    prec = std::max(prec, wp);
    for (auto& f : parts) out.factors.emplace_back(std::move(f), mult);
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    if (a.first != b.first) return lex_less(a.first, b.first);
    return a.second < b.second;
  });
  out.precision_used = prec;
  return out;
}

inline bool is_irreducible_q(const UniPoly& p) {
  if (p.degree() < 1) return false;
  return poly_factor_q(p).irreducible();
}

/// Rational roots of p by the rational-root theorem (exact, for degree
/// <= 3 certificates and cross-checks).  Only usable for small coefficients.
inline std::vector<Rational> rational_roots_exhaustive(const UniPoly& p) {
  std::vector<Rational> out;
  if (p.degree() < 1) return out;
  auto [ints, unit] = primitive_integer_part(p);
  // Strip x factors.
  std::size_t shift = 0;
  while (shift < ints.size() && ints[shift] == 0) ++shift;
  if (shift > 0) out.emplace_back(0);
  Integer a0 = abs(ints[shift]);
  Integer an = abs(ints.back());
  if (mpz_sizeinbase(a0.get_mpz_t(), 2) > 40 || mpz_sizeinbase(an.get_mpz_t(), 2) > 40)
    throw UnsupportedError("rational root enumeration limited to small coefficients");
  auto divs = [](const Integer& n) {
    std::vector<Integer> d;
    for (Integer k = 1; k * k <= n; ++k)
      if (n % k == 0) {
        d.push_back(k);
        if (k * k != n) d.push_back(n / k);
      }
    return d;
  };
  for (const auto& num : divs(a0))
    for (const auto& den : divs(an))
      for (int s : {1, -1}) {
        Rational r(num * s, den);
        r.canonicalize();
        if (sgn(p.eval(r)) == 0 && std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
      }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mtv
