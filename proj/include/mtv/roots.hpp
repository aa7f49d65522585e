#pragma once

#include <algorithm>
#include <vector>

#include "mtv/poly.hpp"
#include "mtv/real.hpp"

namespace mtv {

struct RootSet {
  std::vector<Complex> roots;
  double max_error = 0.0;       ///< largest final Aberth correction (absolute)
  double min_separation = 0.0;  ///< smallest pairwise distance
};

namespace detail {

inline Complex horner(const std::vector<Complex>& c, const Complex& z) {
  Complex acc = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * z + c[i];
  return acc;
}

/// Orders by real part, ties (within tol) broken by imaginary part.
inline void sort_roots(std::vector<Complex>& roots, const Real& tol) {
  std::sort(roots.begin(), roots.end(), [&](const Complex& a, const Complex& b) {
    Real d = a.re - b.re;
    if (abs(d) > tol) return a.re < b.re;
    return a.im < b.im;
  });
}

}  // namespace detail

/// All complex roots of p at `prec` bits via Aberth-Ehrlich iteration.
/// Throws PrecisionError if the iteration stalls or two roots cannot be
/// separated at this precision.
inline RootSet root_cluster(const UniPoly& p, Prec prec = kDefaultPrecBits) {
  if (p.is_zero()) throw InputError("root_cluster of the zero polynomial");
  const int n = p.degree();
  RootSet out;
  if (n == 0) return out;

  std::vector<Complex> c, dc;
  Real lc(p.leading(), prec);
  for (int i = 0; i <= n; ++i) c.emplace_back(Real(p.coeff(static_cast<std::size_t>(i)), prec) / lc, Real(prec));
  for (int i = 1; i <= n; ++i) dc.push_back(c[static_cast<std::size_t>(i)] * Real(static_cast<long>(i), prec));

  if (n == 1) {
    out.roots.push_back(-c[0]);
    out.min_separation = 1e300;
    return out;
  }

  // Fujiwara-style radius for the starting circle.
  double radius = 0.0;
  for (int i = 0; i < n; ++i) {
    double a = abs(c[static_cast<std::size_t>(i)]).to_double();
    if (a > 0) radius = std::max(radius, std::pow(a, 1.0 / (n - i)));
  }
  radius = 2.0 * std::max(radius, 1e-3);

  std::vector<Complex> z;
  for (int k = 0; k < n; ++k) {
    Real angle = Real::pi(prec) * Real(2L * k, prec) / Real(static_cast<long>(n), prec) + Real(0.4, prec);
    Real r(radius, prec);
    z.emplace_back(r * cos(angle), r * sin(angle));
  }

  const Real eps = pow(Real(2L, prec), -static_cast<long>(prec) + 24);
  bool converged = false;
  std::vector<Real> last_corr(static_cast<std::size_t>(n), Real(prec));
  for (int iter = 0; iter < 4000 && !converged; ++iter) {
    converged = true;
    for (int k = 0; k < n; ++k) {
      auto& zk = z[static_cast<std::size_t>(k)];
      Complex pv = detail::horner(c, zk);
      Complex dv = detail::horner(dc, zk);
      if (pv.re.is_zero() && pv.im.is_zero()) {
        last_corr[static_cast<std::size_t>(k)] = Real(prec);
        continue;
      }
      Complex w = pv / dv;
      Complex s(prec);
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        s += Complex(Rational(1), prec) / (zk - z[static_cast<std::size_t>(j)]);
      }
      Complex corr = w / (Complex(Rational(1), prec) - w * s);
      zk -= corr;
      Real m = abs(corr);
      last_corr[static_cast<std::size_t>(k)] = m;
      Real scale = std::max(Real(1L, prec), abs(zk));
      if (m > eps * scale) converged = false;
    }
  }
  if (!converged) throw PrecisionError("Aberth iteration did not converge at " + std::to_string(prec) + " bits");

  double max_err = 0.0;
  for (auto& m : last_corr) max_err = std::max(max_err, m.to_double());
  // A final correction is an overestimate of the remaining error; keep a
  // floor tied to the working precision.
  max_err = std::max(max_err, std::ldexp(1.0, -static_cast<int>(prec) + 32));

  double min_sep = 1e300;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      min_sep = std::min(min_sep, abs(z[static_cast<std::size_t>(a)] - z[static_cast<std::size_t>(b)]).to_double());
  if (!(min_sep > 1024.0 * max_err))
    throw PrecisionError("roots not separated at " + std::to_string(prec) + " bits");

  detail::sort_roots(z, Real(std::max(1e3 * max_err, 1e-60), prec));
  out.roots = std::move(z);
  out.max_error = max_err;
  out.min_separation = min_sep;
  return out;
}

/// True when every root is real to within the root error.
inline bool all_roots_real(const RootSet& rs) {
  for (const auto& r : rs.roots)
    if (std::fabs(r.im.to_double()) > 1e6 * rs.max_error + 1e-40) return false;
  return true;
}

}  // namespace mtv
