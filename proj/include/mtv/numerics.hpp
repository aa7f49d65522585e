#pragma once

// Evaluation of q-expansions on the upper half-plane, the lattice-sum
// Eisenstein oracle, and rational reconstruction.  Error magnitudes are
// heuristic; every load-bearing identity elsewhere is exact.

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "mtv/number_field.hpp"
#include "mtv/qseries.hpp"
#include "mtv/real.hpp"

namespace mtv {

/// Working precision: MTV_PREC_BITS if set, else the default.
inline Prec working_precision() {
  if (const char* env = std::getenv("MTV_PREC_BITS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 64 || v > 1 << 20)
      throw InputError("MTV_PREC_BITS must be an integer between 64 and 1048576");
    return static_cast<Prec>(v);
  }
  return kDefaultPrecBits;
}

namespace detail {

/// Heuristic bound for sum_{m > L} |c_m| r^m from the observed coefficient
/// growth |c_m| <= M m^alpha.  `logc[m]` is log2 |c_m| (very negative for 0).
inline double qseries_tail(const std::vector<double>& logc, double log2r) {
  const std::size_t len = logc.size();
  if (len == 0) return 0.0;
  const auto L = static_cast<double>(len - 1);
  auto range_max = [&](std::size_t lo, std::size_t hi) {
    double m = -1e300;
    for (std::size_t i = std::max<std::size_t>(lo, 1); i <= hi && i < len; ++i) m = std::max(m, logc[i]);
    return m;
  };
  double alpha = 0.0;
  if (len > 8) {
    double a = range_max(len / 4, len / 2), b = range_max(len / 2, len - 1);
    if (a > -1e299 && b > -1e299) alpha = std::max(0.0, b - a);
  }
  alpha += 1.0;
  double logM = -1e300;
  for (std::size_t i = 1; i < len; ++i)
    if (logc[i] > -1e299) logM = std::max(logM, logc[i] - alpha * std::log2(static_cast<double>(i)));
  if (len == 1) logM = logc[0];
  if (logM < -1e299) return 0.0;
  if (log2r >= 0) return 1e300;
  double total = 0.0, first = 0.0;
  for (double m = L + 1; m < L + 1e6; m += 1) {
    double t = std::exp2(logM + alpha * std::log2(m) + m * log2r);
    if (m == L + 1) first = t;
    total += t;
    if (t < 1e-30 * first || t < 1e-320) break;
  }
  return total;
}

}  // namespace detail

/// sum_m c_m exp(2 pi i (m/e) tau) for complex coefficients.
inline BigComplex eval_coefficients(const std::vector<Complex>& c, int qdenom, const Complex& tau, Prec prec) {
  if (tau.im.sign() <= 0) throw InputError("evaluation point must lie in the upper half-plane");
  Complex arg = tau * (Real::pi(prec) * 2L / static_cast<long>(qdenom));
  Complex qe = exp(Complex(-arg.im, arg.re));  // exp(i * arg)
  Complex acc(prec);
  for (std::size_t m = c.size(); m-- > 0;) acc = acc * qe + c[m];
  std::vector<double> logc;
  logc.reserve(c.size());
  for (const auto& v : c) logc.push_back(abs(v).log2_abs());
  const double tail = detail::qseries_tail(logc, abs(qe).log2_abs());
  const double scale = std::max(1.0, abs(acc).to_double());
  if (tail > 1e-3 * scale)
    throw ConvergenceError("Im(tau) too small for truncation order " +
                           std::to_string((c.size() - 1) / static_cast<std::size_t>(qdenom)) +
                           "; increase the truncation order");
  BigComplex out{acc, tail + scale * std::ldexp(1.0, -static_cast<int>(prec) + 8)};
  return out;
}

inline BigComplex eval_qseries(const RSeries& f, const Complex& tau, Prec prec) {
  std::vector<Complex> c;
  c.reserve(f.size());
  for (const auto& v : f.coeffs()) c.emplace_back(v, prec);
  return eval_coefficients(c, f.qdenom(), tau, prec);
}

/// Evaluates a number-field series under the embedding generator -> root.
inline BigComplex eval_qseries(const QSeries<NumberFieldElem>& f, const Complex& root, const Complex& tau,
                               Prec prec) {
  std::vector<Complex> c;
  c.reserve(f.size());
  for (const auto& v : f.coeffs()) c.push_back(v.embed(root));
  return eval_coefficients(c, f.qdenom(), tau, prec);
}

/// Series whose coefficients are m/e times those of f (q d/dq).
inline RSeries q_derivative(const RSeries& f) {
  std::vector<Rational> c;
  for (std::size_t m = 0; m < f.size(); ++m) c.push_back(f[m] * make_rational(static_cast<long>(m), f.qdenom()));
  return RSeries(std::move(c), f.trunc(), f.qdenom(), f.meta());
}

/// Plain truncated lattice sum
///   1 + sum_{0 < c <= B N, N | c} sum_{|d| <= B, gcd(c,d) = 1} chi(d) (c tau + d)^{-lambda},
/// with chi the Kronecker symbol of `disc` (disc = 1 for the trivial character).
/// The attached error is the O(B^{2-lambda}) truncation model.
inline BigComplex lattice_sum_eisenstein(long lambda, long level, const Complex& tau, long bound, Prec prec,
                                         long disc = 1) {
  if (lambda < 3) throw InputError("lattice sum needs lambda >= 3");
  if (level < 1 || bound < 1) throw InputError("lattice sum needs level >= 1 and bound >= 1");
  if (tau.im.sign() <= 0) throw InputError("evaluation point must lie in the upper half-plane");
  const long period = disc == 1 ? 1 : std::labs(disc);
  std::vector<int> chi(static_cast<std::size_t>(period));
  for (long r = 0; r < period; ++r) chi[static_cast<std::size_t>(r)] = disc == 1 ? 1 : kronecker(disc, r);

  mpfr_t sr, si, a, b, x, y, den, pr, pi, qr, qi, t1, t2;
  for (mpfr_ptr v : {sr, si, a, b, x, y, den, pr, pi, qr, qi, t1, t2}) mpfr_init2(v, prec);
  mpfr_set_ui(sr, 0, MPFR_RNDN);
  mpfr_set_ui(si, 0, MPFR_RNDN);
  for (long cp = 1; cp <= bound; ++cp) {
    const long c = cp * level;
    mpfr_mul_si(a, tau.re.raw(), c, MPFR_RNDN);
    mpfr_mul_si(b, tau.im.raw(), c, MPFR_RNDN);
    for (long d = -bound; d <= bound; ++d) {
      if (std::gcd(c, d) != 1) continue;
      const int s = chi[static_cast<std::size_t>(((d % period) + period) % period)];
      if (s == 0) continue;
      // 1/(x + iy) = (x - iy)/(x^2 + y^2)
      mpfr_add_si(x, a, d, MPFR_RNDN);
      mpfr_sqr(t1, x, MPFR_RNDN);
      mpfr_sqr(t2, b, MPFR_RNDN);
      mpfr_add(den, t1, t2, MPFR_RNDN);
      mpfr_div(qr, x, den, MPFR_RNDN);
      mpfr_div(qi, b, den, MPFR_RNDN);
      mpfr_neg(qi, qi, MPFR_RNDN);
      // (qr + i qi)^lambda by squaring.
      mpfr_set_ui(pr, 1, MPFR_RNDN);
      mpfr_set_ui(pi, 0, MPFR_RNDN);
      for (long e = lambda;;) {
        if (e & 1) {
          mpfr_mul(t1, pr, qr, MPFR_RNDN);
          mpfr_mul(t2, pi, qi, MPFR_RNDN);
          mpfr_sub(x, t1, t2, MPFR_RNDN);
          mpfr_mul(t1, pr, qi, MPFR_RNDN);
          mpfr_mul(t2, pi, qr, MPFR_RNDN);
          mpfr_add(pi, t1, t2, MPFR_RNDN);
          mpfr_swap(pr, x);
        }
        e >>= 1;
        if (e == 0) break;
        mpfr_sqr(t1, qr, MPFR_RNDN);
        mpfr_sqr(t2, qi, MPFR_RNDN);
        mpfr_mul(y, qr, qi, MPFR_RNDN);
        mpfr_sub(qr, t1, t2, MPFR_RNDN);
        mpfr_mul_2ui(qi, y, 1, MPFR_RNDN);
      }
      if (s > 0) {
        mpfr_add(sr, sr, pr, MPFR_RNDN);
        mpfr_add(si, si, pi, MPFR_RNDN);
      } else {
        mpfr_sub(sr, sr, pr, MPFR_RNDN);
        mpfr_sub(si, si, pi, MPFR_RNDN);
      }
    }
  }
  Complex out(prec);
  mpfr_set(out.re.raw(), sr, MPFR_RNDN);
  mpfr_set(out.im.raw(), si, MPFR_RNDN);
  for (mpfr_ptr v : {sr, si, a, b, x, y, den, pr, pi, qr, qi, t1, t2}) mpfr_clear(v);
  out.re += Real(1L, prec);
  return BigComplex{out, std::pow(static_cast<double>(bound), 2.0 - static_cast<double>(lambda))};
}

namespace detail {

/// Euler-Maclaurin coefficients B_{2j}/(2j)! (lambda)_{2j-1} for j = 1..J.
inline std::vector<Real> euler_maclaurin_coefficients(long lambda, long J, Prec prec) {
  std::vector<Real> out;
  Rational rising(lambda);
  for (long j = 1; j <= J; ++j) {
    out.emplace_back(bernoulli(static_cast<unsigned>(2 * j)) / Rational(factorial(static_cast<unsigned long>(2 * j))) * rising,
                     prec);
    rising *= Rational((lambda + 2 * j - 1) * (lambda + 2 * j));
  }
  return out;
}

/// sum_{k in Z} (z + k)^{-lambda} for Im z != 0: a direct window |k| <= D plus
/// Euler-Maclaurin tails on both sides.  Returns the value and an error bound.
inline BigComplex full_row_sum(Complex z, long lambda, const std::vector<Real>& em, Prec prec) {
  const long D = 40;
  // Periodic in z; reduce the real part to [-1/2, 1/2].
  z.re -= round(z.re);
  Complex acc(prec);
  for (long k = -D; k <= D; ++k) acc += pow(z + Complex(Rational(k), prec), -lambda);
  double err = 0.0;
  auto tail = [&](const Complex& w) {
    // sum_{k > D} (w + k)^{-lambda}
    Complex inv = Complex(Rational(1), prec) / (w + Complex(Rational(D), prec));
    Complex p = pow(inv, lambda - 1);
    Complex s = p / Real(lambda - 1, prec);
    p = p * inv;
    s -= p / Real(2L, prec);
    p = p * inv;
    Complex inv2 = inv * inv;
    Complex term(prec);
    for (const auto& c : em) {
      term = p * c;
      s += term;
      p = p * inv2;
    }
    err = std::max(err, abs(term).to_double());
    return s;
  };
  acc += tail(z);
  Complex minus = tail(-z);
  acc += (lambda % 2 == 0) ? minus : -minus;
  return BigComplex{acc, err + abs(acc).to_double() * std::ldexp(1.0, -static_cast<int>(prec) + 12)};
}

/// H(w) = sum_{c >= 1} sum_{d in Z} (c w + d)^{-lambda}.
inline BigComplex nonprimitive_lattice_sum(const Complex& w, long lambda, Prec prec) {
  const double y = w.im.to_double();
  const double need = (static_cast<double>(prec) + 16) * std::log(2.0) + static_cast<double>(lambda) * std::log(2 * M_PI);
  const long cmax = static_cast<long>(std::ceil(need / (2 * M_PI * y))) + 1;
  const std::vector<Real> em = euler_maclaurin_coefficients(lambda, 14, prec);
  Complex acc(prec);
  double err = 0.0;
  for (long c = 1; c <= cmax; ++c) {
    BigComplex r = full_row_sum(w * Real(c, prec), lambda, em, prec);
    acc += r.value;
    err += r.err;
  }
  // First omitted row, from its Fourier decay.
  err += std::exp(static_cast<double>(lambda) * std::log(2 * M_PI) - 2 * M_PI * y * static_cast<double>(cmax + 1));
  return BigComplex{acc, err};
}

}  // namespace detail

/// The same lattice sum as lattice_sum_eisenstein with B -> infinity, for the
/// trivial character, even lambda and N = 1 or prime.  The coprimality
/// condition is removed by Moebius inversion,
///   E_{lambda,N}(tau) = 1 + [H(N tau) - N^{-lambda} H(tau)] / (zeta(lambda)(1 - N^{-lambda})),
/// and each full row sum over d is completed with Euler-Maclaurin tails.
inline BigComplex lattice_sum_eisenstein_completed(long lambda, long level, const Complex& tau, Prec prec) {
  if (lambda < 4 || lambda % 2 != 0) throw InputError("completed lattice sum needs even lambda >= 4");
  if (level != 1 && !is_prime(level)) throw UnsupportedError("completed lattice sum needs N = 1 or N prime");
  if (tau.im.sign() <= 0) throw InputError("evaluation point must lie in the upper half-plane");
  // zeta(lambda) = (-1)^{lambda/2 + 1} B_lambda (2 pi)^lambda / (2 lambda!)
  Rational zc = bernoulli(static_cast<unsigned>(lambda)) / Rational(2 * factorial(static_cast<unsigned long>(lambda)));
  if ((lambda / 2) % 2 == 0) zc = -zc;
  Real zeta = Real(zc, prec) * pow(Real::pi(prec) * 2L, lambda);
  if (level == 1) {
    BigComplex h = detail::nonprimitive_lattice_sum(tau, lambda, prec);
    return BigComplex{Complex(Rational(1), prec) + h.value / zeta, h.err / zeta.to_double()};
  }
  BigComplex h1 = detail::nonprimitive_lattice_sum(tau, lambda, prec);
  BigComplex hn = detail::nonprimitive_lattice_sum(tau * Real(level, prec), lambda, prec);
  Rational nl = 1 / Rational(ipow(level, static_cast<unsigned long>(lambda)));
  Real denom = zeta * Real(1 - nl, prec);
  Complex v = (hn.value - h1.value * Real(nl, prec)) / denom;
  return BigComplex{Complex(Rational(1), prec) + v, (hn.err + h1.err) / denom.to_double()};
}

/// Best rational p/q with q <= max_den and |x - p/q| <= tol, from the
/// continued-fraction convergents of x.  Throws PrecisionError when tol is
/// too coarse for the answer to be unique (tol >= 1/(2 max_den^2)).
inline std::optional<Rational> rational_reconstruct(const Real& x, const Integer& max_den, double tol) {
  {
    Real lim = Real(1L, x.prec()) / (Real(max_den, x.prec()) * Real(max_den, x.prec()) * 2L);
    if (!(Real(tol, x.prec()) < lim))
      throw PrecisionError("tolerance too coarse for unique reconstruction with denominator bound " + max_den.get_str());
  }
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Real r = x;
  for (int iter = 0; iter < 100000; ++iter) {
    Real fl = floor(r);
    Integer a = fl.to_integer();
    Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    Rational cand(p2, q2);
    cand.canonicalize();
    if (abs(x - Real(cand, x.prec())).to_double() <= tol) return cand;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Real frac = r - fl;
    if (frac.is_zero()) break;
    r = Real(1L, x.prec()) / frac;
  }
  return std::nullopt;
}

/// Complex variant: the imaginary part must vanish to within tol.
inline std::optional<Rational> rational_reconstruct(const BigComplex& z, const Integer& max_den) {
  const double tol = std::max(z.err, 0.0) * 4 + 1e-300;
  if (abs(z.value.im).to_double() > tol) return std::nullopt;
  return rational_reconstruct(z.value.re, max_den, tol);
}

}  // namespace mtv
