#pragma once

// Rational Weierstrass curves Y^2 = 4X^3 - g2 X - g3, their lattice point
// tau, exact specialization of level-one forms, and the corollary verifier.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mtv/factor.hpp"
#include "mtv/numerics.hpp"
#include "mtv/spaces.hpp"
#include "mtv/trace.hpp"

namespace mtv {

struct CurveQ {
  Rational g2, g3;
  Rational disc;  ///< g2^3 - 27 g3^2
  Rational j;

  std::string to_string() const { return mtv::to_string(g2) + "," + mtv::to_string(g3); }
};

inline Rational j_invariant(const Rational& g2, const Rational& g3) {
  Rational d = g2 * g2 * g2 - 27 * g3 * g3;
  if (sgn(d) == 0) throw InputError("discriminant zero");
  return Rational(1728 * g2 * g2 * g2 / d);
}

inline CurveQ make_curve(const Rational& g2, const Rational& g3) {
  CurveQ e;
  e.g2 = g2;
  e.g3 = g3;
  e.disc = g2 * g2 * g2 - 27 * g3 * g3;
  if (sgn(e.disc) == 0) throw InputError("discriminant zero");
  e.j = j_invariant(g2, g3);
  return e;
}

inline Rational j_invariant(const CurveQ& e) { return e.j; }

/// "g2,g3" as rational strings.
inline CurveQ parse_curve(const std::string& text) {
  auto pos = text.find(',');
  if (pos == std::string::npos || text.find(',', pos + 1) != std::string::npos)
    throw InputError("curve must be given as g2,g3");
  return make_curve(parse_rational(text.substr(0, pos)), parse_rational(text.substr(pos + 1)));
}

/// General Weierstrass model to (g2, g3) via the b-invariants:
/// 12 g2 = b2^2 - 24 b4, 216 g3 = -b2^3 + 36 b2 b4 - 216 b6.
inline CurveQ canonicalize_weierstrass(const Rational& a1, const Rational& a2, const Rational& a3, const Rational& a4,
                                       const Rational& a6) {
  Rational b2 = a1 * a1 + 4 * a2;
  Rational b4 = a1 * a3 + 2 * a4;
  Rational b6 = a3 * a3 + 4 * a6;
  Rational c4 = b2 * b2 - 24 * b4;
  Rational c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
  return make_curve(Rational(c4 / 12), Rational(c6 / 216));
}

inline CurveQ parse_weierstrass(const std::string& text) {
  std::vector<Rational> a;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) a.push_back(parse_rational(item));
  if (a.size() != 5) throw InputError("weierstrass model needs a1,a2,a3,a4,a6");
  return canonicalize_weierstrass(a[0], a[1], a[2], a[3], a[4]);
}

// ---------------------------------------------------------------- numerics

struct CurvePair {
  CurveQ curve;
  long level = 1;
  long M = 1;
  Complex tau;
  Complex u2;      ///< (2 pi / omega_2)^2
  Complex omega2;
  double j_residual = 0.0;  ///< |J(tau) - j| / max(1, |j|)
  int iterations = 0;
};

namespace detail {

/// Order sufficient for level-one series at Im(tau) >= sqrt(3)/2.
inline long fd_order(Prec prec) { return static_cast<long>(static_cast<double>(prec) * 0.14) + 40; }

inline Complex reduce_sl2(Complex t) {
  const Prec prec = t.prec();
  for (int it = 0; it < 1000; ++it) {
    t.re = t.re - floor(t.re + Real(make_rational(1, 2), prec));
    if (t.norm2() < Real(1L, prec) - Real(std::ldexp(1.0, -static_cast<int>(prec) + 16), prec))
      t = Complex(Rational(-1), prec) / t;
    else
      break;
  }
  return t;
}

struct JSeries {
  RSeries e4, e6, dl;
  explicit JSeries(long T) : e4(eisenstein_E4(T)), e6(eisenstein_E6(T)), dl(delta_tilde(T)) {}
  Complex J(const Complex& tau, Prec prec) const {
    Complex a = eval_qseries(e4, tau, prec).value;
    return a * a * a / eval_qseries(dl, tau, prec).value;
  }
};

}  // namespace detail

/// tau in the standard fundamental domain with J(tau) = j, and the lattice
/// scale u^2 = (2 pi / omega_2)^2 matching (g2, g3).
inline CurvePair tau_from_curve(const CurveQ& e, Prec prec, long level = 1) {
  CurvePair out;
  out.curve = e;
  out.level = level;
  const long T = detail::fd_order(prec);
  detail::JSeries js(T);
  const Real jr(e.j, prec);
  const double jabs = std::max(1.0, std::fabs(e.j.get_d()));
  Complex tau(prec);
  std::string trace;
  if (e.j == 1728) {
    tau = Complex::i(prec);
  } else if (sgn(e.j) == 0) {
    tau = Complex(Real(make_rational(-1, 2), prec), sqrt(Real(3L, prec)) / 2L);
  } else {
    // F = E4^3 - j Delta~, exact; Newton on tau with d/dtau = 2 pi i q d/dq.
    RSeries F = js.e4 * js.e4 * js.e4 - js.dl * e.j;
    RSeries dF = q_derivative(F);
    const Complex two_pi_i(Real(prec), Real::pi(prec) * 2L);
    auto resid = [&](const Complex& t) {
      Complex d = eval_qseries(js.dl, t, prec).value;
      return abs(eval_qseries(F, t, prec).value / d).to_double() / jabs;
    };
    // Seeds: a grid over the fundamental domain plus the q ~ 1/(j - 744) guess.
    const Prec lo = 64;
    double best = std::numeric_limits<double>::infinity();
    std::vector<Complex> seeds;
    for (int xi = -5; xi <= 5; ++xi)
      for (double y : {0.87, 0.95, 1.05, 1.2, 1.4, 1.7, 2.0, 2.5, 3.0})
        seeds.emplace_back(Real(xi / 10.0, prec), Real(y, prec));
    if (std::fabs(e.j.get_d()) > 2000) {
      Complex q0 = Complex(Rational(1), prec) / Complex(Real(e.j.get_d() - 744.0, prec), Real(prec));
      Complex t0 = log(q0) / two_pi_i;
      if (t0.im.to_double() > 0.8) seeds.push_back(detail::reduce_sl2(t0));
    }
    for (const auto& s : seeds) {
      Complex sl(Real(s.re.to_double(), lo), Real(s.im.to_double(), lo));
      double r = abs(js.J(sl, lo) - Complex(Rational(e.j), lo)).to_double() / jabs;
      if (r < best) {
        best = r;
        tau = s;
      }
    }
    trace = "seed " + std::to_string(tau.re.to_double()) + "+" + std::to_string(tau.im.to_double()) + "i";
    const double target = std::ldexp(1.0, -static_cast<int>(prec) + 24);
    double r = resid(tau);
    int it = 0;
    for (; it < 400 && r > target; ++it) {
      Complex f = eval_qseries(F, tau, prec).value;
      Complex df = eval_qseries(dF, tau, prec).value * two_pi_i;
      Complex step = f / df;
      Complex cand(prec);
      double rc = r;
      bool moved = false;
      for (int h = 0; h < 30; ++h) {
        cand = detail::reduce_sl2(tau - step);
        rc = resid(cand);
        if (rc < r) {
          moved = true;
          break;
        }
        step = step / Real(2L, prec);
      }
      if (!moved) break;
      tau = cand;
      r = rc;
    }
    out.iterations = it;
    if (r > std::ldexp(1.0, -static_cast<int>(prec) / 2))
      throw ConvergenceError("J-inversion did not converge (" + trace + ", residual " + std::to_string(r) + ")");
  }
  tau = detail::reduce_sl2(tau);
  out.tau = tau;
  out.j_residual = abs(js.J(tau, prec) - Complex(Rational(e.j), prec)).to_double() / jabs;
  Complex E4 = eval_qseries(js.e4, tau, prec).value;
  Complex E6 = eval_qseries(js.e6, tau, prec).value;
  if (sgn(e.g3) == 0) {
    out.u2 = sqrt(Complex(Rational(12 * e.g2), prec) / E4);
  } else if (sgn(e.g2) == 0) {
    out.u2 = principal_root(Complex(Rational(216 * e.g3), prec) / E6, 3);
  } else {
    out.u2 = Complex(Rational(Rational(18 * e.g3) / e.g2), prec) * E4 / E6;
  }
  out.omega2 = Complex(Real::pi(prec) * 2L, Real(prec)) / sqrt(out.u2);
  return out;
}

/// (2 pi / omega_2)^l f(tau) with an error estimate.
inline BigComplex numeric_specialization(const RSeries& f, const CurvePair& p, Prec prec) {
  if (f.weight() % 2 != 0) throw InputError("odd weight");
  BigComplex v = eval_qseries(f, p.tau, prec);
  Complex s = pow(p.u2, f.weight() / 2);
  Complex val = s * v.value;
  double mag = abs(val).to_double();
  double err = abs(s).to_double() * v.err + mag * (std::ldexp(1.0, -static_cast<int>(prec) + 16) +
                                                   p.j_residual * static_cast<double>(std::max(1, f.weight())));
  return BigComplex{val, err};
}

inline BigComplex numeric_specialization(const QSeries<NumberFieldElem>& f, const Complex& root, const CurvePair& p,
                                         Prec prec) {
  BigComplex v = eval_qseries(f, root, p.tau, prec);
  Complex s = pow(p.u2, f.weight() / 2);
  Complex val = s * v.value;
  double mag = abs(val).to_double();
  double err = abs(s).to_double() * v.err + mag * (std::ldexp(1.0, -static_cast<int>(prec) + 16) +
                                                   p.j_residual * static_cast<double>(std::max(1, f.weight())));
  return BigComplex{val, err};
}

// ---------------------------------------------------------------- exact side

/// f(E) = sum_j x_j (12 g2)^a (216 g3)^{b + 2(d - j)} Delta_E^{j-1}, where
/// f = sum_j x_j h_j in the basis E4^a E6^{b+2(d-j)} Delta~^{j-1}.
template <class C>
C specialize_level1_exact(const QSeries<C>& f, const CurveQ& e) {
  if (f.level() != 1) throw DomainMismatch("specialization needs a level-one form");
  if (!f.has_integral_exponents()) throw DomainMismatch("specialization needs integral exponents");
  const long l = f.weight();
  if (l < 0 || l % 2 != 0 || l == 2) {
    if (f.is_zero()) return zero_like(f[0]);
    throw DomainMismatch("no level-one forms of weight " + std::to_string(l));
  }
  const long d = dim_spaces_level1(l).first;
  if (f.trunc() < d - 1) throw TruncationError("specialization needs order " + std::to_string(d - 1), d - 1);
  const MillerBasis mb = miller_basis(l, f.trunc());
  std::vector<C> x;
  for (long i = 1; i <= d; ++i) {
    C v = f.coeff(i - 1);
    for (long j = 1; j < i; ++j) v = v - x[static_cast<std::size_t>(j - 1)] * mb.forms[static_cast<std::size_t>(j - 1)].coeff(i - 1);
    x.push_back(v);
  }
  for (long m = d; m <= f.trunc(); ++m) {
    C v = f.coeff(m);
    for (long j = 1; j <= d; ++j) v = v - x[static_cast<std::size_t>(j - 1)] * mb.forms[static_cast<std::size_t>(j - 1)].coeff(m);
    if (!is_zero(v)) throw InvariantViolation("series is not a level-one modular form (coefficient " + std::to_string(m) + ")");
  }
  const Rational A = 12 * e.g2, B = 216 * e.g3;
  C acc = zero_like(f[0]);
  for (long j = 1; j <= d; ++j) {
    Rational r = pow(A, mb.a) * pow(B, mb.b + 2 * (d - j)) * pow(e.disc, j - 1);
    acc = acc + x[static_cast<std::size_t>(j - 1)] * r;
  }
  return acc;
}

/// X^n - s_1(E) X^{n-1} + ... + (-1)^n s_n(E).
inline UniPoly specialize_phi(const TransformationPolynomial& phi, const CurveQ& e) {
  const long n = phi.degree;
  std::vector<Rational> c(static_cast<std::size_t>(n + 1), Rational(0));
  for (long i = 0; i <= n; ++i) {
    Rational v = specialize_level1_exact(phi.s[static_cast<std::size_t>(i)], e);
    c[static_cast<std::size_t>(n - i)] = (i % 2 == 0) ? v : Rational(-v);
  }
  return UniPoly(std::move(c));
}

struct ConditionA {
  bool irreducible = false;
  Factorization factorization;
  std::string certificate;
};

inline ConditionA condition_A(const UniPoly& p) {
  ConditionA out;
  out.factorization = poly_factor_q(p);
  out.irreducible = out.factorization.irreducible();
  std::string s;
  for (const auto& [f, m] : out.factorization.factors) {
    if (!s.empty()) s += " * ";
    s += "(" + f.to_string() + ")";
    if (m > 1) s += "^" + std::to_string(m);
  }
  out.certificate = out.irreducible ? "irreducible: " + s : "factors: " + s;
  return out;
}

struct QNData {
  long level = 1;
  Rational j;
  BigComplex j_level;             ///< J(N tau), numeric
  std::optional<long> degree;     ///< [Q_N : Q] when condition (A) holds
};

inline QNData field_QN_data(const CurvePair& p, std::optional<long> degree_if_A, Prec prec) {
  QNData out;
  out.level = p.level;
  out.j = p.curve.j;
  if (p.level == 1) {
    out.j_level = BigComplex{Complex(Rational(p.curve.j), prec), 0.0};
    out.degree = 1;
    return out;
  }
  const long T = detail::fd_order(prec);
  detail::JSeries js(T);
  Complex t = p.tau * Real(p.level, prec);
  BigComplex a = eval_qseries(js.e4, t, prec), d = eval_qseries(js.dl, t, prec);
  Complex v = a.value * a.value * a.value / d.value;
  out.j_level = BigComplex{v, abs(v).to_double() * (3 * a.err / abs(a.value).to_double() + d.err / abs(d.value).to_double() +
                                                    std::ldexp(1.0, -static_cast<int>(prec) + 16))};
  out.degree = degree_if_A;
  return out;
}

struct SpecReport {
  CurveQ curve;
  UniPoly phi;            ///< specialized transformation polynomial
  ConditionA condition_a;
  Rational lhs, rhs;
  std::vector<Rational> orbit_terms;
  bool equal = false;
  bool maeda = false;
  bool condition_b = true;   ///< K_M = Q, so the intersection condition is automatic
  bool g2g3_nonzero = false;
  bool field_trace_interpretation = false;
  std::optional<CurvePair> pair;
  std::optional<QNData> qn;
  std::vector<Check> checks;

  bool passed() const {
    if (!equal) return false;
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
};

namespace detail {

inline bool close(const Complex& a, const Complex& b, double tol) {
  double scale = std::max(1.0, std::max(abs(a).to_double(), abs(b).to_double()));
  return abs(a - b).to_double() <= tol * scale;
}

}  // namespace detail

/// Exact specialized identity; numeric cross-checks run when prec > 0.
inline SpecReport verify_corollary(const TraceInput& in, const TheoremReport& rep, const GaloisOrbitSet& orbits,
                                   const CurveQ& e, Prec prec) {
  SpecReport out;
  out.curve = e;
  out.maeda = orbits.maeda();
  out.g2g3_nonzero = sgn(e.g2) != 0 && sgn(e.g3) != 0;
  out.phi = specialize_phi(rep.phi, e);
  out.condition_a = condition_A(out.phi);
  out.field_trace_interpretation = out.condition_a.irreducible;
  out.lhs = specialize_level1_exact(rep.power_sum, e);
  out.rhs = 0;
  if (rep.xi.size() != orbits.orbits.size()) throw InvariantViolation("xi count does not match the orbit count");
  for (std::size_t i = 0; i < orbits.orbits.size(); ++i) {
    NumberFieldElem fe = specialize_level1_exact(orbits.orbits[i].rep.coeffs, e);
    Rational t = nf_trace(rep.xi[i] * fe);
    out.orbit_terms.push_back(t);
    out.rhs += t;
  }
  out.rhs *= rep.cM;
  out.equal = out.lhs == out.rhs;
  out.checks.push_back(Check{"specialized identity: LHS equals c_M times the orbit traces", out.equal, ""});
  if (specialize_level1_exact(rep.trace, e) != out.lhs)
    out.checks.push_back(Check{"specialized trace equals specialized power sum", false, ""});
  if (prec == 0) return out;

  CurvePair p = tau_from_curve(e, prec, in.level);
  out.pair = p;
  out.qn = field_QN_data(p, out.condition_a.irreducible ? std::optional<long>(rep.phi.degree) : std::nullopt, prec);
  // Specialized translates (2 pi/omega_2)^k (h|gamma)(tau).
  auto [h, hf] = eisenstein_product(in);
  const long Tn = std::min(rep.trunc, std::max(h.trunc(), 1L) / std::max(in.level, 1L));
  auto ts = coset_translates(h, hf, in.level, Tn);
  std::vector<Complex> vals;
  const Complex s = pow(p.u2, h.weight() / 2);
  bool evaluated = true;
  double rel_err = 0.0;
  try {
    for (const auto& t : ts) {
      std::vector<Complex> c;
      for (const auto& v : t.coeffs()) c.push_back(v.embed(prec));
      BigComplex v = eval_coefficients(c, t.qdenom(), p.tau, prec);
      vals.push_back(v.value * s);
      rel_err = std::max(rel_err, v.err / std::max(1e-300, abs(v.value).to_double()));
    }
  } catch (const ConvergenceError& err) {
    evaluated = false;
    out.checks.push_back(Check{"numeric translates", true, std::string("skipped: ") + err.what()});
  }
  if (evaluated) {
    const double tol =
        std::max({std::ldexp(1.0, -3 * static_cast<int>(prec) / 4), p.j_residual * 1e6, rel_err * 64});
    // prod (X - v_j) against the exact specialized polynomial.
    std::vector<Complex> poly{Complex(Rational(1), prec)};
    for (const auto& v : vals) {
      std::vector<Complex> next(poly.size() + 1, Complex(prec));
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i + 1] += poly[i];
        next[i] -= poly[i] * v;
      }
      poly = std::move(next);
    }
    bool coeffs_ok = static_cast<int>(poly.size()) - 1 == out.phi.degree();
    for (std::size_t i = 0; coeffs_ok && i < poly.size(); ++i)
      coeffs_ok = detail::close(poly[i], Complex(out.phi.coeff(i), prec), tol);
    out.checks.push_back(Check{"specialized polynomial matches the product over numeric translates", coeffs_ok, ""});
    BigComplex c0{poly[0], tol * std::max(1.0, abs(poly[0]).to_double()) / 8};
    // Largest denominator bound the error still separates.
    Real bound = sqrt(Real(1L, prec) / Real(16 * std::max(c0.err, 1e-300), prec));
    const Integer den = out.phi.coeff(0).get_den();
    if (Real(den, prec) > bound) {
      out.checks.push_back(Check{"norm form reconstructs from the numeric product", true,
                                 "skipped: denominator " + to_string(den) + " exceeds the reconstruction bound at " +
                                     std::to_string(prec) + " bits"});
    } else {
      std::optional<Rational> rc;
      try {
        rc = rational_reconstruct(c0, bound.to_integer());
      } catch (const PrecisionError&) {
      }
      out.checks.push_back(Check{"norm form reconstructs from the numeric product", rc && *rc == out.phi.coeff(0),
                                 rc ? to_string(*rc) : "no reconstruction"});
    }
    Complex ps(prec);
    for (const auto& v : vals) ps += pow(v, in.mu);
    out.checks.push_back(Check{"LHS equals the numeric coset sum of mu-th powers",
                               detail::close(ps, Complex(out.lhs, prec), tol), ""});
    Complex root(prec);
    Complex x = vals[0];
    for (std::size_t i = out.phi.coeffs().size(); i-- > 0;) root = root * x + Complex(out.phi.coeff(i), prec);
    double scale = 1.0;
    for (const auto& v : vals) scale *= std::max(1.0, abs(v).to_double());
    out.checks.push_back(Check{"identity translate is a numeric root of the specialized polynomial",
                               abs(root).to_double() <= tol * scale * 8, ""});
  }
  return out;
}

}  // namespace mtv
