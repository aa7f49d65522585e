#pragma once

// Trace from Gamma_0(N) to SL_2(Z) by two independent routes:
//   * Fricke/U:    Tr h = h + N^{1-w/2} U_N(h | omega_N)
//   * cyclotomic:  the coset translates h | S T^j = N^{-w/2} (h|omega_N)((z + j)/N)
//                  over Q(zeta_N), their elementary symmetric functions, and
//                  Newton's identities for Tr(h^mu).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mtv/cyclotomic.hpp"
#include "mtv/eisenstein.hpp"
#include "mtv/eta.hpp"
#include "mtv/hecke.hpp"
#include "mtv/numerics.hpp"
#include "mtv/spaces.hpp"

namespace mtv {

using Mat2 = std::array<long, 4>;  // {a, b, c, d}

struct CosetData {
  long index = 1;
  std::vector<Mat2> representatives;
};

/// Gamma_0(N) \ SL_2(Z) for N = 1 or prime: I and S T^j, 0 <= j < N.
inline CosetData coset_data(long level) {
  CosetData cd;
  cd.representatives.push_back({1, 0, 0, 1});
  if (level == 1) return cd;
  if (!is_prime(level)) throw UnsupportedError("coset data needs N prime");
  for (long j = 0; j < level; ++j) cd.representatives.push_back({0, -1, 1, j});
  cd.index = level + 1;
  return cd;
}

/// [SL_2(Z) : Gamma_0(M)] = M prod_{p | M} (1 + 1/p).
inline long gamma0_index(long m) {
  Rational r = m;
  for (long p : prime_divisors(m)) r *= Rational(p + 1, p);
  return r.get_num().get_si();
}

/// Tr h = h + N^{1-w/2} U_N(h_fricke), to order `trunc`.
inline RSeries trace_to_1_fricke(const RSeries& h, const RSeries& h_fricke, long level, long trunc) {
  const long w = h.weight();
  if (w % 2 != 0) throw UnsupportedError("trace needs even weight");
  if (h.trunc() < trunc) throw TruncationError("trace input known only to order " + std::to_string(h.trunc()), trunc);
  if (level == 1) return h.truncated(trunc).with_level(1);
  if (!is_prime(level)) throw UnsupportedError("trace needs N prime");
  if (h_fricke.trunc() < level * trunc)
    throw TruncationError("Fricke image must be known to order " + std::to_string(level * trunc), level * trunc);
  const Rational scale = pow(Rational(level), 1 - w / 2);
  RSeries u = op_U(h_fricke.truncated(level * trunc), level) * scale;
  return (h.truncated(trunc) + u.with_weight(static_cast<int>(w))).with_meta(FormMeta{static_cast<int>(w), 1, h.character()});
}

/// The N + 1 translates of h over Q(zeta_N), expansion denominator N, order T.
inline std::vector<QSeries<CycloElem>> coset_translates(const RSeries& h, const RSeries& h_fricke, long level,
                                                        long trunc) {
  const long w = h.weight();
  if (w % 2 != 0) throw UnsupportedError("translates need even weight");
  std::vector<QSeries<CycloElem>> out;
  if (level == 1) {
    out.push_back(to_cyclotomic(h.truncated(trunc), 2));
    return out;
  }
  if (!is_prime(level)) throw UnsupportedError("translates need N prime");
  if (h_fricke.trunc() < level * trunc)
    throw TruncationError("Fricke image must be known to order " + std::to_string(level * trunc), level * trunc);
  const int e = static_cast<int>(level);
  out.push_back(to_cyclotomic(h.truncated(trunc), level).spread(e));
  const Rational scale = pow(Rational(level), -w / 2);
  for (long j = 0; j < level; ++j) {
    std::vector<CycloElem> c;
    c.reserve(static_cast<std::size_t>(level * trunc + 1));
    for (long m = 0; m <= level * trunc; ++m) {
      const Rational v = h_fricke.coeff(m) * scale;
      c.push_back(sgn(v) == 0 ? CycloElem(level, Rational(0)) : CycloElem::zeta_power(level, j * m) * v);
    }
    out.emplace_back(std::move(c), trunc, e, h.meta());
  }
  return out;
}

/// prod_gamma (X - h|gamma) = sum_i (-1)^i s_i X^{mu_N - i}.
struct TransformationPolynomial {
  long degree = 1;
  long weight = 0;      ///< weight of h; s_i has weight weight * i
  std::vector<RSeries> s;  ///< s_0 .. s_degree, level one, rational
};

/// Elementary symmetric functions of the translates.  Every survivor must be
/// rational with integral exponents; anything else is an upstream bug.
inline TransformationPolynomial symmetric_functions(const std::vector<QSeries<CycloElem>>& translates, long weight) {
  if (translates.empty()) throw InputError("no translates");
  const long n = static_cast<long>(translates.size());
  const auto& t0 = translates[0];
  std::vector<QSeries<CycloElem>> e;
  e.push_back(QSeries<CycloElem>::constant(one_like(t0[0]), t0.trunc()).spread(t0.qdenom()).with_level(t0.level()));
  for (const auto& t : translates) {
    e.push_back(e.back() * t);
    for (std::size_t i = e.size() - 2; i >= 1; --i) e[i] = e[i] + e[i - 1] * t;
  }
  TransformationPolynomial phi;
  phi.degree = n;
  phi.weight = weight;
  for (long i = 0; i <= n; ++i) {
    const auto& si = e[static_cast<std::size_t>(i)];
    std::vector<Rational> c;
    for (long m = 0; m <= si.trunc(); ++m) {
      for (long r = 1; r < si.qdenom() && m < si.trunc(); ++r)
        if (!si[static_cast<std::size_t>(m * si.qdenom() + r)].is_zero())
          throw InvariantViolation("s_" + std::to_string(i) + " has a non-integral exponent");
      const CycloElem& v = si[static_cast<std::size_t>(m * si.qdenom())];
      if (!v.is_rational()) throw InvariantViolation("s_" + std::to_string(i) + " has a non-rational coefficient");
      c.push_back(v.rational_part());
    }
    phi.s.emplace_back(std::move(c), si.trunc(), 1, FormMeta{static_cast<int>(weight * i), 1, Character::trivial()});
  }
  return phi;
}

/// Power sums p_1 .. p_mu of the roots: p_m = sum_{i<m} (-1)^{i-1} s_i p_{m-i} + (-1)^{m-1} m s_m.
inline std::vector<RSeries> newton_power_sums(const TransformationPolynomial& phi, long mu) {
  if (mu < 1) throw InputError("power sums need mu >= 1");
  const long t = phi.s[0].trunc();
  auto s = [&](long i) -> RSeries {
    if (i <= phi.degree) return phi.s[static_cast<std::size_t>(i)];
    return RSeries::constant(Rational(0), t).with_weight(static_cast<int>(phi.weight * i));
  };
  std::vector<RSeries> p;  // p[m-1] = p_m
  for (long m = 1; m <= mu; ++m) {
    RSeries acc = s(m) * Rational((m % 2 == 1) ? m : -m);
    for (long i = 1; i < m; ++i) {
      RSeries term = s(i) * p[static_cast<std::size_t>(m - i - 1)];
      acc = (i % 2 == 1) ? acc + term : acc - term;
    }
    p.push_back(acc.with_level(1));
  }
  return p;
}

struct NewformExpansion {
  std::vector<NumberFieldElem> coefficients;  ///< c''_f per orbit
  std::vector<Rational> basis_coordinates;    ///< in the echelon cusp basis
  bool cuspidal = true;
  bool zero_residual = true;
  std::string detail;
};

/// t = sum over orbits and embeddings of c''_f f.  Never throws on a nonzero
/// residual; the caller reports it.
inline NewformExpansion expand_in_newforms(const RSeries& t, const GaloisOrbitSet& orbits) {
  NewformExpansion out;
  if (t.weight() != orbits.weight)
    throw DomainMismatch("weight " + std::to_string(t.weight()) + " does not match newform weight " +
                         std::to_string(orbits.weight));
  if (t.qdenom() != 1 || sgn(t.coeff(0)) != 0) {
    out.cuspidal = false;
    out.zero_residual = false;
    out.detail = "trace has a nonzero constant term";
    return out;
  }
  const long order = std::min(t.trunc(), orbits.cusp_basis.empty() ? t.trunc() : orbits.cusp_basis[0].trunc());
  if (orbits.cusp_basis.empty()) {
    out.zero_residual = t.truncated(order).is_zero();
    if (!out.zero_residual) out.detail = "nonzero form in a zero space";
    return out;
  }
  out.basis_coordinates = echelon_coordinates(t, orbits.cusp_basis);
  RSeries resid = t.truncated(order);
  for (std::size_t j = 0; j < orbits.cusp_basis.size(); ++j)
    resid = resid - orbits.cusp_basis[j].truncated(order).with_weight(t.weight()) * out.basis_coordinates[j];
  const long v = resid.valuation();
  if (v >= 0) {
    out.zero_residual = false;
    out.detail = "not in span: residual starts at q^" + std::to_string(v);
  }
  for (const auto& o : orbits.orbits) {
    NumberFieldElem c(o.rep.field, Rational(0));
    for (std::size_t j = 0; j < o.rep.left.size(); ++j) c += o.rep.left[j] * out.basis_coordinates[j];
    out.coefficients.push_back(c);
  }
  // The eigen-coordinates must reassemble the rational coordinates.
  for (std::size_t j = 0; j < orbits.cusp_basis.size(); ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < orbits.orbits.size(); ++i)
      s += nf_trace(out.coefficients[i] * orbits.orbits[i].rep.right[j]);
    if (s != out.basis_coordinates[j]) {
      out.zero_residual = false;
      out.detail = "eigen-coordinates do not reassemble coordinate " + std::to_string(j + 1);
    }
  }
  return out;
}

/// c_M = 3 * 4^{-(K-1)} (K-2)! / [SL_2(Z) : Gamma_0(M)].
inline Rational constant_cM(long weight, long m = 1) {
  if (weight < 2) throw InputError("c_M needs weight >= 2");
  Rational c = Rational(3 * factorial(static_cast<unsigned long>(weight - 2))) / Rational(ipow(4, static_cast<unsigned long>(weight - 1)));
  return c / Rational(gamma0_index(m));
}

/// Characteristic polynomials of the xi values must be rational and agree
/// with prod (x - sigma(xi)) over the numerical embeddings.
inline std::vector<Check> galois_check(const std::vector<NumberFieldElem>& xi, const GaloisOrbitSet& orbits) {
  std::vector<Check> out;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const auto& o = orbits.orbits[i];
    const std::string label = "orbit " + std::to_string(i + 1);
    UniPoly cp = xi[i].charpoly();
    Check rat{label + ": xi charpoly rational of degree [K_f:Q]", cp.degree() == o.rep.field->degree(), ""};
    out.push_back(rat);
    Check conj{label + ": charpoly matches the conjugates of xi", true, ""};
    const Prec prec = kDefaultPrecBits;
    std::vector<Complex> prod{Complex(Rational(1), prec)};
    for (const auto& root : o.embeddings) {
      Complex v = xi[i].embed(root);
      std::vector<Complex> next(prod.size() + 1, Complex(prec));
      for (std::size_t a = 0; a < prod.size(); ++a) {
        next[a + 1] += prod[a];
        next[a] -= prod[a] * v;
      }
      prod = std::move(next);
    }
    for (std::size_t a = 0; a < prod.size(); ++a) {
      Real exact(cp.coeff(a), prec);
      double scale = std::max(1.0, std::fabs(exact.to_double()));
      if (abs(prod[a] - Complex(cp.coeff(a), prec)).to_double() > 1e-40 * scale) conj.ok = false;
    }
    out.push_back(conj);
    Check tr{label + ": trace and norm of xi rational", true, to_string(nf_trace(xi[i])) + ", " + to_string(nf_norm(xi[i]))};
    out.push_back(tr);
  }
  return out;
}

struct TraceInput {
  RSeries g;          ///< cusp form of weight l, level N, rational
  RSeries g_fricke;   ///< g |_l omega_N
  long lambda = 4;
  long mu = 1;
  long level = 2;
  long M = 1;
  std::string label;  ///< provenance of g (eta spec or file)
  std::vector<Check> checks;

  long l() const { return g.weight(); }
  long k() const { return l() + lambda; }
  long total_weight() const { return k() * mu; }
};

/// Order to which the series of a TraceInput must be known to verify to order T.
inline long input_order(long level, long trunc) { return level * trunc + 8; }

/// Builds the input from an eta quotient; the Fricke scalar is checked
/// numerically at tau = i before use.
inline TraceInput trace_input_from_eta(const EtaQuotientSpec& spec, long lambda, long mu, long trunc) {
  TraceInput in;
  in.level = spec.level();
  in.lambda = lambda;
  in.mu = mu;
  in.label = spec.to_string();
  const long order = input_order(in.level, trunc);
  in.g = eta_quotient(spec, order);
  const Rational scalar = spec.fricke_scalar();
  in.g_fricke = eta_quotient(spec.fricke_image(), order) * scalar;
  if (in.level > 1) {
    const Prec prec = kDefaultPrecBits;
    const long n = in.level, w = spec.weight();
    RSeries big = eta_quotient(spec, 400);
    RSeries bigf = eta_quotient(spec.fricke_image(), 60) * scalar;
    Complex tau = Complex::i(prec);
    // (g|omega_N)(i) = N^{w/2} (N i)^{-w} g(i / N)
    Complex lhs = eval_qseries(big, tau / Real(n, prec), prec).value * pow(tau * Real(n, prec), -w) *
                  pow(sqrt(Real(n, prec)), w);
    Complex rhs = eval_qseries(bigf, tau, prec).value;
    double dev = abs(lhs - rhs).to_double(), scale = std::max(1e-300, abs(rhs).to_double());
    Check c{"eta Fricke scalar verified at tau = i", dev <= 1e-40 * std::max(1.0, scale) && scale > 1e-200,
            "scalar " + to_string(scalar)};
    in.checks.push_back(c);
    if (!c.ok) throw InvariantViolation("numeric check of the eta Fricke scalar failed");
  }
  return in;
}

/// Input from explicit series.  At the fixed point z0 = i/sqrt(N) of the
/// Fricke involution, (g|omega_N)(z0) = i^{-w} g(z0).
inline TraceInput trace_input_from_series(const RSeries& g, const RSeries& g_fricke, long lambda, long mu, long trunc,
                                          std::string label) {
  TraceInput in;
  in.g = g;
  in.g_fricke = g_fricke;
  in.level = g.level();
  in.lambda = lambda;
  in.mu = mu;
  in.label = std::move(label);
  if (g_fricke.weight() != g.weight() || g_fricke.level() != g.level())
    throw InputError("g and its Fricke image must share weight and level");
  const long need = input_order(in.level, trunc);
  if (g.trunc() < need || g_fricke.trunc() < need)
    throw TruncationError("form file series must be known to order " + std::to_string(need), need);
  if (in.level > 1 && g.weight() % 2 == 0) {
    const Prec prec = kDefaultPrecBits;
    Complex z0 = Complex::i(prec) / sqrt(Real(in.level, prec));
    Complex a = eval_qseries(g, z0, prec).value, b = eval_qseries(g_fricke, z0, prec).value;
    if ((g.weight() / 2) % 2 != 0) a = -a;
    double dev = abs(a - b).to_double(), scale = std::max(abs(a).to_double(), abs(b).to_double());
    Check c{"Fricke image verified at the fixed point", dev <= 1e-30 * std::max(1.0, scale), ""};
    in.checks.push_back(c);
    if (!c.ok) throw InputError("Fricke image does not match g at the fixed point i/sqrt(N)");
  }
  return in;
}

/// Validates parameters; throws InputError / UnsupportedError.
inline void validate_trace_input(const TraceInput& in) {
  if (in.level != 1 && !is_prime(in.level)) throw UnsupportedError("level must be 1 or prime");
  if (in.lambda <= 2 || in.lambda % 2 != 0) throw InputError("lambda must be even and greater than 2");
  if (in.mu < 1) throw InputError("mu must be >= 1");
  if (in.M != 1) throw UnsupportedError("only M = 1 (level-one newforms) is supported");
  if (in.g.character().kind != Character::Kind::Trivial)
    throw UnsupportedError("nontrivial character needs exact Eisenstein Fricke data, which is not available");
  if (in.g.qdenom() != 1 || sgn(in.g.coeff(0)) != 0) throw InputError("g must be a cusp form with integral exponents");
  if (in.g.weight() < 1) throw InputError("g must have positive weight");
  if (in.total_weight() % 2 != 0) throw InputError("total weight k*mu must be even");
}

struct TheoremReport {
  long level = 1, lambda = 0, mu = 1, l = 0, k = 0, weight = 0, trunc = 0, M = 1;
  std::string g_label;
  ConductorInfo conductor;
  RSeries trace;              ///< Fricke/U route
  RSeries power_sum;          ///< cyclotomic route p_mu
  TransformationPolynomial phi;
  NewformExpansion expansion;
  Rational cM;
  std::vector<NumberFieldElem> xi;
  std::vector<Check> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
};

/// h = g E_{lambda,N} and its Fricke image, known to input_order(N, T).
inline std::pair<RSeries, RSeries> eisenstein_product(const TraceInput& in) {
  const long order = std::min(in.g.trunc(), in.g_fricke.trunc());
  RSeries e = eisenstein_gamma0_infty(in.lambda, in.level, order);
  RSeries ef = fricke_eisenstein(in.lambda, in.level, order);
  return {in.g * e, in.g_fricke * ef};
}

inline TheoremReport verify_theorem(const TraceInput& in, const GaloisOrbitSet& orbits, long trunc) {
  validate_trace_input(in);
  TheoremReport rep;
  rep.level = in.level;
  rep.lambda = in.lambda;
  rep.mu = in.mu;
  rep.l = in.l();
  rep.k = in.k();
  rep.weight = in.total_weight();
  rep.trunc = trunc;
  rep.M = in.M;
  rep.g_label = in.label;
  rep.conductor = conductor_of_space(rep.weight, in.level);
  if (orbits.weight != rep.weight)
    throw DomainMismatch("newforms of weight " + std::to_string(orbits.weight) + " supplied for weight " +
                         std::to_string(rep.weight));
  for (const auto& c : in.checks) rep.checks.push_back(c);
  bool admissible = false;
  for (long m : rep.conductor.admissible_M) admissible = admissible || m == in.M;
  rep.checks.push_back(Check{"M admissible for the conductor", admissible, ""});

  auto [h, hf] = eisenstein_product(in);
  const unsigned mu = static_cast<unsigned>(in.mu);
  rep.trace = trace_to_1_fricke(series_pow(h, mu), series_pow(hf, mu), in.level, trunc);

  try {
    rep.phi = symmetric_functions(coset_translates(h, hf, in.level, trunc), h.weight());
    rep.checks.push_back(Check{"s_i rational with integral exponents", true, ""});
  } catch (const InvariantViolation& e) {
    rep.checks.push_back(Check{"s_i rational with integral exponents", false, e.what()});
    return rep;
  }
  bool cusp_s = true;
  for (long i = 1; i <= rep.phi.degree; ++i) cusp_s = cusp_s && sgn(rep.phi.s[static_cast<std::size_t>(i)].coeff(0)) == 0;
  rep.checks.push_back(Check{"s_0 = 1 and s_i cuspidal for i >= 1", cusp_s && rep.phi.s[0].coeff(0) == 1 &&
                                                                       rep.phi.s[0].truncated(trunc).valuation() == 0,
                             ""});
  const RSeries tr1 = trace_to_1_fricke(h, hf, in.level, trunc);
  rep.checks.push_back(Check{"s_1 equals the Fricke/U trace of h", rep.phi.s[1].coeffs() == tr1.coeffs(), ""});
  auto p = newton_power_sums(rep.phi, std::max<long>(in.mu, 2));
  rep.power_sum = p[static_cast<std::size_t>(in.mu - 1)];
  rep.checks.push_back(Check{"route equivalence: Fricke/U trace equals Newton power sum",
                             rep.trace.coeffs() == rep.power_sum.coeffs(), ""});
  const RSeries tr2 = trace_to_1_fricke(h * h, hf * hf, in.level, trunc);
  rep.checks.push_back(Check{"p_2 equals the Fricke/U trace of h^2", p[1].coeffs() == tr2.coeffs(), ""});
  rep.checks.push_back(Check{"trace has level one and weight k*mu",
                             rep.trace.level() == 1 && rep.trace.weight() == rep.weight, ""});

  rep.expansion = expand_in_newforms(rep.trace, orbits);
  rep.checks.push_back(Check{"trace is cuspidal", rep.expansion.cuspidal, ""});
  rep.checks.push_back(Check{"trace lies in the span of the newforms (zero residual)", rep.expansion.zero_residual,
                             rep.expansion.detail});
  rep.cM = constant_cM(rep.weight, in.M);
  for (const auto& c : rep.expansion.coefficients) rep.xi.push_back(c * (1 / rep.cM));
  for (auto& c : galois_check(rep.xi, orbits)) rep.checks.push_back(c);
  return rep;
}

struct DirichletPartial {
  bool skipped = false;
  std::string message;
  Real value;
  double tail_estimate = 0.0;
};

/// sum_{n <= n_max} a_n(f) c_n(G) n^{-s} under the real embedding `root`,
/// reported only when lambda > (K + 1)/2.
inline DirichletPartial dirichlet_partial(const QSeries<NumberFieldElem>& f, const Complex& root, const RSeries& G,
                                          long s, long n_max, long lambda, long total_weight, Prec prec) {
  DirichletPartial out;
  out.value = Real(prec);
  if (2 * lambda <= total_weight + 1) {
    out.skipped = true;
    out.message = "nonconvergent; skipped";
    return out;
  }
  if (f.trunc() < n_max || G.trunc() < n_max)
    throw TruncationError("dirichlet_partial needs order " + std::to_string(n_max), n_max);
  double upper = 0.0;  // largest term in the upper half, times n_max
  for (long n = 1; n <= n_max; ++n) {
    Real an = f.coeff(n).embed(root).re;
    Real term = an * Real(G.coeff(n), prec) / pow(Real(n, prec), s);
    out.value += term;
    if (2 * n > n_max) upper = std::max(upper, abs(term).to_double());
  }
  out.tail_estimate = upper * static_cast<double>(n_max);
  return out;
}

}  // namespace mtv
