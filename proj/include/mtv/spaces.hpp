#pragma once

// Level-one spaces: dimensions, the basis E4^a E6^{b+2(d-j)} Delta~^{j-1},
// cusp bases, and newforms from the eigen-decomposition of T_2.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mtv/eisenstein.hpp"
#include "mtv/eta.hpp"
#include "mtv/factor.hpp"
#include "mtv/hecke.hpp"
#include "mtv/matrix.hpp"
#include "mtv/number_field.hpp"
#include "mtv/roots.hpp"

namespace mtv {

/// (dim M_k, dim S_k) for SL_2(Z).
inline std::pair<long, long> dim_spaces_level1(long k) {
  if (k < 0) throw InputError("weight must be non-negative");
  if (k % 2 != 0) return {0, 0};
  if (k == 0) return {1, 0};
  if (k == 2) return {0, 0};
  long g = (k % 12 == 2) ? k / 12 : k / 12 + 1;
  return {g, g - 1};
}

struct MillerBasis {
  long weight = 0;
  long dim = 0;
  long a = 0, b = 0;
  std::vector<RSeries> forms;  ///< h_1 .. h_d
};

/// h_j = E4^a E6^{b + 2(d - j)} Delta~^{j-1}, j = 1..d, where 4a + 6b is the
/// residual l - 12(d - 1).  Weight 0 gives the basis {1}.
inline MillerBasis miller_basis(long l, long trunc) {
  if (l < 0 || l % 2 != 0 || l == 2) throw InputError("miller_basis needs even weight 0 or >= 4");
  MillerBasis mb;
  mb.weight = l;
  mb.dim = dim_spaces_level1(l).first;
  const long r = l - 12 * (mb.dim - 1);
  switch (r) {
    case 0: mb.a = 0, mb.b = 0; break;
    case 4: mb.a = 1, mb.b = 0; break;
    case 6: mb.a = 0, mb.b = 1; break;
    case 8: mb.a = 2, mb.b = 0; break;
    case 10: mb.a = 1, mb.b = 1; break;
    case 14: mb.a = 2, mb.b = 1; break;
    default: throw InvariantViolation("residual weight " + std::to_string(r) + " outside {0,4,6,8,10,14}");
  }
  const RSeries e4 = eisenstein_E4(trunc), e6 = eisenstein_E6(trunc), dl = delta_tilde(trunc);
  const RSeries head = series_pow(e4, static_cast<unsigned>(mb.a)) * series_pow(e6, static_cast<unsigned>(mb.b));
  const RSeries e6sq = e6 * e6;
  // E6^{2(d-j)} for j = d..1.
  std::vector<RSeries> e6pow(static_cast<std::size_t>(mb.dim));
  for (long j = mb.dim; j >= 1; --j)
    e6pow[static_cast<std::size_t>(j - 1)] =
        j == mb.dim ? RSeries::constant(Rational(1), trunc) : e6pow[static_cast<std::size_t>(j)] * e6sq;
  RSeries dpow = RSeries::constant(Rational(1), trunc);
  for (long j = 1; j <= mb.dim; ++j) {
    RSeries h = head * e6pow[static_cast<std::size_t>(j - 1)] * dpow;
    mb.forms.push_back(h.with_level(1));
    dpow = dpow * dl;
  }
  return mb;
}

/// Delta~ * miller_basis(k - 12): forms b_j = q^j + O(q^{j+1}), j = 1..dim S_k.
inline std::vector<RSeries> cusp_basis_level1(long k, long trunc) {
  const long n = dim_spaces_level1(k).second;
  std::vector<RSeries> out;
  if (n == 0) return out;
  const RSeries dl = delta_tilde(trunc);
  for (const auto& h : miller_basis(k - 12, trunc).forms) out.push_back((dl * h).with_level(1));
  return out;
}

/// Coordinates of a cusp form in an echelon cusp basis (b_j = q^j + ...),
/// by forward substitution on coefficients 1..n.
template <class C>
std::vector<C> echelon_coordinates(const QSeries<C>& t, const std::vector<RSeries>& basis) {
  std::vector<C> x;
  const std::size_t n = basis.size();
  for (std::size_t i = 1; i <= n; ++i) {
    C v = t.coeff(static_cast<long>(i));
    for (std::size_t j = 1; j < i; ++j) v = v - x[j - 1] * basis[j - 1].coeff(static_cast<long>(i));
    x.push_back(v);
  }
  return x;
}

/// Matrix of T_2 on the echelon cusp basis; column j holds T_2 b_j.
inline Matrix<Rational> hecke_matrix_T2(const std::vector<RSeries>& basis) {
  const std::size_t n = basis.size();
  Matrix<Rational> m(n, n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    RSeries t = hecke_T_to(basis[j], 2, static_cast<long>(n));
    auto x = echelon_coordinates(t, basis);
    for (std::size_t i = 0; i < n; ++i) m(i, j) = x[i];
  }
  return m;
}

struct Check {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct Newform {
  long level = 1;
  long weight = 0;
  long conductor = 1;
  FieldPtr field;                       ///< generated by the T_2 eigenvalue
  QSeries<NumberFieldElem> coeffs;      ///< a_0 .. a_T
  std::vector<NumberFieldElem> right;   ///< f = sum right_j b_j, right_1 = 1
  std::vector<NumberFieldElem> left;    ///< left eigenvector, left . right = 1
};

struct GaloisOrbit {
  Newform rep;
  std::vector<Complex> embeddings;  ///< roots of the Hecke field modulus
  bool totally_real = true;
};

struct GaloisOrbitSet {
  long weight = 0;
  long trunc = 0;
  std::vector<RSeries> cusp_basis;
  Matrix<Rational> t2;
  UniPoly t2_charpoly;
  std::vector<GaloisOrbit> orbits;
  std::vector<Check> checks;

  long total_dimension() const {
    long s = 0;
    for (const auto& o : orbits) s += o.rep.field->degree();
    return s;
  }
  bool maeda() const { return orbits.size() == 1; }
  bool all_checks_pass() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
};

namespace detail {

inline std::vector<NumberFieldElem> eigenvector(const Matrix<Rational>& m, const FieldPtr& f, bool transpose) {
  const std::size_t n = m.rows();
  const NumberFieldElem zero(f, Rational(0)), one(f, Rational(1)), y = NumberFieldElem::generator(f);
  Matrix<NumberFieldElem> a(n, n, zero);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = NumberFieldElem(f, transpose ? m(j, i) : m(i, j));
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i) - y;
  auto ns = nullspace(a, one);
  if (ns.size() != 1)
    throw InvariantViolation("T_2 eigenspace has dimension " + std::to_string(ns.size()) + " over its Hecke field");
  return ns[0];
}

/// Checks the normalized-eigenform identities on an expansion.
template <class C>
std::vector<Check> eigenform_checks(const QSeries<C>& f, long weight, const std::string& label) {
  std::vector<Check> out;
  const long t = f.trunc();
  Check a1{label + ": a_1 = 1", f.coeff(1) == one_like(f.coeff(1)), ""};
  out.push_back(a1);
  Check mult{label + ": multiplicativity for coprime m, n", true, ""};
  for (long m = 2; m <= t && mult.ok; ++m)
    for (long n = m + 1; m * n <= t; ++n)
      if (gcd(m, n) == 1 && !(f.coeff(m) * f.coeff(n) == f.coeff(m * n))) {
        mult.ok = false;
        mult.detail = "fails at (" + std::to_string(m) + "," + std::to_string(n) + ")";
        break;
      }
  out.push_back(mult);
  Check rec{label + ": prime-power recursion", true, ""};
  for (long p = 2; p * p <= t && rec.ok; ++p) {
    if (!is_prime(p)) continue;
    const Rational pk(ipow(p, static_cast<unsigned long>(weight - 1)));
    for (long pr = p; pr * p <= t; pr *= p)
      if (!(f.coeff(pr * p) == f.coeff(p) * f.coeff(pr) - f.coeff(pr / p) * pk)) {
        rec.ok = false;
        rec.detail = "fails at p^r = " + std::to_string(pr * p);
        break;
      }
  }
  out.push_back(rec);
  return out;
}

}  // namespace detail

/// Newforms of level one and weight k, one representative per Galois orbit,
/// in the order of the irreducible factors of the T_2 characteristic polynomial.
inline GaloisOrbitSet newform_basis_level1(long k, long trunc) {
  GaloisOrbitSet out;
  out.weight = k;
  out.trunc = trunc;
  const long n = dim_spaces_level1(k).second;
  if (n == 0) return out;
  const long order = std::max(trunc, 2 * n);
  out.cusp_basis = cusp_basis_level1(k, order);
  out.t2 = hecke_matrix_T2(out.cusp_basis);
  out.t2_charpoly = charpoly(out.t2);
  Factorization fac = poly_factor_q(out.t2_charpoly);
  for (const auto& [p, mult] : fac.factors)
    if (mult != 1)
      throw InvariantViolation("T_2 characteristic polynomial " + out.t2_charpoly.to_string() +
                               " has the repeated factor " + p.to_string());

  for (std::size_t oi = 0; oi < fac.factors.size(); ++oi) {
    const UniPoly& p = fac.factors[oi].first;
    GaloisOrbit orbit;
    Newform& f = orbit.rep;
    f.weight = k;
    f.field = NumberField::make(p, "K" + std::to_string(oi + 1), true);
    f.right = detail::eigenvector(out.t2, f.field, false);
    // Normalize a_1 = v_1 = 1.
    NumberFieldElem inv = f.right[0].inverse();
    for (auto& v : f.right) v = v * inv;
    f.left = detail::eigenvector(out.t2, f.field, true);
    NumberFieldElem dot(f.field, Rational(0));
    for (std::size_t j = 0; j < f.right.size(); ++j) dot += f.left[j] * f.right[j];
    NumberFieldElem dinv = dot.inverse();
    for (auto& v : f.left) v = v * dinv;

    QSeries<NumberFieldElem> acc = to_field(out.cusp_basis[0], f.field).scaled(f.right[0]);
    for (std::size_t j = 1; j < f.right.size(); ++j)
      acc = acc + to_field(out.cusp_basis[j], f.field).scaled(f.right[j]);
    f.coeffs = acc.truncated(trunc).with_meta(FormMeta{static_cast<int>(k), 1, Character::trivial()});

    if (p.degree() > 1) {
      RootSet rs = root_cluster(p, kDefaultPrecBits);
      orbit.embeddings = rs.roots;
      orbit.totally_real = all_roots_real(rs);
    } else {
      orbit.embeddings = {Complex(-p.coeff(0), kDefaultPrecBits)};
    }
    const std::string label = "orbit " + std::to_string(oi + 1);
    for (auto& c : detail::eigenform_checks(f.coeffs, k, label)) out.checks.push_back(c);
    out.checks.push_back(Check{label + ": Hecke field totally real", orbit.totally_real, ""});
    Check eig{label + ": T_p f = a_p f", true, ""};
    for (long q : {2L, 3L, 5L, 7L}) {
      if (q > trunc / 2) break;
      auto tp = hecke_T(f.coeffs, q);
      auto rhs = f.coeffs.truncated(tp.trunc()).scaled(f.coeffs.coeff(q));
      if (tp.coeffs() != rhs.coeffs()) {
        eig.ok = false;
        eig.detail = "fails for p = " + std::to_string(q);
      }
    }
    out.checks.push_back(eig);
    out.orbits.push_back(std::move(orbit));
  }
  out.checks.push_back(Check{"newform count equals dim S_k", out.total_dimension() == n, ""});
  // Galois stability: the orbit-sum of each coefficient is rational by construction
  // (field traces); check the elementary symmetric functions via charpolys.
  Check gal{"coefficient charpolys rational", true, ""};
  for (const auto& o : out.orbits)
    for (long m = 1; m <= trunc; ++m) {
      UniPoly cp = o.rep.coeffs.coeff(m).charpoly();
      if (cp.degree() != o.rep.field->degree()) gal.ok = false;
    }
  out.checks.push_back(gal);
  return out;
}

struct ConductorInfo {
  long conductor = 1;
  std::vector<long> admissible_M;
};

/// Conductor of S_k(Gamma_0(N)) for N prime (or 1) and trivial character:
/// 1 when a level-one eigenform exists in weight k, else N.
inline ConductorInfo conductor_of_space(long k, long level) {
  if (level != 1 && !is_prime(level)) throw UnsupportedError("conductor_of_space needs N prime");
  ConductorInfo info;
  info.conductor = (level == 1 || dim_spaces_level1(k).second > 0) ? 1 : level;
  for (long m : divisors(info.conductor))
    if (gcd(m, level / info.conductor) == 1) info.admissible_M.push_back(m);
  return info;
}

struct ValidationReport {
  bool trusted = true;
  std::vector<Check> checks;
  std::optional<std::pair<long, long>> counterexample;
};

/// Checks a claimed primitive form of level N: a_1 = 1, a_m a_n = a_{mn}
/// for coprime m, n prime to N (ordered by mn, then m), the good-prime
/// recursion, a_{p^r} = a_p^r at p | N, and rationality of the data.
inline ValidationReport validate_external_newform(const RSeries& f, long level, long n_max) {
  ValidationReport rep;
  const long t = std::min(n_max, f.trunc());
  const long k = f.weight();
  auto chi = [&](long p) -> Rational {
    if (gcd(p, level) != 1) return 0;
    if (f.character().kind == Character::Kind::Quadratic) return kronecker(f.character().disc, p);
    return 1;
  };
  Check meta{"integral exponents and cusp form", f.qdenom() == 1 && sgn(f.coeff(0)) == 0, ""};
  rep.checks.push_back(meta);
  Check a1{"a_1 = 1", t >= 1 && f.coeff(1) == 1, ""};
  rep.checks.push_back(a1);
  Check mult{"multiplicativity outside N", true, ""};
  for (long prod = 6; prod <= t && mult.ok; ++prod) {
    if (gcd(prod, level) != 1) continue;
    for (long m = 2; m * m < prod; ++m) {
      if (prod % m != 0) continue;
      long n = prod / m;
      if (gcd(m, n) != 1) continue;
      if (f.coeff(m) * f.coeff(n) != f.coeff(prod)) {
        mult.ok = false;
        mult.detail = "(" + std::to_string(m) + "," + std::to_string(n) + ")";
        rep.counterexample = std::make_pair(m, n);
        break;
      }
    }
  }
  rep.checks.push_back(mult);
  Check rec{"prime-power recursion", true, ""};
  for (long p = 2; p * p <= t && rec.ok; ++p) {
    if (!is_prime(p)) continue;
    const Rational pk = Rational(ipow(p, static_cast<unsigned long>(std::max(k - 1, 0L)))) * chi(p);
    for (long pr = p; pr * p <= t; pr *= p) {
      Rational expect = f.coeff(pr) * f.coeff(p);
      if (level % p != 0) expect -= pk * f.coeff(pr / p);
      if (f.coeff(pr * p) != expect) {
        rec.ok = false;
        rec.detail = "p^r = " + std::to_string(pr * p);
        if (!rep.counterexample) rep.counterexample = std::make_pair(p, pr);
        break;
      }
    }
  }
  rep.checks.push_back(rec);
  rep.checks.push_back(Check{"coefficients rational", true, ""});
  for (const auto& c : rep.checks) rep.trusted = rep.trusted && c.ok;
  return rep;
}

}  // namespace mtv
