#include <gtest/gtest.h>

#include "mtv/elliptic.hpp"

using namespace mtv;

namespace {

constexpr long kT = 24;
constexpr Prec kPrec = 300;

Rational q(long a, long b = 1) { return make_rational(a, b); }

}  // namespace

TEST(Curve, Canonicalize) {
  auto e = canonicalize_weierstrass(0, 0, 0, -1, 0);
  EXPECT_EQ(e.g2, 4);
  EXPECT_EQ(e.g3, 0);
  EXPECT_THROW(canonicalize_weierstrass(0, 0, 0, 0, 0), InputError);
  auto f = canonicalize_weierstrass(0, 0, 1, 0, 0);  // y^2 + y = x^3
  EXPECT_EQ(f.g2, 0);
  EXPECT_EQ(f.g3, -1);
  // y^2 + xy = x^3 - x: check against the invariants c4, c6 directly.
  auto g = canonicalize_weierstrass(1, 0, 0, -1, 0);
  EXPECT_EQ(g.g2 * 12, 1 + 48);
  EXPECT_EQ(g.g3 * 216, -1 + 36 * (-2));
  EXPECT_EQ(parse_weierstrass("0,0,0,-1,0").g2, 4);
  EXPECT_THROW(parse_weierstrass("0,0,0,-1"), InputError);
}

TEST(Curve, JInvariant) {
  EXPECT_EQ(make_curve(q(5), q(0)).j, 1728);
  EXPECT_EQ(make_curve(q(0), q(7, 3)).j, 0);
  EXPECT_EQ(make_curve(q(4), q(1)).j, q(110592, 37));
  EXPECT_THROW(make_curve(q(3), q(1)), InputError);
  EXPECT_THROW(parse_curve("3,1"), InputError);
  for (long u : {2L, -3L, 5L}) {
    Rational uu = q(u, 7);
    EXPECT_EQ(make_curve(q(4) * pow(uu, 4), q(1) * pow(uu, 6)).j, q(110592, 37));
  }
}

TEST(Specialize, ExactTable) {
  struct Row {
    long g2, g3, e4, e6, dl;
  };
  for (Row r : {Row{4, 1, 48, 216, 37}, Row{4, 0, 48, 0, 64}, Row{0, 1, 0, 216, -27}}) {
    auto e = make_curve(q(r.g2), q(r.g3));
    EXPECT_EQ(specialize_level1_exact(eisenstein_E4(10), e), r.e4);
    EXPECT_EQ(specialize_level1_exact(eisenstein_E6(10), e), r.e6);
    EXPECT_EQ(specialize_level1_exact(delta_tilde(10), e), r.dl);
  }
}

TEST(Specialize, MultiplicativeAndRejects) {
  auto e = make_curve(q(-3, 2), q(5, 7));
  auto a = eisenstein_E4(20) * delta_tilde(20) * eisenstein_E6(20);
  EXPECT_EQ(specialize_level1_exact(a, e), specialize_level1_exact(eisenstein_E4(20), e) *
                                               specialize_level1_exact(delta_tilde(20), e) *
                                               specialize_level1_exact(eisenstein_E6(20), e));
  auto bad = series_from_ints({1, 2, 3, 4, 5, 6}, FormMeta{4, 1, {}});
  EXPECT_THROW(specialize_level1_exact(bad, e), InvariantViolation);
  EXPECT_THROW(specialize_level1_exact(delta_tilde(10).with_level(2), e), DomainMismatch);
  EXPECT_THROW(specialize_level1_exact(series_from_ints({1, 2}, FormMeta{2, 1, {}}), e), DomainMismatch);
}

TEST(Tau, SpecialPointsAndRoundTrip) {
  auto pi = tau_from_curve(make_curve(q(4), q(0)), kPrec);
  EXPECT_LT(abs(pi.tau - Complex::i(kPrec)).to_double(), 1e-60);
  auto pr = tau_from_curve(make_curve(q(0), q(1)), kPrec);
  Complex rho(Real(q(-1, 2), kPrec), sqrt(Real(3L, kPrec)) / 2L);
  EXPECT_LT(abs(pr.tau - rho).to_double(), 1e-60);
  for (auto [a, b] : {std::pair{4L, 1L}, std::pair{-3L, 5L}, std::pair{100L, -1L}, std::pair{1L, 7L}}) {
    auto p = tau_from_curve(make_curve(q(a), q(b)), 256);
    EXPECT_LT(p.j_residual, 1e-30) << a << "," << b;
    EXPECT_GE(p.tau.im.to_double(), std::sqrt(3.0) / 2 - 1e-12);
    EXPECT_LE(std::fabs(p.tau.re.to_double()), 0.5 + 1e-12);
  }
}

TEST(Specialize, NumericPathReconstructs) {
  const Integer den("1000000000000");
  for (auto [a, b] : {std::pair{4L, 1L}, std::pair{4L, 0L}, std::pair{0L, 1L}, std::pair{-3L, 5L}}) {
    auto e = make_curve(q(a), q(b));
    auto p = tau_from_curve(e, kPrec);
    for (const auto& f : {eisenstein_E4(80), eisenstein_E6(80), delta_tilde(80), eisenstein_E4(80) * delta_tilde(80)}) {
      auto v = numeric_specialization(f, p, kPrec);
      auto r = rational_reconstruct(v, den);
      ASSERT_TRUE(r.has_value()) << a << "," << b << " w" << f.weight();
      EXPECT_EQ(*r, specialize_level1_exact(f, e));
    }
  }
}

TEST(Specialize, HeckeFieldNumericAgreement) {
  auto orbits = newform_basis_level1(24, 80);
  auto e = make_curve(q(4), q(1));
  auto p = tau_from_curve(e, kPrec);
  const auto& o = orbits.orbits[0];
  NumberFieldElem exact = specialize_level1_exact(o.rep.coeffs, e);
  for (const auto& r : o.embeddings) {
    auto v = numeric_specialization(o.rep.coeffs, r, p, kPrec);
    EXPECT_LT(abs(v.value - exact.embed(r)).to_double(), 1e-40 * std::max(1.0, abs(v.value).to_double()));
  }
}

TEST(Phi, SpecializedCubicAndConditionA) {
  auto in = trace_input_from_eta(EtaQuotientSpec::parse("1:8,2:8", 2), 4, 1, kT);
  auto rep = verify_theorem(in, newform_basis_level1(12, kT), kT);
  auto p = specialize_phi(rep.phi, make_curve(q(4), q(1)));
  EXPECT_EQ(p.degree(), 3);
  EXPECT_EQ(p.leading(), 1);
  EXPECT_EQ(p.coeff(2), -specialize_level1_exact(rep.trace, make_curve(q(4), q(1))));
  EXPECT_EQ(p.coeff(0), -specialize_level1_exact(rep.phi.s[3], make_curve(q(4), q(1))));
  auto ca = condition_A(p);
  EXPECT_EQ(ca.factorization.expand(), p);
  EXPECT_TRUE(condition_A(UniPoly({1, 0, 1})).irreducible);
  EXPECT_FALSE(condition_A(UniPoly({-1, 0, 1})).irreducible);
}

TEST(Corollary, Instances) {
  for (long mu : {1L, 2L}) {
    auto in = trace_input_from_eta(EtaQuotientSpec::parse("1:8,2:8", 2), 4, mu, kT);
    auto orbits = newform_basis_level1(in.total_weight(), kT);
    auto rep = verify_theorem(in, orbits, kT);
    ASSERT_TRUE(rep.passed());
    for (auto [a, b] : {std::pair{4L, 1L}, std::pair{4L, 0L}, std::pair{-3L, 5L}}) {
      auto e = make_curve(q(a), q(b));
      auto s = verify_corollary(in, rep, orbits, e, kPrec);
      EXPECT_TRUE(s.equal) << mu << " " << a << "," << b;
      for (const auto& c : s.checks) EXPECT_TRUE(c.ok) << mu << " " << a << "," << b << ": " << c.name << " " << c.detail;
      EXPECT_EQ(s.g2g3_nonzero, b != 0);
      EXPECT_TRUE(s.maeda);
    }
    if (mu == 1) {
      auto e = make_curve(q(4), q(1));
      auto s = verify_corollary(in, rep, orbits, e, 0);
      Rational c = rep.trace.coeff(1);
      EXPECT_EQ(s.lhs, c * 37);
      EXPECT_EQ(rep.xi[0].rational_part(), c * q(16384, 42525));
    }
  }
}

TEST(FieldQN, Data) {
  auto p1 = tau_from_curve(make_curve(q(4), q(1)), 256, 1);
  auto d1 = field_QN_data(p1, std::nullopt, 256);
  EXPECT_EQ(d1.degree.value(), 1);
  auto p2 = tau_from_curve(make_curve(q(4), q(0)), 256, 2);
  auto d2 = field_QN_data(p2, 3L, 256);
  EXPECT_LT(std::fabs(d2.j_level.value.re.to_double() - 287496.0), 1e-6);
  EXPECT_EQ(d2.degree.value(), 3);
}
