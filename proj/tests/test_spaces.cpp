#include <gtest/gtest.h>

#include "mtv/spaces.hpp"

using namespace mtv;

TEST(Dimensions, Examples) {
  EXPECT_EQ(dim_spaces_level1(12), std::make_pair(2L, 1L));
  EXPECT_EQ(dim_spaces_level1(24), std::make_pair(3L, 2L));
  EXPECT_EQ(dim_spaces_level1(2), std::make_pair(0L, 0L));
  EXPECT_EQ(dim_spaces_level1(14), std::make_pair(1L, 0L));
  EXPECT_EQ(dim_spaces_level1(0), std::make_pair(1L, 0L));
  EXPECT_EQ(dim_spaces_level1(7), std::make_pair(0L, 0L));
}

TEST(Dimensions, MatchConstructedBases) {
  for (long k = 4; k <= 60; k += 2) {
    auto [g, s] = dim_spaces_level1(k);
    EXPECT_EQ(static_cast<long>(miller_basis(k, 10).forms.size()), g) << k;
    if (k >= 12) {
      EXPECT_EQ(static_cast<long>(cusp_basis_level1(k, 10).size()), s) << k;
    }
  }
}

TEST(MillerBasis, Examples) {
  auto b12 = miller_basis(12, 20);
  EXPECT_EQ(b12.dim, 2);
  EXPECT_EQ(b12.a, 0);
  EXPECT_EQ(b12.b, 0);
  EXPECT_EQ(b12.forms[0].coeffs(), series_pow(eisenstein_E6(20), 2).coeffs());
  EXPECT_EQ(b12.forms[1].coeffs(), delta_tilde(20).coeffs());
  auto b16 = miller_basis(16, 20);
  EXPECT_EQ(b16.dim, 2);
  EXPECT_EQ(b16.a, 1);
  EXPECT_EQ(b16.b, 0);
  EXPECT_EQ(b16.forms[0].coeffs(), (eisenstein_E4(20) * series_pow(eisenstein_E6(20), 2)).coeffs());
  EXPECT_EQ(b16.forms[1].coeffs(), (eisenstein_E4(20) * delta_tilde(20)).coeffs());
  EXPECT_EQ(miller_basis(0, 5).forms[0], RSeries::constant(Rational(1), 5));
  EXPECT_THROW(miller_basis(2, 5), InputError);
}

TEST(MillerBasis, TriangularityAllWeights) {
  for (long l = 4; l <= 60; l += 2) {
    auto mb = miller_basis(l, 8);
    for (long j = 1; j <= mb.dim; ++j) {
      const auto& h = mb.forms[static_cast<std::size_t>(j - 1)];
      EXPECT_EQ(h.weight(), l);
      for (long i = 0; i < j - 1; ++i) EXPECT_EQ(h.coeff(i), 0) << l << " " << j;
      EXPECT_EQ(h.coeff(j - 1), 1) << l << " " << j;
    }
  }
}

TEST(Newforms, Weight12) {
  auto o = newform_basis_level1(12, 40);
  ASSERT_EQ(o.orbits.size(), 1u);
  EXPECT_EQ(o.orbits[0].rep.field->degree(), 1);
  EXPECT_EQ(o.t2_charpoly, (UniPoly{24, 1}));
  auto d = delta_tilde(40);
  for (long n = 0; n <= 40; ++n) EXPECT_EQ(o.orbits[0].rep.coeffs.coeff(n).rational_part(), d.coeff(n));
  EXPECT_TRUE(o.all_checks_pass());
  EXPECT_TRUE(o.maeda());
}

TEST(Newforms, Weight24QuadraticOrbit) {
  auto o = newform_basis_level1(24, 64);
  ASSERT_EQ(o.orbits.size(), 1u);
  EXPECT_EQ(o.orbits[0].rep.field->degree(), 2);
  EXPECT_TRUE(is_irreducible_q(o.t2_charpoly));
  EXPECT_TRUE(o.orbits[0].totally_real);
  EXPECT_TRUE(o.maeda());
  EXPECT_TRUE(o.all_checks_pass());
  // Trace of a_2 over the orbit equals the trace of the T_2 matrix.
  EXPECT_EQ(nf_trace(o.orbits[0].rep.coeffs.coeff(2)), o.t2.trace());
  for (const auto& c : o.checks) EXPECT_TRUE(c.ok) << c.name << " " << c.detail;
}

TEST(Newforms, EmptyAndCounts) {
  EXPECT_TRUE(newform_basis_level1(10, 20).orbits.empty());
  for (long k = 12; k <= 30; k += 2) {
    auto o = newform_basis_level1(k, 64);
    EXPECT_EQ(o.total_dimension(), dim_spaces_level1(k).second) << k;
    for (const auto& c : o.checks) EXPECT_TRUE(c.ok) << k << ": " << c.name << " " << c.detail;
  }
}

TEST(Newforms, OrbitSumsRationalAndReproduceBasis) {
  // sum over orbits of Tr(right_j * left . x) reproduces x for x = e_i.
  auto o = newform_basis_level1(36, 20);
  const std::size_t n = o.cusp_basis.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational s = 0;
      for (const auto& orb : o.orbits) s += nf_trace(orb.rep.right[j] * orb.rep.left[i]);
      EXPECT_EQ(s, i == j ? 1 : 0);
    }
}

TEST(Conductor, Examples) {
  auto a = conductor_of_space(12, 2);
  EXPECT_EQ(a.conductor, 1);
  EXPECT_EQ(a.admissible_M, std::vector<long>{1});
  auto b = conductor_of_space(4, 5);
  EXPECT_EQ(b.conductor, 5);
  EXPECT_EQ(b.admissible_M, (std::vector<long>{1, 5}));
  EXPECT_EQ(conductor_of_space(12, 1).conductor, 1);
  EXPECT_THROW(conductor_of_space(12, 6), UnsupportedError);
}

TEST(ExternalNewform, Validation) {
  auto d = delta_tilde(50);
  EXPECT_TRUE(validate_external_newform(d, 1, 50).trusted);
  auto g = eta_quotient(EtaQuotientSpec::parse("1:8,2:8", 2), 50);
  auto rep = validate_external_newform(g, 2, 50);
  for (const auto& c : rep.checks) EXPECT_TRUE(c.ok) << c.name << " " << c.detail;
  EXPECT_TRUE(rep.trusted);
  auto c = d.coeffs();
  c[2] += 1;
  RSeries bad(c, d.trunc(), 1, d.meta());
  auto r = validate_external_newform(bad, 1, 50);
  EXPECT_FALSE(r.trusted);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_EQ(*r.counterexample, std::make_pair(2L, 3L));
}
