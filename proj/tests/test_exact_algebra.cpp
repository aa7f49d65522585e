#include <gtest/gtest.h>

#include <random>

#include "mtv/cyclotomic.hpp"
#include "mtv/factor.hpp"
#include "mtv/matrix.hpp"
#include "mtv/number_field.hpp"
#include "mtv/poly.hpp"
#include "mtv/rational.hpp"

using namespace mtv;

namespace {

UniPoly random_poly(std::mt19937_64& rng, int deg, long range) {
  std::uniform_int_distribution<long> d(-range, range);
  std::vector<Rational> c;
  for (int i = 0; i <= deg; ++i) c.emplace_back(d(rng));
  if (sgn(c.back()) == 0) c.back() = 1;
  return UniPoly(std::move(c));
}

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(to_string(parse_rational("-6/4")), "-3/2");
  EXPECT_EQ(to_string(parse_rational("7")), "7");
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational("abc"), InputError);
}

TEST(Rational, Bernoulli) {
  EXPECT_EQ(bernoulli(0), 1);
  EXPECT_EQ(bernoulli(1), make_rational(-1, 2));
  EXPECT_EQ(bernoulli(4), make_rational(-1, 30));
  EXPECT_EQ(bernoulli(6), make_rational(1, 42));
  EXPECT_EQ(bernoulli(12), make_rational(-691, 2730));
  EXPECT_EQ(bernoulli(7), 0);
}

TEST(Rational, DivisorSums) {
  auto s = divisor_power_sums(6, 3);
  EXPECT_EQ(s[1], 1);
  EXPECT_EQ(s[2], 9);
  EXPECT_EQ(s[6], 1 + 8 + 27 + 216);
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(moebius(6), 1);
  EXPECT_EQ(moebius(4), 0);
  EXPECT_EQ(moebius(5), -1);
  EXPECT_EQ(kronecker(5, 2), -1);
  EXPECT_EQ(kronecker(5, 4), 1);
  EXPECT_EQ(kronecker(-4, 3), -1);
  EXPECT_EQ(factorial(10), 3628800);
  EXPECT_EQ(binomial(10, 3), 120);
  EXPECT_EQ(pow(make_rational(2, 3), -2), make_rational(9, 4));
}

TEST(Poly, ArithmeticAndDivision) {
  UniPoly a{-1, 0, 1};
  UniPoly b{-1, 1};
  auto [q, r] = UniPoly::divmod(a, b);
  EXPECT_EQ(q, (UniPoly{1, 1}));
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(gcd(a, UniPoly{1, 1}), (UniPoly{1, 1}));
  EXPECT_EQ(UniPoly({1, 1}) * UniPoly({1, -1}), (UniPoly{1, 0, -1}));
}

TEST(Poly, ExtendedGcdIdentity) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    UniPoly a = random_poly(rng, 4, 9), b = random_poly(rng, 3, 9);
    auto [g, s, t] = ext_gcd(a, b);
    EXPECT_EQ(s * a + t * b, g);
  }
}

TEST(Poly, SquarefreeDecomposition) {
  UniPoly p = UniPoly({-1, 1}) * UniPoly({-1, 1}) * UniPoly({1, 0, 1});
  auto sq = squarefree_decomposition(p);
  ASSERT_EQ(sq.size(), 2u);
  EXPECT_EQ(sq[0].first, (UniPoly{1, 0, 1}));
  EXPECT_EQ(sq[0].second, 1);
  EXPECT_EQ(sq[1].first, (UniPoly{-1, 1}));
  EXPECT_EQ(sq[1].second, 2);
}

TEST(Factor, Examples) {
  auto f = poly_factor_q(UniPoly{-1, 0, 1});
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].first, (UniPoly{-1, 1}));
  EXPECT_EQ(f.factors[1].first, (UniPoly{1, 1}));
  EXPECT_TRUE(is_irreducible_q(UniPoly{1, 0, 1}));
  EXPECT_TRUE(is_irreducible_q(UniPoly{-2, 0, 1}));
  // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2)
  auto g = poly_factor_q(UniPoly{4, 0, 0, 0, 1});
  ASSERT_EQ(g.factors.size(), 2u);
  EXPECT_EQ(g.expand(), (UniPoly{4, 0, 0, 0, 1}));
  // Swinnerton-Dyer polynomial for sqrt2, sqrt3 is irreducible.
  EXPECT_TRUE(is_irreducible_q(UniPoly{1, 0, -10, 0, 1}));
  EXPECT_THROW(poly_factor_q(UniPoly{}), InputError);
}

TEST(Factor, RandomProductsRoundTrip) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 15; ++trial) {
    UniPoly a = random_poly(rng, 1 + trial % 3, 20), b = random_poly(rng, 2, 20);
    UniPoly p = a * b;
    auto f = poly_factor_q(p);
    EXPECT_EQ(f.expand(), p);
    int total = 0;
    for (const auto& [fac, m] : f.factors) {
      EXPECT_TRUE(fac.is_monic());
      total += fac.degree() * m;
    }
    EXPECT_EQ(total, p.degree());
    EXPECT_GE(f.factors.size(), 2u);
  }
}

TEST(Factor, RationalRoots) {
  auto r = rational_roots_exhaustive(UniPoly{-6, 1, 1});  // (x+3)(x-2)
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0], -3);
  EXPECT_EQ(r[1], 2);
}

TEST(Matrix, CharpolyAndSolve) {
  Matrix<Rational> m(2, 2, Rational(0));
  m(0, 0) = 2;
  m(0, 1) = 1;
  m(1, 0) = 1;
  m(1, 1) = 2;
  EXPECT_EQ(charpoly(m), (UniPoly{3, -4, 1}));
  auto x = solve(m, std::vector<Rational>{Rational(3), Rational(3)});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0], 1);
  EXPECT_EQ((*x)[1], 1);
  Matrix<Rational> s(2, 2, Rational(1));
  EXPECT_FALSE(solve(s, std::vector<Rational>{Rational(1), Rational(2)}).has_value());
  EXPECT_EQ(nullspace(s, Rational(1)).size(), 1u);
}

TEST(NumberField, TraceNormInverse) {
  auto k = NumberField::make(UniPoly{-2, 0, 1}, "Q(sqrt2)");
  auto a = NumberFieldElem::generator(k);
  EXPECT_EQ(nf_trace(a), 0);
  EXPECT_EQ(nf_norm(a), -2);
  EXPECT_EQ(a * a, NumberFieldElem(k, Rational(2)));
  auto b = a + Rational(1);
  EXPECT_EQ(b * b.inverse(), NumberFieldElem(k, Rational(1)));
  EXPECT_EQ(b.charpoly(), (UniPoly{-1, -2, 1}));
  EXPECT_THROW(NumberField::make(UniPoly{-1, 0, 1}), InputError);
  auto k2 = NumberField::make(UniPoly{-3, 0, 1});
  EXPECT_THROW(a + NumberFieldElem::generator(k2), DomainMismatch);
}

TEST(NumberField, EmbeddingIsRingMap) {
  auto k = NumberField::make(UniPoly{-1, -1, 0, 1});
  auto rs = root_cluster(k->modulus(), 256);
  auto a = NumberFieldElem::generator(k) + Rational(3);
  auto b = NumberFieldElem::generator(k) * NumberFieldElem::generator(k) - NumberFieldElem(k, Rational(2));
  for (const auto& r : rs.roots) {
    Complex lhs = (a * b).embed(r);
    Complex rhs = a.embed(r) * b.embed(r);
    EXPECT_LT(abs(lhs - rhs).to_double(), 1e-60);
  }
}

TEST(Cyclotomic, SumOfRootsOfUnity) {
  for (long p : {2L, 3L, 5L, 7L}) {
    CycloElem s(p, Rational(0));
    for (long j = 0; j < p; ++j) s += CycloElem::zeta_power(p, j);
    EXPECT_TRUE(s.is_zero()) << p;
    EXPECT_EQ(CycloElem::zeta_power(p, 1) * CycloElem::zeta_power(p, p - 1), CycloElem(p, Rational(1)));
  }
  EXPECT_THROW(CycloElem(4, Rational(1)), UnsupportedError);
}

TEST(Cyclotomic, EmbedMatchesExp) {
  auto z = CycloElem::zeta_power(5, 2) * Rational(3) + CycloElem(5, Rational(1));
  Complex v = z.embed(200);
  Complex w = exp_2pi_i(Real(make_rational(2, 5), 200)) * Real(3L, 200) + Complex(Rational(1), 200);
  EXPECT_LT(abs(v - w).to_double(), 1e-50);
}

TEST(Roots, Examples) {
  auto rs = root_cluster(UniPoly{-2, 0, 1}, 256);
  ASSERT_EQ(rs.roots.size(), 2u);
  EXPECT_NEAR(rs.roots[0].re.to_double(), -1.41421356237, 1e-10);
  EXPECT_NEAR(rs.roots[1].re.to_double(), 1.41421356237, 1e-10);
  EXPECT_TRUE(all_roots_real(rs));
  auto ri = root_cluster(UniPoly{1, 0, 1}, 256);
  EXPECT_FALSE(all_roots_real(ri));
  EXPECT_NEAR(std::fabs(ri.roots[0].im.to_double()), 1.0, 1e-30);
}

TEST(Roots, ProductReproducesPolynomial) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    UniPoly p = random_poly(rng, 5, 30);
    auto rs = root_cluster(p, 256);
    std::vector<Complex> prod{Complex(Rational(1), 256)};
    for (const auto& r : rs.roots) {
      std::vector<Complex> next(prod.size() + 1, Complex(256));
      for (std::size_t i = 0; i < prod.size(); ++i) {
        next[i + 1] += prod[i];
        next[i] -= prod[i] * r;
      }
      prod = next;
    }
    UniPoly m = p.monic();
    for (int i = 0; i <= m.degree(); ++i) {
      Complex d = prod[static_cast<std::size_t>(i)] - Complex(m.coeff(static_cast<std::size_t>(i)), 256);
      EXPECT_LT(abs(d).to_double(), 1e-40);
    }
  }
}
