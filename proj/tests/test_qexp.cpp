#include <gtest/gtest.h>

#include <random>

#include "mtv/eisenstein.hpp"
#include "mtv/eta.hpp"
#include "mtv/hecke.hpp"
#include "mtv/numerics.hpp"
#include "mtv/qseries.hpp"

using namespace mtv;

namespace {

constexpr Prec kPrec = 256;

RSeries random_series(std::mt19937_64& rng, long trunc, int weight, long range = 50) {
  std::uniform_int_distribution<long> d(-range, range);
  std::vector<Rational> c;
  for (long i = 0; i <= trunc; ++i) c.push_back(make_rational(d(rng), 1 + std::abs(d(rng)) % 7));
  return RSeries(std::move(c), trunc, 1, FormMeta{weight, 1, {}});
}

std::vector<Complex> sample_points() {
  return {Complex::parse("i", kPrec), Complex::parse("0.2+2i", kPrec), Complex::parse("0.1+1.3i", kPrec)};
}

double defect(const Complex& a, const Complex& b) { return abs(a - b).to_double(); }

}  // namespace

TEST(QSeries, ProductExamples) {
  auto a = series_from_ints({1, 1, 0, 0});
  auto b = series_from_ints({1, -1, 0, 0});
  EXPECT_EQ(a * b, series_from_ints({1, 0, -1, 0}));
  auto one = RSeries::constant(Rational(1), 3);
  EXPECT_EQ(a * one, a);
  auto d = delta_tilde(6);
  auto d2 = d * d;
  EXPECT_EQ(d2.coeff(2), 1);
  EXPECT_EQ(d2.coeff(3), -48);
  EXPECT_EQ(d2.weight(), 24);
}

TEST(QSeries, TruncationAndDenominatorMerge) {
  auto a = series_from_ints({1, 2, 3, 4, 5});
  auto b = series_from_ints({1, 1, 1});
  auto s = a + b;
  EXPECT_EQ(s.trunc(), 2);
  std::vector<Rational> c{Rational(0), Rational(1), Rational(0), Rational(0), Rational(0)};
  RSeries half(c, 2, 2);  // q^{1/2}
  auto p = half * half;
  EXPECT_EQ(p.qdenom(), 2);
  EXPECT_EQ(p[2], 1);
  EXPECT_TRUE(p.has_integral_exponents());
  EXPECT_EQ(p.integral().coeff(1), 1);
  auto mixed = half * b;
  EXPECT_EQ(mixed.qdenom(), 2);
  EXPECT_EQ(mixed[1], 1);
  EXPECT_EQ(mixed[3], 1);
  EXPECT_THROW(a.truncated(9), TruncationError);
  EXPECT_THROW(a.coeff(5), TruncationError);
}

TEST(QSeries, MetadataAlgebra) {
  auto e4 = eisenstein_E4(10);
  auto g = eta_quotient(EtaQuotientSpec({{1, 8}, {2, 8}}, 2), 10);
  auto p = e4 * g;
  EXPECT_EQ(p.weight(), 12);
  EXPECT_EQ(p.level(), 2);
  EXPECT_THROW(e4 + g, DomainMismatch);
  auto sq = series_pow(g, 3);
  EXPECT_EQ(sq.weight(), 24);
  EXPECT_EQ(sq.level(), 2);
  EXPECT_EQ(series_pow(g, 0).weight(), 0);
}

TEST(QSeries, RingAxiomsOnRandomSeries) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_series(rng, 12, 4), b = random_series(rng, 12, 4), c = random_series(rng, 9, 4);
    EXPECT_TRUE(agree((a + b) * c, a * c + b * c));
    EXPECT_TRUE(agree(a * b, b * a));
    EXPECT_TRUE(agree((a * b) * c, a * (b * c)));
    EXPECT_TRUE(agree(a - a, a * Rational(0)));
    EXPECT_EQ(series_pow(a, 3), a * a * a);
  }
}

TEST(QSeries, DomainMismatchBetweenFields) {
  auto k1 = NumberField::make(UniPoly{-2, 0, 1});
  auto k2 = NumberField::make(UniPoly{-3, 0, 1});
  auto f = to_field(series_from_ints({1, 1}), k1);
  auto g = to_field(series_from_ints({1, 1}), k2);
  EXPECT_THROW(f * g, DomainMismatch);
  auto h = to_field(series_from_ints({0, 1, 0}), k1).scaled(NumberFieldElem::generator(k1));
  EXPECT_EQ((h * h)[2], NumberFieldElem(k1, Rational(2)));
}

TEST(Eta, Examples) {
  auto d = delta_tilde(5);
  EXPECT_EQ(d, series_from_ints({0, 1, -24, 252, -1472, 4830}, FormMeta{12, 1, {}}));
  auto g = eta_quotient(EtaQuotientSpec::parse("1:8,2:8", 2), 30);
  EXPECT_EQ(g.coeff(0), 0);
  EXPECT_EQ(g.coeff(1), 1);
  for (long n = 0; n <= 30; ++n) EXPECT_TRUE(is_integer(g.coeff(n)));
  EXPECT_EQ(g.weight(), 8);
  auto e = eta_quotient(EtaQuotientSpec(), 4);
  EXPECT_EQ(e, RSeries::constant(Rational(1), 4));
  EXPECT_THROW(EtaQuotientSpec::parse("1:1", 1), InputError);
  EXPECT_THROW(EtaQuotientSpec::parse("3:24", 2), InputError);
  EXPECT_THROW(EtaQuotientSpec::parse("1-24", 1), InputError);
}

TEST(Eta, PowerOfDeltaMatchesProduct) {
  auto a = eta_quotient(EtaQuotientSpec({{1, 48}}, 1), 20);
  EXPECT_EQ(a, delta_tilde(20) * delta_tilde(20));
  // eta(z)^8 eta(2z)^8 = Delta(z)^{1/3} Delta(2z)^{1/3}: cube it.
  auto g = eta_quotient(EtaQuotientSpec({{1, 8}, {2, 8}}, 2), 20);
  auto rhs = delta_tilde(20) * op_V(delta_tilde(10), 2);
  EXPECT_TRUE(agree(series_pow(g, 3), rhs));
}

TEST(Eta, FrickeScalars) {
  EXPECT_EQ(EtaQuotientSpec::parse("1:8,2:8", 2).fricke_scalar(), 1);
  EXPECT_EQ(EtaQuotientSpec::parse("1:6,3:6", 3).fricke_scalar(), -1);
  EXPECT_EQ(EtaQuotientSpec::parse("1:4,5:4", 5).fricke_scalar(), 1);
  EXPECT_EQ(EtaQuotientSpec::parse("1:24", 1).fricke_scalar(), 1);
  EXPECT_EQ(EtaQuotientSpec::parse("1:8,2:8", 2).fricke_image(), EtaQuotientSpec::parse("2:8,1:8", 2));
  // eta(z)^16 eta(2z)^-8 ... weight 4, scalar (-i)^4 2^{-2} 2^{8} = 64
  EXPECT_EQ(EtaQuotientSpec::parse("1:16,2:-8", 2).fricke_scalar(), 64);
}

TEST(Eisenstein, Level1Coefficients) {
  auto e4 = eisenstein_E4(3);
  EXPECT_EQ(e4, series_from_ints({1, 240, 2160, 6720}, FormMeta{4, 1, {}}));
  auto e6 = eisenstein_E6(2);
  EXPECT_EQ(e6, series_from_ints({1, -504, -16632}, FormMeta{6, 1, {}}));
  EXPECT_THROW(eisenstein_level1(5, 3), InputError);
  EXPECT_THROW(eisenstein_level1(2, 3), InputError);
  // E4^3 - E6^2 = 1728 Delta
  auto lhs = series_pow(eisenstein_E4(30), 3) - series_pow(eisenstein_E6(30), 2);
  EXPECT_EQ(lhs, delta_tilde(30) * Rational(1728));
  // E4 E6 = E10, E4^2 = E8
  EXPECT_EQ(eisenstein_E4(30) * eisenstein_E4(30), eisenstein_level1(8, 30));
  EXPECT_EQ(eisenstein_E4(30) * eisenstein_E6(30), eisenstein_level1(10, 30));
}

TEST(Eisenstein, Gamma0Closed) {
  auto e = eisenstein_gamma0_infty(4, 2, 10);
  EXPECT_EQ(e.coeff(0), 1);
  EXPECT_EQ(e.coeff(1), -16);
  EXPECT_EQ(e.level(), 2);
  EXPECT_EQ(eisenstein_gamma0_infty(4, 3, 10).coeff(0), 1);
  EXPECT_EQ(eisenstein_gamma0_infty(6, 1, 10), eisenstein_level1(6, 10));
  EXPECT_THROW(eisenstein_gamma0_infty(4, 6, 10), UnsupportedError);
  auto f = fricke_eisenstein(4, 2, 10);
  EXPECT_EQ(f.coeff(0), 0);
  EXPECT_EQ(f, (eisenstein_E4(10) - op_V(eisenstein_E4(5), 2)) * make_rational(4, 15));
}

TEST(Eisenstein, DoubleFrickeIsIdentity) {
  // Applying the closed Fricke formula to E_{lambda,N} expressed as
  // a E(z) + b E(Nz) maps E(z) -> N^{lambda/2} E(Nz) and E(Nz) -> N^{-lambda/2} E(z).
  for (long lambda : {4L, 6L, 8L})
    for (long n : {2L, 3L, 5L}) {
      const long t = 40;
      const Rational nl(ipow(n, static_cast<unsigned long>(lambda)));
      const Rational nh(ipow(n, static_cast<unsigned long>(lambda / 2)));
      auto e = eisenstein_level1(lambda, t);
      auto ev = op_V(eisenstein_level1(lambda, t), n).truncated(t);
      // fricke = nh/(nl-1) (E - E(N.)); apply omega again termwise.
      auto twice = (ev * nh - e * (1 / nh)) * (nh / (nl - 1));
      EXPECT_EQ(twice.coeffs(), eisenstein_gamma0_infty(lambda, n, t).coeffs()) << lambda << " " << n;
    }
}

TEST(Eisenstein, ClosedFormsMatchLatticeOracle) {
  struct Case {
    long lambda, level;
  };
  for (Case cs : {Case{4, 1}, Case{6, 1}, Case{4, 2}, Case{4, 3}, Case{6, 5}, Case{8, 2}}) {
    auto e = eisenstein_gamma0_infty(cs.lambda, cs.level, 80);
    for (const auto& tau : sample_points()) {
      BigComplex exact = eval_qseries(e, tau, kPrec);
      BigComplex oracle = lattice_sum_eisenstein_completed(cs.lambda, cs.level, tau, kPrec);
      EXPECT_LT(defect(exact.value, oracle.value), 1e-20) << cs.lambda << "," << cs.level << " at " << tau.im.to_double();
      EXPECT_LT(oracle.err, 1e-20);
    }
  }
}

TEST(Eisenstein, FrickeMatchesOracleAtTransformedPoints) {
  // (E|omega_N)(z) = N^{lambda/2} (N z)^{-lambda} E(-1/(N z)).
  for (long n : {2L, 3L, 5L}) {
    const long lambda = 4;
    auto f = fricke_eisenstein(lambda, n, 120);
    for (const auto& z : {Complex::parse("0.05+0.9i", kPrec), Complex::parse("-0.3+1.1i", kPrec),
                          Complex::parse("0.25+0.7i", kPrec)}) {
      Complex nz = z * Real(n, kPrec);
      Complex w = -(Complex(Rational(1), kPrec) / nz);
      BigComplex e = lattice_sum_eisenstein_completed(lambda, n, w, kPrec);
      Complex lhs = e.value * pow(nz, -lambda) * Real(Rational(ipow(n, lambda / 2)), kPrec);
      BigComplex rhs = eval_qseries(f, z, kPrec);
      EXPECT_LT(defect(lhs, rhs.value), 1e-20) << n;
    }
  }
}

TEST(Hecke, UAndV) {
  auto f = delta_tilde(20);
  EXPECT_EQ(op_U(f, 1), f);
  EXPECT_EQ(op_V(f, 1), f);
  EXPECT_EQ(op_U(op_V(f, 3), 3), f);
  auto prod = f * op_V(delta_tilde(10), 2).truncated(20);
  EXPECT_EQ(prod.coeff(2), 0);
  EXPECT_EQ(prod.coeff(3), 1);
  EXPECT_EQ(prod.coeff(4), -24);
  auto u = op_U(prod, 2);
  EXPECT_EQ(u.valuation(), 2);
  EXPECT_EQ(u.coeff(1), 0);
  EXPECT_EQ(u.coeff(2), -24);
  EXPECT_EQ(u.trunc(), 10);
  EXPECT_EQ(slash_B(f, 2), op_V(f, 2) * Rational(64));
}

TEST(Hecke, DeltaEigenform) {
  auto d = delta_tilde(60);
  auto t2 = hecke_T(d, 2);
  EXPECT_EQ(t2, d.truncated(30) * Rational(-24));
  EXPECT_EQ(hecke_T(d, 3), d.truncated(20) * Rational(252));
  EXPECT_EQ(hecke_T(d, 1), d);
  EXPECT_THROW(hecke_T_to(d, 2, 40), TruncationError);
  try {
    hecke_T_to(d, 2, 40);
  } catch (const TruncationError& e) {
    EXPECT_EQ(e.required_order, 80);
  }
}

TEST(Hecke, Multiplicativity) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    auto f = random_series(rng, 60, 12);
    EXPECT_EQ(hecke_T(hecke_T(f, 2), 3).coeffs(), hecke_T(f, 6).coeffs());
    EXPECT_EQ(hecke_T(hecke_T(f, 3), 2).coeffs(), hecke_T(f, 6).coeffs());
    // T_4 = T_2^2 - 2^{k-1}
    auto lhs = hecke_T(hecke_T(f, 2), 2);
    auto rhs = hecke_T(f, 4) + f.truncated(15) * Rational(2048);
    EXPECT_EQ(lhs.coeffs(), rhs.coeffs());
  }
}

TEST(Hecke, RhoConjugate) {
  auto d = delta_tilde(10);
  EXPECT_EQ(rho_conjugate(d), d);
  auto k = NumberField::make(UniPoly{-5, 0, 1});
  auto f = to_field(d, k);
  EXPECT_EQ(rho_conjugate(f), f);
  auto ki = NumberField::make(UniPoly{1, 0, 1});
  EXPECT_THROW(rho_conjugate(to_field(d, ki)), UnsupportedError);
}
