#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mtv/elliptic.hpp"

using namespace mtv;

namespace {

constexpr Prec kPrec = 256;

Complex cx(double re, double im, Prec prec = kPrec) { return Complex(Real(re, prec), Real(im, prec)); }

Complex rho(Prec prec = kPrec) { return Complex(Real(make_rational(-1, 2), prec), sqrt(Real(3L, prec)) / 2L); }

Complex J_of(const Complex& tau, Prec prec, long T = 120) {
  Complex a = eval_qseries(eisenstein_E4(T), tau, prec).value;
  return a * a * a / eval_qseries(delta_tilde(T), tau, prec).value;
}

}  // namespace

TEST(Eval, ConstantAndPeriodicity) {
  auto one = RSeries::constant(Rational(1), 30);
  auto v = eval_qseries(one, cx(0.3, 0.7), kPrec);
  EXPECT_LT(abs(v.value - Complex(Rational(1), kPrec)).to_double(), 1e-70);
  auto d = delta_tilde(80);
  auto a = eval_qseries(d, cx(0, 1), kPrec), b = eval_qseries(d, cx(1, 1), kPrec);
  EXPECT_LT(std::fabs(abs(a.value).to_double() - abs(b.value).to_double()), 1e-60);
  // conjugate symmetry for real coefficients: f(-conj(tau)) = conj(f(tau))
  auto c = eval_qseries(d, cx(0.21, 0.9), kPrec), e = eval_qseries(d, cx(-0.21, 0.9), kPrec);
  EXPECT_LT(abs(c.value - e.value.conj()).to_double(), 1e-60);
  EXPECT_THROW(eval_qseries(d, cx(0, -1), kPrec), InputError);
  EXPECT_THROW(eval_qseries(d, cx(0, 0.01), kPrec), ConvergenceError);
}

TEST(Eval, ClassicalJValues) {
  EXPECT_LT(abs(J_of(Complex::i(kPrec), kPrec) - Complex(Rational(1728), kPrec)).to_double(), 1e-50);
  EXPECT_LT(abs(J_of(rho(), kPrec)).to_double(), 1e-50);
  // Independent check through the completed lattice sums.
  for (const Complex& t : {Complex::i(kPrec), rho()}) {
    auto e4 = lattice_sum_eisenstein_completed(4, 1, t, kPrec).value;
    auto e6 = lattice_sum_eisenstein_completed(6, 1, t, kPrec).value;
    Complex e43 = e4 * e4 * e4;
    Complex j = e43 * Real(1728L, kPrec) / (e43 - e6 * e6);
    EXPECT_LT(abs(j - J_of(t, kPrec)).to_double(), 1e-25);
  }
}

TEST(Eval, DoublingIsHonest) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> re(-1.0, 1.0), im(0.5, 2.0);
  const long T = 36;
  std::vector<RSeries> pool = {eisenstein_E4(2 * T), eisenstein_E6(2 * T), delta_tilde(2 * T),
                               eisenstein_gamma0_infty(4, 2, 2 * T), eta_quotient(EtaQuotientSpec::parse("1:8,2:8", 2), 2 * T),
                               eisenstein_gamma0_infty(6, 5, 2 * T), fricke_eisenstein(4, 3, 2 * T)};
  int evaluated = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto& f = pool[static_cast<std::size_t>(trial) % pool.size()];
    Complex tau = cx(re(rng), im(rng));
    try {
      auto a = eval_qseries(f.truncated(T), tau, kPrec);
      auto b = eval_qseries(f, tau, kPrec);
      EXPECT_LE(abs(a.value - b.value).to_double(), a.err) << trial;
      ++evaluated;
    } catch (const ConvergenceError&) {
    }
  }
  EXPECT_GE(evaluated, 35);
}

TEST(Lattice, PlainSumAgainstClosedForm) {
  const Complex t = cx(0, 2);
  auto plain = lattice_sum_eisenstein(4, 2, t, 200, 128);
  auto exact = eval_qseries(eisenstein_gamma0_infty(4, 2, 60), t, 128);
  EXPECT_LT(abs(plain.value - exact.value).to_double(), plain.err);
  // Only the identity orbit survives when N exceeds every |c tau + d| scale.
  auto huge = lattice_sum_eisenstein(4, 1000000, cx(0.1, 1.3), 2, 128);
  EXPECT_LT(abs(huge.value - Complex(Rational(1), 128)).to_double(), 1e-20);
  EXPECT_THROW(lattice_sum_eisenstein(2, 1, t, 10, 128), InputError);
}

TEST(Lattice, DefectExponent) {
  for (long lambda : {4L, 6L}) {
    const Complex t = cx(0.1, 1.3, 128);
    auto exact = eval_qseries(eisenstein_level1(lambda, 80), t, 128).value;
    double d1 = abs(lattice_sum_eisenstein(lambda, 1, t, 100, 128).value - exact).to_double();
    double d2 = abs(lattice_sum_eisenstein(lambda, 1, t, 200, 128).value - exact).to_double();
    double slope = std::log2(d2 / d1);
    EXPECT_NEAR(slope, 2.0 - static_cast<double>(lambda), 0.5) << lambda;
  }
}

TEST(Lattice, CompletedSumMatches) {
  for (auto [lambda, n] : {std::pair{4L, 1L}, std::pair{6L, 1L}, std::pair{4L, 2L}, std::pair{4L, 3L}, std::pair{6L, 5L}}) {
    const Complex t = cx(0.1, 1.3);
    auto v = lattice_sum_eisenstein_completed(lambda, n, t, kPrec);
    auto e = eval_qseries(eisenstein_gamma0_infty(lambda, n, 100), t, kPrec);
    EXPECT_LT(abs(v.value - e.value).to_double(), 1e-20) << lambda << " " << n;
  }
  EXPECT_THROW(lattice_sum_eisenstein_completed(4, 4, cx(0, 1), kPrec), UnsupportedError);
}

TEST(Roots, Examples) {
  auto r = root_cluster(UniPoly({-2, 0, 1}), kPrec);
  ASSERT_EQ(r.roots.size(), 2u);
  EXPECT_LT(std::fabs(r.roots[0].re.to_double() + std::sqrt(2.0)), 1e-14);
  EXPECT_LT(std::fabs(r.roots[1].re.to_double() - std::sqrt(2.0)), 1e-14);
  auto s = root_cluster(UniPoly({1, 0, 1}), kPrec);
  ASSERT_EQ(s.roots.size(), 2u);
  EXPECT_LT(abs(s.roots[0] + Complex::i(kPrec)).to_double(), 1e-50);
  EXPECT_LT(abs(s.roots[1] - Complex::i(kPrec)).to_double(), 1e-50);
  auto o = newform_basis_level1(24, 10);
  auto t = root_cluster(o.t2_charpoly, kPrec);
  EXPECT_TRUE(all_roots_real(t));
  // Reassembly reproduces the coefficients.
  UniPoly p({3, -1, 4, 1, -5, 9, 2});
  auto rs = root_cluster(p, kPrec);
  std::vector<Complex> c{Complex(Rational(1), kPrec)};
  for (const auto& z : rs.roots) {
    std::vector<Complex> n(c.size() + 1, Complex(kPrec));
    for (std::size_t i = 0; i < c.size(); ++i) {
      n[i + 1] += c[i];
      n[i] -= c[i] * z;
    }
    c = n;
  }
  for (std::size_t i = 0; i < c.size(); ++i)
    EXPECT_LT(abs(c[i] * Real(2L, kPrec) - Complex(p.coeff(i), kPrec)).to_double(), 1e-40);
}

TEST(Reconstruct, Examples) {
  Real x = Real(22L, kPrec) / Real(7L, kPrec);
  EXPECT_EQ(rational_reconstruct(x, Integer(1000), 1e-30).value(), make_rational(22, 7));
  Real y = Real(-355L, kPrec) / Real(113L, kPrec);
  EXPECT_EQ(rational_reconstruct(y, Integer(1000), 1e-30).value(), make_rational(-355, 113));
  EXPECT_FALSE(rational_reconstruct(Real::pi(kPrec), Integer(1000), 1e-30).has_value());
  EXPECT_THROW(rational_reconstruct(x, Integer(1000), 1e-3), PrecisionError);
  BigComplex z{Complex(Real(1L, kPrec) / Real(3L, kPrec), Real(1e-40, kPrec)), 1e-35};
  EXPECT_EQ(rational_reconstruct(z, Integer(100)).value(), make_rational(1, 3));
  BigComplex w{Complex(Real(1L, kPrec) / Real(3L, kPrec), Real(1e-20, kPrec)), 1e-35};
  EXPECT_FALSE(rational_reconstruct(w, Integer(100)).has_value());
}

TEST(Precision, EnvOverride) {
  setenv("MTV_PREC_BITS", "300", 1);
  EXPECT_EQ(working_precision(), 300);
  setenv("MTV_PREC_BITS", "12", 1);
  EXPECT_THROW(working_precision(), InputError);
  setenv("MTV_PREC_BITS", "abc", 1);
  EXPECT_THROW(working_precision(), InputError);
  unsetenv("MTV_PREC_BITS");
  EXPECT_EQ(working_precision(), 256);
}
