#include "oracles.hpp"
#include "quadrature_oracle.hpp"

#include <lzero/kernel.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace lzero;
using lzero::reference::agreeing_places;
using lzero::reference::from_float50;
using lzero::reference::lower_gamma_quadrature;
using lzero::reference::upper_gamma_quadrature;

namespace {

Real close_to(const Complex& a, const Complex& b) { return abs(a - b); }

Real tolerance(int digits) { return pow10(-digits); }

}  // namespace

TEST(LogGamma, SmallIntegersAndHalf) {
  const PrecisionContext ctx(40);
  WorkingPrecision wp(ctx.bits());
  EXPECT_LT(abs(log_gamma(Complex(1), ctx)), tolerance(40));
  EXPECT_LT(abs(log_gamma(Complex(2), ctx)), tolerance(40));
  EXPECT_LT(close_to(log_gamma(Complex(5), ctx), Complex(log(Real(24)))), tolerance(40));
  const Complex half = log_gamma(Complex(Real(1) / 2L), ctx);
  EXPECT_LT(close_to(half, Complex(log(pi()) / 2L)), tolerance(40));
}

TEST(LogGamma, AgreesWithWeierstrassProduct) {
  const PrecisionContext ctx(35);
  WorkingPrecision wp(ctx.bits(10));
  for (const auto& [re, im] : {std::pair{0.25, 5.0}, {3.0, -17.5}, {0.5, 40.0}, {-2.5, 1.0}}) {
    const Complex z{Real(re), Real(im)};
    const Complex expected = reference::log_gamma_series(z, 400);
    const Complex got = log_gamma(z, ctx);
    EXPECT_LT(close_to(got, expected), tolerance(35)) << re << " + " << im << "i";
  }
}

TEST(LogGamma, ReflectionAndRecurrence) {
  const PrecisionContext ctx(30);
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> re(-6.0, 6.0);
  std::uniform_real_distribution<double> im(-60.0, 60.0);
  WorkingPrecision wp(ctx.bits(10));
  for (int i = 0; i < 100; ++i) {
    const Complex z(Real(re(rng)), Real(im(rng)));
    // Gamma(z) Gamma(1 - z) = pi / sin(pi z), compared as values.
    const Complex product = exp(log_gamma(z, ctx) + log_gamma(Complex(1) - z, ctx));
    const Complex piz = z * pi();
    const Complex sin_piz(sin(piz.re) * (exp(piz.im) + exp(-piz.im)) / 2L,
                          cos(piz.re) * (exp(piz.im) - exp(-piz.im)) / 2L);
    const Complex expected = Complex(pi()) / sin_piz;
    EXPECT_LT(abs(product - expected) / abs(expected), tolerance(25));
    // log Gamma(z + 1) = log Gamma(z) + log z on the continuous branch.
    const Complex step = log_gamma(z + 1L, ctx) - log_gamma(z, ctx) - log(z);
    EXPECT_LT(abs(step.re), tolerance(25));
    const Real wraps = step.im / (pi() * 2L);
    EXPECT_LT(abs(wraps - round(wraps)), tolerance(25));
  }
}

TEST(LogGamma, PolesThrow) {
  const PrecisionContext ctx(20);
  EXPECT_THROW(log_gamma(Complex(0), ctx), PoleError);
  EXPECT_THROW(log_gamma(Complex(-3), ctx), PoleError);
  EXPECT_NO_THROW(log_gamma(Complex(Real(-3), Real(1e-6)), ctx));
}

TEST(Hurwitz, ClassicalValues) {
  const PrecisionContext ctx(40);
  WorkingPrecision wp(ctx.bits());
  const Real pi2 = pi() * pi();
  EXPECT_LT(close_to(riemann_zeta(Complex(2), ctx), Complex(pi2 / 6L)), tolerance(40));
  EXPECT_LT(close_to(hurwitz_zeta(Complex(2), mpq_class(1, 2), ctx), Complex(pi2 / 2L)), tolerance(40));
  EXPECT_LT(close_to(riemann_zeta(Complex(0), ctx), Complex(Real(-1) / 2L)), tolerance(40));
  EXPECT_LT(close_to(riemann_zeta(Complex(-1), ctx), Complex(Real(-1) / 12L)), tolerance(40));
  const Complex first_zero(Real(1) / 2L, Real("14.134725141734693790457251983562470270784257115699"));
  EXPECT_LT(abs(riemann_zeta(first_zero, ctx)), tolerance(38));
}

TEST(Hurwitz, AgreesWithDirectSummation) {
  const PrecisionContext ctx(30);
  WorkingPrecision wp(ctx.bits(10));
  for (const auto& [re, im, p, q] : {std::tuple{3.0, 7.0, 3L, 7L}, {2.0, -25.0, 1L, 2L}, {1.5, 3.0, 1L, 1L},
                                     {0.5, 30.0, 5L, 6L}, {-1.5, 10.0, 2L, 9L}}) {
    const Complex s{Real(re), Real(im)};
    const Complex expected = reference::hurwitz_brute_force(s, Real(mpq_class(p, q)), 2000);
    EXPECT_LT(close_to(hurwitz_zeta(s, mpq_class(p, q), ctx), expected), tolerance(30)) << re << " " << im;
  }
}

TEST(Hurwitz, MultiplicationFormula) {
  // sum_{r=1}^{m} zeta(s, r/m) = m^s zeta(s).
  const PrecisionContext ctx(30);
  WorkingPrecision wp(ctx.bits(5));
  const Complex s(Real(1) / 2L, Real(21));
  for (long m : {2L, 3L, 7L}) {
    Complex sum(0);
    for (long r = 1; r <= m; ++r) sum += hurwitz_zeta(s, mpq_class(r, m), ctx);
    const Complex expected = pow(Real(m), s) * riemann_zeta(s, ctx);
    EXPECT_LT(close_to(sum, expected), tolerance(28)) << m;
  }
}

TEST(Hurwitz, DomainAndPole) {
  const PrecisionContext ctx(20);
  EXPECT_THROW(riemann_zeta(Complex(1), ctx), PoleError);
  EXPECT_THROW(hurwitz_zeta(Complex(2), mpq_class(0), ctx), DomainError);
  EXPECT_THROW(hurwitz_zeta(Complex(2), mpq_class(3, 2), ctx), DomainError);
}


TEST(IncompleteGamma, ElementaryCases) {
  const PrecisionContext ctx(40);
  WorkingPrecision wp(ctx.bits());
  // Gamma(1, x) = e^{-x}; Gamma(2, x) = (x + 1) e^{-x}.
  EXPECT_LT(close_to(upper_incomplete_gamma(Complex(1), Real(1), ctx), Complex(exp(Real(-1)))), tolerance(40));
  const Real half = Real(1) / 2L;
  EXPECT_LT(close_to(upper_incomplete_gamma(Complex(2), half, ctx), Complex((half + 1L) * exp(-half))), tolerance(40));
  // Gamma(1/2, x) = sqrt(pi) erfc(sqrt x); at x = 40 the fraction branch is used.
  const Complex big = upper_incomplete_gamma(Complex(half), Real(40), ctx);
  EXPECT_GT(big.re, Real(0));
  EXPECT_LT(big.re, exp(Real(-40)));
}

TEST(IncompleteGamma, AgreesWithQuadrature) {
  const PrecisionContext ctx(30);
  WorkingPrecision wp(ctx.bits());
  for (const auto& [re, im, x] : {std::tuple{6.0, 14.0, 2 * std::numbers::pi}, {0.5, 3.0, 1.0}, {2.25, -9.0, 12.0},
                                  {1.0, 30.0, 0.5}}) {
    const Complex expected = from_float50(upper_gamma_quadrature(re, im, x));
    const Complex got = upper_incomplete_gamma(Complex{Real(re), Real(im)}, Real(x), ctx);
    EXPECT_LT(abs(got - expected) / abs(expected), tolerance(28)) << re << " " << im << " " << x;
  }
}

TEST(IncompleteGamma, UpperPlusLowerIsGamma) {
  const PrecisionContext ctx(30);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> re(1.0, 8.0);
  std::uniform_real_distribution<double> im(-8.0, 8.0);
  std::uniform_real_distribution<double> xs(0.1, 15.0);
  WorkingPrecision wp(ctx.bits());
  for (int i = 0; i < 20; ++i) {
    const double sr = re(rng), si = im(rng), x = xs(rng);
    const Complex s{Real(sr), Real(si)};
    const Complex total = upper_incomplete_gamma(s, Real(x), ctx) + from_float50(lower_gamma_quadrature(sr, si, x));
    const Complex expected = gamma(s, ctx);
    EXPECT_LT(abs(total - expected) / abs(expected), tolerance(27)) << sr << " " << si << " " << x;
  }
}

TEST(IncompleteGamma, NonPositiveIntegerOrder) {
  const PrecisionContext ctx(30);
  WorkingPrecision wp(ctx.bits());
  // Gamma(0, 1) = E1(1).
  const Real e1("0.21938393439552027367716377546012164903104729340691");
  EXPECT_LT(close_to(upper_incomplete_gamma(Complex(0), Real(1), ctx), Complex(e1)), tolerance(30));
  // Gamma(-1, x) = (e^{-x}/x - Gamma(0, x)).
  const Real x(3);
  const Complex g0 = upper_incomplete_gamma(Complex(0), x, ctx);
  const Complex gm1 = upper_incomplete_gamma(Complex(-1), x, ctx);
  EXPECT_LT(close_to(gm1, Complex(exp(-x) / x) - g0), tolerance(30));
  EXPECT_THROW(upper_incomplete_gamma(Complex(2), Real(0), ctx), DomainError);
}

TEST(LambertW, FixedPoints) {
  const PrecisionContext ctx(40);
  WorkingPrecision wp(ctx.bits());
  EXPECT_TRUE(lambert_w0(Real(0), ctx).is_zero());
  EXPECT_LT(abs(lambert_w0(exp(Real(1)), ctx) - 1L), tolerance(40));
  EXPECT_LT(abs(lambert_w0(-exp(Real(-1)), ctx) + 1L), tolerance(18));
  EXPECT_THROW(lambert_w0(Real(-1) / 2L, ctx), LambertDomainError);
}

TEST(LambertW, InvertsWexpW) {
  const PrecisionContext ctx(40);
  WorkingPrecision wp(ctx.bits(10));
  const double lo = -std::exp(-1.0) + 1e-3;
  for (int i = 0; i < 100; ++i) {
    // Dense near the branch point, log-spaced on the positive axis up to 1e6.
    const double x = i < 20 ? lo + (0.0 - lo) * i / 20.0 : std::pow(10.0, -3.0 + 9.0 * (i - 20) / 79.0);
    const Real xr(x);
    const Real w = lambert_w0(xr, ctx);
    EXPECT_LT(abs(w * exp(w) - xr), tolerance(38) * (abs(xr) + 1L)) << x;
    EXPECT_GT(w, Real(-1));
  }
}

TEST(Bernoulli, MatchesRecurrence) {
  const auto expected = reference::bernoulli_recurrence(60);
  for (std::size_t n = 0; n <= 60; ++n) EXPECT_EQ(bernoulli(n), expected[n]) << n;
  EXPECT_EQ(bernoulli(1), mpq_class(-1, 2));
  EXPECT_EQ(bernoulli(12), mpq_class(-691, 2730));
  EXPECT_EQ(bernoulli(13), mpq_class(0));
}

TEST(Precision, ContextValidation) {
  EXPECT_THROW(PrecisionContext(5), std::invalid_argument);
  EXPECT_THROW(PrecisionContext(30, 2), std::invalid_argument);
  const PrecisionContext ctx(50);
  EXPECT_EQ(ctx.working_digits(), 65);
  EXPECT_GE(ctx.bits(), static_cast<mpfr_prec_t>(65 * 3.32));
}

TEST(Precision, ScopeRestoresBits) {
  const auto before = working_bits();
  {
    WorkingPrecision wp(1000);
    EXPECT_EQ(working_bits(), 1000);
    EXPECT_EQ(Real(1).bits(), 1000);
  }
  EXPECT_EQ(working_bits(), before);
}

TEST(Real, DecimalFormatting) {
  WorkingPrecision wp(digits_to_bits(40));
  const Real x("14.134725141734693790457251983562470270784");
  EXPECT_EQ(x.to_fixed(20), "14.13472514173469379046");
  EXPECT_EQ(Real(-1).to_fixed(3), "-1.000");
  EXPECT_EQ(agreeing_places(x, x, 40), 40);
}
