#include "adelic/harness/pipeline.hpp"
#include "adelic/stickelberger.hpp"

#include <gtest/gtest.h>

#include <complex>

using namespace adelic;

TEST(Series, ExponentIsMPlusFactorialValuation) {
  EXPECT_EQ(series_exponent(0, 5), 0u);
  EXPECT_EQ(series_exponent(5, 5), 6u);
  EXPECT_EQ(series_exponent(25, 5), 31u);
  EXPECT_EQ(series_exponent(7, 7), 8u);
}

TEST(Series, SingleSigmaIsABinomialSeries) {
  // theta = sigma_1^{-1}: underline series (1 + zeta T)^{1/p}
  for (long p : {5L, 7L}) {
    auto th = GroupRingElement::sigma(p, 1);
    Series s = underline_series(th, 8, p);
    for (unsigned long m = 0; m <= 8; ++m)
      EXPECT_EQ(s[m], binomial(ratio(1, p), m) * CycloRat::zeta_pow(p, static_cast<long>(m)));
  }
}

TEST(Series, TableAgreesWithDirectProduct) {
  for (long p : {5L, 7L, 11L}) {
    StickelbergerContext ctx(p);
    for (const auto& th : {ctx.fueter(1), Int(2) * ctx.fueter(1), ctx.fuchsian(p)}) {
      auto t = binom_coeffs(th, 8);
      auto d = binom_series_direct(th, 8);
      for (long m = 0; m <= 8; ++m) EXPECT_EQ(t.a[m], d[m]) << p << " " << m;
    }
  }
}

TEST(Series, PowerIdentityAndIntegrality) {
  for (long p : {5L, 7L, 11L}) {
    StickelbergerContext ctx(p);
    auto th = ctx.fueter(1);
    EXPECT_TRUE(pth_power_check(th, 8).pass);
    auto t = binom_coeffs(th, 12);
    EXPECT_TRUE(t.integral);
    for (long m = 0; m <= 12; ++m) {
      EXPECT_EQ(t.denominators[m], pow_int(Int(p), series_exponent(static_cast<unsigned long>(m), p)));
      EXPECT_EQ(to_rat(t.numerators[m]), Rat(t.denominators[m]) * t.a[m]);
    }
  }
}

TEST(Series, QVariantIntegrality) {
  StickelbergerContext ctx(5);
  auto t = binom_coeffs(ctx.fueter(1), 12, SeriesVariant::full, 7);
  EXPECT_TRUE(t.integral);
  EXPECT_EQ(t.d, 7);
  EXPECT_EQ(t.denominators[7], pow_int(Int(7), 8));
}

TEST(Series, CoefficientBoundsAgainstFloatingPoint) {
  long p = 7;
  StickelbergerContext ctx(p);
  auto t = binom_coeffs(ctx.fueter(1), 10);
  for (long m = 1; m <= 10; ++m) {
    auto bc = coeff_bound_check(t, m);
    EXPECT_TRUE(bc.holds) << m;
    for (long c = 1; c < p; ++c) {
      std::complex<double> v = 0;
      for (long j = 1; j < p; ++j) v += t.a[m].coord(j).get_d() * std::polar(1.0, 2 * M_PI * ((c * j) % p) / p);
      EXPECT_LE(std::abs(v), bc.bound.get_d() * (1 + 1e-12));
    }
  }
}

TEST(Series, SemilocalSumIsEquivariantAndStable) {
  for (auto [p, x, y] : {std::tuple<long, long, long>{5, 3, 11}, {7, 2, 13}, {5, 3, 22}, {5, 3, -22}}) {
    StickelbergerContext ctx(p);
    auto th = ctx.fueter(1);
    EXPECT_TRUE(sl_equivariance(th, Int(x), Int(y), 6));
    auto s = sl_eval(binom_coeffs(th, 8), Int(x), Int(y), 6);
    EXPECT_TRUE(s.stable);
  }
  StickelbergerContext ctx(5);
  EXPECT_THROW(sl_eval(binom_coeffs(ctx.fueter(1), 8), Int(2), Int(10), 4), std::exception);
}

TEST(Series, SemilocalSumIsAPthRoot) {
  long p = 5, N = 6;
  Int x(3), y(22);
  StickelbergerContext ctx(p);
  auto th = Int(2) * ctx.fueter(1);
  auto phi = sl_eval(binom_coeffs(th, N), x, y, N).value;
  EXPECT_EQ(phi.pow(5), harness::series_target(th, x, y, N));
}

TEST(Series, DoubleTableReassembles) {
  long p = 5, N = 5;
  StickelbergerContext ctx(p);
  auto t = binom_coeffs(ctx.fueter(1), N);
  for (long y : {22L, -22L, 31L}) {
    Int m = pow_int(abs_int(Int(y)), N);
    auto rho = harness::mixed_local_root(p, Int(y), N);
    auto dt = double_table(t, rho, Int(3), Int(y), N);
    EXPECT_TRUE(dt.reassembly_ok) << y;
    for (const auto& row : dt.b)
      for (const auto& b : row) EXPECT_TRUE(in_balanced_set(b, abs_int(Int(y))));
    // the double sum equals rho times the series sum
    auto phi = sl_eval(t, Int(3), Int(y), N).value;
    EXPECT_EQ(double_sum_at(dt, nullptr, N), rho.reduced(m) * phi) << y;
  }
}

TEST(Series, WieferichSumsAgainstInverses) {
  for (long p : {5L, 7L, 11L}) {
    auto w = wieferich_sums(p);
    CycloRat S(p);
    for (long c = 1; c < p; ++c)
      if (2 * c > p) S += Rat(2 * p) * inverse(CycloRat::one(p) - CycloRat::zeta_pow(p, invmod(c, p)));
    EXPECT_EQ(to_rat(w.S), S);
    EXPECT_TRUE(w.conjugate_sum && w.half_congruence && w.diff_congruence && w.diff_nonzero);
    EXPECT_TRUE(w.lower_half_congruence && w.lower_diff_congruence);
  }
}
