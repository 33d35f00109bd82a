#include "adelic/archimedean.hpp"
#include "adelic/harness/identities.hpp"
#include "adelic/ideal.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

using namespace adelic;

namespace {

// Coordinates in the power basis 1, zeta, ..., zeta^{p-2}.
std::vector<Int> power_basis(const CycloInt& x) {
  long p = x.p();
  std::vector<Int> c(static_cast<size_t>(p - 1));
  Int top = x.coord(p - 1);
  c[0] = -top;
  for (long j = 1; j <= p - 2; ++j) c[j] = x.coord(j) - top;
  return c;
}

// Schoolbook product of power-basis polynomials reduced by Phi_p = 1 + X + ... + X^{p-1}.
std::vector<Int> poly_mul_mod_phi(const std::vector<Int>& a, const std::vector<Int>& b, long p) {
  std::vector<Int> f(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) f[i + j] += a[i] * b[j];
  for (long d = static_cast<long>(f.size()) - 1; d >= p - 1; --d) {
    Int lead = f[d];
    for (long k = 0; k < p; ++k) f[d - (p - 1) + k] -= lead;
  }
  f.resize(static_cast<size_t>(p - 1));
  return f;
}

std::complex<double> embed(const CycloInt& x, long c) {
  long p = x.p();
  std::complex<double> s = 0;
  for (long j = 1; j < p; ++j) s += x.coord(j).get_d() * std::polar(1.0, 2 * M_PI * ((c * j) % p) / p);
  return s;
}

}  // namespace

TEST(Cyclotomic, ProductMatchesPolynomialReduction) {
  std::mt19937_64 rng(21);
  for (long p : {3L, 5L, 7L, 11L, 13L})
    for (int i = 0; i < 50; ++i) {
      CycloInt a = harness::random_cyclo(rng, p, 20), b = harness::random_cyclo(rng, p, 20);
      EXPECT_EQ(power_basis(a * b), poly_mul_mod_phi(power_basis(a), power_basis(b), p));
    }
}

TEST(Cyclotomic, IntegersAndTrace) {
  for (long p : {5L, 7L}) {
    CycloInt three = CycloInt::integer(p, Int(3));
    EXPECT_EQ(three.as_rational(), Int(3));
    EXPECT_EQ(three.trace(), Int(3 * (p - 1)));
    EXPECT_EQ(CycloInt::zeta(p).trace(), Int(-1));
    EXPECT_EQ(CycloInt::zeta(p).pow(static_cast<unsigned long>(p)), CycloInt::one(p));
  }
}

TEST(Cyclotomic, TraceIsSumOfConjugates) {
  std::mt19937_64 rng(22);
  for (long p : {5L, 7L, 11L}) {
    CycloInt x = harness::random_cyclo(rng, p, 30);
    CycloInt s(p);
    for (long c = 1; c < p; ++c) s += x.galois(c);
    ASSERT_TRUE(s.as_rational().has_value());
    EXPECT_EQ(*s.as_rational(), x.trace());
  }
}

TEST(Cyclotomic, GaloisIsRingHomomorphism) {
  std::mt19937_64 rng(23);
  long p = 11;
  for (int i = 0; i < 20; ++i) {
    CycloInt a = harness::random_cyclo(rng, p, 9), b = harness::random_cyclo(rng, p, 9);
    for (long c = 1; c < p; ++c) EXPECT_EQ((a * b).galois(c), a.galois(c) * b.galois(c));
  }
}

TEST(Cyclotomic, NormAgainstComplexEmbeddings) {
  std::mt19937_64 rng(24);
  for (long p : {5L, 7L, 11L})
    for (int i = 0; i < 20; ++i) {
      CycloInt x = harness::random_cyclo(rng, p, 4);
      if (x.is_zero()) continue;
      std::complex<double> prod = 1;
      for (long c = 1; c < p; ++c) prod *= embed(x, c);
      EXPECT_NEAR(norm_int(x).get_d(), prod.real(), 1e-6 * std::max(1.0, std::abs(prod)));
      EXPECT_EQ(Rat(norm_int(x)), (x * conjugate_product(x)).as_rational().value());
    }
}

TEST(Cyclotomic, InverseAndNormMultiplicative) {
  std::mt19937_64 rng(25);
  for (long p : {5L, 7L, 11L})
    for (int i = 0; i < 10; ++i) {
      CycloInt a = harness::random_cyclo(rng, p, 6), b = harness::random_cyclo(rng, p, 6);
      if (a.is_zero() || b.is_zero()) continue;
      EXPECT_EQ(to_rat(a) * inverse(to_rat(a)), CycloRat::one(p));
      EXPECT_EQ(norm_int(a * b), norm_int(a) * norm_int(b));
    }
  EXPECT_THROW(inverse(CycloRat(5)), invalid_input);
}

TEST(Cyclotomic, LambdaNormIsP) {
  for (long p : {3L, 5L, 7L, 11L, 13L}) EXPECT_EQ(norm_int(CycloInt::lambda(p)), Int(p));
}

TEST(Cyclotomic, KappaByTraceHoldsEverywhere) {
  std::mt19937_64 rng(26);
  for (long p : {5L, 7L, 11L, 13L})
    for (int i = 0; i < 100; ++i) {
      CycloInt x = harness::random_cyclo(rng, p, 40);
      auto t = kappa_by_trace(x);
      for (long c = 1; c < p; ++c) EXPECT_EQ(t[c - 1], p * x.coord(c));
    }
}

TEST(Cyclotomic, KappaPlusFormCarriesTheTrace) {
  std::mt19937_64 rng(27);
  for (long p : {5L, 7L}) {
    CycloInt x = harness::random_cyclo(rng, p, 40);
    auto t = kappa_by_trace_plus(x);
    for (long c = 1; c < p; ++c) EXPECT_EQ(t[c - 1], p * x.coord(c) + 2 * x.trace());
  }
}

TEST(Cyclotomic, TraceProductCoordinates) {
  std::mt19937_64 rng(28);
  for (long p : {5L, 7L, 11L})
    for (int i = 0; i < 30; ++i) {
      CycloInt a = harness::random_cyclo(rng, p, 20), b = harness::random_cyclo(rng, p, 20);
      EXPECT_EQ((a * b).trace(), trace_product_coordinates(a, b));
    }
}

TEST(Cyclotomic, TraceZeroNorms) {
  std::mt19937_64 rng(29);
  for (long p : {5L, 7L, 11L, 13L})
    for (int i = 0; i < 30; ++i) {
      CycloInt w = harness::random_trace_zero(rng, p, 20);
      ASSERT_EQ(w.trace(), Int(0));
      auto nc = norms_compare(w);
      EXPECT_TRUE(nc.pairing_identity);
      EXPECT_TRUE(nc.squared_chain);
    }
  EXPECT_THROW(norms_compare(CycloInt::one(5)), invalid_input);
}

TEST(Cyclotomic, LambdaExpansionRoundTrip) {
  std::mt19937_64 rng(30);
  for (long p : {3L, 5L, 7L})
    for (bool bal : {false, true})
      for (int i = 0; i < 20; ++i) {
        CycloInt x = harness::random_cyclo(rng, p, 30);
        auto e = lambda_expand(x, 6, bal);
        EXPECT_EQ(lambda_reassemble(e, p), x);
        for (const auto& d : e.digits) {
          if (bal) EXPECT_LE(abs_int(d) * 2, Int(p));
          else EXPECT_TRUE(d >= 0 && d < p);
        }
      }
}

TEST(Cyclotomic, LambdaValuationOfPowers) {
  for (long p : {5L, 7L}) {
    CycloInt l = CycloInt::lambda(p);
    for (long k = 0; k < 5; ++k) EXPECT_EQ(lambda_expand(l.pow(static_cast<unsigned long>(k)), 6, false).valuation, k);
    EXPECT_EQ(lambda_expand(CycloInt::integer(p, Int(p)), p + 1, false).valuation, p - 1);
  }
}

TEST(Cyclotomic, ActionIsMultiplicativeInTheta) {
  long p = 7;
  std::mt19937_64 rng(31);
  CycloInt x = harness::random_cyclo(rng, p, 3);
  auto a = GroupRingElement::from_coeffs(p, {Int(1), Int(0), Int(2), Int(0), Int(0), Int(1)});
  auto b = GroupRingElement::from_coeffs(p, {Int(0), Int(1), Int(0), Int(1), Int(0), Int(0)});
  EXPECT_EQ(act(x, a + b), act(x, a) * act(x, b));
  EXPECT_EQ(act(x, a * b), act(act(x, b), a));
  EXPECT_EQ(act(x, GroupRingElement::sigma(p, 3)), x.galois(3));
}

TEST(Cyclotomic, CertifiedMagnitude) {
  CycloRat z = CycloRat::zeta(7);
  for (long c = 1; c < 7; ++c) {
    EXPECT_TRUE(certified_abs_le(z, c, Rat(2)).below);
    EXPECT_FALSE(certified_abs_le(z, c, Rat(1)).below);
  }
}

TEST(Ideal, CharacteristicIdealOfSolutions) {
  auto d = characteristic_data(3, 0, Int(19), Int(18), Int(7));
  EXPECT_TRUE(d.norm_alpha_is_zp && d.ideal_power_is_principal && d.ideal_norm_is_z && d.conjugates_coprime);
  auto e = characteristic_data(3, 1, Int(2), Int(1), Int(1));
  EXPECT_TRUE(e.alpha_integral && e.norm_alpha_is_zp && e.ideal_norm_is_z);
  EXPECT_THROW(characteristic_data(3, 0, Int(19), Int(18), Int(6)), invalid_input);
}

TEST(Ideal, NormIsIndex) {
  // (lambda) has index p; (2) has index 2^{p-1}
  for (long p : {5L, 7L}) {
    EXPECT_EQ(CycloIdeal::from_generators({CycloInt::lambda(p)}).norm(), Int(p));
    EXPECT_EQ(CycloIdeal::from_generators({CycloInt::integer(p, Int(2))}).norm(), pow_int(Int(2), p - 1));
    EXPECT_TRUE(CycloIdeal::from_generators({CycloInt::lambda(p)}).contains(CycloInt::integer(p, Int(p))));
    EXPECT_FALSE(CycloIdeal::from_generators({CycloInt::lambda(p)}).contains(CycloInt::one(p)));
  }
}
