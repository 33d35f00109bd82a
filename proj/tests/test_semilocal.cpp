#include "adelic/semilocal.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace adelic;

namespace {
SemilocalElement random_sl(std::mt19937_64& rng, long p, const Int& m) {
  std::vector<Int> v(static_cast<size_t>(p - 1));
  for (auto& c : v) c = uniform(rng, 0, 1000000);
  return SemilocalElement(p, m, v);
}
}  // namespace

TEST(Semilocal, ReductionCommutesWithProducts) {
  std::mt19937_64 rng(41);
  long p = 7;
  Int m = pow_int(Int(13), 3);
  for (int i = 0; i < 20; ++i) {
    CycloInt a = CycloInt(p, std::vector<Int>{1, 5, -2, 8, 0, 3}), b = CycloInt::zeta_pow(p, i + 1) + a;
    EXPECT_EQ(sl_embed(a * b, m), sl_embed(a, m) * sl_embed(b, m));
    EXPECT_EQ(sl_embed(a, m).galois(3), sl_embed(a.galois(3), m));
  }
  auto u = random_sl(rng, p, m);
  EXPECT_EQ(u.reduced(Int(13)), sl_embed(u.lift(), Int(13)));
}

TEST(Semilocal, InverseOfUnits) {
  std::mt19937_64 rng(42);
  for (long p : {5L, 7L}) {
    Int m = pow_int(Int(11), 4);
    for (int i = 0; i < 20; ++i) {
      auto u = random_sl(rng, p, m);
      if (!u.is_unit()) continue;
      EXPECT_EQ(u * u.inverse(), SemilocalElement::one(p, m));
    }
  }
}

TEST(Semilocal, FactorCountsMatchMultiplicativeOrder) {
  for (long p : {5L, 7L, 11L, 13L})
    for (long r : {2L, 3L, 19L, 23L, 29L, 31L, 43L, 53L}) {
      if (r == p) continue;
      for (long N : {1L, 3L}) {
        auto L = factor_phi(r, p, N);
        long f = oracle::order_mod(r, p);
        EXPECT_EQ(L.f, f);
        EXPECT_EQ(static_cast<long>(L.factors.size()), (p - 1) / f);
        ModPoly prod = ModPoly::monomial(0, L.modulus);
        for (const auto& F : L.factors) {
          EXPECT_EQ(F.deg(), f);
          prod = prod * F;
        }
        EXPECT_EQ(prod, cyclotomic_poly(p, L.modulus)) << "p=" << p << " r=" << r;
      }
    }
}

TEST(Semilocal, IdempotentsAreOrthogonal) {
  auto L = factor_phi(11, 5, 3);  // 11 = 1 mod 5: four linear factors
  ASSERT_EQ(L.idempotents.size(), 4u);
  SemilocalElement sum(5, L.modulus);
  for (size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(L.idempotents[i] * L.idempotents[i], L.idempotents[i]);
    for (size_t j = 0; j < i; ++j) EXPECT_EQ(L.idempotents[i] * L.idempotents[j], SemilocalElement(5, L.modulus));
    sum = sum + L.idempotents[i];
  }
  EXPECT_EQ(sum, SemilocalElement::one(5, L.modulus));
}

TEST(Semilocal, CrtRecombination) {
  std::mt19937_64 rng(43);
  long p = 7;
  Int m1 = pow_int(Int(29), 2), m2 = pow_int(Int(43), 2);
  auto u = random_sl(rng, p, m1 * m2);
  auto back = crt_combine({u.reduced(m1), u.reduced(m2)});
  EXPECT_EQ(back, u);
}

TEST(Semilocal, LocalRootsOfUnity) {
  long p = 5;
  for (long y : {11L, 22L, 31L * 41L}) {
    Int m = pow_int(Int(y), 4);
    std::vector<SemilocalElement> parts;
    for (const auto& L : factor_over(p, Int(y), 4)) {
      std::vector<long> ex;
      for (size_t i = 0; i < L.factors.size(); ++i) ex.push_back(static_cast<long>(i) % p);
      parts.push_back(local_root_of_unity(L, ex));
    }
    auto rho = crt_combine(parts);
    EXPECT_EQ(rho.pow(5), SemilocalElement::one(p, m));
  }
  // a single inert prime gives only global roots
  auto L = factor_phi(2, 5, 6);
  auto rho = local_root_of_unity(L, {3});
  EXPECT_EQ(global_root_index(rho), std::optional<long>(3));
}

TEST(Semilocal, PthRootNearOne) {
  std::mt19937_64 rng(44);
  long p = 7;
  Int y(13), m = pow_int(y, 5);
  for (int i = 0; i < 10; ++i) {
    auto t = random_sl(rng, p, m);
    auto g = SemilocalElement::one(p, m) + y * t;
    auto R = g.pow(static_cast<unsigned long>(p));
    EXPECT_EQ(pth_root_near_one(R, y), g);
  }
  EXPECT_THROW(pth_root_near_one(SemilocalElement::zeta_pow(p, m, 1), y), precondition_failed);
}

TEST(Semilocal, BalancedDigitsRoundTrip) {
  std::mt19937_64 rng(45);
  for (long y : {22L, 23L, -22L}) {
    Int m = pow_int(abs_int(Int(y)), 5);
    auto u = random_sl(rng, 5, m);
    auto d = y_digits(u, Int(y), 5);
    for (const auto& t : d.digits) EXPECT_TRUE(in_balanced_set(t, abs_int(Int(y))));
    EXPECT_EQ(y_reassemble(d, 5, m), u);
  }
  EXPECT_THROW(y_digits(SemilocalElement::one(5, Int(100)), Int(10), 3), precondition_failed);
}

TEST(Semilocal, Validation) {
  EXPECT_THROW(factor_phi(5, 5, 2), invalid_input);
  EXPECT_THROW(factor_phi(4, 5, 2), invalid_input);
  EXPECT_THROW(SemilocalElement(5, Int(1)), invalid_input);
}
