#include "adelic/stickelberger.hpp"

#include <gtest/gtest.h>

using namespace adelic;

TEST(Bernoulli, KnownValues) {
  auto B = bernoulli_numbers(14);
  EXPECT_EQ(B[0], Rat(1));
  EXPECT_EQ(B[2], ratio(1, 6));
  EXPECT_EQ(B[4], ratio(-1, 30));
  EXPECT_EQ(B[12], ratio(-691, 2730));
  EXPECT_EQ(B[14], ratio(7, 6));
  for (size_t k = 3; k < B.size(); k += 2) EXPECT_EQ(B[k], Rat(0));
}

TEST(Stickelberger, FuchsianCoefficients) {
  for (long p : {5L, 7L, 11L}) {
    StickelbergerContext ctx(p);
    for (long n = 2; n < p; ++n)
      for (long c = 1; c < p; ++c) EXPECT_EQ(ctx.fuchsian(n)[c], Int((n * c) / p));
    for (long c = 1; c < p; ++c) EXPECT_EQ(ctx.fuchsian(p)[c], Int(c));
    EXPECT_THROW(ctx.fuchsian(1), invalid_input);
    EXPECT_THROW(ctx.fueter((p + 1) / 2), invalid_input);
  }
}

TEST(Stickelberger, FueterIsRelativeWeightOne) {
  for (long p : {5L, 7L, 11L, 13L}) {
    StickelbergerContext ctx(p);
    for (long n = 1; n <= (p - 1) / 2; ++n) {
      auto w = weights(ctx.fueter(n));
      ASSERT_TRUE(w.relative.has_value());
      EXPECT_EQ(*w.relative, Int(1));
      EXPECT_TRUE(w.positive);
    }
  }
}

TEST(Stickelberger, FermatQuotientIsEquivariant) {
  for (long p : {5L, 7L, 11L}) {
    StickelbergerContext ctx(p);
    for (long a = 1; a < p; ++a)
      for (long n = 2; n <= p; ++n)
        EXPECT_EQ(ctx.fermat_quotient(apply_sigma(a, ctx.fuchsian(n))), mod(a * ctx.fermat_quotient(ctx.fuchsian(n)), p));
  }
}

TEST(Stickelberger, ThetaPMapsToMinusOne) {
  for (long p : {3L, 5L, 7L, 11L, 13L, 37L}) EXPECT_EQ(StickelbergerContext(p).fermat_quotient(StickelbergerContext(p).fuchsian(p)), p - 1);
}

TEST(Stickelberger, IdealMembership) {
  for (long p : {5L, 7L, 11L}) {
    StickelbergerContext ctx(p);
    IntMatrix basis = stickelberger_basis(ctx);
    EXPECT_TRUE(in_stickelberger_ideal(basis, ctx.fuchsian(p)));
    EXPECT_TRUE(in_stickelberger_ideal(basis, ctx.fueter(1) * ctx.fueter(1)));
    EXPECT_FALSE(in_stickelberger_ideal(basis, GroupRingElement::one(p)));
  }
}

TEST(Bernoulli, IrregularPrimes) {
  // 37 | B_32, 59 | B_44, 67 | B_58; 41 and 43 are regular
  struct Case {
    long p;
    std::vector<long> k;
  };
  for (const auto& c : {Case{37, {5}}, Case{59, {15}}, Case{67, {9}}, Case{41, {}}, Case{43, {}}}) {
    StickelbergerContext ctx(c.p);
    auto prof = bernoulli_profile(ctx);
    EXPECT_EQ(prof.irregular_k, c.k) << c.p;
    EXPECT_EQ(prof.irregularity, static_cast<long>(c.k.size()));
    EXPECT_LT(4 * prof.irregularity, c.p - 1);
  }
}

TEST(Bernoulli, ModifiedIdempotentEigenvalues) {
  for (long p : {7L, 11L, 13L}) {
    StickelbergerContext ctx(p);
    auto prof = bernoulli_profile(ctx);
    for (const auto& [k, E] : prof.E)
      for (long m = 1; m < p; ++m) EXPECT_EQ(apply_sigma(m, E), Int(powmod(m, k, p)) * E) << p << " " << k;
    EXPECT_EQ(prof.E.at(1), (Int(-1) * ctx.fuchsian(p)).reduced(Int(p)));
  }
}

TEST(Bernoulli, FueterRankBound) {
  for (long p : {5L, 7L, 11L, 13L, 17L, 19L}) {
    StickelbergerContext ctx(p);
    auto prof = bernoulli_profile(ctx);
    EXPECT_EQ(prof.fueter_rank, prof.r);
    EXPECT_GE(4 * prof.r, p - 1);
  }
}

TEST(Annihilator, SmallPrimesOnlyHaveSubgroupFixedCandidates) {
  for (long p : {5L, 7L}) {
    StickelbergerContext ctx(p);
    auto cands = enumerate_weight2_kernel(ctx);
    ASSERT_FALSE(cands.empty());
    for (const auto& t : cands) EXPECT_FALSE(only_trivial_fix(t)) << t.str();
    EXPECT_THROW(construct_weight2_annihilator(ctx), construction_failed);
    auto w = construct_weight2_annihilator(ctx, true);
    EXPECT_FALSE(w.subgroup_free);
    EXPECT_EQ(w.recipe, "waived");
  }
}

TEST(Annihilator, ExistsFromElevenOn) {
  for (long p : {11L, 13L, 17L}) {
    StickelbergerContext ctx(p);
    auto w = construct_weight2_annihilator(ctx);
    EXPECT_TRUE(w.subgroup_free);
    EXPECT_EQ(ctx.fermat_quotient(w.psi), 0);
    EXPECT_TRUE(in_stickelberger_ideal(stickelberger_basis(ctx), w.psi));
    auto wt = weights(w.psi);
    ASSERT_TRUE(wt.relative.has_value());
    EXPECT_EQ(*wt.relative, Int(2));
    // the enumeration contains the constructed element
    auto all = enumerate_weight2_kernel(ctx);
    EXPECT_NE(std::find(all.begin(), all.end(), w.psi), all.end());
  }
}
