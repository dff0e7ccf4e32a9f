#include "criteria.hpp"
#include "recdio/powersum.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace recdio;
using testing_support::r;

TEST(PowerSum, EvalExamples) {
  PowerSumSequence s({{r(2), r(1, 2)}, {r(1), r(1, 3)}});
  EXPECT_EQ(s.eval(1), r(4, 3));
  PowerSumSequence one({{r(1), r(1)}});
  for (std::uint64_t n : {0, 1, 17, 400}) EXPECT_EQ(one.eval(n), 1);
  auto merged = ExpPolynomial::from_terms({{r(1), r(1, 2)}, {r(-1), r(1, 2)}});
  EXPECT_TRUE(merged.is_zero());
  EXPECT_EQ(merged.eval(5), 0);
  EXPECT_THROW(PowerSumSequence({{r(1), r(1, 2)}, {r(-1), r(1, 2)}}), InputError);
  EXPECT_THROW(PowerSumSequence({{r(0), r(1, 2)}}), InputError);
  EXPECT_THROW(ExpPolynomial::from_terms({{r(1), r(0)}}), InputError);
}

TEST(PowerSum, Nondegeneracy) {
  EXPECT_TRUE(is_nondegenerate(PowerSumSequence({{r(1), r(1, 2)}, {r(1), r(1, 3)}})));
  EXPECT_FALSE(is_nondegenerate(PowerSumSequence({{r(1), r(1, 2)}, {r(1), r(-1, 2)}})));
  EXPECT_TRUE(is_nondegenerate(PowerSumSequence({{r(5), r(2, 3)}})));
}

TEST(PowerSum, RestrictExamples) {
  auto e = ExpPolynomial::from_terms({{r(1), r(1)}, {r(-1), r(-1)}});
  EXPECT_TRUE(restrict_to_progression(e, Progression(0, 2)).is_zero());
  EXPECT_EQ(restrict_to_progression(e, Progression(1, 2)), ExpPolynomial::from_terms({{r(2), r(1)}}));
  auto f = ExpPolynomial::from_terms({{r(1), r(1, 2)}, {r(1), r(-1, 2)}});
  EXPECT_EQ(restrict_to_progression(f, Progression(0, 2)), ExpPolynomial::from_terms({{r(2), r(1, 4)}}));
}

TEST(PowerSum, RestrictCommutesWithEvaluation) {
  std::mt19937_64 rng(7);
  for (const auto& t : criteria::zero_set_instances(30, 77)) {
    auto e = ExpPolynomial::from_terms(t);
    std::uint64_t m = 1 + rng() % 5, a = rng() % m;
    auto res = restrict_to_progression(e, Progression(a, m));
    for (int k = 0; k < 100; ++k) {
      std::uint64_t tt = rng() % 60;
      ASSERT_EQ(res.eval(tt), e.eval(a + m * tt));
    }
  }
}

TEST(Progression, Validation) {
  EXPECT_THROW(Progression(0, 0), InputError);
  EXPECT_THROW(Progression(3, 2), InputError);
  EXPECT_TRUE(Progression(1, 3).contains(7));
  EXPECT_FALSE(Progression(1, 3).contains(0));
  EXPECT_EQ(Progression(1, 3).to_string(), "1 mod 3");
}

TEST(ZeroSet, Examples) {
  auto alt = zero_set(ExpPolynomial::from_terms({{r(1), r(1)}, {r(-1), r(-1)}}));
  ASSERT_TRUE(alt);
  EXPECT_TRUE(alt->finite_zeros.empty());
  EXPECT_EQ(alt->progressions, std::vector<Progression>{Progression(0, 2)});

  auto zero = zero_set(ExpPolynomial());
  ASSERT_TRUE(zero);
  EXPECT_EQ(zero->progressions, std::vector<Progression>{Progression(0, 1)});

  auto once = zero_set(ExpPolynomial::from_terms({{r(1), r(1, 2)}, {r(-1), r(1, 3)}}));
  ASSERT_TRUE(once);
  EXPECT_EQ(once->finite_zeros, std::vector<std::uint64_t>{0});
  EXPECT_TRUE(once->progressions.empty());

  // 2^n - (-2)^n - 4 vanishes only at n = 1
  auto planted = zero_set(ExpPolynomial::from_terms({{r(1), r(2)}, {r(-1), r(-2)}, {r(-4), r(1)}}));
  ASSERT_TRUE(planted);
  EXPECT_EQ(planted->finite_zeros, std::vector<std::uint64_t>{1});
  EXPECT_FALSE(zero_set(ExpPolynomial::from_terms({{r(1), r(1)}, {r(-1), r(-1)}}), 1));
}

TEST(ZeroSet, MatchesBruteForceEnumeration) {
  auto v = criteria::zero_set_oracle(50, 10000, 5);
  EXPECT_TRUE(v.pass) << v.detail;
  auto w = criteria::zero_set_oracle(40, 2000, 99);
  EXPECT_TRUE(w.pass) << w.detail;
}

TEST(ZeroSet, FiniteZeroCountWithinSchmidtBound) {
  for (const auto& t : criteria::zero_set_instances(40, 3)) {
    auto e = ExpPolynomial::from_terms(t);
    if (e.is_zero() || !is_nondegenerate(e)) continue;
    auto zs = zero_set(e);
    ASSERT_TRUE(zs);
    EXPECT_TRUE(zs->progressions.empty());
    EXPECT_LE(Integer(static_cast<unsigned long>(zs->finite_zeros.size())), schmidt_bound(e.size(), 1, 1u << 26).exponent);
  }
}

TEST(ExpPolynomial, DeterminedByConsecutiveValues) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    ExpPolynomial e;
    int k = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < k; ++i) e.add_term(oracle::random_rational(rng, 7), oracle::random_rational(rng, 7));
    if (e.is_zero()) continue;
    bool all_zero = true;
    for (std::size_t n = 0; n < e.size(); ++n) all_zero = all_zero && is_zero(e.eval(n));
    EXPECT_FALSE(all_zero) << e.to_string();
    // a second representation with the same values on 2k points is the same object
    ExpPolynomial f = e + ExpPolynomial::from_terms({{r(1), r(3)}}) - ExpPolynomial::from_terms({{r(1), r(3)}});
    EXPECT_EQ(f, e);
  }
}

TEST(SchmidtBound, Examples) {
  EXPECT_EQ(schmidt_bound(1, 1).exponent, 5764801);
  EXPECT_EQ(schmidt_bound(2, 1).exponent, Integer("2177953337809371136"));
  EXPECT_EQ(schmidt_bound(1, 2).exponent, 5764801);
  EXPECT_EQ(schmidt_bound(2, 1).log10_c, "9.4587311645337884736e17");
  EXPECT_THROW(schmidt_bound(0, 1), InputError);
  EXPECT_THROW(schmidt_bound(1000, 3), SizeError);
}
