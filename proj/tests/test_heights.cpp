#include "recdio/heights.hpp"
#include "recdio/upoly.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace recdio;
using testing_support::r;

TEST(WeilHeight, Examples) {
  EXPECT_EQ(weil_height(r(1)).value, 1);
  EXPECT_EQ(weil_height(r(2, 3)).value, 3);
  EXPECT_EQ(weil_height(r(3, 2)).value, 3);
  EXPECT_EQ(weil_height(pow(r(2, 3), 5)).value, 243);
  EXPECT_EQ(weil_height(r(-3, 7)).value, 7);
  EXPECT_THROW(weil_height(r(0)), InputError);
  EXPECT_EQ(weil_height(r(1)).log(), 0.0);
}

TEST(SHeight, Examples) {
  EXPECT_EQ(s_height(r(3, 4), PlaceSet({2})).value, 1);
  EXPECT_EQ(s_height(r(1, 3), PlaceSet({2})).value, 3);
  EXPECT_EQ(s_height(r(6), PlaceSet()).value, 1);
  EXPECT_THROW(s_height(r(0), PlaceSet()), InputError);
}

TEST(SUnits, Examples) {
  EXPECT_TRUE(is_s_unit(r(4, 9), PlaceSet({2, 3})));
  EXPECT_FALSE(is_s_unit(r(5, 2), PlaceSet({2})));
  EXPECT_TRUE(is_s_integer(r(5, 2), PlaceSet({2})));
  EXPECT_FALSE(is_s_integer(r(1, 7), PlaceSet({2, 3})));
  EXPECT_TRUE(is_s_integer(r(0), PlaceSet()));
  EXPECT_THROW(is_s_unit(r(0), PlaceSet()), InputError);
}

TEST(PlaceSet, Validation) {
  EXPECT_THROW(PlaceSet({4}), InputError);
  EXPECT_THROW(PlaceSet({3, 3}), InputError);
  EXPECT_TRUE(PlaceSet({7, 2}).contains(2));
  EXPECT_TRUE(PlaceSet().includes_archimedean());
}

TEST(FactorInteger, TrialDivision) {
  auto f = factor_integer(Integer("600851475143"));
  std::vector<std::pair<Integer, unsigned>> want{{71, 1}, {839, 1}, {1471, 1}, {6857, 1}};
  EXPECT_EQ(f, want);
  EXPECT_THROW(factor_integer(Integer("1000000000039") * Integer("1000000000039"), 1000), IncompleteFactorizationError);
}

TEST(RootHeightBound, Examples) {
  EXPECT_EQ(root_height_bound({r(2), r(-3), r(1)}).value, 6);
  EXPECT_LE(weil_height(r(1)).value, 6);
  EXPECT_LE(weil_height(r(1, 2)).value, 6);
  EXPECT_EQ(root_height_bound({r(1), r(0)}).value, 1);
  EXPECT_THROW(root_height_bound({r(0), r(1)}), InputError);
  EXPECT_THROW(root_height_bound({r(1)}), InputError);
}

TEST(ProjectiveHeight, MatchesIndependentComputation) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    std::vector<Rational> xs;
    for (int k = 0; k < 1 + static_cast<int>(rng() % 4); ++k) xs.push_back(oracle::random_rational(rng, 100000, false));
    EXPECT_EQ(affine_projective_height(xs).value, oracle::projective_height_one(xs));
  }
}

TEST(HeightLaws, RandomRationals) {
  std::mt19937_64 rng(41);
  const long bound = 1'000'000'000;
  for (int i = 0; i < 1000; ++i) {
    Rational x = oracle::random_rational(rng, bound), y = oracle::random_rational(rng, bound), z = oracle::random_rational(rng, bound);
    auto H = [](const Rational& v) { return weil_height(v).value; };
    ASSERT_EQ(H(x), oracle::height(x));
    EXPECT_EQ(H(1 / x), H(x));
    long m = static_cast<long>(rng() % 7) - 3;
    EXPECT_EQ(H(pow(x, m)), ipow(H(x), static_cast<unsigned long>(std::labs(m))));
    EXPECT_LE(H(x * y * z), H(x) * H(y) * H(z));
    std::vector<Rational> xs{x, y, z};
    Integer proj = affine_projective_height(xs).value;
    Rational sum = x + y + z;
    if (!is_zero(sum)) {
      EXPECT_LE(H(sum), 3 * proj);
    }
    EXPECT_LE(std::max({H(x), H(y), H(z)}), proj);
    EXPECT_LE(proj, H(x) * H(y) * H(z));
  }
}

TEST(SHeight, DecompositionProperties) {
  std::mt19937_64 rng(43);
  std::vector<PlaceSet> sets{PlaceSet(), PlaceSet({2}), PlaceSet({2, 3, 5}), PlaceSet({7, 11})};
  for (int i = 0; i < 500; ++i) {
    Rational x = oracle::random_rational(rng, 100000);
    for (const auto& s : sets) {
      EXPECT_LE(s_height(x, s).value, weil_height(x).value);
      if (is_s_unit(x, s)) {
        EXPECT_EQ(s_height(x, s).value, 1);
        EXPECT_EQ(s_height(1 / x, s).value, 1);
      }
      EXPECT_EQ(is_s_integer(x, s), s_height(x, s).value == 1);
    }
  }
}

TEST(GaussNorm, MultiplicativeForRationalPolynomials) {
  std::mt19937_64 rng(47);
  const unsigned long primes[] = {2, 3, 5, 7, 11, 13};
  for (int i = 0; i < 200; ++i) {
    auto random_poly = [&] {
      std::vector<Rational> c;
      int d = 1 + static_cast<int>(rng() % 4);
      for (int k = 0; k <= d; ++k) c.push_back(oracle::random_rational(rng, 60, k == d));
      return UPoly(c);
    };
    UPoly a = random_poly(), b = random_poly(), ab = a * b;
    for (auto p : primes) {
      EXPECT_EQ(gauss_valuation(ab.coeffs(), p), gauss_valuation(a.coeffs(), p) + gauss_valuation(b.coeffs(), p));
      long oracle_min = 1L << 40;
      for (const auto& c : ab.coeffs())
        if (c != 0) oracle_min = std::min(oracle_min, oracle::valuation(c, p));
      EXPECT_EQ(gauss_valuation(ab.coeffs(), p), oracle_min);
    }
  }
}
