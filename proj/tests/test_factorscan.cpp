#include "criteria.hpp"
#include "oracles.hpp"
#include "recdio/factorscan.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace recdio;
using testing_support::planted_product;
using testing_support::poly;
using testing_support::r;
using testing_support::spec_from;

namespace {

Bounds with_n(std::uint64_t n) {
  Bounds b;
  b.n_bound = n;
  return b;
}

/// Ascending integer coefficients of a positive multiple of p.
std::vector<oracle::Int> integer_coefficients(const UPoly& p) {
  oracle::Int l = 1;
  for (int i = 0; i <= p.degree(); ++i) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.coeff(static_cast<std::size_t>(i)).get_den().get_mpz_t());
  std::vector<oracle::Int> out;
  for (int i = 0; i <= p.degree(); ++i) out.push_back(oracle::Int(p.coeff(static_cast<std::size_t>(i)) * l));
  return out;
}

RationalPoly z_squared_minus_x() { return poly(2, {{{0, 2}, r(1)}, {{1, 0}, r(-1)}}); }

}  // namespace

TEST(FactorRational, Examples) {
  auto f = factor_rational(UPoly{r(-1), r(0), r(1)});
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].factor * f.factors[1].factor, (UPoly{r(-1), r(0), r(1)}));
  EXPECT_TRUE(factor_rational(UPoly{r(1), r(0), r(1)}).is_irreducible());
  UPoly p{r(1), r(0), r(-3), r(2)};  // 2Z^3 - 3Z^2 + 1 = (Z - 1)^2 (2Z + 1)
  auto g = factor_rational(p);
  EXPECT_EQ(g.expand(), p);
  EXPECT_EQ(g.degree_multiset(), (std::vector<int>{1, 1, 1}));
}

TEST(FactorRational, DegreeCap) {
  std::vector<Rational> c(10, Rational(0));
  c[0] = 1;
  c[9] = 1;
  EXPECT_THROW(factor_rational(UPoly(c)), UnsupportedDegreeError);
  EXPECT_NO_THROW(factor_rational(UPoly(c), 9));
}

TEST(Scan, PlantedProductAlwaysSplits) {
  auto rows = scan(spec_from({r(1, 2)}, planted_product(), {2}), 1, 40);
  for (const auto& row : rows) EXPECT_EQ(row.degrees, (std::vector<int>{1, 1})) << row.n;
}

TEST(Scan, PerfectSquareSpecialisations) {
  auto rows = scan(spec_from({r(1, 4)}, z_squared_minus_x(), {2}), 1, 40);
  for (const auto& row : rows) EXPECT_TRUE(row.reducible()) << row.n;
  auto rep = factor_scan(spec_from({r(1, 4)}, z_squared_minus_x(), {2}, with_n(40)));
  EXPECT_EQ(rep.reducible_classes, std::vector<Progression>{Progression(0, 1)});
  ASSERT_EQ(rep.generic.size(), 1u);
  EXPECT_TRUE(rep.generic[0].certified);
}

TEST(Scan, SquareOnlyForEvenIndices) {
  auto rows = scan(spec_from({r(1, 2)}, z_squared_minus_x(), {2}), 1, 60);
  for (const auto& row : rows) EXPECT_EQ(row.reducible(), row.n % 2 == 0) << row.n;
}

TEST(Scan, DegenerateRowsAreMarked) {
  // (1 - 2 X1) Z + 1 - 2 X1 vanishes at n = 1 for gamma = 1/2
  auto g = poly(2, {{{0, 1}, r(1)}, {{1, 1}, r(-2)}, {{0, 0}, r(1)}, {{1, 0}, r(-2)}});
  auto rows = scan(spec_from({r(1, 2)}, g, {2}), 1, 3);
  EXPECT_TRUE(rows[0].degenerate);
  EXPECT_FALSE(rows[0].reducible());
  EXPECT_FALSE(rows[1].degenerate);
}

TEST(Scan, ParallelMatchesSerial) {
  auto spec = spec_from({r(1, 2), r(1, 3)}, poly(3, {{{0, 0, 3}, r(1)}, {{1, 0, 1}, r(-1)}, {{0, 1, 0}, r(-1)}}), {2, 3});
  auto a = scan(spec, 1, 40, false), b = scan(spec, 1, 40, true);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].degrees, b[i].degrees);
    EXPECT_EQ(a[i].factors, b[i].factors);
  }
}

TEST(GenericFactorization, RoundTripCriterion) {
  auto v = criteria::factor_roundtrips();
  EXPECT_TRUE(v.pass) << v.detail;
}

TEST(GenericFactorization, SquareRootAfterReparametrization) {
  auto spec = spec_from({r(1, 2)}, z_squared_minus_x(), {2}, with_n(40));
  auto rep = factor_scan(spec);
  ASSERT_EQ(rep.generic.size(), 1u);
  const auto& gf = rep.generic[0];
  EXPECT_EQ(gf.param.progression, Progression(0, 2));
  EXPECT_EQ(gf.param.bases, std::vector<Rational>{r(1, 2)});
  // Z - V1 or Z + V1 with V1 = (1/2)^t
  ASSERT_EQ(gf.h1.size(), 1u);
  auto v1 = RationalPoly::variable(1, 0);
  EXPECT_TRUE(gf.h1[0] == v1 || gf.h1[0] == -v1);
  EXPECT_EQ(gf.h1[0] + gf.h2[0], RationalPoly(1));
  EXPECT_TRUE(gf.s_integral_on_samples);
}

TEST(GenericFactorization, NoCertificateForIrreducibleSpecialisations) {
  auto rep = factor_scan(spec_from({r(1, 2)}, poly(2, {{{0, 2}, r(1)}, {{1, 0}, r(1)}}), {2}, with_n(200)));
  EXPECT_TRUE(rep.reducible_classes.empty());
  EXPECT_TRUE(rep.irreducible_verdict());
  for (const auto& row : rep.per_n) EXPECT_FALSE(row.reducible()) << row.n;
}

TEST(GenericFactorization, NonMonicInputIsMonicized) {
  // 2 Z^2 - 2 X1: the scan runs on Z~^2 - 4 X1
  auto g = poly(2, {{{0, 2}, r(2)}, {{1, 0}, r(-2)}});
  auto rep = factor_scan(spec_from({r(1, 2)}, g, {2}, with_n(30)));
  EXPECT_TRUE(rep.monicized);
  EXPECT_EQ(rep.scanned, poly(2, {{{0, 2}, r(1)}, {{1, 0}, r(-4)}}));
  ASSERT_EQ(rep.generic.size(), 1u);
  EXPECT_EQ(rep.generic[0].param.progression, Progression(0, 2));
}

TEST(GenericFactorizationProperty, CertifiedImpliesReducibleOnProgression) {
  std::vector<ProblemSpec> specs{
      spec_from({r(1, 2)}, planted_product(), {2}, with_n(30)),
      spec_from({r(1, 2)}, z_squared_minus_x(), {2}, with_n(30)),
      spec_from({r(1, 4)}, z_squared_minus_x(), {2}, with_n(30)),
      // (Z - X1)(Z^2 + X2) with gammas 1/2, 1/3
      spec_from({r(1, 2), r(1, 3)},
                poly(3, {{{0, 0, 3}, r(1)}, {{1, 0, 2}, r(-1)}, {{0, 1, 1}, r(1)}, {{1, 1, 0}, r(-1)}}), {2, 3}, with_n(24)),
  };
  for (const auto& spec : specs) {
    auto rep = factor_scan(spec);
    ASSERT_FALSE(rep.generic.empty());
    for (const auto& gf : rep.generic) {
      ASSERT_TRUE(gf.certified);
      EXPECT_EQ(gf.extrapolation_failed, 0u);
      EXPECT_EQ(gf.extrapolation_checked, 50u);
      for (const auto& row : rep.per_n)
        if (gf.param.progression.contains(row.n)) {
          EXPECT_TRUE(row.reducible()) << row.n;
          auto v = gf.param.variables_at(row.n);
          auto h1 = GenericFactorization::specialize(gf.h1, v), h2 = GenericFactorization::specialize(gf.h2, v);
          EXPECT_EQ(h1 * h2, spec.specialize(row.n));
        }
    }
    for (const auto& row : rep.per_n) {
      if (row.degenerate) continue;
      EXPECT_EQ(std::accumulate(row.degrees.begin(), row.degrees.end(), 0), static_cast<int>(spec.degree()));
    }
  }
}

TEST(FactorRationalProperty, RandomProductsRefactor) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    UPoly p = UPoly::constant(oracle::random_rational(rng, 9));
    int deg = 0;
    while (deg < 6) {
      int k = 1 + static_cast<int>(rng() % 3);
      std::vector<Rational> c;
      for (int i = 0; i < k; ++i) c.push_back(oracle::random_rational(rng, 6, false));
      c.push_back(1);
      p = p * UPoly(c);
      deg += k;
    }
    auto f = factor_rational(p);
    EXPECT_EQ(f.expand(), p);
    for (const auto& fac : f.factors) {
      EXPECT_EQ(fac.factor.lc(), 1);
      if (fac.factor.degree() > 1) {
        EXPECT_TRUE(oracle::rational_roots(integer_coefficients(fac.factor)).empty());
      }
    }
  }
}
