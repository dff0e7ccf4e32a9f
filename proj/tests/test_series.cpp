#include "criteria.hpp"
#include "recdio/series.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace recdio;
using testing_support::poly;
using testing_support::r;

using Series = TruncatedSeries<Rational>;

TEST(TruncatedSeries, ArithmeticExamples) {
  auto one_plus = Series::from_poly(poly(1, {{{0}, r(1)}, {{1}, r(1)}}), 1);
  auto one_minus = Series::from_poly(poly(1, {{{0}, r(1)}, {{1}, r(-1)}}), 1);
  EXPECT_EQ(one_plus * one_minus, Series::constant(1, 1, r(1)));

  auto s = Series::from_poly(poly(2, {{{1, 0}, r(1)}, {{0, 1}, r(1)}}), 2);
  EXPECT_EQ(s * s, Series::from_poly(poly(2, {{{2, 0}, r(1)}, {{1, 1}, r(2)}, {{0, 2}, r(1)}}), 2));

  RationalPoly geometric(1);
  for (std::uint32_t k = 0; k <= 5; ++k) geometric.add_term({k}, r(1));
  EXPECT_EQ(Series::from_poly(geometric, 5).truncate(2), Series::from_poly(poly(1, {{{0}, r(1)}, {{1}, r(1)}, {{2}, r(1)}}), 2));

  EXPECT_THROW(Series::constant(1, 2, r(1)) + Series::constant(2, 2, r(1)), InputError);
}

TEST(TruncatedSeries, ProductTakesSmallerDegree) {
  auto a = Series::from_poly(poly(1, {{{0}, r(1)}, {{1}, r(1)}}), 5);
  auto b = Series::from_poly(poly(1, {{{0}, r(1)}, {{1}, r(1)}}), 1);
  EXPECT_EQ((a * b).degree(), 1u);
}

TEST(TruncatedSeries, InverseOfGeometric) {
  auto one_minus = Series::from_poly(poly(1, {{{0}, r(1)}, {{1}, r(-1)}}), 6);
  auto inv = one_minus.inverse();
  for (std::uint32_t k = 0; k <= 6; ++k) EXPECT_EQ(inv.coefficient({k}), 1);
  EXPECT_THROW(Series::from_poly(poly(1, {{{1}, r(1)}}), 3).inverse(), std::domain_error);
}

TEST(ImplicitSeries, CatalanMatchesRecursion) {
  auto g = poly(2, {{{0, 2}, r(1)}, {{0, 1}, r(-1)}, {{1, 0}, r(1)}});
  auto f = implicit_series<Rational>(g, r(0), 4);
  auto want = oracle::catalan_series(4);
  EXPECT_EQ(f.constant_term(), 0);
  for (std::uint32_t k = 1; k <= 4; ++k) EXPECT_EQ(f.coefficient({k}), Rational(want[k]));
  auto v = criteria::catalan_series(8);
  EXPECT_TRUE(v.pass) << v.detail;
}

TEST(ImplicitSeries, ConstantRoot) {
  auto g = poly(3, {{{0, 0, 1}, r(1)}, {{0, 0, 0}, r(-7, 3)}});
  for (std::uint32_t d : {1u, 4u}) {
    auto f = implicit_series<Rational>(g, r(7, 3), d);
    EXPECT_EQ(f, Series::constant(2, d, r(7, 3)));
  }
}

TEST(ImplicitSeries, BinomialSquareRoot) {
  auto g = poly(2, {{{0, 2}, r(1)}, {{0, 0}, r(-1)}, {{1, 0}, r(-1)}});
  auto f2 = implicit_series<Rational>(g, r(1), 2);
  EXPECT_EQ(f2, Series::from_poly(poly(1, {{{0}, r(1)}, {{1}, r(1, 2)}, {{2}, r(-1, 8)}}), 2));
  auto f7 = implicit_series<Rational>(g, r(1), 7);
  auto want = oracle::sqrt_one_plus(7);
  for (std::uint32_t k = 0; k <= 7; ++k) EXPECT_EQ(f7.coefficient({k}), want[k]);
}

TEST(ImplicitSeries, NotSimpleRoot) {
  auto g = poly(2, {{{0, 2}, r(1)}, {{1, 0}, r(1)}});  // Z^2 + X1 at Z = 0
  EXPECT_THROW(implicit_series<Rational>(g, r(0), 3), NotSimpleRootError);
  EXPECT_THROW(implicit_series<Rational>(g, r(1), 3), NotSimpleRootError);
}

TEST(ImplicitSeries, AlgebraicRootInExtension) {
  // Z^2 - (2 + X1) at z0 = sqrt 2
  auto g = poly(2, {{{0, 2}, r(1)}, {{0, 0}, r(-2)}, {{1, 0}, r(-1)}});
  auto y = ext_minpoly_root(UPoly{r(-2), r(0), r(1)});
  auto f = implicit_series<ExtensionElement>(g, y, 5);
  // f^2 = 2 + X1 through degree 5
  auto sq = f * f;
  EXPECT_EQ(sq.coefficient({0}), ExtensionElement(r(2)));
  EXPECT_EQ(sq.coefficient({1}), ExtensionElement(r(1)));
  for (std::uint32_t k = 2; k <= 5; ++k) EXPECT_TRUE(sq.coefficient({k}).is_zero());
  // f_1 = 1 / (2 sqrt 2) = sqrt 2 / 4
  EXPECT_EQ(f.coefficient({1}).coordinates(), (std::vector<Rational>{r(0), r(1, 4)}));
}

TEST(ImplicitSeries, PropertiesOnRandomPolynomials) {
  std::mt19937_64 rng(31);
  int checked = 0;
  while (checked < 40) {
    std::size_t rv = 1 + rng() % 2;
    auto g = criteria::random_poly(rng, rv + 1, 3, 5);
    Exponent zexp(rv + 1, 0);
    zexp[rv] = 1;
    g.add_term(zexp, oracle::random_rational(rng, 5));  // linear term in Z
    Rational z0 = 0;
    UPoly g0 = at_origin(g);
    if (g0.is_zero() || !is_zero(g0.eval(z0)) || is_zero(g0.derivative().eval(z0))) continue;
    std::uint32_t D = 5;
    auto a = implicit_series<Rational>(g, z0, D, NewtonSchedule::doubling);
    auto b = implicit_series<Rational>(g, z0, D, NewtonSchedule::incremental);
    EXPECT_EQ(a, b);
    // residual through degree D
    auto residual = Series::constant(rv, D, r(0));
    for (const auto& [e, c] : g.terms()) {
      auto term = Series::constant(rv, D, c);
      for (std::size_t i = 0; i < rv; ++i)
        for (std::uint32_t k = 0; k < e[i]; ++k) {
          Exponent xi(rv, 0);
          xi[i] = 1;
          term = term * Series::from_poly(RationalPoly::monomial(xi, r(1)), D);
        }
      for (std::uint32_t k = 0; k < e[rv]; ++k) term = term * a;
      residual = residual + term;
    }
    EXPECT_TRUE(residual.is_zero());
    // first-order identity df/dX1(0) = -g_X1 / g_Z at (0, z0)
    Exponent x1(rv + 1, 0);
    x1[0] = 1;
    Exponent f1(rv, 0);
    f1[0] = 1;
    EXPECT_EQ(a.coefficient(f1), -g.coefficient(x1) / g.coefficient(zexp));
    ++checked;
  }
}

TEST(Monicize, Examples) {
  auto monic = poly(2, {{{0, 2}, r(1)}, {{1, 1}, r(3)}, {{0, 0}, r(-1)}});
  EXPECT_EQ(monicize(monic), monic);
  auto g = poly(2, {{{1, 2}, r(1)}, {{0, 1}, r(1)}, {{0, 0}, r(1)}});
  EXPECT_EQ(monicize(g), poly(2, {{{0, 2}, r(1)}, {{0, 1}, r(1)}, {{1, 0}, r(1)}}));
  auto lin = poly(2, {{{1, 1}, r(2)}, {{0, 1}, r(1)}, {{1, 0}, r(5)}});  // (2 X1 + 1) Z + 5 X1
  EXPECT_EQ(monicize(lin), poly(2, {{{0, 1}, r(1)}, {{1, 0}, r(5)}}));
  EXPECT_THROW(monicize(RationalPoly(2)), InputError);
  EXPECT_THROW(monicize(poly(2, {{{1, 0}, r(1)}})), InputError);
}

TEST(Monicize, IdentityOnRandomInputs) {
  auto v = criteria::monicization_identity(100, 4);
  EXPECT_TRUE(v.pass) << v.detail;
}

TEST(RootBranches, OneBranchPerSimpleFactor) {
  // g(0, Z) = Z (Z - 1)(Z^2 - 2)^1 * (Z + 3)^2
  UPoly g0 = UPoly{r(0), r(1)} * UPoly{r(-1), r(1)} * UPoly{r(-2), r(0), r(1)} * UPoly{r(3), r(1)} * UPoly{r(3), r(1)};
  RationalPoly g(2);
  for (std::size_t i = 0; i < g0.coeffs().size(); ++i) g.add_term({0, static_cast<std::uint32_t>(i)}, g0.coeffs()[i]);
  g.add_term({1, 0}, r(1));
  auto branches = simple_root_branches(g);
  ASSERT_EQ(branches.size(), 3u);
  for (const auto& b : branches) EXPECT_NE(b.minimal_polynomial, (UPoly{r(3), r(1)}));
}
