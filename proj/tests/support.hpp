#pragma once

#include "oracles.hpp"
#include "recdio/multipoly.hpp"
#include "recdio/problem.hpp"

#include <initializer_list>
#include <utility>
#include <vector>

namespace testing_support {

using recdio::Exponent;
using recdio::Rational;
using recdio::RationalPoly;

inline Rational r(long p, long q = 1) { return oracle::q(p, q); }

/// Polynomial from (exponent, coefficient) pairs.
inline RationalPoly poly(std::size_t arity, std::initializer_list<std::pair<Exponent, Rational>> terms) {
  RationalPoly p(arity);
  for (const auto& [e, c] : terms) p.add_term(e, c);
  return p;
}

/// (Z - X1)(Z - X1^2) = Z^2 - (X1 + X1^2) Z + X1^3 in X1, Z.
inline RationalPoly planted_product() {
  return poly(2, {{{0, 2}, r(1)}, {{1, 1}, r(-1)}, {{2, 1}, r(-1)}, {{3, 0}, r(1)}});
}

inline recdio::ProblemSpec spec_from(std::vector<Rational> gammas, const RationalPoly& g, std::vector<unsigned long> primes,
                                     recdio::Bounds b = {}) {
  return recdio::ProblemSpec::from_polynomial(std::move(gammas), g, recdio::PlaceSet(std::move(primes)), b);
}

}  // namespace testing_support
