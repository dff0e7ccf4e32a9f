#pragma once

// Problem data: a_0(X) Z^d + ... + a_d(X) with X_i specialised to gamma_i^n.

#include "recdio/heights.hpp"
#include "recdio/multipoly.hpp"
#include "recdio/powersum.hpp"
#include "recdio/rational.hpp"
#include "recdio/upoly.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace recdio {

struct Bounds {
  std::uint64_t n_bound = 200;
  unsigned fit_degree = 4;
  std::uint64_t modulus_bound = 12;
  std::uint32_t series_degree = 8;
  unsigned factor_degree_cap = 8;
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

class ProblemSpec {
 public:
  ProblemSpec(std::vector<Rational> gammas, std::vector<RationalPoly> coefficients, PlaceSet s, Bounds bounds = {})
      : gammas_(std::move(gammas)), coeffs_(std::move(coefficients)), s_(std::move(s)), bounds_(bounds) {
    if (gammas_.empty()) throw InputError("at least one gamma is required");
    for (const auto& g : gammas_)
      if (is_zero(g)) throw InputError("gamma must be nonzero");
    if (coeffs_.size() < 2) throw InputError("need coefficients a_0..a_d with d >= 1");
    for (const auto& a : coeffs_)
      if (a.arity() != gammas_.size()) throw InputError("coefficient polynomial arity differs from the number of gammas");
    if (coeffs_[0].is_zero()) throw InputError("leading coefficient a_0 is the zero polynomial");
    if (bounds_.n_bound == 0) throw InputError("n_bound must be positive");
    if (bounds_.modulus_bound == 0) throw InputError("modulus_bound must be positive");
  }

  /// Splits g(X_1..X_r, Z) into its Z-coefficients, leading first.
  static ProblemSpec from_polynomial(std::vector<Rational> gammas, const RationalPoly& g, PlaceSet s, Bounds bounds = {}) {
    if (g.arity() != gammas.size() + 1) throw InputError("g must have one variable per gamma plus Z");
    std::uint32_t d = g.degree_in(g.arity() - 1);
    std::vector<RationalPoly> c;
    for (std::uint32_t j = 0; j <= d; ++j) c.push_back(g.coefficient_of_last(d - j));
    return ProblemSpec(std::move(gammas), std::move(c), std::move(s), bounds);
  }

  const std::vector<Rational>& gammas() const { return gammas_; }
  const std::vector<RationalPoly>& coefficients() const { return coeffs_; }
  const PlaceSet& places() const { return s_; }
  const Bounds& bounds() const { return bounds_; }
  Bounds& bounds() { return bounds_; }
  std::size_t arity() const { return gammas_.size(); }
  unsigned degree() const { return static_cast<unsigned>(coeffs_.size() - 1); }
  const RationalPoly& leading() const { return coeffs_[0]; }

  /// g in X_1..X_r, Z.
  RationalPoly polynomial() const {
    RationalPoly g(arity() + 1);
    for (unsigned j = 0; j <= degree(); ++j)
      for (const auto& [e, c] : coeffs_[j].terms()) {
        Exponent f = e;
        f.push_back(degree() - j);
        g.add_term(f, c);
      }
    return g;
  }

  std::vector<Rational> gamma_powers(std::uint64_t n) const {
    std::vector<Rational> v;
    for (const auto& g : gammas_) v.push_back(pow(g, static_cast<long>(n)));
    return v;
  }

  /// a_0(gamma^n), ..., a_d(gamma^n).
  std::vector<Rational> coefficient_values(std::uint64_t n) const {
    auto x = gamma_powers(n);
    std::vector<Rational> v;
    for (const auto& a : coeffs_) v.push_back(poly_eval(a, x));
    return v;
  }

  /// g(gamma^n, Z) as a polynomial in Z.
  UPoly specialize(std::uint64_t n) const {
    auto v = coefficient_values(n);
    return UPoly::from_descending(v);
  }

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;

 private:
  std::vector<Rational> gammas_;
  std::vector<RationalPoly> coeffs_;
  PlaceSet s_;
  Bounds bounds_;
};

/// p(b_1^n, ..., b_r^n) as an exponential polynomial in n: each monomial
/// X^k becomes the root prod b_i^k_i.
inline ExpPolynomial power_sum_of(const RationalPoly& p, const std::vector<Rational>& bases) {
  if (p.arity() != bases.size()) throw InputError("number of bases differs from polynomial arity");
  ExpPolynomial e;
  for (const auto& [k, c] : p.terms()) {
    Rational root = 1;
    for (std::size_t i = 0; i < k.size(); ++i) root *= pow(bases[i], static_cast<long>(k[i]));
    e.add_term(c, root);
  }
  return e;
}

}  // namespace recdio
