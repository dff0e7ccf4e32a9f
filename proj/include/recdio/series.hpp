#pragma once

// Truncated multivariate power series and the implicit-function root
// expansion of g(X, Z) = 0 around a simple root of g(0, Z).

#include "recdio/extension.hpp"
#include "recdio/factor.hpp"
#include "recdio/multipoly.hpp"
#include "recdio/rational.hpp"
#include "recdio/upoly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace recdio {

struct NotSimpleRootError : InputError {
  using InputError::InputError;
};

/// Power series in r variables known modulo total degree D + 1.
template <class Coeff>
class TruncatedSeries {
 public:
  using Terms = std::map<Exponent, Coeff>;

  TruncatedSeries(std::size_t arity, std::uint32_t degree) : arity_(arity), degree_(degree) {}

  static TruncatedSeries constant(std::size_t arity, std::uint32_t degree, const Coeff& c) {
    TruncatedSeries s(arity, degree);
    s.add_term(Exponent(arity, 0), c);
    return s;
  }

  /// Truncation of a polynomial with the same arity.
  template <class PC>
  static TruncatedSeries from_poly(const MultiPoly<PC>& p, std::uint32_t degree) {
    TruncatedSeries s(p.arity(), degree);
    for (const auto& [e, c] : p.terms()) s.add_term(e, Coeff(c));
    return s;
  }

  std::size_t arity() const { return arity_; }
  std::uint32_t degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Coeff coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coeff(0) : it->second;
  }
  Coeff constant_term() const { return coefficient(Exponent(arity_, 0)); }

  /// Adds c * X^e; terms above the truncation degree are discarded.
  void add_term(const Exponent& e, const Coeff& c) {
    if (e.size() != arity_) throw InputError("exponent length does not match series arity");
    if (recdio::total_degree(e) > degree_ || recdio::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (recdio::is_zero(it->second)) terms_.erase(it);
    }
  }

  TruncatedSeries truncate(std::uint32_t degree) const {
    TruncatedSeries r(arity_, std::min(degree, degree_));
    for (const auto& [e, c] : terms_) r.add_term(e, c);
    return r;
  }

  /// Same terms, reinterpreted with a larger truncation degree; used when
  /// an approximation is refined to higher order.
  TruncatedSeries widen(std::uint32_t degree) const {
    TruncatedSeries r(arity_, std::max(degree, degree_));
    r.terms_ = terms_;
    return r;
  }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    check(a, b);
    TruncatedSeries r = a.truncate(b.degree_);
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    check(a, b);
    TruncatedSeries r = a.truncate(b.degree_);
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
  }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    check(a, b);
    TruncatedSeries r(a.arity_, std::min(a.degree_, b.degree_));
    Exponent e(a.arity_);
    for (const auto& [ea, ca] : a.terms_) {
      auto da = recdio::total_degree(ea);
      if (da > r.degree_) continue;
      for (const auto& [eb, cb] : b.terms_) {
        if (da + recdio::total_degree(eb) > r.degree_) continue;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }
  friend TruncatedSeries operator*(TruncatedSeries a, const Coeff& s) {
    if (recdio::is_zero(s)) return TruncatedSeries(a.arity_, a.degree_);
    for (auto& [e, c] : a.terms_) c = c * s;
    return a;
  }
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.arity_ == b.arity_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  /// Multiplicative inverse; the constant term must be nonzero.
  TruncatedSeries inverse() const {
    Coeff c0 = constant_term();
    if (recdio::is_zero(c0)) throw std::domain_error("series with zero constant term is not invertible");
    TruncatedSeries v = constant(arity_, degree_, Coeff(1) / c0);
    TruncatedSeries two = constant(arity_, degree_, Coeff(2));
    for (std::uint32_t p = 1; p <= degree_; p *= 2) {
      std::uint32_t q = std::min(2 * p, degree_ + 1) - 1;
      v = v.widen(q);
      v = v * (two - truncate(q) * v);
    }
    return v;
  }

  /// p(X, s) for p in r + 1 variables, the last one being replaced by this
  /// series. Horner in the last variable.
  template <class PC>
  TruncatedSeries compose_last(const MultiPoly<PC>& p) const {
    if (p.arity() != arity_ + 1) throw InputError("polynomial must have one more variable than the series");
    std::uint32_t d = p.degree_in(arity_);
    TruncatedSeries acc(arity_, degree_);
    for (std::uint32_t k = d + 1; k-- > 0;) acc = acc * *this + from_poly(p.coefficient_of_last(k), degree_);
    return acc;
  }

  std::string to_string(const std::vector<std::string>& names) const {
    MultiPoly<Coeff> p(arity_);
    for (const auto& [e, c] : terms_) p.add_term(e, c);
    return p.to_string(names) + " + O(deg " + std::to_string(degree_ + 1) + ")";
  }

 private:
  static void check(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.arity_ != b.arity_) throw InputError("series arity mismatch");
  }

  std::size_t arity_;
  std::uint32_t degree_;
  Terms terms_;
};

enum class NewtonSchedule { doubling, incremental };

/// The unique series f with f(0) = z0 and g(X, f(X)) = 0 modulo total degree
/// D + 1. g has arity r + 1 with Z last; z0 must be a simple root of g(0, Z).
template <class Coeff>
TruncatedSeries<Coeff> implicit_series(const RationalPoly& g, const Coeff& z0, std::uint32_t degree,
                                       NewtonSchedule schedule = NewtonSchedule::doubling) {
  if (g.arity() == 0) throw InputError("polynomial must contain Z");
  const std::size_t r = g.arity() - 1;
  const RationalPoly gz = g.derivative(r);
  UPoly g0 = at_origin(g), g0z = g0.derivative();
  auto eval0 = [&](const UPoly& p) {
    if constexpr (std::is_same_v<Coeff, Rational>)
      return p.eval(z0);
    else
      return eval_at(p, z0);
  };
  if (!recdio::is_zero(eval0(g0))) throw NotSimpleRootError("z0 is not a root of g(0, Z)");
  if (recdio::is_zero(eval0(g0z))) throw NotSimpleRootError("not a simple root: dg/dZ vanishes at (0, z0)");

  auto f = TruncatedSeries<Coeff>::constant(r, 0, z0);
  std::uint32_t known = 0;  // f is exact through total degree `known`
  while (known < degree) {
    std::uint32_t next = schedule == NewtonSchedule::doubling ? std::min(2 * known + 1, degree) : known + 1;
    auto widened = f.widen(next);
    auto value = widened.compose_last(g);
    auto slope = widened.compose_last(gz);
    f = widened - value * slope.inverse();
    known = next;
  }

  auto residual = f.compose_last(g);
  if (!residual.is_zero()) throw std::logic_error("implicit series residual does not vanish");
  return f;
}

/// Leading coefficient a0 of g in Z and the transform
/// g~ = Z^d + sum_{j>=1} a_j a0^(j-1) Z^(d-j), with the identity
/// g~(X, a0 Z) = a0^(d-1) g(X, Z) checked exactly.
inline RationalPoly monicize(const RationalPoly& g) {
  if (g.arity() == 0 || g.is_zero()) throw InputError("monicize needs a nonzero polynomial in Z");
  const std::size_t z = g.arity() - 1;
  const std::uint32_t d = g.degree_in(z);
  if (d == 0) throw InputError("monicize needs Z-degree at least 1");
  const RationalPoly a0 = g.coefficient_of_last(d);

  Exponent top(g.arity(), 0);
  top[z] = d;
  RationalPoly out = RationalPoly::monomial(top, Rational(1));
  RationalPoly a0_pow = RationalPoly::constant(z, Rational(1));
  for (std::uint32_t j = 1; j <= d; ++j) {
    RationalPoly aj = g.coefficient_of_last(d - j) * a0_pow;
    for (const auto& [e, c] : aj.terms()) {
      Exponent f = e;
      f.push_back(d - j);
      out.add_term(f, c);
    }
    a0_pow *= a0;
  }

  RationalPoly scaled_z = a0.extended() * RationalPoly::variable(g.arity(), z);
  RationalPoly lhs = out.substitute_last(scaled_z);
  RationalPoly rhs = a0.pow(d - 1).extended() * g;
  if (!(lhs == rhs)) throw std::logic_error("monicization identity failed");
  return out;
}

/// Root of g(0, Z) as a rational or as the generator of Q(z0).
using RootValue = std::variant<Rational, ExtensionElement>;

struct RootBranch {
  UPoly minimal_polynomial;  // monic irreducible factor of g(0, Z)
  RootValue root;
};

/// One branch per simple irreducible factor of g(0, Z); repeated factors are
/// skipped since they do not admit an implicit series.
inline std::vector<RootBranch> simple_root_branches(const RationalPoly& g, unsigned degree_cap = 8) {
  UPoly g0 = at_origin(g);
  if (g0.degree() < 1) return {};
  std::vector<RootBranch> out;
  for (const auto& f : factor_rational(g0, degree_cap).factors) {
    if (f.multiplicity != 1) continue;
    UPoly m = f.factor.monic();
    if (m.degree() == 1)
      out.push_back({m, RootValue(Rational(-m.coeff(0)))});
    else
      out.push_back({m, RootValue(ext_minpoly_root(m))});
  }
  return out;
}

}  // namespace recdio
