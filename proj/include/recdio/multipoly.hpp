#pragma once

#include "recdio/extension.hpp"
#include "recdio/rational.hpp"
#include "recdio/upoly.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace recdio {

using Exponent = std::vector<std::uint32_t>;

inline std::uint32_t total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), std::uint32_t{0}); }

/// Sparse multivariate polynomial: exponent vector -> nonzero coefficient.
/// Coeff is Rational or ExtensionElement. When a polynomial is read as
/// g(X_1..X_r, Z), Z is the last variable.
template <class Coeff>
class MultiPoly {
 public:
  using Terms = std::map<Exponent, Coeff>;

  explicit MultiPoly(std::size_t arity = 0) : arity_(arity) {}

  static MultiPoly constant(std::size_t arity, const Coeff& c) {
    MultiPoly p(arity);
    p.add_term(Exponent(arity, 0), c);
    return p;
  }
  static MultiPoly variable(std::size_t arity, std::size_t index) {
    MultiPoly p(arity);
    Exponent e(arity, 0);
    e.at(index) = 1;
    p.add_term(e, Coeff(1));
    return p;
  }
  static MultiPoly monomial(const Exponent& e, const Coeff& c) {
    MultiPoly p(e.size());
    p.add_term(e, c);
    return p;
  }

  std::size_t arity() const { return arity_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds c * X^e, dropping the term if it cancels.
  void add_term(const Exponent& e, const Coeff& c) {
    if (e.size() != arity_) throw InputError("exponent length does not match polynomial arity");
    if (recdio_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (recdio_is_zero(it->second)) terms_.erase(it);
    }
  }

  Coeff coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, recdio::total_degree(e));
    return d;
  }

  std::uint32_t degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.at(var));
    return d;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) {
    check_arity(a, b);
    for (const auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) {
    check_arity(a, b);
    for (const auto& [e, c] : b.terms_) a.add_term(e, -c);
    return a;
  }
  friend MultiPoly operator-(const MultiPoly& a) { return MultiPoly(a.arity_) - a; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    check_arity(a, b);
    MultiPoly r(a.arity_);
    Exponent e(a.arity_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend MultiPoly operator*(MultiPoly a, const Coeff& s) {
    if (recdio_is_zero(s)) return MultiPoly(a.arity_);
    for (auto& [e, c] : a.terms_) c = c * s;
    return a;
  }
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly pow(unsigned k) const {
    MultiPoly result = constant(arity_, Coeff(1));
    MultiPoly base = *this;
    while (k) {
      if (k & 1u) result *= base;
      k >>= 1u;
      if (k) base *= base;
    }
    return result;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.arity_ == b.arity_ && a.terms_ == b.terms_; }

  /// Exact value at a point whose length equals the arity.
  template <class V>
  V eval(std::span<const V> point) const {
    if (point.size() != arity_) throw InputError("evaluation point has wrong arity");
    std::vector<std::vector<V>> powers(arity_);
    V acc(0);
    for (const auto& [e, c] : terms_) {
      V term = V(c);
      for (std::size_t i = 0; i < arity_; ++i) {
        if (e[i] == 0) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(V(1));
        while (pw.size() <= e[i]) pw.push_back(pw.back() * point[i]);
        term = term * pw[e[i]];
      }
      acc = acc + term;
    }
    return acc;
  }

  /// Partial derivative with respect to variable `var`.
  MultiPoly derivative(std::size_t var) const {
    MultiPoly r(arity_);
    for (const auto& [e, c] : terms_) {
      if (e.at(var) == 0) continue;
      Exponent f = e;
      --f[var];
      r.add_term(f, c * Coeff(static_cast<int>(e[var])));
    }
    return r;
  }

  /// Coefficient of Z^k (last variable) as a polynomial in the remaining
  /// variables.
  MultiPoly coefficient_of_last(std::uint32_t k) const {
    if (arity_ == 0) throw InputError("polynomial has no variables");
    MultiPoly r(arity_ - 1);
    for (const auto& [e, c] : terms_)
      if (e.back() == k) r.add_term(Exponent(e.begin(), e.end() - 1), c);
    return r;
  }

  /// Appends a new last variable that does not occur.
  MultiPoly extended() const {
    MultiPoly r(arity_ + 1);
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      f.push_back(0);
      r.add_term(f, c);
    }
    return r;
  }

  /// Drops the last variable; every term must have exponent 0 there.
  MultiPoly without_last() const {
    MultiPoly r(arity_ - 1);
    for (const auto& [e, c] : terms_) {
      if (e.back() != 0) throw std::logic_error("last variable still occurs");
      r.add_term(Exponent(e.begin(), e.end() - 1), c);
    }
    return r;
  }

  /// Replaces the last variable by s (same arity), by Horner's rule in Z.
  MultiPoly substitute_last(const MultiPoly& s) const {
    check_arity(*this, s);
    std::uint32_t d = arity_ == 0 ? 0 : degree_in(arity_ - 1);
    MultiPoly acc(arity_);
    for (std::uint32_t k = d + 1; k-- > 0;) {
      acc = acc * s + coefficient_of_last(k).extended();
    }
    return acc;
  }

  /// Substitutes X_i -> X_i^k for the variables with index below keep_from.
  MultiPoly inflate(std::uint32_t k, std::size_t keep_from = static_cast<std::size_t>(-1)) const {
    MultiPoly r(arity_);
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      for (std::size_t i = 0; i < f.size() && i < keep_from; ++i) f[i] *= k;
      r.add_term(f, c);
    }
    return r;
  }

  template <class F>
  auto map_coefficients(F&& f) const -> MultiPoly<decltype(f(std::declval<const Coeff&>()))> {
    MultiPoly<decltype(f(std::declval<const Coeff&>()))> r(arity_);
    for (const auto& [e, c] : terms_) r.add_term(e, f(c));
    return r;
  }

  /// Univariate view when arity is 1.
  UPoly to_upoly() const requires std::is_same_v<Coeff, Rational> {
    if (arity_ != 1) throw InputError("not a univariate polynomial");
    std::vector<Rational> v(degree_in(0) + 1);
    for (const auto& [e, c] : terms_) v[e[0]] = c;
    return UPoly(std::move(v));
  }

  std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    // Highest total degree first, then descending exponent vectors.
    std::vector<const typename Terms::value_type*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
      auto da = recdio::total_degree(a->first), db = recdio::total_degree(b->first);
      if (da != db) return da > db;
      return a->first > b->first;
    });
    for (auto* t : order) {
      std::string coeff = coefficient_string(t->second);
      bool neg = !coeff.empty() && coeff[0] == '-' && is_plain(coeff);
      if (neg) coeff.erase(0, 1);
      if (!is_plain(coeff)) coeff = "(" + coeff + ")";
      std::string mono;
      for (std::size_t i = 0; i < arity_; ++i) {
        if (t->first[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += i < names.size() ? names[i] : "X" + std::to_string(i + 1);
        if (t->first[i] > 1) mono += "^" + std::to_string(t->first[i]);
      }
      std::string term;
      if (mono.empty())
        term = coeff;
      else if (coeff == "1")
        term = mono;
      else
        term = coeff + "*" + mono;
      if (out.empty())
        out = (neg ? "-" : "") + term;
      else
        out += (neg ? " - " : " + ") + term;
    }
    return out;
  }

  std::string to_string() const { return to_string(default_names(arity_)); }

  /// X1..X(r-1), Z when with_z is set, otherwise X1..Xr.
  static std::vector<std::string> default_names(std::size_t arity, bool with_z = false) {
    std::vector<std::string> n;
    for (std::size_t i = 0; i < arity; ++i) n.push_back("X" + std::to_string(i + 1));
    if (with_z && arity > 0) n.back() = "Z";
    return n;
  }

 private:
  static bool recdio_is_zero(const Coeff& c) { return recdio::is_zero(c); }
  static bool is_plain(const std::string& s) {
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s[i] == ' ' || s[i] == '+' || s[i] == '*') return false;
    return true;
  }
  static std::string coefficient_string(const Coeff& c) {
    using recdio::to_string;
    return to_string(c);
  }
  static void check_arity(const MultiPoly& a, const MultiPoly& b) {
    if (a.arity_ != b.arity_) throw InputError("polynomial arity mismatch");
  }

  std::size_t arity_;
  Terms terms_;
};

using RationalPoly = MultiPoly<Rational>;

/// Exact value of p at a rational point.
inline Rational poly_eval(const RationalPoly& p, const std::vector<Rational>& point) {
  return p.eval<Rational>(std::span<const Rational>(point));
}

/// g(X_1..X_r, Z) with Z replaced by s(X_1..X_r); the result has arity r.
template <class Coeff>
MultiPoly<Coeff> poly_compose_z(const MultiPoly<Coeff>& g, const MultiPoly<Coeff>& s) {
  if (s.arity() + 1 != g.arity()) throw InputError("substituted polynomial must omit Z");
  return g.substitute_last(s.extended()).without_last();
}

/// Lifts a rational polynomial into an extension-coefficient polynomial.
inline MultiPoly<ExtensionElement> to_extension(const RationalPoly& p) {
  return p.map_coefficients([](const Rational& c) { return ExtensionElement(c); });
}

/// Polynomial in Z alone obtained by setting every X_i to zero.
inline UPoly at_origin(const RationalPoly& g) {
  std::vector<Rational> v(g.arity() == 0 ? 1 : g.degree_in(g.arity() - 1) + 1);
  for (const auto& [e, c] : g.terms()) {
    bool origin = true;
    for (std::size_t i = 0; i + 1 < e.size(); ++i)
      if (e[i] != 0) origin = false;
    if (origin) v[e.back()] += c;
  }
  return UPoly(std::move(v));
}

}  // namespace recdio
