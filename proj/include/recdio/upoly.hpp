#pragma once

#include "recdio/rational.hpp"

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace recdio {

/// Dense univariate polynomial over the rationals. coeffs[i] multiplies Z^i;
/// trailing zeros are never stored, so the zero polynomial is empty.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  UPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

  static UPoly constant(const Rational& c) { return UPoly(std::vector<Rational>{c}); }
  static UPoly monomial(const Rational& c, std::size_t k) {
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return UPoly(std::move(v));
  }
  /// Builds from high-to-low coefficients (b0 Z^d + ... + bd).
  static UPoly from_descending(const std::vector<Rational>& b) {
    std::vector<Rational> v(b.rbegin(), b.rend());
    return UPoly(std::move(v));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& lc() const { return c_.back(); }

  Rational eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return UPoly(std::move(v));
  }

  UPoly monic() const {
    if (is_zero()) return {};
    Rational inv = 1 / lc();
    return *this * inv;
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
    return UPoly(std::move(v));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
    return UPoly(std::move(v));
  }
  friend UPoly operator-(const UPoly& a) { return UPoly() - a; }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(v));
  }
  friend UPoly operator*(const UPoly& a, const Rational& s) {
    std::vector<Rational> v(a.c_);
    for (auto& x : v) x *= s;
    return UPoly(std::move(v));
  }

  /// Euclidean division; throws on a zero divisor.
  friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {UPoly(), a};
    std::vector<Rational> r(a.c_);
    std::vector<Rational> q(a.c_.size() - b.c_.size() + 1);
    Rational inv = 1 / b.lc();
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
      Rational t = r[k + b.degree()] * inv;
      q[k] = t;
      if (recdio::is_zero(t)) continue;
      for (int j = 0; j <= b.degree(); ++j) r[k + j] -= t * b.c_[j];
    }
    r.resize(b.c_.size() - 1);
    return {UPoly(std::move(q)), UPoly(std::move(r))};
  }
  friend UPoly operator/(const UPoly& a, const UPoly& b) { return divmod(a, b).first; }
  friend UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "Z") const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      const Rational& c = c_[i];
      if (recdio::is_zero(c)) continue;
      Rational mag = abs(c);
      bool neg = sgn(c) < 0;
      if (out.empty())
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      bool unit = mag == 1 && i > 0;
      if (!unit) out += recdio::to_string(mag);
      if (i > 0) {
        if (!unit) out += "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && recdio::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Monic gcd (zero when both inputs are zero).
inline UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Returns (g, s, t) with s*a + t*b = g, g monic.
inline std::tuple<UPoly, UPoly, UPoly> extended_gcd(const UPoly& a, const UPoly& b) {
  UPoly r0 = a, r1 = b, s0 = UPoly::constant(1), s1, t0, t1 = UPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Rational inv = 1 / r0.lc();
  return {r0 * inv, s0 * inv, t0 * inv};
}

/// True when p has no repeated root over the algebraic closure. The zero
/// polynomial is not squarefree; nonzero constants are.
inline bool is_squarefree(const UPoly& p) {
  if (p.is_zero()) return false;
  return gcd(p, p.derivative()).degree() == 0;
}

/// Yun's algorithm: p = lc * prod f_i^i with monic, squarefree, pairwise
/// coprime f_i. Entries with trivial f_i are omitted.
inline std::vector<std::pair<UPoly, unsigned>> squarefree_decomposition(const UPoly& p) {
  std::vector<std::pair<UPoly, unsigned>> out;
  if (p.degree() < 1) return out;
  UPoly f = p.monic();
  UPoly d = f.derivative();
  UPoly a = gcd(f, d);
  UPoly b = f / a;
  UPoly c = d / a;
  unsigned i = 1;
  while (b.degree() >= 1) {
    UPoly y = c - b.derivative();
    UPoly z = gcd(b, y);
    if (z.degree() >= 1) out.emplace_back(z, i);
    b = b / z;
    c = y / z;
    ++i;
  }
  return out;
}

}  // namespace recdio
