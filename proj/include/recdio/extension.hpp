#pragma once

#include "recdio/factor.hpp"
#include "recdio/rational.hpp"
#include "recdio/upoly.hpp"

#include <memory>
#include <string>
#include <vector>

namespace recdio {

/// Element of Q[Y]/(m) for a monic irreducible m. An element built from a
/// bare rational carries no modulus and adopts the modulus of whatever it is
/// combined with, so generic code can write Coeff(1) or Coeff(0).
class ExtensionElement {
 public:
  ExtensionElement() : coords_{Rational(0)} {}
  ExtensionElement(const Rational& q) : coords_{q} {}  // NOLINT(google-explicit-constructor)
  ExtensionElement(int v) : coords_{Rational(v)} {}    // NOLINT(google-explicit-constructor)

  ExtensionElement(std::shared_ptr<const UPoly> modulus, const UPoly& value) : modulus_(std::move(modulus)) {
    UPoly r = value % *modulus_;
    coords_.assign(static_cast<std::size_t>(modulus_->degree()), Rational(0));
    for (int i = 0; i <= r.degree(); ++i) coords_[static_cast<std::size_t>(i)] = r.coeff(static_cast<std::size_t>(i));
  }

  const std::shared_ptr<const UPoly>& modulus() const { return modulus_; }
  bool has_modulus() const { return modulus_ != nullptr; }

  /// Coordinates in the power basis 1, y, y^2, ...; length deg(m) when a
  /// modulus is attached, 1 otherwise.
  const std::vector<Rational>& coordinates() const { return coords_; }

  UPoly as_poly() const { return UPoly(coords_); }

  bool is_zero() const {
    for (const auto& c : coords_)
      if (!recdio::is_zero(c)) return false;
    return true;
  }

  friend ExtensionElement operator+(const ExtensionElement& a, const ExtensionElement& b) {
    auto m = common(a, b);
    return make(m, a.as_poly() + b.as_poly());
  }
  friend ExtensionElement operator-(const ExtensionElement& a, const ExtensionElement& b) {
    auto m = common(a, b);
    return make(m, a.as_poly() - b.as_poly());
  }
  friend ExtensionElement operator-(const ExtensionElement& a) { return make(a.modulus_, -a.as_poly()); }
  friend ExtensionElement operator*(const ExtensionElement& a, const ExtensionElement& b) {
    auto m = common(a, b);
    return make(m, a.as_poly() * b.as_poly());
  }
  friend ExtensionElement operator/(const ExtensionElement& a, const ExtensionElement& b) { return a * b.inverse(); }

  ExtensionElement& operator+=(const ExtensionElement& o) { return *this = *this + o; }
  ExtensionElement& operator-=(const ExtensionElement& o) { return *this = *this - o; }
  ExtensionElement& operator*=(const ExtensionElement& o) { return *this = *this * o; }

  ExtensionElement inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero in extension field");
    if (!modulus_) return ExtensionElement(Rational(1) / coords_[0]);
    auto [g, s, t] = extended_gcd(as_poly(), *modulus_);
    if (g.degree() != 0) throw std::domain_error("modulus is not irreducible");
    return make(modulus_, s);
  }

  friend bool operator==(const ExtensionElement& a, const ExtensionElement& b) {
    if (a.modulus_ && b.modulus_ && !(*a.modulus_ == *b.modulus_)) return false;
    return a.as_poly() == b.as_poly();
  }

  /// "c0 + c1*y + ..." with exact rational coordinates.
  std::string to_string(const std::string& var = "y") const { return as_poly().to_string(var); }

 private:
  static std::shared_ptr<const UPoly> common(const ExtensionElement& a, const ExtensionElement& b) {
    if (a.modulus_ && b.modulus_ && a.modulus_ != b.modulus_ && !(*a.modulus_ == *b.modulus_))
      throw std::invalid_argument("mixing elements of different extensions");
    return a.modulus_ ? a.modulus_ : b.modulus_;
  }
  static ExtensionElement make(const std::shared_ptr<const UPoly>& m, const UPoly& v) {
    if (m) return ExtensionElement(m, v);
    return ExtensionElement(v.coeff(0));
  }

  std::shared_ptr<const UPoly> modulus_;
  std::vector<Rational> coords_;
};

inline bool is_zero(const ExtensionElement& x) { return x.is_zero(); }
inline std::string to_string(const ExtensionElement& x) { return x.to_string(); }

/// The class of Y in Q[Y]/(m). m must be monic and irreducible over Q.
inline ExtensionElement ext_minpoly_root(const UPoly& m) {
  if (m.degree() < 1) throw InputError("minimal polynomial must have degree at least 1");
  if (m.lc() != 1) throw InputError("minimal polynomial must be monic");
  if (!factor_rational(m, std::max(8, m.degree())).is_irreducible())
    throw InputError("polynomial " + m.to_string("Y") + " is reducible over Q");
  auto shared = std::make_shared<const UPoly>(m);
  return ExtensionElement(shared, UPoly{Rational(0), Rational(1)});
}

/// Evaluates a rational polynomial at an extension element.
inline ExtensionElement eval_at(const UPoly& p, const ExtensionElement& x) {
  ExtensionElement acc = x.has_modulus() ? ExtensionElement(x.modulus(), UPoly()) : ExtensionElement(0);
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + ExtensionElement(p.coeff(static_cast<std::size_t>(i)));
  return acc;
}

}  // namespace recdio
