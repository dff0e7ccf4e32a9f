#pragma once

// Heights over Q, kept multiplicative so every comparison stays exact:
// H(x) = exp(h(x)). Finite places are rational primes; the archimedean
// place always belongs to S.

#include "recdio/rational.hpp"

#include <algorithm>
#include <cmath>
#include <compare>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace recdio {

struct IncompleteFactorizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr unsigned long kDefaultTrialCeiling = 1'000'000;

/// Trial division up to `ceiling`. A leftover cofactor below ceiling^2 is
/// prime; anything larger is reported as an incomplete factorization.
inline std::vector<std::pair<Integer, unsigned>> factor_integer(Integer n, unsigned long ceiling = kDefaultTrialCeiling) {
  if (n == 0) throw InputError("cannot factor zero");
  n = abs(n);
  std::vector<std::pair<Integer, unsigned>> out;
  for (unsigned long p = 2; p <= ceiling && n > 1; p += (p == 2 ? 1 : 2)) {
    if (Integer(p) * p > n) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    if (e) out.emplace_back(Integer(p), e);
  }
  if (n > 1) {
    // All primes up to the ceiling are gone, so a composite cofactor would
    // exceed ceiling^2.
    if (n > Integer(ceiling) * ceiling)
      throw IncompleteFactorizationError("cofactor " + n.get_str() + " exceeds the trial-division ceiling");
    out.emplace_back(n, 1u);
  }
  return out;
}

inline bool is_prime_by_trial(unsigned long n, unsigned long ceiling = kDefaultTrialCeiling) {
  if (n < 2) return false;
  auto f = factor_integer(Integer(n), ceiling);
  return f.size() == 1 && f[0].second == 1;
}

/// Finite set S of rational primes; the archimedean place is always included.
class PlaceSet {
 public:
  PlaceSet() = default;
  explicit PlaceSet(std::vector<unsigned long> primes) : primes_(std::move(primes)) {
    std::sort(primes_.begin(), primes_.end());
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      if (!is_prime_by_trial(primes_[i])) throw InputError(std::to_string(primes_[i]) + " is not a prime");
      if (i > 0 && primes_[i] == primes_[i - 1]) throw InputError("duplicate prime " + std::to_string(primes_[i]));
    }
  }

  const std::vector<unsigned long>& primes() const { return primes_; }
  bool includes_archimedean() const { return true; }
  bool contains(unsigned long p) const { return std::binary_search(primes_.begin(), primes_.end(), p); }

  friend bool operator==(const PlaceSet&, const PlaceSet&) = default;

 private:
  std::vector<unsigned long> primes_;
};

struct MultiplicativeHeight {
  Integer value;  // >= 1

  /// Natural logarithm, for display only.
  double log() const {
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, value.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
  }
  friend bool operator==(const MultiplicativeHeight&, const MultiplicativeHeight&) = default;
  friend std::strong_ordering operator<=>(const MultiplicativeHeight& a, const MultiplicativeHeight& b) {
    int c = cmp(a.value, b.value);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }
};

/// |n| with every prime of S divided out.
inline Integer strip_places(Integer n, const PlaceSet& s) {
  n = abs(n);
  for (unsigned long p : s.primes())
    while (n != 0 && mpz_divisible_ui_p(n.get_mpz_t(), p)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
  return n;
}

/// p-adic valuation of a nonzero integer.
inline long valuation(const Integer& n, unsigned long p) {
  if (n == 0) throw InputError("valuation of zero");
  Integer m = n;
  long v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    ++v;
  }
  return v;
}

inline long valuation(const Rational& x, unsigned long p) {
  return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

inline MultiplicativeHeight weil_height(const Rational& x) {
  if (is_zero(x)) throw InputError("height of zero is undefined");
  Integer n = abs(x.get_num());
  return {n > x.get_den() ? n : Integer(x.get_den())};
}

/// Contribution of the places outside S: the denominator with S removed.
inline MultiplicativeHeight s_height(const Rational& x, const PlaceSet& s) {
  if (is_zero(x)) throw InputError("S-height of zero is undefined");
  return {strip_places(x.get_den(), s)};
}

inline bool is_s_unit(const Rational& x, const PlaceSet& s) {
  if (is_zero(x)) throw InputError("zero is not an S-unit");
  return strip_places(x.get_num(), s) == 1 && strip_places(x.get_den(), s) == 1;
}

inline bool is_s_integer(const Rational& x, const PlaceSet& s) { return strip_places(x.get_den(), s) == 1; }

/// H(x_0 : ... : x_k) for a nonzero rational vector: scale to coprime
/// integers and take the largest absolute value.
inline MultiplicativeHeight projective_height(std::span<const Rational> coords) {
  Integer den = 1;
  bool nonzero = false;
  for (const auto& c : coords) {
    den = lcm(den, c.get_den());
    nonzero = nonzero || !is_zero(c);
  }
  if (!nonzero) throw InputError("projective height of the zero vector");
  Integer g = 0, best = 0;
  std::vector<Integer> scaled;
  for (const auto& c : coords) {
    scaled.push_back(abs(c.get_num()) * (den / c.get_den()));
    g = gcd(g, scaled.back());
  }
  for (const auto& v : scaled) best = std::max(best, Integer(v / g));
  return {best};
}

inline MultiplicativeHeight projective_height(const std::vector<Rational>& coords) {
  return projective_height(std::span<const Rational>(coords));
}

/// H(1 : x_1 : ... : x_k).
inline MultiplicativeHeight affine_projective_height(std::span<const Rational> xs) {
  std::vector<Rational> v{Rational(1)};
  v.insert(v.end(), xs.begin(), xs.end());
  return projective_height(v);
}

/// Multiplicative form of h(xi) <= h(1:b0:...:bd) + log d for any root xi of
/// b0 Z^d + ... + bd: returns d * H(1:b0:...:bd).
inline MultiplicativeHeight root_height_bound(const std::vector<Rational>& coeffs) {
  if (coeffs.size() < 2) throw InputError("root height bound needs degree at least 1");
  if (is_zero(coeffs[0])) throw InputError("leading coefficient must be nonzero");
  auto h = affine_projective_height(coeffs);
  return {h.value * static_cast<unsigned long>(coeffs.size() - 1)};
}

/// Minimum p-adic valuation over the nonzero coefficients; the p-adic Gauss
/// norm is p^(-gauss_valuation). Zero polynomials are an input error.
inline long gauss_valuation(std::span<const Rational> coeffs, unsigned long p) {
  bool any = false;
  long best = 0;
  for (const auto& c : coeffs) {
    if (is_zero(c)) continue;
    long v = valuation(c, p);
    best = any ? std::min(best, v) : v;
    any = true;
  }
  if (!any) throw InputError("Gauss norm of the zero polynomial");
  return best;
}

}  // namespace recdio
