#pragma once

// Exponential polynomials sum_j c_j * rho_j^n over Q, their restriction to
// arithmetic progressions, and an exact zero-set decomposition.
//
// Over Q the only root of unity that can appear as a ratio of two roots is
// -1. Restricting to the two classes mod 2 squares every root, after which
// distinct roots have distinct absolute values and a dominant root gives an
// explicit index past which the sequence cannot vanish.

#include "recdio/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace recdio {

struct SizeError : std::length_error {
  using std::length_error::length_error;
};

/// {offset + modulus * t : t >= 0}.
struct Progression {
  std::uint64_t offset = 0;
  std::uint64_t modulus = 1;

  Progression() = default;
  Progression(std::uint64_t a, std::uint64_t m) : offset(a), modulus(m) {
    if (m == 0) throw InputError("progression modulus must be positive");
    if (m > 1 && a >= m) throw InputError("progression offset must be below the modulus");
  }

  bool contains(std::uint64_t n) const { return n >= offset && (n - offset) % modulus == 0; }
  std::uint64_t at(std::uint64_t t) const { return offset + modulus * t; }
  std::string to_string() const { return std::to_string(offset) + " mod " + std::to_string(modulus); }

  friend auto operator<=>(const Progression& a, const Progression& b) {
    if (auto c = a.modulus <=> b.modulus; c != 0) return c;
    return a.offset <=> b.offset;
  }
  friend bool operator==(const Progression&, const Progression&) = default;
};

/// Canonical sum of c * rho^n: roots nonzero and distinct, coefficients
/// nonzero. The empty sum is the zero sequence.
class ExpPolynomial {
 public:
  using Terms = std::map<Rational, Rational>;  // root -> coefficient

  ExpPolynomial() = default;

  /// Merges equal roots and drops cancelled terms. Zero roots are rejected.
  static ExpPolynomial from_terms(const std::vector<std::pair<Rational, Rational>>& coeff_root) {
    ExpPolynomial e;
    for (const auto& [c, r] : coeff_root) e.add_term(c, r);
    return e;
  }

  void add_term(const Rational& coeff, const Rational& root) {
    if (recdio::is_zero(root)) throw InputError("exponential polynomial roots must be nonzero");
    if (recdio::is_zero(coeff)) return;
    auto [it, inserted] = terms_.try_emplace(root, coeff);
    if (!inserted) {
      it->second += coeff;
      if (recdio::is_zero(it->second)) terms_.erase(it);
    }
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational eval(std::uint64_t n) const {
    Rational acc = 0;
    for (const auto& [root, c] : terms_) acc += c * pow(root, static_cast<long>(n));
    return acc;
  }

  friend ExpPolynomial operator+(ExpPolynomial a, const ExpPolynomial& b) {
    for (const auto& [r, c] : b.terms_) a.add_term(c, r);
    return a;
  }
  friend ExpPolynomial operator-(ExpPolynomial a, const ExpPolynomial& b) {
    for (const auto& [r, c] : b.terms_) a.add_term(-c, r);
    return a;
  }
  friend ExpPolynomial operator*(const ExpPolynomial& a, const ExpPolynomial& b) {
    ExpPolynomial r;
    for (const auto& [ra, ca] : a.terms_)
      for (const auto& [rb, cb] : b.terms_) r.add_term(ca * cb, ra * rb);
    return r;
  }
  friend ExpPolynomial operator*(ExpPolynomial a, const Rational& s) {
    if (recdio::is_zero(s)) return {};
    for (auto& [r, c] : a.terms_) c *= s;
    return a;
  }
  friend bool operator==(const ExpPolynomial&, const ExpPolynomial&) = default;

  std::string to_string(const std::string& var = "n") const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [root, c] = *it;
      bool neg = sgn(c) < 0;
      std::string mag = recdio::to_string(Rational(abs(c)));
      std::string term = root == 1 ? mag : (mag == "1" ? "" : mag + "*") + "(" + recdio::to_string(root) + ")^" + var;
      if (out.empty())
        out = (neg ? "-" : "") + term;
      else
        out += (neg ? " - " : " + ") + term;
    }
    return out;
  }

 private:
  Terms terms_;
};

/// A Binet-form sequence sum b_i * beta_i^n with at least one term, nonzero
/// coefficients and pairwise distinct nonzero roots.
class PowerSumSequence {
 public:
  PowerSumSequence(const std::vector<std::pair<Rational, Rational>>& coeff_root) {
    if (coeff_root.empty()) throw InputError("power sum needs at least one term");
    for (const auto& [c, r] : coeff_root) {
      if (is_zero(c)) throw InputError("power sum coefficients must be nonzero");
      if (is_zero(r)) throw InputError("power sum roots must be nonzero");
      if (e_.terms().count(r)) throw InputError("power sum roots must be pairwise distinct");
      e_.add_term(c, r);
    }
  }
  explicit PowerSumSequence(const ExpPolynomial& e) : e_(e) {
    if (e.is_zero()) throw InputError("power sum needs at least one term");
  }

  Rational eval(std::uint64_t n) const { return e_.eval(n); }
  const ExpPolynomial& as_exp() const { return e_; }
  std::vector<Rational> roots() const {
    std::vector<Rational> r;
    for (const auto& [root, c] : e_.terms()) r.push_back(root);
    return r;
  }
  friend bool operator==(const PowerSumSequence&, const PowerSumSequence&) = default;

 private:
  ExpPolynomial e_;
};

/// No ratio of distinct roots is a root of unity; over Q, no pair beta, -beta.
inline bool is_nondegenerate(const ExpPolynomial& e) {
  for (const auto& [root, c] : e.terms())
    if (sgn(root) > 0 && e.terms().count(Rational(-root))) return false;
  return true;
}

inline bool is_nondegenerate(const PowerSumSequence& s) { return is_nondegenerate(s.as_exp()); }

/// Substitutes n = a + m t: c rho^n becomes (c rho^a) (rho^m)^t. The result
/// is a sequence in t.
inline ExpPolynomial restrict_to_progression(const ExpPolynomial& e, const Progression& p) {
  ExpPolynomial r;
  for (const auto& [root, c] : e.terms())
    r.add_term(c * pow(root, static_cast<long>(p.offset)), pow(root, static_cast<long>(p.modulus)));
  return r;
}

struct ZeroSet {
  std::vector<std::uint64_t> finite_zeros;  // ascending
  std::vector<Progression> progressions;    // ascending (modulus, offset)

  bool contains(std::uint64_t n) const {
    if (std::binary_search(finite_zeros.begin(), finite_zeros.end(), n)) return true;
    return std::any_of(progressions.begin(), progressions.end(), [n](const auto& p) { return p.contains(n); });
  }
  friend bool operator==(const ZeroSet&, const ZeroSet&) = default;
};

namespace detail {

inline bool has_distinct_absolute_roots(const ExpPolynomial& e) { return is_nondegenerate(e); }

/// Smallest t0 such that the dominant term outweighs all others for every
/// t >= t0. Requires pairwise distinct |root| and a nonzero sequence.
inline std::uint64_t dominant_threshold(const ExpPolynomial& e) {
  std::vector<std::pair<Rational, Rational>> by_abs;  // (|root|, |coeff|)
  for (const auto& [root, c] : e.terms()) by_abs.emplace_back(abs(root), abs(c));
  std::sort(by_abs.begin(), by_abs.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  if (by_abs.size() <= 1) return 0;
  const Rational lead = by_abs[0].second;
  std::vector<std::pair<Rational, Rational>> rest;  // (ratio < 1, weight)
  for (std::size_t i = 1; i < by_abs.size(); ++i) rest.emplace_back(by_abs[i].first / by_abs[0].first, by_abs[i].second);
  auto dominated = [&](std::uint64_t t) {
    Rational tail = 0;
    for (const auto& [q, w] : rest) tail += w * pow(q, static_cast<long>(t));
    return tail < lead;
  };
  if (dominated(0)) return 0;
  std::uint64_t hi = 1;
  while (!dominated(hi)) hi *= 2;
  std::uint64_t lo = hi / 2;  // not dominated at lo
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    (dominated(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace detail

/// Exact decomposition of {n >= 0 : e(n) = 0} into finitely many zeros plus
/// full progressions. Returns nullopt only if modulus_bound is too small to
/// separate roots of equal absolute value (over Q, 2 always suffices).
inline std::optional<ZeroSet> zero_set(const ExpPolynomial& e, std::uint64_t modulus_bound = 2) {
  ZeroSet out;
  if (e.is_zero()) {
    out.progressions.push_back(Progression(0, 1));
    return out;
  }
  for (std::uint64_t m = 1; m <= modulus_bound; ++m) {
    std::vector<ExpPolynomial> classes;
    bool good = true;
    for (std::uint64_t a = 0; a < m && good; ++a) {
      classes.push_back(restrict_to_progression(e, Progression(a, m)));
      good = classes.back().is_zero() || detail::has_distinct_absolute_roots(classes.back());
    }
    if (!good) continue;
    for (std::uint64_t a = 0; a < m; ++a) {
      const auto& r = classes[a];
      if (r.is_zero()) {
        out.progressions.push_back(Progression(a, m));
        continue;
      }
      std::uint64_t t0 = detail::dominant_threshold(r);
      for (std::uint64_t t = 0; t < t0; ++t)
        if (is_zero(r.eval(t))) out.finite_zeros.push_back(a + m * t);
    }
    std::sort(out.finite_zeros.begin(), out.finite_zeros.end());
    std::sort(out.progressions.begin(), out.progressions.end());
    return out;
  }
  return std::nullopt;
}

struct SchmidtBound {
  Integer exponent;       // E, with c(k, a) = e^E
  std::string log10_c;    // decimal approximation of E * log10(e), display only
};

/// Zero-multiplicity bound c(k, a) = exp((7 k^a)^(8 k^a)) for non-degenerate
/// recurrences with k distinct roots of multiplicity <= a.
inline SchmidtBound schmidt_bound(unsigned long k, unsigned long a, std::size_t max_bits = std::size_t{1} << 22) {
  if (k == 0 || a == 0) throw InputError("schmidt bound needs k, a >= 1");
  Integer ka = ipow(Integer(k), a);
  // bits(E) ~ 8 k^a * log2(7 k^a)
  std::size_t base_bits = mpz_sizeinbase(Integer(7 * ka).get_mpz_t(), 2);
  if (ka > Integer(static_cast<unsigned long>(max_bits)) ||
      Integer(8 * ka) * static_cast<unsigned long>(base_bits) > Integer(static_cast<unsigned long>(max_bits)) * 2)
    throw SizeError("exponent of the Schmidt bound exceeds " + std::to_string(max_bits) + " bits");
  Integer base = 7 * ka;
  Integer e = ipow(base, 8 * ka.get_ui());
  if (mpz_sizeinbase(e.get_mpz_t(), 2) > max_bits)
    throw SizeError("exponent of the Schmidt bound exceeds " + std::to_string(max_bits) + " bits");

  std::size_t prec = mpz_sizeinbase(e.get_mpz_t(), 2) + 128;
  mpf_class log10e("0.434294481903251827651128918916605082294397005803666566114", prec, 10);
  mpf_class v(e, prec);
  v *= log10e;
  mp_exp_t exp10 = 0;
  std::string digits = v.get_str(exp10, 10, 20);
  std::string text = digits.substr(0, 1) + (digits.size() > 1 ? "." + digits.substr(1) : "") + "e" +
                     std::to_string(static_cast<long>(exp10) - 1);
  return {e, text};
}

}  // namespace recdio
