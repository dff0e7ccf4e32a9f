#pragma once

// Univariate factorization over Q: squarefree decomposition, then Zassenhaus
// (factor modulo a small prime, Hensel lift, recombine) on each squarefree
// part. Degrees are capped; the product of the returned factors is always
// re-verified against the input.

#include "recdio/rational.hpp"
#include "recdio/upoly.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace recdio {

struct UnsupportedDegreeError : std::domain_error {
  using std::domain_error::domain_error;
};

namespace detail::modp {

using Poly = std::vector<std::uint64_t>;  // low to high, coefficients in [0, p)

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
  while (nr != 0) {
    std::int64_t q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw std::domain_error("not invertible mod p");
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(p) : t);
}

inline Poly add(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    r[i] = (x + y) % p;
  }
  trim(r);
  return r;
}

inline Poly sub(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    r[i] = (x + p - y) % p;
  }
  trim(r);
  return r;
}

inline Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return r;
}

inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, std::uint64_t p) {
  if (b.empty()) throw std::domain_error("division by zero polynomial mod p");
  if (a.size() < b.size()) return {{}, a};
  Poly r = a, q(a.size() - b.size() + 1, 0);
  std::uint64_t li = inv(b.back(), p);
  for (std::size_t k = q.size(); k-- > 0;) {
    std::uint64_t t = r[k + b.size() - 1] * li % p;
    q[k] = t;
    if (t == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[k + j] = (r[k + j] + p - t * b[j] % p) % p;
  }
  r.resize(b.size() - 1);
  trim(r);
  trim(q);
  return {q, r};
}

inline Poly monic(const Poly& a, std::uint64_t p) {
  if (a.empty()) return a;
  std::uint64_t li = inv(a.back(), p);
  Poly r(a);
  for (auto& x : r) x = x * li % p;
  return r;
}

inline Poly gcd(Poly a, Poly b, std::uint64_t p) {
  while (!b.empty()) {
    Poly r = divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

/// (g, s, t) with s*a + t*b = g monic.
inline std::tuple<Poly, Poly, Poly> ext_gcd(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1, p);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = sub(s0, mul(q, s1, p), p), t2 = sub(t0, mul(q, t1, p), p);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  std::uint64_t li = inv(r0.back(), p);
  auto scale = [&](Poly v) {
    for (auto& x : v) x = x * li % p;
    trim(v);
    return v;
  };
  return {scale(r0), scale(s0), scale(t0)};
}

inline Poly derivative(const Poly& a, std::uint64_t p) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * (i % p) % p;
  trim(r);
  return r;
}

inline Poly powmod(const Poly& base, const Integer& e, const Poly& mod, std::uint64_t p) {
  Poly result{1};
  Poly b = divmod(base, mod, p).second;
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = divmod(mul(result, result, p), mod, p).second;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = divmod(mul(result, b, p), mod, p).second;
  }
  return result;
}

// Cantor-Zassenhaus equal-degree splitting for odd p.
inline void equal_degree_split(const Poly& f, std::size_t d, std::uint64_t p, std::mt19937_64& rng,
                               std::vector<Poly>& out) {
  if (f.size() - 1 == d) {
    out.push_back(f);
    return;
  }
  Integer e = (ipow(from_u64(p), d) - 1) / 2;
  std::uniform_int_distribution<std::uint64_t> coin(0, p - 1);
  for (;;) {
    Poly a(f.size() - 1);
    for (auto& x : a) x = coin(rng);
    trim(a);
    if (a.size() < 2) continue;
    Poly b = sub(powmod(a, e, f, p), Poly{1}, p);
    Poly u = gcd(f, b, p);
    if (u.size() > 1 && u.size() < f.size()) {
      equal_degree_split(u, d, p, rng, out);
      equal_degree_split(divmod(f, u, p).first, d, p, rng, out);
      return;
    }
  }
}

/// Irreducible monic factors of a monic squarefree polynomial mod odd p.
inline std::vector<Poly> factor_squarefree(Poly f, std::uint64_t p) {
  std::vector<Poly> out;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ p);
  Poly x{0, 1};
  Poly h = x;
  for (std::size_t i = 1; f.size() > 1 && 2 * i <= f.size() - 1; ++i) {
    h = powmod(h, from_u64(p), f, p);
    Poly g = gcd(f, sub(h, x, p), p);
    if (g.size() > 1) {
      equal_degree_split(g, i, p, rng, out);
      f = divmod(f, g, p).first;
      h = divmod(h, f, p).second;
    }
  }
  if (f.size() > 1) out.push_back(f);
  return out;
}

}  // namespace detail::modp

namespace detail {

using ZPoly = std::vector<Integer>;  // low to high

inline void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Primitive integer polynomial with positive leading coefficient, equal to
/// p up to a rational scalar.
inline ZPoly primitive_integer(const UPoly& p) {
  Integer den = 1;
  for (const auto& c : p.coeffs()) den = lcm(den, c.get_den());
  ZPoly z;
  Integer g = 0;
  for (const auto& c : p.coeffs()) {
    Integer v = c.get_num() * (den / c.get_den());
    g = gcd(g, v);
    z.push_back(v);
  }
  if (sgn(z.back()) < 0) g = -g;
  for (auto& v : z) v /= g;
  return z;
}

inline UPoly to_upoly(const ZPoly& z) {
  std::vector<Rational> v;
  v.reserve(z.size());
  for (const auto& c : z) v.emplace_back(c);
  return UPoly(std::move(v));
}

inline modp::Poly reduce(const ZPoly& a, std::uint64_t p) {
  modp::Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mpz_fdiv_ui(a[i].get_mpz_t(), p);
  modp::trim(r);
  return r;
}

inline ZPoly lift(const modp::Poly& a) {
  ZPoly r;
  for (auto x : a) r.push_back(from_u64(x));
  return r;
}

inline ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  ztrim(r);
  return r;
}

inline ZPoly zmod(ZPoly a, const Integer& m) {
  for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  ztrim(a);
  return a;
}

inline ZPoly zsymmetric(ZPoly a, const Integer& m) {
  Integer half = m / 2;
  for (auto& c : a) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c > half) c -= m;
  }
  ztrim(a);
  return a;
}

/// Lifts F = g*h (mod p), F monic, to a factorization modulo p^k.
inline std::pair<ZPoly, ZPoly> hensel_lift_pair(const ZPoly& F, const modp::Poly& g, const modp::Poly& h,
                                                std::uint64_t p, unsigned k) {
  auto [one, s, t] = modp::ext_gcd(g, h, p);
  if (one.size() != 1) throw std::logic_error("Hensel lifting needs coprime factors");
  ZPoly G = lift(g), H = lift(h);
  Integer pj = from_u64(p);
  for (unsigned j = 1; j < k; ++j) {
    ZPoly GH = zmul(G, H);
    ZPoly E(std::max(F.size(), GH.size()), Integer(0));
    for (std::size_t i = 0; i < E.size(); ++i) {
      Integer a = i < F.size() ? F[i] : Integer(0);
      Integer b = i < GH.size() ? GH[i] : Integer(0);
      E[i] = a - b;
      mpz_divexact(E[i].get_mpz_t(), E[i].get_mpz_t(), pj.get_mpz_t());
    }
    modp::Poly e = reduce(E, p);
    auto [q, sigma] = modp::divmod(modp::mul(s, e, p), h, p);
    modp::Poly tau = modp::add(modp::mul(t, e, p), modp::mul(q, g, p), p);
    ZPoly tz = lift(tau), sz = lift(sigma);
    for (std::size_t i = 0; i < tz.size(); ++i) G[i] += pj * tz[i];
    for (std::size_t i = 0; i < sz.size(); ++i) H[i] += pj * sz[i];
    pj *= p;
  }
  return {G, H};
}

inline std::vector<ZPoly> hensel_lift(const ZPoly& F, const std::vector<modp::Poly>& factors, std::uint64_t p,
                                      unsigned k, const Integer& modulus) {
  if (factors.size() == 1) return {zmod(F, modulus)};
  modp::Poly rest{1};
  for (std::size_t i = 1; i < factors.size(); ++i) rest = modp::mul(rest, factors[i], p);
  auto [G, H] = hensel_lift_pair(F, factors[0], rest, p, k);
  std::vector<ZPoly> out{zmod(G, modulus)};
  std::vector<modp::Poly> tail(factors.begin() + 1, factors.end());
  auto more = hensel_lift(zmod(H, modulus), tail, p, k, modulus);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

inline const std::vector<std::uint64_t>& small_odd_primes() {
  static const std::vector<std::uint64_t> primes = [] {
    std::vector<std::uint64_t> out;
    const std::uint64_t limit = 20000;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      if (i > 2) out.push_back(i);
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

/// Exact division test over Z: returns the quotient when d divides f.
inline bool zdivides(const ZPoly& f, const ZPoly& d, ZPoly& quotient) {
  if (d.size() > f.size()) return false;
  ZPoly r = f;
  ZPoly q(f.size() - d.size() + 1, Integer(0));
  for (std::size_t k = q.size(); k-- > 0;) {
    const Integer& top = r[k + d.size() - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), d.back().get_mpz_t())) return false;
    Integer t = top / d.back();
    q[k] = t;
    for (std::size_t j = 0; j < d.size(); ++j) r[k + j] -= t * d[j];
  }
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    if (r[i] != 0) return false;
  ztrim(q);
  quotient = std::move(q);
  return true;
}

inline ZPoly primitive_part(ZPoly a) {
  Integer g = 0;
  for (const auto& c : a) g = gcd(g, c);
  if (a.empty() || g == 0) return a;
  if (sgn(a.back()) < 0) g = -g;
  for (auto& c : a) c /= g;
  return a;
}

/// Zassenhaus on a primitive squarefree integer polynomial of degree >= 1.
/// With linear_only, only degree-one integer factors are extracted and the
/// unfactored remainder is dropped.
inline std::vector<ZPoly> zassenhaus(ZPoly f, bool linear_only) {
  const std::size_t n = f.size() - 1;
  if (n == 1) return {f};
  ZPoly df(n);
  for (std::size_t i = 1; i <= n; ++i) df[i - 1] = f[i] * static_cast<unsigned long>(i);

  // Pick the prime with the fewest modular factors among a handful of
  // admissible ones.
  std::uint64_t best_p = 0;
  std::vector<modp::Poly> best;
  int admissible = 0;
  for (std::uint64_t p : small_odd_primes()) {
    if (mpz_fdiv_ui(f.back().get_mpz_t(), p) == 0) continue;
    modp::Poly fp = reduce(f, p);
    if (modp::gcd(fp, reduce(df, p), p).size() != 1) continue;
    auto facs = modp::factor_squarefree(modp::monic(fp, p), p);
    if (best_p == 0 || facs.size() < best.size()) {
      best_p = p;
      best = std::move(facs);
    }
    if (++admissible == 6 || best.size() == 1) break;
  }
  if (best_p == 0) throw std::logic_error("no admissible prime for factorization");
  if (best.size() == 1) return linear_only ? std::vector<ZPoly>{} : std::vector<ZPoly>{f};

  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer bound = ipow(Integer(2), n) * (sqrt(norm2) + 1) * abs(f.back());
  unsigned k = 1;
  Integer modulus = from_u64(best_p);
  while (modulus <= 2 * bound) {
    modulus *= best_p;
    ++k;
  }
  Integer lc_inv;
  mpz_invert(lc_inv.get_mpz_t(), f.back().get_mpz_t(), modulus.get_mpz_t());
  ZPoly F = f;
  for (auto& c : F) c *= lc_inv;
  F = zmod(F, modulus);
  std::vector<ZPoly> lifted = hensel_lift(F, best, best_p, k, modulus);

  std::vector<ZPoly> out;
  auto try_candidate = [&](const std::vector<std::size_t>& subset) {
    ZPoly G{f.back()};
    for (std::size_t i : subset) G = zmod(zmul(G, lifted[i]), modulus);
    G = primitive_part(zsymmetric(G, modulus));
    ZPoly q;
    if (G.size() < 2 || !zdivides(f, G, q)) return false;
    out.push_back(G);
    f = std::move(q);
    return true;
  };

  if (linear_only) {
    for (std::size_t i = 0; i < lifted.size(); ++i)
      if (lifted[i].size() == 2) try_candidate({i});
    return out;
  }

  std::vector<std::size_t> remaining(lifted.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
  for (std::size_t s = 1; 2 * s <= remaining.size();) {
    bool found = false;
    std::vector<bool> pick(remaining.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(s), true);
    do {
      std::vector<std::size_t> subset;
      for (std::size_t i = 0; i < remaining.size(); ++i)
        if (pick[i]) subset.push_back(remaining[i]);
      if (try_candidate(subset)) {
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < remaining.size(); ++i)
          if (!pick[i]) keep.push_back(remaining[i]);
        remaining = std::move(keep);
        found = true;
        break;
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    if (!found) ++s;
  }
  if (f.size() > 1) out.push_back(primitive_part(f));
  return out;
}

}  // namespace detail

/// Canonical order on polynomials: degree first, then coefficients from the
/// constant term upward.
inline bool canonical_less(const UPoly& a, const UPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = 0; i <= a.degree(); ++i) {
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  }
  return false;
}

struct IrreducibleFactor {
  UPoly factor;  // monic, irreducible over Q
  unsigned multiplicity = 1;
};

struct Factorization {
  Rational unit;  // leading coefficient of the input
  std::vector<IrreducibleFactor> factors;

  UPoly expand() const {
    UPoly acc = UPoly::constant(unit);
    for (const auto& f : factors)
      for (unsigned i = 0; i < f.multiplicity; ++i) acc = acc * f.factor;
    return acc;
  }
  std::vector<int> degree_multiset() const {
    std::vector<int> d;
    for (const auto& f : factors)
      for (unsigned i = 0; i < f.multiplicity; ++i) d.push_back(f.factor.degree());
    std::sort(d.begin(), d.end());
    return d;
  }
  bool is_irreducible() const { return factors.size() == 1 && factors[0].multiplicity == 1; }
};

/// Complete factorization over Q into monic irreducibles. Throws
/// UnsupportedDegreeError above degree_cap; the zero polynomial is an input
/// error.
inline Factorization factor_rational(const UPoly& p, int degree_cap = 8) {
  if (p.is_zero()) throw InputError("cannot factor the zero polynomial");
  if (p.degree() > degree_cap)
    throw UnsupportedDegreeError("degree " + std::to_string(p.degree()) + " exceeds factorization cap " +
                                 std::to_string(degree_cap));
  Factorization out{p.lc(), {}};
  for (const auto& [part, mult] : squarefree_decomposition(p)) {
    for (const auto& z : detail::zassenhaus(detail::primitive_integer(part), false))
      out.factors.push_back({detail::to_upoly(z).monic(), mult});
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
    return canonical_less(a.factor, b.factor);
  });
  if (!(out.expand() == p)) throw std::logic_error("factorization does not reproduce its input");
  return out;
}

/// All distinct rational roots, ascending. Only linear factors are
/// extracted, so this is cheaper than a full factorization.
inline std::vector<Rational> rational_roots(const UPoly& p, int degree_cap = 8) {
  if (p.is_zero()) throw InputError("the zero polynomial has every number as a root");
  if (p.degree() > degree_cap)
    throw UnsupportedDegreeError("degree " + std::to_string(p.degree()) + " exceeds factorization cap " +
                                 std::to_string(degree_cap));
  std::vector<Rational> roots;
  for (const auto& [part, mult] : squarefree_decomposition(p)) {
    for (const auto& z : detail::zassenhaus(detail::primitive_integer(part), true)) {
      Rational r(-z[0], z[1]);
      r.canonicalize();
      if (!is_zero(p.eval(r))) throw std::logic_error("spurious rational root");
      roots.push_back(r);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace recdio
