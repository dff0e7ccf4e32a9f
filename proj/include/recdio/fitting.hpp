#pragma once

// Interpolation of sequence data on an arithmetic progression by
// polynomials in power-sum variables, and the substitution needed to
// certify such fits symbolically.
//
// On n = a + m t the variables are V_i = s_i^t with s_i^e = gamma_i^m for a
// root index e, so gamma_i^n = gamma_i^a V_i^e.

#include "recdio/linalg.hpp"
#include "recdio/multipoly.hpp"
#include "recdio/powersum.hpp"
#include "recdio/problem.hpp"
#include "recdio/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace recdio {

inline constexpr unsigned kMaxRootIndex = 4;

/// Exact real e-th root of q if it is rational; the positive one for even e.
inline std::optional<Rational> exact_root(const Rational& q, unsigned e) {
  if (e == 0) throw InputError("root index must be positive");
  if (e == 1) return q;
  if (sgn(q) < 0 && e % 2 == 0) return std::nullopt;
  Integer num = abs(q.get_num()), den = q.get_den(), rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), e) || !mpz_root(rd.get_mpz_t(), den.get_mpz_t(), e)) return std::nullopt;
  Rational r(rn, rd);
  r.canonicalize();
  return sgn(q) < 0 ? Rational(-r) : r;
}

struct Reparametrization {
  Progression progression;
  unsigned root_index = 1;
  std::vector<Rational> bases;   // s_i, with s_i^e = gamma_i^m
  std::vector<Rational> shifts;  // gamma_i^a

  std::uint64_t step(std::uint64_t n) const { return (n - progression.offset) / progression.modulus; }

  /// V_i = s_i^t at n = a + m t.
  std::vector<Rational> variables_at(std::uint64_t n) const {
    std::vector<Rational> v;
    long t = static_cast<long>(step(n));
    for (const auto& b : bases) v.push_back(pow(b, t));
    return v;
  }

  /// Replaces X_i by gamma_i^a V_i^e in the first r variables; any further
  /// variables (Z) are left alone.
  RationalPoly pull_back(const RationalPoly& p) const {
    const std::size_t r = bases.size();
    if (p.arity() < r) throw InputError("polynomial has fewer variables than gammas");
    RationalPoly out(p.arity());
    for (const auto& [k, c] : p.terms()) {
      Exponent f = k;
      Rational scale = c;
      for (std::size_t i = 0; i < r; ++i) {
        scale *= pow(shifts[i], static_cast<long>(k[i]));
        f[i] = k[i] * root_index;
      }
      out.add_term(f, scale);
    }
    return out;
  }

  /// n = t and V_i = gamma_i^n.
  bool is_identity() const { return progression.modulus == 1 && root_index == 1; }

  /// X1.. for the identity reparametrization, V1.. otherwise; an extra
  /// trailing name "Z" when with_z is set.
  std::vector<std::string> variable_names(bool with_z = false) const {
    std::vector<std::string> n;
    for (std::size_t i = 0; i < bases.size(); ++i) n.push_back((is_identity() ? "X" : "V") + std::to_string(i + 1));
    if (with_z) n.push_back("Z");
    return n;
  }

  /// "V1 = (1/2)^t; n = 2t + 1", or "X1 = (1/2)^n" for the identity.
  std::string legend() const {
    auto names = variable_names();
    std::string s;
    for (std::size_t i = 0; i < bases.size(); ++i) {
      if (i) s += ", ";
      s += names[i] + " = (" + to_string(bases[i]) + ")^" + (is_identity() ? "n" : "t");
    }
    if (is_identity()) return s;
    s += "; n = ";
    s += progression.modulus == 1 ? "t" : std::to_string(progression.modulus) + "t";
    if (progression.offset) s += " + " + std::to_string(progression.offset);
    return s;
  }

  friend bool operator==(const Reparametrization&, const Reparametrization&) = default;
};

/// Variable choices for a progression, by increasing root index.
inline std::vector<Reparametrization> reparametrizations(const std::vector<Rational>& gammas, const Progression& p,
                                                         unsigned max_root_index = kMaxRootIndex) {
  std::vector<Reparametrization> out;
  for (unsigned e = 1; e <= max_root_index; ++e) {
    Reparametrization r{p, e, {}, {}};
    bool ok = true;
    for (const auto& g : gammas) {
      auto s = exact_root(pow(g, static_cast<long>(p.modulus)), e);
      if (!s) {
        ok = false;
        break;
      }
      r.bases.push_back(*s);
      r.shifts.push_back(pow(g, static_cast<long>(p.offset)));
    }
    if (ok) out.push_back(std::move(r));
  }
  return out;
}

/// Exponents of total degree <= degree, ordered by degree and then by
/// descending exponent vector.
inline std::vector<Exponent> monomials_up_to(std::size_t arity, unsigned degree) {
  std::vector<Exponent> out;
  Exponent e(arity, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == arity || arity == 0) {
      if (arity) e[i] = left;
      out.push_back(e);
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  for (unsigned d = 0; d <= degree; ++d) {
    if (arity == 0) {
      if (d == 0) out.push_back(e);
      continue;
    }
    rec(rec, 0, d);
  }
  return out;
}

using SequenceData = std::vector<std::pair<std::uint64_t, Rational>>;

/// Polynomial P in V of total degree <= degree with P(V(n)) = value for
/// every data point, or nullopt. Underdetermined inputs are reported
/// through `diagnostic` when given.
inline std::optional<RationalPoly> fit_polynomial(const Reparametrization& param, const SequenceData& data, unsigned degree,
                                                  std::string* diagnostic = nullptr) {
  const std::size_t r = param.bases.size();
  auto monos = monomials_up_to(r, degree);
  if (data.size() < monos.size()) {
    if (diagnostic)
      *diagnostic = "underdetermined fit: " + std::to_string(data.size()) + " points for " + std::to_string(monos.size()) +
                    " unknowns on " + param.progression.to_string();
    return std::nullopt;
  }
  const std::size_t used = std::min(data.size(), monos.size() + 2);
  Matrix a;
  std::vector<Rational> b;
  for (std::size_t row = 0; row < used; ++row) {
    auto v = param.variables_at(data[row].first);
    std::vector<Rational> line;
    for (const auto& k : monos) {
      Rational x = 1;
      for (std::size_t i = 0; i < r; ++i) x *= pow(v[i], static_cast<long>(k[i]));
      line.push_back(x);
    }
    a.push_back(std::move(line));
    b.push_back(data[row].second);
  }
  auto sol = solve_linear(std::move(a), std::move(b));
  if (!sol) return std::nullopt;
  RationalPoly p(r);
  for (std::size_t j = 0; j < monos.size(); ++j) p.add_term(monos[j], sol->x[j]);
  for (std::size_t row = used; row < data.size(); ++row)
    if (poly_eval(p, param.variables_at(data[row].first)) != data[row].second) return std::nullopt;
  return p;
}

/// True when p(V(t)) vanishes for every t >= 0, decided by collecting the
/// monomials into an exponential polynomial in t.
inline bool vanishes_identically(const RationalPoly& p, const Reparametrization& param) {
  return power_sum_of(p, param.bases).is_zero();
}

}  // namespace recdio
