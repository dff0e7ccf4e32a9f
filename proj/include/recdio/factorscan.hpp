#pragma once

// Factorisation of the specialisations g(gamma^n, Z) over Q, detection of
// residue classes on which they stay reducible, and recovery of a generic
// factorisation h_1(n, Z) h_2(n, Z) certified on such a class.

#include "recdio/factor.hpp"
#include "recdio/fitting.hpp"
#include "recdio/heights.hpp"
#include "recdio/multipoly.hpp"
#include "recdio/parallel.hpp"
#include "recdio/problem.hpp"
#include "recdio/series.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace recdio {

struct ScanRow {
  std::uint64_t n = 0;
  bool degenerate = false;
  std::vector<UPoly> factors;  // monic irreducibles, repeated by multiplicity, canonical order
  std::vector<int> degrees;    // ascending

  bool reducible() const { return !degenerate && factors.size() > 1; }
};

/// Monic factors h_1, h_2 whose lower coefficients are polynomials in the
/// variables of `param`.
struct GenericFactorization {
  Reparametrization param;
  std::vector<RationalPoly> h1;  // coefficient of Z^i for i < deg h_1
  std::vector<RationalPoly> h2;
  std::vector<std::size_t> h1_positions;  // indices into the canonical factor list
  bool certified = false;
  bool s_integral_on_samples = false;
  std::size_t samples = 0;
  std::size_t extrapolation_checked = 0;
  std::size_t extrapolation_failed = 0;

  /// h as a polynomial in V_1..V_r, Z.
  static RationalPoly as_polynomial(const std::vector<RationalPoly>& lower, std::size_t r) {
    RationalPoly p(r + 1);
    Exponent top(r + 1, 0);
    top[r] = static_cast<std::uint32_t>(lower.size());
    p.add_term(top, Rational(1));
    for (std::size_t i = 0; i < lower.size(); ++i)
      for (const auto& [e, c] : lower[i].terms()) {
        Exponent f = e;
        f.push_back(static_cast<std::uint32_t>(i));
        p.add_term(f, c);
      }
    return p;
  }
  RationalPoly h1_polynomial() const { return as_polynomial(h1, param.bases.size()); }
  RationalPoly h2_polynomial() const { return as_polynomial(h2, param.bases.size()); }

  /// h(n, Z) as a univariate polynomial.
  static UPoly specialize(const std::vector<RationalPoly>& lower, const std::vector<Rational>& v) {
    std::vector<Rational> c;
    for (const auto& p : lower) c.push_back(poly_eval(p, v));
    c.push_back(1);
    return UPoly(std::move(c));
  }
};

struct FactorizationReport {
  bool monicized = false;  // scan ran on g~ because a_0 != 1
  RationalPoly scanned;    // the polynomial whose specialisations were factored
  std::vector<ScanRow> per_n;
  std::vector<Progression> reducible_classes;
  std::vector<GenericFactorization> generic;
  std::vector<std::string> diagnostics;

  bool irreducible_verdict() const { return generic.empty(); }
};

inline std::vector<ScanRow> scan(const ProblemSpec& spec, std::uint64_t n_from, std::uint64_t n_to, bool parallel = false) {
  std::vector<ScanRow> rows(n_to >= n_from ? n_to - n_from + 1 : 0);
  const int cap = static_cast<int>(spec.bounds().factor_degree_cap);
  parallel_for(rows.size(), parallel, [&](std::size_t i) {
    ScanRow row;
    row.n = n_from + i;
    UPoly p = spec.specialize(row.n);
    if (p.is_zero()) {
      row.degenerate = true;
    } else {
      Factorization f;
      try {
        f = factor_rational(p, cap);
      } catch (const UnsupportedDegreeError& e) {
        throw UnsupportedDegreeError("n = " + std::to_string(row.n) + ": " + e.what());
      }
      for (const auto& fac : f.factors)
        for (unsigned k = 0; k < fac.multiplicity; ++k) row.factors.push_back(fac.factor);
      row.degrees = f.degree_multiset();
    }
    rows[i] = std::move(row);
  });
  return rows;
}

namespace detail {

/// Minimal-degree fit of one coefficient sequence.
inline std::optional<RationalPoly> fit_min_degree(const Reparametrization& param, const SequenceData& data, unsigned max_degree) {
  for (unsigned d = 0; d <= max_degree; ++d)
    if (auto p = fit_polynomial(param, data, d)) return p;
  return std::nullopt;
}

inline std::optional<std::vector<RationalPoly>> fit_factor(const Reparametrization& param,
                                                           const std::vector<const ScanRow*>& window,
                                                           const std::vector<std::size_t>& positions, unsigned max_degree) {
  std::vector<UPoly> products;
  for (const auto* row : window) {
    UPoly h = UPoly::constant(1);
    for (auto i : positions) h = h * row->factors[i];
    products.push_back(std::move(h));
  }
  const int deg = products.front().degree();
  std::vector<RationalPoly> lower;
  for (int i = 0; i < deg; ++i) {
    SequenceData data;
    for (std::size_t k = 0; k < window.size(); ++k) data.emplace_back(window[k]->n, products[k].coeff(static_cast<std::size_t>(i)));
    auto p = fit_min_degree(param, data, max_degree);
    if (!p) return std::nullopt;
    lower.push_back(std::move(*p));
  }
  return lower;
}

}  // namespace detail

/// Fits and certifies a generic factorisation on one residue class; the
/// data are the tail of the class on which the factor degrees are constant.
inline std::optional<GenericFactorization> fit_generic_factorization(const ProblemSpec& spec, const std::vector<ScanRow>& rows,
                                                                     const Progression& cls, std::vector<std::string>& diagnostics,
                                                                     std::size_t extrapolation_points = 50,
                                                                     bool parallel = false) {
  std::vector<const ScanRow*> in_class;
  for (const auto& r : rows)
    if (!r.degenerate && cls.contains(r.n)) in_class.push_back(&r);
  if (in_class.empty()) return std::nullopt;
  const auto& split = in_class.back()->degrees;
  std::size_t start = in_class.size();
  while (start > 0 && in_class[start - 1]->degrees == split) --start;
  std::vector<const ScanRow*> window(in_class.begin() + static_cast<long>(start), in_class.end());
  const std::size_t k = split.size();
  if (k < 2) return std::nullopt;

  std::vector<std::uint32_t> masks;
  for (std::uint32_t mask = 1; mask + 1 < (1u << k); ++mask)
    if (mask & 1u) masks.push_back(mask);
  std::stable_sort(masks.begin(), masks.end(), [](auto a, auto b) { return std::popcount(a) < std::popcount(b); });

  const std::size_t r = spec.arity();
  const RationalPoly g = spec.polynomial();
  for (const auto& param : reparametrizations(spec.gammas(), cls)) {
    const RationalPoly pulled = param.pull_back(g);
    for (auto mask : masks) {
      std::vector<std::size_t> p1, p2;
      for (std::size_t i = 0; i < k; ++i) ((mask >> i) & 1u ? p1 : p2).push_back(i);
      auto h1 = detail::fit_factor(param, window, p1, spec.bounds().fit_degree);
      if (!h1) continue;
      auto h2 = detail::fit_factor(param, window, p2, spec.bounds().fit_degree);
      if (!h2) continue;

      GenericFactorization gf{param, *h1, *h2, p1};
      RationalPoly residual = pulled - gf.h1_polynomial() * gf.h2_polynomial();
      bool ok = true;
      for (std::uint32_t i = 0; i <= residual.degree_in(r) && ok; ++i)
        ok = vanishes_identically(residual.coefficient_of_last(i), param);
      if (!ok) {
        diagnostics.push_back("factor split on " + cls.to_string() + " fits the data but does not certify");
        continue;
      }
      gf.certified = true;

      gf.s_integral_on_samples = true;
      gf.samples = window.size();
      for (const auto* row : window) {
        auto v = param.variables_at(row->n);
        for (const auto* lower : {&gf.h1, &gf.h2})
          for (const auto& c : *lower)
            if (!is_s_integer(poly_eval(c, v), spec.places())) gf.s_integral_on_samples = false;
      }

      std::uint64_t n0 = spec.bounds().n_bound + 1;
      std::uint64_t t0 = n0 <= cls.offset ? 0 : (n0 - cls.offset + cls.modulus - 1) / cls.modulus;
      std::vector<int> status(extrapolation_points, 0);
      parallel_for(extrapolation_points, parallel, [&](std::size_t i) {
        std::uint64_t n = cls.at(t0 + i);
        auto v = param.variables_at(n);
        UPoly prod = GenericFactorization::specialize(gf.h1, v) * GenericFactorization::specialize(gf.h2, v);
        status[i] = prod == spec.specialize(n) ? 1 : 2;
      });
      gf.extrapolation_checked = extrapolation_points;
      gf.extrapolation_failed = static_cast<std::size_t>(std::count(status.begin(), status.end(), 2));
      return gf;
    }
  }
  return std::nullopt;
}

struct ScanOptions {
  bool parallel = false;
  std::size_t min_class_samples = 3;
  std::size_t extrapolation_points = 50;
};

/// Scans n = 1..N, flags residue classes mod m <= M on which every sampled
/// specialisation is reducible (classes inside a coarser flagged class are
/// omitted) and tries to certify a generic factorisation on each.
inline FactorizationReport factor_scan(const ProblemSpec& spec, const ScanOptions& opt = {}) {
  FactorizationReport rep;
  const bool monic = spec.leading().total_degree() == 0 && spec.leading().coefficient(Exponent(spec.arity(), 0)) == 1;
  rep.monicized = !monic;
  rep.scanned = monic ? spec.polynomial() : monicize(spec.polynomial());
  ProblemSpec work = monic ? spec : ProblemSpec::from_polynomial(spec.gammas(), rep.scanned, spec.places(), spec.bounds());

  rep.per_n = scan(work, 1, work.bounds().n_bound, opt.parallel);
  for (std::uint64_t m = 1; m <= work.bounds().modulus_bound; ++m)
    for (std::uint64_t a = 0; a < m; ++a) {
      Progression cls(a, m);
      bool covered = std::any_of(rep.reducible_classes.begin(), rep.reducible_classes.end(), [&](const Progression& c) {
        return m % c.modulus == 0 && a % c.modulus == c.offset % c.modulus;
      });
      if (covered) continue;
      std::size_t samples = 0;
      bool all = true;
      for (const auto& row : rep.per_n) {
        if (row.degenerate || !cls.contains(row.n)) continue;
        ++samples;
        all = all && row.reducible();
      }
      if (all && samples >= opt.min_class_samples) rep.reducible_classes.push_back(cls);
    }

  for (const auto& cls : rep.reducible_classes) {
    auto gf = fit_generic_factorization(work, rep.per_n, cls, rep.diagnostics, opt.extrapolation_points, opt.parallel);
    if (gf)
      rep.generic.push_back(std::move(*gf));
    else
      rep.diagnostics.push_back("no certified generic factorisation on " + cls.to_string());
  }
  return rep;
}

}  // namespace recdio
