#pragma once

// Solutions (n, z) of a_0(gamma^n) z^d + ... + a_d(gamma^n) = 0 with z an
// S-integer: enumeration up to a bound, fitting of polynomial and quotient
// families, symbolic certification, and the resulting partition into
// families, degenerate n and exceptional solutions.

#include "recdio/factor.hpp"
#include "recdio/fitting.hpp"
#include "recdio/hadamard.hpp"
#include "recdio/heights.hpp"
#include "recdio/multipoly.hpp"
#include "recdio/parallel.hpp"
#include "recdio/powersum.hpp"
#include "recdio/problem.hpp"
#include "recdio/series.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace recdio {

// ---------------------------------------------------------------------------
// Hypotheses

struct HypothesisItem {
  std::string name;
  bool passed = true;
  std::string detail;
};

enum class Branch { direct, monicized, none };

inline std::string to_string(Branch b) {
  switch (b) {
    case Branch::direct: return "direct";
    case Branch::monicized: return "monicized";
    default: return "none";
  }
}

struct HypothesisReport {
  std::vector<HypothesisItem> items;
  Branch branch = Branch::none;

  /// Structural hypotheses hold and at least one simple-zero alternative.
  bool theorem_applicable() const {
    for (const auto& it : items)
      if (!it.passed && it.name != "simple_zero_direct" && it.name != "simple_zero_monicized") return false;
    return branch != Branch::none;
  }
  const HypothesisItem* find(const std::string& name) const {
    for (const auto& it : items)
      if (it.name == name) return &it;
    return nullptr;
  }
};

inline HypothesisReport check_hypotheses(const ProblemSpec& spec) {
  HypothesisReport rep;
  const auto& gam = spec.gammas();
  auto gname = [](std::size_t i) { return "gamma_" + std::to_string(i + 1); };

  HypothesisItem abs_item{"gamma_abs_below_one", true, ""};
  for (std::size_t i = 0; i < gam.size(); ++i)
    if (!(abs(gam[i]) < 1)) {
      abs_item.passed = false;
      abs_item.detail += gname(i) + " = " + to_string(gam[i]) + " has |gamma| >= 1; ";
    }
  rep.items.push_back(abs_item);

  HypothesisItem ratio{"gamma_ratio_not_root_of_unity", true, ""};
  for (std::size_t i = 0; i < gam.size(); ++i)
    for (std::size_t j = i + 1; j < gam.size(); ++j) {
      Rational q = gam[i] / gam[j];
      if (q == 1 || q == -1) {
        ratio.passed = false;
        ratio.detail += gname(i) + "/" + gname(j) + " = " + to_string(q) + ": ratio is root of unity; ";
      }
    }
  rep.items.push_back(ratio);

  HypothesisItem gunits{"gamma_s_units", true, ""};
  for (std::size_t i = 0; i < gam.size(); ++i)
    if (!is_s_unit(gam[i], spec.places())) {
      gunits.passed = false;
      gunits.detail += gname(i) + " = " + to_string(gam[i]) + " is not an S-unit; ";
    }
  rep.items.push_back(gunits);

  HypothesisItem cunits{"coefficient_s_units", true, ""};
  HypothesisItem linear{"coefficients_linear", true, ""};
  for (std::size_t j = 0; j < spec.coefficients().size(); ++j) {
    const auto& a = spec.coefficients()[j];
    for (const auto& [e, c] : a.terms())
      if (!is_s_unit(c, spec.places())) {
        cunits.passed = false;
        cunits.detail += "a_" + std::to_string(j) + " has coefficient " + to_string(c) + " that is not an S-unit; ";
      }
    if (a.total_degree() > 1) {
      linear.passed = false;
      linear.detail += "a_" + std::to_string(j) + " has total degree " + std::to_string(a.total_degree()) + "; ";
    }
  }
  rep.items.push_back(cunits);
  rep.items.push_back(linear);

  const RationalPoly g = spec.polynomial();
  UPoly g0 = at_origin(g);
  HypothesisItem direct{"simple_zero_direct", is_squarefree(g0), "g(0,...,0,Z) = " + g0.to_string("Z")};
  if (!direct.passed) direct.detail += " has a multiple zero";
  UPoly gt0 = at_origin(monicize(g));
  HypothesisItem monic{"simple_zero_monicized", is_squarefree(gt0), "g~(0,...,0,Z~) = " + gt0.to_string("Z~")};
  if (!monic.passed) monic.detail += " has a multiple zero";
  rep.items.push_back(direct);
  rep.items.push_back(monic);
  rep.branch = direct.passed ? Branch::direct : monic.passed ? Branch::monicized : Branch::none;
  for (auto& it : rep.items)
    if (it.passed && it.detail.empty()) it.detail = "ok";
  return rep;
}

// ---------------------------------------------------------------------------
// Enumeration

struct EnumeratedN {
  std::uint64_t n = 0;
  bool degenerate = false;          // every a_i(gamma^n) vanishes
  std::vector<Rational> roots;      // all rational roots, ascending
};

struct Solution {
  std::uint64_t n;
  Rational z;
  friend bool operator==(const Solution&, const Solution&) = default;
};

struct Enumeration {
  std::vector<EnumeratedN> rows;  // ascending n

  std::vector<std::uint64_t> degenerate() const {
    std::vector<std::uint64_t> out;
    for (const auto& r : rows)
      if (r.degenerate) out.push_back(r.n);
    return out;
  }
  /// S-integer roots at non-degenerate n.
  std::vector<Solution> solutions(const PlaceSet& s) const {
    std::vector<Solution> out;
    for (const auto& r : rows)
      for (const auto& z : r.roots)
        if (is_s_integer(z, s)) out.push_back({r.n, z});
    return out;
  }
};

inline Enumeration enumerate_solutions(const ProblemSpec& spec, std::uint64_t n_from, std::uint64_t n_to, bool parallel = false) {
  Enumeration out;
  if (n_to < n_from) return out;
  out.rows.resize(n_to - n_from + 1);
  const int cap = static_cast<int>(spec.bounds().factor_degree_cap);
  parallel_for(out.rows.size(), parallel, [&](std::size_t i) {
    EnumeratedN row;
    row.n = n_from + i;
    UPoly p = spec.specialize(row.n);
    if (p.is_zero()) {
      row.degenerate = true;
    } else {
      try {
        row.roots = rational_roots(p, cap);
      } catch (const UnsupportedDegreeError& e) {
        throw UnsupportedDegreeError("n = " + std::to_string(row.n) + ": " + e.what());
      }
    }
    out.rows[i] = std::move(row);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Families

enum class FamilyKind { polynomial, quotient };

inline std::string to_string(FamilyKind k) { return k == FamilyKind::polynomial ? "polynomial" : "quotient"; }

struct SolutionFamily {
  FamilyKind kind = FamilyKind::polynomial;
  RationalPoly numerator;  // P in V_1..V_r
  Reparametrization param;
  bool certified = false;
  std::size_t fitted_branch = 0;             // index among sorted unexplained roots
  std::optional<ExpPolynomial> recurrence;   // quotient kind: z as a power sum in t, when one exists
  std::size_t extrapolation_checked = 0;
  std::size_t extrapolation_failed = 0;

  /// z at n, or nullopt outside the progression or where a_0(gamma^n) = 0
  /// for the quotient kind.
  std::optional<Rational> value_at(const ProblemSpec& spec, std::uint64_t n) const {
    if (!param.progression.contains(n)) return std::nullopt;
    Rational v = poly_eval(numerator, param.variables_at(n));
    if (kind == FamilyKind::quotient) {
      Rational den = poly_eval(spec.leading(), spec.gamma_powers(n));
      if (is_zero(den)) return std::nullopt;
      v /= den;
    }
    return v;
  }
};

/// The residual whose vanishing proves the family: g(X, P) for the
/// polynomial kind and sum_j a_j P^(d-j) a_0^j for the quotient kind, with X
/// pulled back to the family's variables.
inline RationalPoly family_residual(const SolutionFamily& f, const ProblemSpec& spec) {
  const unsigned d = spec.degree();
  if (f.kind == FamilyKind::polynomial) return poly_compose_z(f.param.pull_back(spec.polynomial()), f.numerator);
  const RationalPoly a0 = f.param.pull_back(spec.leading());
  RationalPoly acc(spec.arity());
  for (unsigned j = 0; j <= d; ++j)
    acc += f.param.pull_back(spec.coefficients()[j]) * f.numerator.pow(d - j) * a0.pow(j);
  return acc;
}

/// Sets and returns f.certified.
inline bool certify_family(SolutionFamily& f, const ProblemSpec& spec) {
  f.certified = vanishes_identically(family_residual(f, spec), f.param);
  return f.certified;
}

/// Exact check at `count` indices of the progression beyond n_bound.
inline void extrapolate_family(SolutionFamily& f, const ProblemSpec& spec, std::size_t count, bool parallel) {
  const auto& p = f.param.progression;
  std::uint64_t n0 = spec.bounds().n_bound + 1;
  std::uint64_t t0 = n0 <= p.offset ? 0 : (n0 - p.offset + p.modulus - 1) / p.modulus;
  std::vector<int> status(count, 0);  // 0 skipped, 1 ok, 2 failed
  parallel_for(count, parallel, [&](std::size_t i) {
    std::uint64_t n = p.at(t0 + i);
    auto v = f.value_at(spec, n);
    if (!v) return;
    status[i] = is_zero(spec.specialize(n).eval(*v)) ? 1 : 2;
  });
  f.extrapolation_checked = static_cast<std::size_t>(std::count_if(status.begin(), status.end(), [](int s) { return s != 0; }));
  f.extrapolation_failed = static_cast<std::size_t>(std::count(status.begin(), status.end(), 2));
}

namespace detail {

inline bool explained(const std::vector<SolutionFamily>& families, const ProblemSpec& spec, std::uint64_t n, const Rational& z) {
  for (const auto& f : families) {
    auto v = f.value_at(spec, n);
    if (v && *v == z) return true;
  }
  return false;
}

inline bool leading_is_constant(const ProblemSpec& spec) { return spec.leading().total_degree() == 0; }

/// Smallest certified family for one branch of data on a progression.
inline std::optional<SolutionFamily> find_family(const ProblemSpec& spec, const Progression& prog, const SequenceData& data,
                                                 std::size_t branch, std::vector<std::string>& diagnostics) {
  auto params = reparametrizations(spec.gammas(), prog);
  std::vector<FamilyKind> kinds{FamilyKind::polynomial};
  if (!leading_is_constant(spec)) kinds.push_back(FamilyKind::quotient);
  SequenceData scaled;
  for (const auto& [n, z] : data) {
    Rational a0 = poly_eval(spec.leading(), spec.gamma_powers(n));
    if (!is_zero(a0)) scaled.emplace_back(n, a0 * z);
  }
  for (unsigned deg = 0; deg <= spec.bounds().fit_degree; ++deg) {
    for (FamilyKind kind : kinds) {
      const SequenceData& pts = kind == FamilyKind::polynomial ? data : scaled;
      for (const auto& param : params) {
        std::string why;
        auto p = fit_polynomial(param, pts, deg, &why);
        if (!p) {
          if (!why.empty() && param.root_index == 1 && kind == FamilyKind::polynomial) {
            diagnostics.push_back("branch " + std::to_string(branch) + ": " + why);
            return std::nullopt;
          }
          continue;
        }
        SolutionFamily f;
        f.kind = kind;
        f.numerator = *p;
        f.param = param;
        f.fitted_branch = branch;
        if (certify_family(f, spec)) return f;
        diagnostics.push_back("rejected " + to_string(kind) + " candidate " + p->to_string() + " on " + prog.to_string() +
                              " (nonzero residual)");
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Fits and certifies families, progressions by increasing modulus. On each
/// progression the data are the roots not yet explained, restricted to the
/// longest tail on which their number is constant; branch j is the j-th
/// smallest root.
inline std::vector<SolutionFamily> fit_families(const ProblemSpec& spec, const Enumeration& en,
                                                std::vector<std::string>& diagnostics) {
  std::vector<SolutionFamily> families;
  for (std::uint64_t m = 1; m <= spec.bounds().modulus_bound; ++m) {
    for (std::uint64_t a = 0; a < m; ++a) {
      Progression prog(a, m);
      std::vector<std::pair<std::uint64_t, std::vector<Rational>>> seq;
      for (const auto& row : en.rows) {
        if (row.degenerate || !prog.contains(row.n)) continue;
        std::vector<Rational> open;
        for (const auto& z : row.roots)
          if (!is_zero(z) && !detail::explained(families, spec, row.n, z)) open.push_back(z);
        seq.emplace_back(row.n, std::move(open));
      }
      if (seq.empty() || seq.back().second.empty()) continue;
      const std::size_t k = seq.back().second.size();
      std::size_t start = seq.size();
      while (start > 0 && seq[start - 1].second.size() == k) --start;
      for (std::size_t j = 0; j < k; ++j) {
        SequenceData data;
        for (std::size_t i = start; i < seq.size(); ++i) data.emplace_back(seq[i].first, seq[i].second[j]);
        if (auto f = detail::find_family(spec, prog, data, j, diagnostics)) families.push_back(std::move(*f));
      }
    }
  }
  return families;
}

/// Smallest modulus, then root index, kind, numerator degree and support.
inline bool family_less(const SolutionFamily& a, const SolutionFamily& b) {
  const auto& pa = a.param;
  const auto& pb = b.param;
  if (pa.progression != pb.progression) return pa.progression < pb.progression;
  if (pa.root_index != pb.root_index) return pa.root_index < pb.root_index;
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.numerator.total_degree() != b.numerator.total_degree()) return a.numerator.total_degree() < b.numerator.total_degree();
  return a.numerator.terms() < b.numerator.terms();
}

// ---------------------------------------------------------------------------
// Audits

struct AuditResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string detail;
  bool ok() const { return failed == 0; }
};

/// Constants of the height chain H(1:a_0(n):...:a_d(n)) <= K * G_n^C with
/// G_n = H(1:gamma_1^n:...:gamma_r^n). K is the product over the a_i of
/// (number of terms) * prod H(coefficient), C the sum of the total degrees
/// of all their monomials.
struct HeightChainConstants {
  Integer factor = 1;
  unsigned long exponent = 0;
};

inline HeightChainConstants height_chain_constants(const ProblemSpec& spec) {
  HeightChainConstants k;
  for (const auto& a : spec.coefficients()) {
    if (a.is_zero()) continue;
    Integer t = static_cast<unsigned long>(a.size());
    for (const auto& [e, c] : a.terms()) {
      t *= weil_height(c).value;
      k.exponent += total_degree(e);
    }
    k.factor *= t;
  }
  return k;
}

/// |z| <= max(1, (|a_1| + ... + |a_d|) / |a_0|) for a root z, a_0 != 0.
inline bool within_root_modulus_bound(const Rational& z, const std::vector<Rational>& coeffs) {
  Rational tail = 0;
  for (std::size_t i = 1; i < coeffs.size(); ++i) tail += abs(coeffs[i]);
  Rational bound = tail / abs(coeffs[0]);
  if (bound < 1) bound = 1;
  return abs(z) <= bound;
}

// ---------------------------------------------------------------------------
// Report

struct FamilyRecord {
  SolutionFamily family;
  std::vector<Solution> members;                 // S-integer solutions with n <= N
  std::vector<std::uint64_t> filter_rejected_n;  // n <= N in the progression where R(n) is undefined or not an S-integer
};

struct SolutionReport {
  HypothesisReport hypotheses;
  std::uint64_t n_bound = 0;
  std::vector<FamilyRecord> families;
  std::vector<std::uint64_t> degenerate_n;
  std::vector<Solution> exceptional;
  std::vector<AuditResult> audits;
  HeightChainConstants chain;
  std::vector<std::string> diagnostics;

  std::size_t certified_count() const {
    return static_cast<std::size_t>(
        std::count_if(families.begin(), families.end(), [](const auto& f) { return f.family.certified; }));
  }
};

struct ClassifyOptions {
  bool parallel = false;
  std::size_t extrapolation_points = 50;
  unsigned hadamard_order_bound = 4;
};

inline SolutionReport classify(const ProblemSpec& spec, const ClassifyOptions& opt = {}) {
  SolutionReport rep;
  rep.hypotheses = check_hypotheses(spec);
  rep.n_bound = spec.bounds().n_bound;
  const auto& S = spec.places();

  Enumeration en = enumerate_solutions(spec, 1, spec.bounds().n_bound, opt.parallel);
  rep.degenerate_n = en.degenerate();
  auto families = fit_families(spec, en, rep.diagnostics);
  std::stable_sort(families.begin(), families.end(), family_less);

  for (auto& f : families) {
    extrapolate_family(f, spec, opt.extrapolation_points, opt.parallel);
    if (f.kind == FamilyKind::quotient) {
      auto b = power_sum_of(f.numerator, f.param.bases);
      auto c = power_sum_of(f.param.pull_back(spec.leading()), f.param.bases);
      auto h = hadamard_detect(b, c, opt.hadamard_order_bound);
      if (h.found()) f.recurrence = h.quotient;
    }
    FamilyRecord rec{f, {}, {}};
    for (std::uint64_t n = f.param.progression.offset; n <= spec.bounds().n_bound; n += f.param.progression.modulus) {
      if (n == 0) continue;
      auto v = f.value_at(spec, n);
      if (!v || !is_s_integer(*v, S)) rec.filter_rejected_n.push_back(n);
    }
    rep.families.push_back(std::move(rec));
  }

  // Partition the enumerated solutions.
  for (const auto& sol : en.solutions(S)) {
    if (is_zero(sol.z)) {
      rep.exceptional.push_back(sol);
      continue;
    }
    bool placed = false;
    for (auto& rec : rep.families) {
      auto v = rec.family.value_at(spec, sol.n);
      if (v && *v == sol.z) {
        rec.members.push_back(sol);
        placed = true;
        break;
      }
    }
    if (!placed) rep.exceptional.push_back(sol);
  }

  // Audits over every enumerated solution.
  rep.chain = height_chain_constants(spec);
  AuditResult root_bound{"root_height_bound", 0, 0, "H(z) <= d' * H(1:b_0:...:b_d') for the specialised polynomial"};
  AuditResult chain{"height_constant_chain", 0, 0, ""};
  AuditResult bounded{"root_modulus_bound", 0, 0, "|z| <= max(1, sum |a_i(n)| / |a_0(n)|) where a_0(n) != 0"};
  for (const auto& sol : en.solutions(S)) {
    auto coeffs = spec.coefficient_values(sol.n);
    std::vector<Rational> trimmed(std::find_if(coeffs.begin(), coeffs.end(), [](const Rational& c) { return !is_zero(c); }),
                                  coeffs.end());
    if (!is_zero(sol.z) && trimmed.size() >= 2) {
      ++root_bound.checked;
      if (weil_height(sol.z) > root_height_bound(trimmed)) ++root_bound.failed;
    }
    ++chain.checked;
    auto gn = affine_projective_height(spec.gamma_powers(sol.n));
    auto lhs = affine_projective_height(coeffs);
    if (lhs.value > rep.chain.factor * ipow(gn.value, rep.chain.exponent)) ++chain.failed;
    if (!is_zero(coeffs[0])) {
      ++bounded.checked;
      if (!within_root_modulus_bound(sol.z, coeffs)) ++bounded.failed;
    }
  }
  chain.detail = "H(1:a_0(n):...:a_d(n)) <= " + rep.chain.factor.get_str() + " * H(1:gamma^n)^" +
                 std::to_string(rep.chain.exponent);

  AuditResult unit_powers{"family_gamma_powers_s_units", 0, 0, "h_S(x) + h_S(1/x) = 0 for x = gamma_i^n, n in each family"};
  AuditResult integral_members{"family_members_s_integral", 0, 0, "h_S(z) = 0 for every family member"};
  for (const auto& rec : rep.families)
    for (const auto& m : rec.members) {
      for (const auto& x : spec.gamma_powers(m.n)) {
        ++unit_powers.checked;
        if (s_height(x, S).value * s_height(Rational(1 / x), S).value != 1) ++unit_powers.failed;
      }
      ++integral_members.checked;
      if (s_height(m.z, S).value != 1) ++integral_members.failed;
    }

  AuditResult extrap{"family_extrapolation", 0, 0,
                     std::to_string(opt.extrapolation_points) + " indices per family beyond n = " + std::to_string(rep.n_bound)};
  for (const auto& rec : rep.families) {
    extrap.checked += rec.family.extrapolation_checked;
    extrap.failed += rec.family.extrapolation_failed;
  }
  rep.audits = {root_bound, chain, bounded, unit_powers, integral_members, extrap};
  return rep;
}

}  // namespace recdio
