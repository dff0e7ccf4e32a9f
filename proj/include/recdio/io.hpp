#pragma once

// Problem files and reports. Both are JSON; every rational is the exact
// string "p" or "p/q".

#include "recdio/classifier.hpp"
#include "recdio/factorscan.hpp"
#include "recdio/hadamard.hpp"
#include "recdio/heights.hpp"
#include "recdio/powersum.hpp"
#include "recdio/problem.hpp"
#include "recdio/series.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace recdio {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

struct ParseError : InputError {
  using InputError::InputError;
};

// ---------------------------------------------------------------------------
// Field access with paths in error messages

namespace io_detail {

inline std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
inline std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw ParseError("field '" + path + "': " + what);
}

inline const Json& require(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(join(path, key), "missing");
  return *it;
}

inline const Json& require_array(const Json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array");
  return v;
}

inline Rational rational(const Json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(Integer(v.dump()));
  if (!v.is_string()) fail(path, "expected a rational string such as \"3/4\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const InputError& e) {
    fail(path, e.what());
  }
}

inline std::uint64_t unsigned_value(const Json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    fail(path, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

inline Json rational_json(const Rational& q) { return to_string(q); }

}  // namespace io_detail

// ---------------------------------------------------------------------------
// Polynomials and power sums

/// [{"coeff": "c", "exp": [k_1, ...]}] in ascending exponent order.
inline Json poly_to_json(const RationalPoly& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) out.push_back(Json{{"coeff", to_string(c)}, {"exp", e}});
  return out;
}

inline RationalPoly poly_from_json(const Json& v, std::size_t arity, const std::string& path) {
  using namespace io_detail;
  require_array(v, path);
  RationalPoly p(arity);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string here = index(path, i);
    Rational c = rational(require(v[i], "coeff", here), join(here, "coeff"));
    const Json& ej = require_array(require(v[i], "exp", here), join(here, "exp"));
    if (ej.size() != arity) fail(join(here, "exp"), "expected " + std::to_string(arity) + " exponents");
    Exponent e;
    for (std::size_t k = 0; k < ej.size(); ++k) e.push_back(static_cast<std::uint32_t>(unsigned_value(ej[k], index(join(here, "exp"), k))));
    p.add_term(e, c);
  }
  return p;
}

/// [{"coeff": "c", "root": "rho"}] by ascending root.
inline Json exp_to_json(const ExpPolynomial& e) {
  Json out = Json::array();
  for (const auto& [root, c] : e.terms()) out.push_back(Json{{"coeff", to_string(c)}, {"root", to_string(root)}});
  return out;
}

inline ExpPolynomial exp_from_json(const Json& v, const std::string& path) {
  using namespace io_detail;
  require_array(v, path);
  ExpPolynomial e;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string here = index(path, i);
    Rational c = rational(require(v[i], "coeff", here), join(here, "coeff"));
    Rational r = rational(require(v[i], "root", here), join(here, "root"));
    if (is_zero(r)) fail(join(here, "root"), "root must be nonzero");
    e.add_term(c, r);
  }
  return e;
}

inline Json upoly_to_json(const UPoly& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(to_string(c));
  return out;
}

inline UPoly upoly_from_json(const Json& v, const std::string& path) {
  io_detail::require_array(v, path);
  std::vector<Rational> c;
  for (std::size_t i = 0; i < v.size(); ++i) c.push_back(io_detail::rational(v[i], io_detail::index(path, i)));
  return UPoly(std::move(c));
}

// ---------------------------------------------------------------------------
// Problem files

struct HadamardBlock {
  ExpPolynomial b, c;
  unsigned order_bound = 4;
};

struct ProblemFile {
  int format_version = kFormatVersion;
  std::optional<ProblemSpec> spec;  // present when gammas and coefficients are given
  std::optional<HadamardBlock> hadamard;
  Bounds bounds;
};

/// Coefficient a_j: {"constant": c, "linear": [l_1..l_r]} for
/// c + sum l_i X_i, or {"terms": [...]} for a general polynomial.
inline RationalPoly coefficient_from_json(const Json& v, std::size_t arity, const std::string& path) {
  using namespace io_detail;
  if (!v.is_object()) fail(path, "expected an object with 'constant'/'linear' or 'terms'");
  if (v.contains("terms")) {
    if (v.contains("constant") || v.contains("linear")) fail(path, "'terms' cannot be combined with 'constant'/'linear'");
    return poly_from_json(v["terms"], arity, join(path, "terms"));
  }
  RationalPoly p(arity);
  if (v.contains("constant")) p.add_term(Exponent(arity, 0), rational(v["constant"], join(path, "constant")));
  if (v.contains("linear")) {
    const Json& lin = require_array(v["linear"], join(path, "linear"));
    if (lin.size() != arity) fail(join(path, "linear"), "expected " + std::to_string(arity) + " entries, one per gamma");
    for (std::size_t i = 0; i < arity; ++i) {
      Exponent e(arity, 0);
      e[i] = 1;
      p.add_term(e, rational(lin[i], index(join(path, "linear"), i)));
    }
  }
  if (!v.contains("constant") && !v.contains("linear")) fail(path, "expected 'constant', 'linear' or 'terms'");
  return p;
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    auto pos = msg.find("syntax error");
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                     (pos == std::string::npos ? msg : msg.substr(pos)));
  }
}

inline ProblemFile parse_problem(const std::string& text) {
  using namespace io_detail;
  Json doc = parse_json_text(text);
  if (!doc.is_object()) fail("", "problem file must be a JSON object");
  ProblemFile pf;
  if (doc.contains("format_version")) {
    auto v = unsigned_value(doc["format_version"], "format_version");
    if (v != static_cast<std::uint64_t>(kFormatVersion)) fail("format_version", "unsupported version " + std::to_string(v));
  }

  if (doc.contains("bounds")) {
    const Json& b = doc["bounds"];
    if (!b.is_object()) fail("bounds", "expected an object");
    for (const auto& [key, val] : b.items()) {
      const std::string here = join("bounds", key);
      auto u = unsigned_value(val, here);
      if (key == "n_bound") pf.bounds.n_bound = u;
      else if (key == "fit_degree") pf.bounds.fit_degree = static_cast<unsigned>(u);
      else if (key == "modulus_bound") pf.bounds.modulus_bound = u;
      else if (key == "series_degree") pf.bounds.series_degree = static_cast<std::uint32_t>(u);
      else if (key == "factor_degree_cap") pf.bounds.factor_degree_cap = static_cast<unsigned>(u);
      else fail(here, "unknown bound");
    }
  }

  const bool has_g = doc.contains("gammas"), has_c = doc.contains("coefficients");
  if (has_g != has_c) fail(has_g ? "coefficients" : "gammas", "missing (gammas and coefficients come together)");
  if (has_g) {
    const Json& gj = require_array(doc["gammas"], "gammas");
    std::vector<Rational> gammas;
    for (std::size_t i = 0; i < gj.size(); ++i) gammas.push_back(rational(gj[i], index("gammas", i)));
    const Json& cj = require_array(doc["coefficients"], "coefficients");
    std::vector<RationalPoly> coeffs;
    for (std::size_t j = 0; j < cj.size(); ++j) coeffs.push_back(coefficient_from_json(cj[j], gammas.size(), index("coefficients", j)));
    std::vector<unsigned long> primes;
    if (doc.contains("s_primes")) {
      const Json& sj = require_array(doc["s_primes"], "s_primes");
      for (std::size_t i = 0; i < sj.size(); ++i) primes.push_back(unsigned_value(sj[i], index("s_primes", i)));
    }
    try {
      pf.spec.emplace(std::move(gammas), std::move(coeffs), PlaceSet(std::move(primes)), pf.bounds);
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      fail("coefficients", e.what());
    }
  }

  if (doc.contains("hadamard")) {
    const Json& h = doc["hadamard"];
    HadamardBlock hb;
    hb.b = exp_from_json(require(h, "b", "hadamard"), "hadamard.b");
    hb.c = exp_from_json(require(h, "c", "hadamard"), "hadamard.c");
    if (hb.c.is_zero()) fail("hadamard.c", "denominator must not be identically zero");
    if (h.contains("order_bound")) hb.order_bound = static_cast<unsigned>(unsigned_value(h["order_bound"], "hadamard.order_bound"));
    if (hb.order_bound == 0) fail("hadamard.order_bound", "must be positive");
    pf.hadamard = hb;
  }
  return pf;
}

inline ProblemFile read_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

inline Json problem_to_json(const ProblemSpec& spec) {
  Json g = Json::array();
  for (const auto& x : spec.gammas()) g.push_back(to_string(x));
  Json c = Json::array();
  for (const auto& a : spec.coefficients()) c.push_back(Json{{"terms", poly_to_json(a)}});
  const auto& b = spec.bounds();
  return Json{{"gammas", g},
              {"s_primes", spec.places().primes()},
              {"coefficients", c},
              {"bounds",
               {{"n_bound", b.n_bound},
                {"fit_degree", b.fit_degree},
                {"modulus_bound", b.modulus_bound},
                {"series_degree", b.series_degree},
                {"factor_degree_cap", b.factor_degree_cap}}}};
}

// ---------------------------------------------------------------------------
// Reports: hypotheses

inline Json to_json(const HypothesisReport& h) {
  Json items = Json::array();
  for (const auto& it : h.items) items.push_back(Json{{"name", it.name}, {"passed", it.passed}, {"detail", it.detail}});
  return Json{{"items", items}, {"branch", to_string(h.branch)}, {"theorem_applicable", h.theorem_applicable()}};
}

inline HypothesisReport hypotheses_from_json(const Json& v, const std::string& path) {
  using namespace io_detail;
  HypothesisReport h;
  const Json& items = require_array(require(v, "items", path), join(path, "items"));
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string here = index(join(path, "items"), i);
    h.items.push_back({require(items[i], "name", here).get<std::string>(), require(items[i], "passed", here).get<bool>(),
                       require(items[i], "detail", here).get<std::string>()});
  }
  auto b = require(v, "branch", path).get<std::string>();
  h.branch = b == "direct" ? Branch::direct : b == "monicized" ? Branch::monicized : Branch::none;
  return h;
}

inline std::string hypotheses_text(const HypothesisReport& h) {
  std::ostringstream o;
  for (const auto& it : h.items) o << (it.passed ? "  [pass] " : "  [FAIL] ") << it.name << ": " << it.detail << "\n";
  o << "  branch: " << to_string(h.branch) << "\n";
  o << "  theorem applicable: " << (h.theorem_applicable() ? "yes" : "no") << "\n";
  return o.str();
}

// ---------------------------------------------------------------------------
// Reports: solve

namespace io_detail {

inline Json progression_json(const Progression& p) { return Json{{"offset", p.offset}, {"modulus", p.modulus}}; }

inline Progression progression_from(const Json& v, const std::string& path) {
  return Progression(unsigned_value(require(v, "offset", path), join(path, "offset")),
                     unsigned_value(require(v, "modulus", path), join(path, "modulus")));
}

inline Json rationals_json(const std::vector<Rational>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

inline std::vector<Rational> rationals_from(const Json& v, const std::string& path) {
  require_array(v, path);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational(v[i], index(path, i)));
  return out;
}

inline Json param_json(const Reparametrization& p) {
  return Json{{"progression", progression_json(p.progression)},
              {"root_index", p.root_index},
              {"bases", rationals_json(p.bases)},
              {"shifts", rationals_json(p.shifts)},
              {"variables", p.variable_names()},
              {"legend", p.legend()}};
}

inline Reparametrization param_from(const Json& v, const std::string& path) {
  Reparametrization p;
  p.progression = progression_from(require(v, "progression", path), join(path, "progression"));
  p.root_index = static_cast<unsigned>(unsigned_value(require(v, "root_index", path), join(path, "root_index")));
  p.bases = rationals_from(require(v, "bases", path), join(path, "bases"));
  p.shifts = rationals_from(require(v, "shifts", path), join(path, "shifts"));
  return p;
}

inline Json solutions_json(const std::vector<Solution>& s) {
  Json out = Json::array();
  for (const auto& x : s) out.push_back(Json{{"n", x.n}, {"z", to_string(x.z)}});
  return out;
}

inline std::vector<Solution> solutions_from(const Json& v, const std::string& path) {
  require_array(v, path);
  std::vector<Solution> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string here = index(path, i);
    out.push_back({unsigned_value(require(v[i], "n", here), join(here, "n")), rational(require(v[i], "z", here), join(here, "z"))});
  }
  return out;
}

inline Json audits_json(const std::vector<AuditResult>& audits) {
  Json out = Json::array();
  for (const auto& a : audits)
    out.push_back(Json{{"name", a.name}, {"checked", a.checked}, {"failed", a.failed}, {"detail", a.detail}});
  return out;
}

inline std::vector<AuditResult> audits_from(const Json& v, const std::string& path) {
  require_array(v, path);
  std::vector<AuditResult> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string here = index(path, i);
    out.push_back({require(v[i], "name", here).get<std::string>(), unsigned_value(require(v[i], "checked", here), join(here, "checked")),
                   unsigned_value(require(v[i], "failed", here), join(here, "failed")),
                   require(v[i], "detail", here).get<std::string>()});
  }
  return out;
}

inline Json strings_json(const std::vector<std::string>& s) { return Json(s); }

}  // namespace io_detail

inline Json to_json(const SolutionReport& r) {
  using namespace io_detail;
  Json fams = Json::array();
  for (const auto& rec : r.families) {
    const auto& f = rec.family;
    fams.push_back(Json{{"kind", to_string(f.kind)},
                        {"parametrization", param_json(f.param)},
                        {"numerator", poly_to_json(f.numerator)},
                        {"numerator_text", f.numerator.to_string(f.param.variable_names())},
                        {"certified", f.certified},
                        {"fitted_branch", f.fitted_branch},
                        {"recurrence", f.recurrence ? exp_to_json(*f.recurrence) : Json(nullptr)},
                        {"extrapolation", {{"checked", f.extrapolation_checked}, {"failed", f.extrapolation_failed}}},
                        {"members", solutions_json(rec.members)},
                        {"filter_rejected_n", rec.filter_rejected_n}});
  }
  return Json{{"hypotheses", to_json(r.hypotheses)},
              {"n_bound", r.n_bound},
              {"scope", "degenerate_n and exceptional cover n <= n_bound only"},
              {"families", fams},
              {"degenerate_n", r.degenerate_n},
              {"exceptional", solutions_json(r.exceptional)},
              {"height_chain", {{"factor", r.chain.factor.get_str()}, {"exponent", r.chain.exponent}}},
              {"audits", audits_json(r.audits)},
              {"diagnostics", strings_json(r.diagnostics)}};
}

inline SolutionReport solution_report_from_json(const Json& v) {
  using namespace io_detail;
  SolutionReport r;
  r.hypotheses = hypotheses_from_json(require(v, "hypotheses", ""), "hypotheses");
  r.n_bound = unsigned_value(require(v, "n_bound", ""), "n_bound");
  const Json& fams = require_array(require(v, "families", ""), "families");
  for (std::size_t i = 0; i < fams.size(); ++i) {
    const std::string here = index("families", i);
    const Json& fj = fams[i];
    FamilyRecord rec;
    auto kind = require(fj, "kind", here).get<std::string>();
    if (kind != "polynomial" && kind != "quotient") fail(join(here, "kind"), "unknown family kind");
    rec.family.kind = kind == "polynomial" ? FamilyKind::polynomial : FamilyKind::quotient;
    rec.family.param = param_from(require(fj, "parametrization", here), join(here, "parametrization"));
    rec.family.numerator = poly_from_json(require(fj, "numerator", here), rec.family.param.bases.size(), join(here, "numerator"));
    rec.family.certified = require(fj, "certified", here).get<bool>();
    rec.family.fitted_branch = unsigned_value(require(fj, "fitted_branch", here), join(here, "fitted_branch"));
    const Json& rj = require(fj, "recurrence", here);
    if (!rj.is_null()) rec.family.recurrence = exp_from_json(rj, join(here, "recurrence"));
    const Json& ej = require(fj, "extrapolation", here);
    rec.family.extrapolation_checked = unsigned_value(require(ej, "checked", join(here, "extrapolation")), join(here, "extrapolation.checked"));
    rec.family.extrapolation_failed = unsigned_value(require(ej, "failed", join(here, "extrapolation")), join(here, "extrapolation.failed"));
    rec.members = solutions_from(require(fj, "members", here), join(here, "members"));
    const Json& fr = require_array(require(fj, "filter_rejected_n", here), join(here, "filter_rejected_n"));
    for (std::size_t k = 0; k < fr.size(); ++k) rec.filter_rejected_n.push_back(unsigned_value(fr[k], index(join(here, "filter_rejected_n"), k)));
    r.families.push_back(std::move(rec));
  }
  const Json& dn = require_array(require(v, "degenerate_n", ""), "degenerate_n");
  for (std::size_t k = 0; k < dn.size(); ++k) r.degenerate_n.push_back(unsigned_value(dn[k], index("degenerate_n", k)));
  r.exceptional = solutions_from(require(v, "exceptional", ""), "exceptional");
  const Json& hc = require(v, "height_chain", "");
  r.chain.factor = Integer(require(hc, "factor", "height_chain").get<std::string>());
  r.chain.exponent = unsigned_value(require(hc, "exponent", "height_chain"), "height_chain.exponent");
  r.audits = audits_from(require(v, "audits", ""), "audits");
  r.diagnostics = require(v, "diagnostics", "").get<std::vector<std::string>>();
  return r;
}

inline std::string solution_text(const SolutionReport& r) {
  std::ostringstream o;
  o << "Hypotheses\n" << hypotheses_text(r.hypotheses);
  o << "Families (" << r.families.size() << ", " << r.certified_count() << " certified)\n";
  for (std::size_t i = 0; i < r.families.size(); ++i) {
    const auto& rec = r.families[i];
    const auto& f = rec.family;
    o << "  [" << i + 1 << "] " << to_string(f.kind) << " on n = " << f.param.progression.to_string() << ": z = ";
    std::string num = f.numerator.to_string(f.param.variable_names());
    if (f.kind == FamilyKind::quotient)
      o << "(" << num << ") / a_0(gamma^n)";
    else
      o << num;
    o << "\n      " << f.param.legend() << "\n";
    o << "      certified: " << (f.certified ? "yes" : "no") << ", members with n <= " << r.n_bound << ": " << rec.members.size()
      << ", extrapolation " << f.extrapolation_checked - f.extrapolation_failed << "/" << f.extrapolation_checked << "\n";
    if (!rec.filter_rejected_n.empty())
      o << "      S-integrality filter fails at " << rec.filter_rejected_n.size() << " n <= " << r.n_bound << "\n";
    if (f.recurrence) o << "      as a recurrence in t: " << f.recurrence->to_string("t") << "\n";
  }
  o << "Degenerate n (n <= " << r.n_bound << "):";
  if (r.degenerate_n.empty()) o << " none";
  for (auto n : r.degenerate_n) o << " " << n;
  o << "\nExceptional solutions (n <= " << r.n_bound << "):";
  if (r.exceptional.empty()) o << " none";
  for (const auto& s : r.exceptional) o << " (" << s.n << ", " << to_string(s.z) << ")";
  o << "\nAudits\n";
  for (const auto& a : r.audits)
    o << (a.ok() ? "  [pass] " : "  [FAIL] ") << a.name << " (" << a.checked << " checked, " << a.failed << " failed): " << a.detail
      << "\n";
  for (const auto& d : r.diagnostics) o << "  note: " << d << "\n";
  return o.str();
}

// ---------------------------------------------------------------------------
// Reports: factor scan

inline Json to_json(const FactorizationReport& r) {
  using namespace io_detail;
  Json rows = Json::array();
  for (const auto& row : r.per_n) {
    Json factors = Json::array();
    for (const auto& f : row.factors) factors.push_back(upoly_to_json(f));
    rows.push_back(Json{{"n", row.n}, {"degenerate", row.degenerate}, {"degrees", row.degrees}, {"factors", factors}});
  }
  Json classes = Json::array();
  for (const auto& c : r.reducible_classes) classes.push_back(progression_json(c));
  Json generic = Json::array();
  for (const auto& g : r.generic) {
    Json h1 = Json::array(), h2 = Json::array();
    for (const auto& p : g.h1) h1.push_back(poly_to_json(p));
    for (const auto& p : g.h2) h2.push_back(poly_to_json(p));
    auto names = g.param.variable_names(true);
    generic.push_back(Json{{"parametrization", param_json(g.param)},
                           {"h1", h1},
                           {"h2", h2},
                           {"h1_text", g.h1_polynomial().to_string(names)},
                           {"h2_text", g.h2_polynomial().to_string(names)},
                           {"h1_positions", g.h1_positions},
                           {"certified", g.certified},
                           {"s_integral_on_samples", g.s_integral_on_samples},
                           {"samples", g.samples},
                           {"extrapolation", {{"checked", g.extrapolation_checked}, {"failed", g.extrapolation_failed}}}});
  }
  return Json{{"monicized", r.monicized},
              {"scanned", poly_to_json(r.scanned)},
              {"per_n", rows},
              {"reducible_classes", classes},
              {"generic", generic},
              {"irreducible_verdict", r.irreducible_verdict()},
              {"diagnostics", strings_json(r.diagnostics)}};
}

inline FactorizationReport factorization_report_from_json(const Json& v, std::size_t arity) {
  using namespace io_detail;
  FactorizationReport r;
  r.monicized = require(v, "monicized", "").get<bool>();
  r.scanned = poly_from_json(require(v, "scanned", ""), arity + 1, "scanned");
  const Json& rows = require_array(require(v, "per_n", ""), "per_n");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string here = index("per_n", i);
    ScanRow row;
    row.n = unsigned_value(require(rows[i], "n", here), join(here, "n"));
    row.degenerate = require(rows[i], "degenerate", here).get<bool>();
    row.degrees = require(rows[i], "degrees", here).get<std::vector<int>>();
    const Json& fs = require_array(require(rows[i], "factors", here), join(here, "factors"));
    for (std::size_t k = 0; k < fs.size(); ++k) row.factors.push_back(upoly_from_json(fs[k], index(join(here, "factors"), k)));
    r.per_n.push_back(std::move(row));
  }
  const Json& classes = require_array(require(v, "reducible_classes", ""), "reducible_classes");
  for (std::size_t i = 0; i < classes.size(); ++i) r.reducible_classes.push_back(progression_from(classes[i], index("reducible_classes", i)));
  const Json& generic = require_array(require(v, "generic", ""), "generic");
  for (std::size_t i = 0; i < generic.size(); ++i) {
    const std::string here = index("generic", i);
    const Json& gj = generic[i];
    GenericFactorization g;
    g.param = param_from(require(gj, "parametrization", here), join(here, "parametrization"));
    for (const char* key : {"h1", "h2"}) {
      const Json& hj = require_array(require(gj, key, here), join(here, key));
      auto& dst = std::string(key) == "h1" ? g.h1 : g.h2;
      for (std::size_t k = 0; k < hj.size(); ++k) dst.push_back(poly_from_json(hj[k], arity, index(join(here, key), k)));
    }
    g.h1_positions = require(gj, "h1_positions", here).get<std::vector<std::size_t>>();
    g.certified = require(gj, "certified", here).get<bool>();
    g.s_integral_on_samples = require(gj, "s_integral_on_samples", here).get<bool>();
    g.samples = unsigned_value(require(gj, "samples", here), join(here, "samples"));
    const Json& ej = require(gj, "extrapolation", here);
    g.extrapolation_checked = unsigned_value(require(ej, "checked", here), join(here, "extrapolation.checked"));
    g.extrapolation_failed = unsigned_value(require(ej, "failed", here), join(here, "extrapolation.failed"));
    r.generic.push_back(std::move(g));
  }
  r.diagnostics = require(v, "diagnostics", "").get<std::vector<std::string>>();
  return r;
}

inline std::string factorization_text(const FactorizationReport& r) {
  std::ostringstream o;
  o << "Scanned polynomial" << (r.monicized ? " (monicized)" : "") << ": "
    << r.scanned.to_string(RationalPoly::default_names(r.scanned.arity(), true)) << "\n";
  std::size_t reducible = 0;
  for (const auto& row : r.per_n) reducible += row.reducible() ? 1 : 0;
  o << "Reducible specialisations: " << reducible << " of " << r.per_n.size() << "\n";
  o << "Factor degrees per n:\n";
  for (const auto& row : r.per_n) {
    o << "  n = " << row.n << ": ";
    if (row.degenerate) {
      o << "zero polynomial\n";
      continue;
    }
    o << "[";
    for (std::size_t i = 0; i < row.degrees.size(); ++i) o << (i ? ", " : "") << row.degrees[i];
    o << "]\n";
  }
  o << "Persistently reducible classes:";
  if (r.reducible_classes.empty()) o << " none";
  for (const auto& c : r.reducible_classes) o << " (" << c.to_string() << ")";
  o << "\n";
  for (const auto& g : r.generic) {
    auto names = g.param.variable_names(true);
    o << "Generic factorization on n = " << g.param.progression.to_string() << " (" << (g.certified ? "certified" : "uncertified")
      << ")\n";
    o << "  h1 = " << g.h1_polynomial().to_string(names) << "\n";
    o << "  h2 = " << g.h2_polynomial().to_string(names) << "\n";
    o << "  " << g.param.legend() << "\n";
    o << "  S-integral coefficients on " << g.samples << " samples: " << (g.s_integral_on_samples ? "yes" : "no") << "\n";
    o << "  extrapolation " << g.extrapolation_checked - g.extrapolation_failed << "/" << g.extrapolation_checked << "\n";
  }
  if (r.irreducible_verdict()) o << "Verdict: no generic factorization certificate found within the bounds\n";
  for (const auto& d : r.diagnostics) o << "  note: " << d << "\n";
  return o.str();
}

// ---------------------------------------------------------------------------
// Reports: series, hadamard, heights, schmidt bound

struct SeriesBranchReport {
  UPoly minimal_polynomial;
  std::vector<std::pair<Exponent, std::vector<Rational>>> coefficients;  // exponent -> coordinates in Q(y)
};

template <class Coeff>
std::vector<std::pair<Exponent, std::vector<Rational>>> series_table(const TruncatedSeries<Coeff>& s) {
  std::vector<std::pair<Exponent, std::vector<Rational>>> out;
  for (const auto& [e, c] : s.terms()) {
    if constexpr (std::is_same_v<Coeff, Rational>)
      out.emplace_back(e, std::vector<Rational>{c});
    else
      out.emplace_back(e, c.coordinates());
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    auto da = total_degree(a.first), db = total_degree(b.first);
    if (da != db) return da < db;
    return a.first > b.first;
  });
  return out;
}

inline Json to_json(const std::vector<SeriesBranchReport>& branches, std::uint32_t degree) {
  Json bs = Json::array();
  for (const auto& b : branches) {
    Json rows = Json::array();
    for (const auto& [e, coords] : b.coefficients) rows.push_back(Json{{"exp", e}, {"coeff", io_detail::rationals_json(coords)}});
    bs.push_back(Json{{"minimal_polynomial", upoly_to_json(b.minimal_polynomial)},
                      {"minimal_polynomial_text", b.minimal_polynomial.to_string("Y")},
                      {"coefficients", rows}});
  }
  return Json{{"degree", degree}, {"coefficient_basis", "power basis 1, y, y^2, ... of Q(y), y a root of the minimal polynomial"},
              {"branches", bs}};
}

inline std::string series_text(const std::vector<SeriesBranchReport>& branches, std::uint32_t degree, std::size_t arity) {
  std::ostringstream o;
  auto names = RationalPoly::default_names(arity);
  o << "Implicit series branches, truncated above total degree " << degree << "\n";
  if (branches.empty()) o << "  no simple roots of g(0,...,0,Z)\n";
  for (const auto& b : branches) {
    o << "Branch y with " << b.minimal_polynomial.to_string("Y") << " = 0\n";
    for (const auto& [e, coords] : b.coefficients) {
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += names[i] + (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
      }
      o << "  " << (mono.empty() ? "1" : mono) << ": " << UPoly(coords).to_string("y") << "\n";
    }
  }
  return o.str();
}

inline Json to_json(const HadamardResult& h) {
  return Json{{"found", h.found()},
              {"quotient", h.quotient ? exp_to_json(*h.quotient) : Json(nullptr)},
              {"quotient_text", h.quotient ? h.quotient->to_string() : ""},
              {"order", h.order},
              {"start", h.start},
              {"message", h.message}};
}

inline std::string hadamard_text(const HadamardResult& h) {
  std::ostringstream o;
  if (h.found())
    o << "Quotient recurrence (order " << h.order << ", certified): " << h.quotient->to_string() << "\n";
  else
    o << h.message << "\n";
  return o.str();
}

struct HeightSummary {
  Rational x;
  MultiplicativeHeight weil, s_height;
  bool s_unit = false, s_integer = false;
};

inline HeightSummary height_summary(const Rational& x, const PlaceSet& s) {
  return {x, weil_height(x), s_height(x, s), is_s_unit(x, s), is_s_integer(x, s)};
}

inline std::string log_string(const MultiplicativeHeight& h) {
  std::ostringstream o;
  o.precision(12);
  o << h.log();
  return o.str();
}

inline Json to_json(const HeightSummary& h, const PlaceSet& s) {
  return Json{{"x", to_string(h.x)},
              {"s_primes", s.primes()},
              {"weil_height", h.weil.value.get_str()},
              {"log_weil_height", log_string(h.weil)},
              {"s_height", h.s_height.value.get_str()},
              {"s_unit", h.s_unit},
              {"s_integer", h.s_integer}};
}

inline std::string height_text(const HeightSummary& h) {
  std::ostringstream o;
  o << "x = " << to_string(h.x) << "\n"
    << "H(x) = " << h.weil.value << " (h(x) = " << log_string(h.weil) << ")\n"
    << "H_S(x) = " << h.s_height.value << "\n"
    << "S-unit: " << (h.s_unit ? "yes" : "no") << ", S-integer: " << (h.s_integer ? "yes" : "no") << "\n";
  return o.str();
}

inline Json to_json(const SchmidtBound& b, unsigned long k, unsigned long a) {
  return Json{{"k", k}, {"a", a}, {"exponent", b.exponent.get_str()}, {"log10_c", b.log10_c}};
}

inline std::string schmidt_text(const SchmidtBound& b, unsigned long k, unsigned long a) {
  std::ostringstream o;
  o << "c(" << k << ", " << a << ") = e^E with E = (7*" << k << "^" << a << ")^(8*" << k << "^" << a << ") = " << b.exponent << "\n"
    << "log10 c ~ " << b.log10_c << "\n";
  return o.str();
}

/// Wraps a report body with the schema header.
inline Json envelope(const std::string& command, Json body) {
  Json out{{"format_version", kFormatVersion}, {"command", command}};
  for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
  return out;
}

}  // namespace recdio
