// Command-line front end.

#include "recdio/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace recdio;

struct Options {
  std::string input;
  std::string output;
  std::string format = "text";
  std::optional<std::uint64_t> n_bound;
  std::optional<unsigned> fit_degree;
  std::optional<std::uint64_t> modulus_bound;
  std::optional<std::uint32_t> series_degree;
  std::string parallel = "off";
  std::optional<std::uint64_t> seed;

  // height / schmidt-bound
  std::string value;
  std::vector<unsigned long> s_primes;
  unsigned long k = 1, a = 1;

  bool structured() const { return format == "structured"; }
};

void emit(const Options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) throw InputError("cannot write " + opt.output);
  out << text;
}

std::string render(const std::string& command, const Json& body) { return envelope(command, body).dump(2) + "\n"; }

ProblemFile load(const Options& opt) {
  if (opt.input.empty()) throw InputError("--input is required for this command");
  ProblemFile pf = read_problem_file(opt.input);
  Bounds& b = pf.bounds;
  if (opt.n_bound) b.n_bound = *opt.n_bound;
  if (opt.fit_degree) b.fit_degree = *opt.fit_degree;
  if (opt.modulus_bound) b.modulus_bound = *opt.modulus_bound;
  if (opt.series_degree) b.series_degree = *opt.series_degree;
  if (b.n_bound == 0) throw InputError("n_bound must be positive");
  if (b.modulus_bound == 0) throw InputError("modulus_bound must be positive");
  if (pf.spec) pf.spec->bounds() = b;
  return pf;
}

const ProblemSpec& need_spec(const ProblemFile& pf) {
  if (!pf.spec) throw InputError("problem file needs 'gammas' and 'coefficients' for this command");
  return *pf.spec;
}

int run_check(const Options& opt) {
  auto pf = load(opt);
  auto rep = check_hypotheses(need_spec(pf));
  emit(opt, opt.structured() ? render("check-hypotheses", to_json(rep)) : "Hypotheses\n" + hypotheses_text(rep));
  return rep.theorem_applicable() ? 0 : 2;
}

int run_solve(const Options& opt) {
  auto pf = load(opt);
  ClassifyOptions co;
  co.parallel = opt.parallel == "on";
  if (pf.hadamard) co.hadamard_order_bound = pf.hadamard->order_bound;
  auto rep = classify(need_spec(pf), co);
  emit(opt, opt.structured() ? render("solve", to_json(rep)) : solution_text(rep));
  return 0;
}

int run_factor_scan(const Options& opt) {
  auto pf = load(opt);
  ScanOptions so;
  so.parallel = opt.parallel == "on";
  auto rep = factor_scan(need_spec(pf), so);
  emit(opt, opt.structured() ? render("factor-scan", to_json(rep)) : factorization_text(rep));
  return 0;
}

int run_series(const Options& opt) {
  auto pf = load(opt);
  const ProblemSpec& spec = need_spec(pf);
  const std::uint32_t degree = spec.bounds().series_degree;
  RationalPoly g = spec.polynomial();
  bool monicized = false;
  if (!is_squarefree(at_origin(g)) && !spec.leading().is_zero()) {
    g = monicize(g);
    monicized = true;
  }
  std::vector<SeriesBranchReport> branches;
  for (const auto& b : simple_root_branches(g, spec.bounds().factor_degree_cap)) {
    SeriesBranchReport rep{b.minimal_polynomial, {}};
    if (const auto* q = std::get_if<Rational>(&b.root))
      rep.coefficients = series_table(implicit_series(g, *q, degree));
    else
      rep.coefficients = series_table(implicit_series(g, std::get<ExtensionElement>(b.root), degree));
    branches.push_back(std::move(rep));
  }
  if (opt.structured()) {
    Json body = to_json(branches, degree);
    body["monicized"] = monicized;
    body["polynomial"] = poly_to_json(g);
    emit(opt, render("series", body));
  } else {
    std::string head = monicized ? "g(0, Z) has a repeated root; expanding the monicized polynomial " : "Expanding ";
    head += g.to_string(RationalPoly::default_names(g.arity(), true)) + "\n";
    emit(opt, head + series_text(branches, degree, spec.arity()));
  }
  return 0;
}

int run_hadamard(const Options& opt) {
  auto pf = load(opt);
  if (!pf.hadamard) throw InputError("problem file needs a 'hadamard' block for this command");
  auto res = hadamard_detect(pf.hadamard->b, pf.hadamard->c, pf.hadamard->order_bound);
  emit(opt, opt.structured() ? render("hadamard", to_json(res)) : hadamard_text(res));
  return 0;
}

int run_height(const Options& opt) {
  if (opt.value.empty()) throw InputError("--value is required");
  Rational x = parse_rational(opt.value);
  if (is_zero(x)) throw InputError("the height of 0 is not defined");
  PlaceSet s(opt.s_primes);
  auto h = height_summary(x, s);
  emit(opt, opt.structured() ? render("height", to_json(h, s)) : height_text(h));
  return 0;
}

int run_schmidt(const Options& opt) {
  auto b = schmidt_bound(opt.k, opt.a);
  emit(opt, opt.structured() ? render("schmidt-bound", to_json(b, opt.k, opt.a)) : schmidt_text(b, opt.k, opt.a));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver for polynomial equations with power-sum coefficients"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;

  app.add_option("--input", opt.input, "problem file (JSON)");
  app.add_option("--output", opt.output, "write the report here instead of stdout");
  app.add_option("--format", opt.format, "report format")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--n-bound", opt.n_bound, "enumerate n = 1..N")->check(CLI::PositiveNumber);
  app.add_option("--fit-degree", opt.fit_degree, "maximal total degree of fitted polynomials");
  app.add_option("--modulus-bound", opt.modulus_bound, "largest progression modulus")->check(CLI::PositiveNumber);
  app.add_option("--series-degree", opt.series_degree, "truncation degree of implicit series");
  app.add_option("--parallel", opt.parallel, "parallel enumeration")->check(CLI::IsMember({"on", "off"}));
  app.add_option("--seed", opt.seed, "seed for randomized demos; reports do not depend on it");

  auto* check = app.add_subcommand("check-hypotheses", "audit the standing hypotheses");
  auto* solve = app.add_subcommand("solve", "classify the S-integer solutions");
  auto* scan = app.add_subcommand("factor-scan", "factor the specialisations and look for generic factorisations");
  auto* series = app.add_subcommand("series", "implicit power series of the root branches at the origin");
  auto* hadamard = app.add_subcommand("hadamard", "quotient recurrence of two power sums");
  auto* height = app.add_subcommand("height", "heights of a rational number");
  height->add_option("--value", opt.value, "rational p/q")->required();
  height->add_option("--s-primes", opt.s_primes, "finite primes in S")->delimiter(',');
  auto* schmidt = app.add_subcommand("schmidt-bound", "zero-multiplicity bound for non-degenerate recurrences");
  schmidt->add_option("--k", opt.k, "number of distinct roots")->check(CLI::PositiveNumber);
  schmidt->add_option("--a", opt.a, "root multiplicity bound")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*check) return run_check(opt);
    if (*solve) return run_solve(opt);
    if (*scan) return run_factor_scan(opt);
    if (*series) return run_series(opt);
    if (*hadamard) return run_hadamard(opt);
    if (*height) return run_height(opt);
    if (*schmidt) return run_schmidt(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
