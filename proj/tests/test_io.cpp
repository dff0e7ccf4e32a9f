#include "criteria.hpp"
#include "recdio/io.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace recdio;
using testing_support::planted_product;
using testing_support::poly;
using testing_support::r;
using testing_support::spec_from;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

std::string dumped(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

TEST(ProblemFile, PlantedFile) {
  auto pf = read_problem_file(RECDIO_PROBLEM_DIR "/planted.json");
  ASSERT_TRUE(pf.spec);
  EXPECT_EQ(pf.spec->polynomial(), planted_product());
  EXPECT_EQ(pf.spec->gammas(), std::vector<Rational>{r(1, 2)});
  EXPECT_EQ(pf.spec->places().primes(), std::vector<unsigned long>{2});
  EXPECT_EQ(pf.bounds.n_bound, 200u);
  EXPECT_FALSE(pf.hadamard);
}

TEST(ProblemFile, EveryShippedProblemParses) {
  std::size_t count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(RECDIO_PROBLEM_DIR)) {
    if (entry.path().extension() != ".json") continue;
    auto pf = read_problem_file(entry.path().string());
    EXPECT_TRUE(pf.spec || pf.hadamard) << entry.path();
    ++count;
  }
  EXPECT_GE(count, 8u);
}

TEST(ProblemFile, DefaultsAndLinearForm) {
  auto pf = parse_problem(R"({"gammas": ["1/2", "1/3"],
    "coefficients": [{"constant": 1}, {"linear": ["-1", "-1"]}, {"constant": "-1"}]})");
  ASSERT_TRUE(pf.spec);
  EXPECT_EQ(pf.bounds, Bounds{});
  EXPECT_TRUE(pf.spec->places().primes().empty());
  auto g = poly(3, {{{0, 0, 2}, r(1)}, {{1, 0, 1}, r(-1)}, {{0, 1, 1}, r(-1)}, {{0, 0, 0}, r(-1)}});
  EXPECT_EQ(pf.spec->polynomial(), g);
}

TEST(ProblemFile, HadamardBlock) {
  auto pf = read_problem_file(RECDIO_PROBLEM_DIR "/hadamard.json");
  ASSERT_TRUE(pf.hadamard);
  EXPECT_FALSE(pf.spec);
  EXPECT_EQ(pf.hadamard->c, ExpPolynomial::from_terms({{r(1), r(1, 2)}, {r(-1), r(1, 5)}}));
  EXPECT_EQ(pf.hadamard->order_bound, 4u);
}

TEST(ProblemFile, ErrorsNameTheField) {
  EXPECT_EQ(error_of(R"({"gammas": ["1/2"], "coefficients": [{"constant": 0.5}]})"),
            "field 'coefficients[0].constant': expected a rational string such as \"3/4\"");
  EXPECT_EQ(error_of(R"({"gammas": ["1/2"]})"), "field 'coefficients': missing (gammas and coefficients come together)");
  EXPECT_EQ(error_of(R"({"bounds": {"n_bond": 3}})"), "field 'bounds.n_bond': unknown bound");
  EXPECT_EQ(error_of(R"({"bounds": {"n_bound": -3}})"), "field 'bounds.n_bound': expected a non-negative integer");
  EXPECT_EQ(error_of(R"({"format_version": 2})"), "field 'format_version': unsupported version 2");
  EXPECT_NE(error_of(R"({"gammas": ["1/0"], "coefficients": [{"constant": 1}]})").find("field 'gammas[0]'"), std::string::npos);
  EXPECT_NE(error_of(R"({"gammas": ["1/2"], "coefficients": [{"linear": [1, 2]}]})").find("expected 1 entries"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"hadamard": {"b": [{"coeff": "1", "root": "1/2"}], "c": []}})").find("field 'hadamard.c'"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"hadamard": {"b": []}})").find("field 'hadamard.c': missing"), std::string::npos);
}

TEST(ProblemFile, SyntaxErrorsReportLineAndColumn) {
  auto msg = error_of("{\n  \"gammas\": [\"1/2\",]\n}");
  EXPECT_EQ(msg.rfind("line 2, column ", 0), 0u) << msg;
  EXPECT_NE(msg.find("syntax error"), std::string::npos);
}

TEST(ProblemFile, SpecRoundTrip) {
  auto spec = spec_from({r(1, 2), r(1, 3)}, poly(3, {{{0, 0, 2}, r(1)}, {{1, 0, 1}, r(-1)}, {{1, 1, 0}, r(5, 7)}}), {2, 3});
  Json j = problem_to_json(spec);
  auto back = parse_problem(j.dump());
  ASSERT_TRUE(back.spec);
  EXPECT_EQ(back.spec->polynomial(), spec.polynomial());
  EXPECT_EQ(dumped(problem_to_json(*back.spec)), dumped(j));
}

TEST(Reports, SolveReportRoundTripsByteIdentically) {
  for (const char* name : {"planted.json", "sporadic.json", "quotient.json", "square.json", "two_gammas.json"}) {
    auto pf = read_problem_file(std::string(RECDIO_PROBLEM_DIR "/") + name);
    ProblemSpec spec = *pf.spec;
    std::string a = criteria::solve_structured(spec, false);
    Json parsed = Json::parse(a);
    EXPECT_EQ(parsed["format_version"], 1);
    EXPECT_EQ(parsed["command"], "solve");
    EXPECT_EQ(dumped(envelope("solve", to_json(solution_report_from_json(parsed)))), a) << name;
  }
}

TEST(Reports, FactorScanReportRoundTripsByteIdentically) {
  for (const char* name : {"planted.json", "square.json", "two_gammas.json"}) {
    auto pf = read_problem_file(std::string(RECDIO_PROBLEM_DIR "/") + name);
    Bounds b = pf.bounds;
    b.n_bound = 40;
    ProblemSpec spec = ProblemSpec::from_polynomial(pf.spec->gammas(), pf.spec->polynomial(), pf.spec->places(), b);
    std::string a = dumped(envelope("factor-scan", to_json(factor_scan(spec))));
    auto back = factorization_report_from_json(Json::parse(a), spec.arity());
    EXPECT_EQ(dumped(envelope("factor-scan", to_json(back))), a) << name;
  }
}

TEST(Reports, TextReportsMentionKeyFacts) {
  auto rep = classify(criteria::planted_spec(60));
  auto text = solution_text(rep);
  EXPECT_NE(text.find("certified"), std::string::npos);
  EXPECT_NE(text.find("X1"), std::string::npos);
  auto h = hadamard_detect(ExpPolynomial::from_terms({{r(1), r(1, 2)}}), ExpPolynomial::from_terms({{r(1), r(1, 3)}}), 4);
  EXPECT_NE(hadamard_text(h).find("(3/2)^n"), std::string::npos);
}

TEST(Reports, RationalsAreStrings) {
  Json j = to_json(height_summary(r(-3, 7), PlaceSet({7})), PlaceSet({7}));
  for (const auto& [k, v] : j.items()) EXPECT_FALSE(v.is_number_float()) << k;
}
