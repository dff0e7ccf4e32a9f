#pragma once

// Recovery of a recurrence l(n) with c(n) l(n) = b(n) from two power sums,
// by Hankel-system recurrence guessing followed by symbolic certification.

#include "recdio/factor.hpp"
#include "recdio/linalg.hpp"
#include "recdio/powersum.hpp"
#include "recdio/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace recdio {

struct HadamardResult {
  std::optional<ExpPolynomial> quotient;  // certified: c * quotient == b
  std::size_t order = 0;                  // order of the guessed recurrence
  std::uint64_t start = 0;                // first index used for guessing
  std::string message;

  bool found() const { return quotient.has_value(); }
};

inline HadamardResult hadamard_detect(const ExpPolynomial& b, const ExpPolynomial& c, unsigned order_bound) {
  if (c.is_zero()) throw InputError("denominator sequence is identically zero");
  if (order_bound == 0) throw InputError("order bound must be positive");
  HadamardResult out;
  auto zeros = zero_set(c);
  if (!zeros) throw std::logic_error("zero set of denominator could not be decomposed");
  if (!zeros->progressions.empty()) {
    out.message = "none found up to order " + std::to_string(order_bound) + ": denominator vanishes on " +
                  zeros->progressions.front().to_string();
    return out;
  }
  out.start = zeros->finite_zeros.empty() ? 0 : zeros->finite_zeros.back() + 1;

  const std::size_t count = 4 * static_cast<std::size_t>(order_bound);
  std::vector<Rational> a;
  for (std::size_t j = 0; j < count; ++j) a.push_back(b.eval(out.start + j) / c.eval(out.start + j));

  auto none = [&](const std::string& why) {
    out.quotient.reset();
    out.message = "none found up to order " + std::to_string(order_bound) + ": " + why;
    return out;
  };

  ExpPolynomial guess;
  if (std::all_of(a.begin(), a.end(), [](const Rational& x) { return is_zero(x); })) {
    out.order = 0;
  } else {
    std::optional<std::vector<Rational>> rec;
    for (std::size_t k = 1; k <= order_bound && !rec; ++k) {
      Matrix m;
      std::vector<Rational> rhs;
      for (std::size_t n = 0; n + k < count; ++n) {
        m.emplace_back(a.begin() + static_cast<long>(n), a.begin() + static_cast<long>(n + k));
        rhs.push_back(a[n + k]);
      }
      if (auto sol = solve_linear(std::move(m), std::move(rhs))) {
        rec = sol->x;
        out.order = k;
      }
    }
    if (!rec) return none("no recurrence of order <= bound fits the quotient values");

    // x^k - sum r_i x^i
    std::vector<Rational> chi(out.order + 1);
    chi[out.order] = 1;
    for (std::size_t i = 0; i < out.order; ++i) chi[i] = -(*rec)[i];
    auto fac = factor_rational(UPoly(chi), std::max(8, static_cast<int>(out.order)));
    std::vector<Rational> roots;
    for (const auto& f : fac.factors) {
      if (f.factor.degree() != 1 || f.multiplicity != 1) return none("characteristic roots are not rational and simple");
      Rational root = -f.factor.coeff(0) / f.factor.coeff(1);
      if (is_zero(root)) return none("characteristic polynomial has the root 0");
      roots.push_back(root);
    }

    Matrix v;
    std::vector<Rational> rhs;
    for (std::size_t j = 0; j < roots.size(); ++j) {
      std::vector<Rational> line;
      for (const auto& root : roots) line.push_back(pow(root, static_cast<long>(out.start + j)));
      v.push_back(std::move(line));
      rhs.push_back(a[j]);
    }
    auto coeffs = solve_linear(std::move(v), std::move(rhs));
    if (!coeffs) return none("Binet coefficients are inconsistent");
    for (std::size_t i = 0; i < roots.size(); ++i) guess.add_term(coeffs->x[i], roots[i]);
  }

  if (!(c * guess - b).is_zero()) return none("guess does not certify symbolically");
  out.quotient = guess;
  out.message = "certified";
  return out;
}

inline HadamardResult hadamard_detect(const PowerSumSequence& b, const PowerSumSequence& c, unsigned order_bound) {
  return hadamard_detect(b.as_exp(), c.as_exp(), order_bound);
}

}  // namespace recdio
