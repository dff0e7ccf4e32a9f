#pragma once

#include "recdio/rational.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace recdio {

using Matrix = std::vector<std::vector<Rational>>;

struct LinearSolution {
  std::vector<Rational> x;  // free variables set to zero
  std::size_t rank = 0;
};

/// Exact Gauss-Jordan elimination for A x = b. Returns nullopt when the
/// system is inconsistent.
inline std::optional<LinearSolution> solve_linear(Matrix a, std::vector<Rational> b) {
  const std::size_t rows = a.size();
  if (b.size() != rows) throw std::invalid_argument("right-hand side length mismatch");
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pick = row;
    while (pick < rows && is_zero(a[pick][col])) ++pick;
    if (pick == rows) continue;
    std::swap(a[pick], a[row]);
    std::swap(b[pick], b[row]);
    Rational inv = 1 / a[row][col];
    for (std::size_t j = col; j < cols; ++j) a[row][j] *= inv;
    b[row] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || is_zero(a[i][col])) continue;
      Rational f = a[i][col];
      for (std::size_t j = col; j < cols; ++j)
        if (!is_zero(a[row][j])) a[i][j] -= f * a[row][j];
      b[i] -= f * b[row];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < rows; ++i)
    if (!is_zero(b[i])) return std::nullopt;
  LinearSolution sol;
  sol.x.assign(cols, Rational(0));
  sol.rank = row;
  for (std::size_t i = 0; i < row; ++i) sol.x[pivot_col[i]] = b[i];
  return sol;
}

}  // namespace recdio
