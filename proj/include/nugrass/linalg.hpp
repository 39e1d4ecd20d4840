#pragma once

#include <vector>

#include "nugrass/polynomial.hpp"

namespace nugrass {

using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;  // row-major, all rows the same length

struct Rref {
  QMatrix rows;             // reduced row echelon form, zero rows dropped
  std::vector<int> pivots;  // pivot column of each kept row
};

/// Exact reduced row echelon form over Q.
Rref rref(QMatrix m, std::size_t ncols);

struct LinearSolution {
  bool consistent = false;
  std::size_t rank = 0;
  QVector x;  // a particular solution with free variables set to zero
};

/// Solves A x = b exactly. A has `ncols` columns (rows may be empty).
LinearSolution solve_linear(const QMatrix& a, const QVector& b, std::size_t ncols);

/// Basis of { x : A x = 0 }, one vector per free column, in column order.
std::vector<QVector> nullspace(const QMatrix& a, std::size_t ncols);

}  // namespace nugrass
