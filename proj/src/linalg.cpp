#include "nugrass/linalg.hpp"

namespace nugrass {

Rref rref(QMatrix m, std::size_t ncols) {
  Rref out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t piv = row;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[row], m[piv]);
    const Rational inv = 1 / m[row][col];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col] == 0) continue;
      const Rational f = m[i][col];
      for (std::size_t j = col; j < m[i].size(); ++j)
        if (m[row][j] != 0) m[i][j] -= f * m[row][j];
    }
    out.pivots.push_back(static_cast<int>(col));
    ++row;
  }
  m.resize(row);
  out.rows = std::move(m);
  return out;
}

LinearSolution solve_linear(const QMatrix& a, const QVector& b, std::size_t ncols) {
  QMatrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  Rref r = rref(std::move(aug), ncols + 1);
  LinearSolution s;
  s.consistent = r.pivots.empty() || static_cast<std::size_t>(r.pivots.back()) < ncols;
  s.rank = s.consistent ? r.pivots.size() : r.pivots.size() - 1;
  s.x.assign(ncols, Rational(0));
  if (!s.consistent) return s;
  for (std::size_t i = 0; i < r.pivots.size(); ++i) s.x[static_cast<std::size_t>(r.pivots[i])] = r.rows[i][ncols];
  return s;
}

std::vector<QVector> nullspace(const QMatrix& a, std::size_t ncols) {
  Rref r = rref(a, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (int p : r.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    QVector v(ncols, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[static_cast<std::size_t>(r.pivots[i])] = -r.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace nugrass
