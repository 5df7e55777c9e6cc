#include "setrisk/linalg.hpp"

#include <utility>

namespace setrisk::linalg {

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && sgn(m[sel][col]) == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    Rational inv = 1 / m[row][col];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = 0; c < m[r].size(); ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const Matrix& rows, std::size_t cols) {
  Matrix m = rows;
  return rref(m, cols).size();
}

Matrix nullspace(const Matrix& rows, std::size_t cols) {
  Matrix m = rows;
  auto pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec v = zeros(cols);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    make_primitive(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const Matrix& a, const Vec& b, std::size_t cols) {
  Matrix m;
  m.reserve(a.size());
  for (std::size_t r = 0; r < a.size(); ++r) {
    Vec row = a[r];
    row.push_back(b[r]);
    m.push_back(std::move(row));
  }
  auto pivots = rref(m, cols + 1);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  Vec x = zeros(cols);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[r][cols];
  return x;
}

Matrix transpose(const Matrix& m, std::size_t cols) {
  Matrix t(cols, Vec(m.size()));
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) t[c][r] = m[r][c];
  return t;
}

}  // namespace setrisk::linalg
