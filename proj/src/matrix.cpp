#include "msym/matrix.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace msym {

static Int abs_num(const Rat& r)
{
  Int n = boost::multiprecision::numerator(r);
  return n < 0 ? Int(-n) : n;
}

std::vector<int> rref(Mat& m)
{
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int best = -1;
    Int best_num = 0;
    for (int r = row; r < m.rows; ++r) {
      if (m.at(r, col) == 0) continue;
      Int an = abs_num(m.at(r, col));
      if (best == -1 || an > best_num) {
        best = r;
        best_num = an;
      }
    }
    if (best == -1) continue;
    if (best != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(row, j), m.at(best, j));
    Rat inv = Rat(1) / m.at(row, col);
    for (int j = col; j < m.cols; ++j) m.at(row, j) *= inv;
    for (int r = 0; r < m.rows; ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      Rat f = m.at(r, col);
      for (int j = col; j < m.cols; ++j) m.at(r, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(const Mat& m)
{
  Mat c = m;
  return static_cast<int>(rref(c).size());
}

std::optional<std::vector<Rat>> solve(const Mat& m, const std::vector<Rat>& b)
{
  Mat aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[static_cast<size_t>(i)];
  }
  std::vector<int> piv = rref(aug);
  if (!piv.empty() && piv.back() == m.cols) return std::nullopt;
  std::vector<Rat> x(static_cast<size_t>(m.cols));
  for (size_t k = 0; k < piv.size(); ++k) x[static_cast<size_t>(piv[k])] = aug.at(static_cast<int>(k), m.cols);
  return x;
}

std::vector<std::vector<Rat>> nullspace(const Mat& m)
{
  Mat c = m;
  std::vector<int> piv = rref(c);
  std::vector<bool> is_piv(static_cast<size_t>(m.cols), false);
  for (int p : piv) is_piv[static_cast<size_t>(p)] = true;
  std::vector<std::vector<Rat>> basis;
  for (int free = 0; free < m.cols; ++free) {
    if (is_piv[static_cast<size_t>(free)]) continue;
    std::vector<Rat> v(static_cast<size_t>(m.cols));
    v[static_cast<size_t>(free)] = 1;
    for (size_t k = 0; k < piv.size(); ++k) v[static_cast<size_t>(piv[k])] = -c.at(static_cast<int>(k), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

} // namespace msym
