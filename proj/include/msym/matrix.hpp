#pragma once

#include <optional>
#include <vector>

#include "msym/rational.hpp"

namespace msym {

// dense exact-rational matrix, row major
struct Mat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Rat& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

// in-place reduced row echelon form; returns pivot column indices.
// Pivot choice is deterministic: the candidate with the largest |numerator|,
// ties broken by lowest row index.
std::vector<int> rref(Mat& m);

int rank(const Mat& m);

// solve m x = b; free variables are set to 0. nullopt if inconsistent.
std::optional<std::vector<Rat>> solve(const Mat& m, const std::vector<Rat>& b);

// basis of the right nullspace, one vector per free column, deterministic order
std::vector<std::vector<Rat>> nullspace(const Mat& m);

} // namespace msym
