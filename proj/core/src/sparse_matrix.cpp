#include "lagcut/sparse_matrix.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "lagcut/error.hpp"

namespace lagcut {

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::vector<Triplet> entries) {
  if (rows < 0 || cols < 0) throw DimensionError("matrix shape must be nonnegative");
  for (const auto& t : entries) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
      throw DimensionError(fmt::format("entry ({}, {}) outside a {}x{} matrix", t.row, t.col, rows, cols));
    }
  }
  SparseMatrix m(rows, cols);
  m.entries_ = std::move(entries);
  m.normalize();
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<double>>& dense) {
  const int rows = static_cast<int>(dense.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(dense.front().size());
  std::vector<Triplet> entries;
  for (int r = 0; r < rows; ++r) {
    const auto& row = dense[static_cast<std::size_t>(r)];
    if (static_cast<int>(row.size()) != cols) throw DimensionError("ragged dense matrix");
    for (int c = 0; c < cols; ++c) {
      if (row[static_cast<std::size_t>(c)] != 0.0) entries.push_back({r, c, row[static_cast<std::size_t>(c)]});
    }
  }
  return from_triplets(rows, cols, std::move(entries));
}

void SparseMatrix::normalize() {
  std::stable_sort(entries_.begin(), entries_.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<Triplet> merged;
  merged.reserve(entries_.size());
  for (const auto& t : entries_) {
    if (!merged.empty() && merged.back().row == t.row && merged.back().col == t.col) {
      merged.back().value += t.value;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Triplet& t) { return t.value == 0.0; });
  entries_ = std::move(merged);
  row_start_.assign(static_cast<std::size_t>(rows_) + 1, 0);
  for (const auto& t : entries_) ++row_start_[static_cast<std::size_t>(t.row) + 1];
  for (int r = 0; r < rows_; ++r) {
    row_start_[static_cast<std::size_t>(r) + 1] += row_start_[static_cast<std::size_t>(r)];
  }
}

std::span<const Triplet> SparseMatrix::row(int r) const {
  if (r < 0 || r >= rows_) return {};
  const auto b = static_cast<std::size_t>(row_start_[static_cast<std::size_t>(r)]);
  const auto e = static_cast<std::size_t>(row_start_[static_cast<std::size_t>(r) + 1]);
  return std::span<const Triplet>(entries_).subspan(b, e - b);
}

double SparseMatrix::at(int r, int c) const {
  for (const auto& t : row(r)) {
    if (t.col == c) return t.value;
  }
  return 0.0;
}

std::vector<double> SparseMatrix::multiply(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != cols_) {
    throw DimensionError(fmt::format("multiply: vector length {} != {} cols", x.size(), cols_));
  }
  std::vector<double> out(static_cast<std::size_t>(rows_), 0.0);
  for (const auto& t : entries_) {
    out[static_cast<std::size_t>(t.row)] += t.value * x[static_cast<std::size_t>(t.col)];
  }
  return out;
}

std::vector<double> SparseMatrix::multiply_transpose(std::span<const double> y) const {
  if (static_cast<int>(y.size()) != rows_) {
    throw DimensionError(fmt::format("multiply_transpose: vector length {} != {} rows", y.size(), rows_));
  }
  std::vector<double> out(static_cast<std::size_t>(cols_), 0.0);
  for (const auto& t : entries_) {
    out[static_cast<std::size_t>(t.col)] += t.value * y[static_cast<std::size_t>(t.row)];
  }
  return out;
}

}  // namespace lagcut
