#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lagcut {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// Row-major coordinate matrix. Entries are kept sorted by (row, col) with
/// duplicates summed and exact zeros dropped; the declared shape may be larger
/// than the entries require.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), row_start_(static_cast<std::size_t>(rows < 0 ? 0 : rows) + 1, 0) {}

  /// Throws DimensionError when a triplet lies outside the declared shape.
  static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> entries);
  static SparseMatrix from_dense(const std::vector<std::vector<double>>& dense);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<Triplet>& entries() const { return entries_; }

  /// Entries of row r as a contiguous range.
  std::span<const Triplet> row(int r) const;

  double at(int r, int c) const;

  std::vector<double> multiply(std::span<const double> x) const;
  std::vector<double> multiply_transpose(std::span<const double> y) const;

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  void normalize();

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Triplet> entries_;
  std::vector<int> row_start_{0};
};

}  // namespace lagcut
