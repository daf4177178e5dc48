// Sparse matrices over the integers.
//
// Row-major storage with a per-column occupancy index so that both row and
// column elementary operations (the workhorses of Smith reduction) stay
// cheap. No zero entry is ever stored.

#pragma once

#include <map>
#include <set>
#include <vector>

#include "fpindex/numeric.hpp"

namespace fpindex {

using SparseVector = std::map<int, Int>;  // index -> nonzero coefficient

SparseVector sparse_add(const SparseVector& a, const SparseVector& b);
SparseVector sparse_sub(const SparseVector& a, const SparseVector& b);
SparseVector sparse_scale(const SparseVector& a, const Int& s);

class SparseIntMatrix {
 public:
  SparseIntMatrix() = default;
  SparseIntMatrix(int rows, int cols);

  static SparseIntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const Int& at(int r, int c) const;
  void set(int r, int c, Int value);
  void add_at(int r, int c, const Int& value);

  const SparseVector& row(int r) const { return data_[r]; }
  const std::set<int>& column_support(int c) const { return col_index_[c]; }

  int nnz() const;
  bool is_zero() const;

  // Elementary operations (in place).
  void swap_rows(int i, int j);
  void swap_cols(int i, int j);
  void negate_row(int i);
  void negate_col(int i);
  void add_row_multiple(int dst, int src, const Int& q);  // row_dst += q * row_src
  void add_col_multiple(int dst, int src, const Int& q);  // col_dst += q * col_src

  SparseIntMatrix transpose() const;
  Int trace() const;

  // Matrix-vector and matrix-matrix products.
  SparseVector apply(const SparseVector& v) const;

  friend SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b);
  friend SparseIntMatrix operator+(const SparseIntMatrix& a, const SparseIntMatrix& b);
  friend SparseIntMatrix operator-(const SparseIntMatrix& a, const SparseIntMatrix& b);
  SparseIntMatrix operator-() const;
  SparseIntMatrix scaled(const Int& s) const;

  bool operator==(const SparseIntMatrix& other) const;
  bool operator!=(const SparseIntMatrix& other) const { return !(*this == other); }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<SparseVector> data_;        // per row
  std::vector<std::set<int>> col_index_;  // per column: rows with a nonzero
};

}  // namespace fpindex
