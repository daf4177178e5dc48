#include "fpindex/matrix.hpp"

#include "fpindex/errors.hpp"

namespace fpindex {

namespace {
const Int kZero = 0;

void check_range(int v, int bound, const char* what) {
  if (v < 0 || v >= bound) throw_input(std::string("matrix index out of range: ") + what);
}
}  // namespace

SparseVector sparse_add(const SparseVector& a, const SparseVector& b) {
  SparseVector out = a;
  for (const auto& [i, val] : b) {
    Int& slot = out[i];
    slot += val;
    if (slot == 0) out.erase(i);
  }
  return out;
}

SparseVector sparse_sub(const SparseVector& a, const SparseVector& b) {
  SparseVector out = a;
  for (const auto& [i, val] : b) {
    Int& slot = out[i];
    slot -= val;
    if (slot == 0) out.erase(i);
  }
  return out;
}

SparseVector sparse_scale(const SparseVector& a, const Int& s) {
  SparseVector out;
  if (s == 0) return out;
  for (const auto& [i, val] : a) out.emplace(i, val * s);
  return out;
}

SparseIntMatrix::SparseIntMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw_input("matrix dimensions must be nonnegative");
  data_.resize(rows);
  col_index_.resize(cols);
}

SparseIntMatrix SparseIntMatrix::identity(int n) {
  SparseIntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

const Int& SparseIntMatrix::at(int r, int c) const {
  check_range(r, rows_, "row");
  check_range(c, cols_, "col");
  auto it = data_[r].find(c);
  return it == data_[r].end() ? kZero : it->second;
}

void SparseIntMatrix::set(int r, int c, Int value) {
  check_range(r, rows_, "row");
  check_range(c, cols_, "col");
  if (value == 0) {
    data_[r].erase(c);
    col_index_[c].erase(r);
  } else {
    data_[r][c] = std::move(value);
    col_index_[c].insert(r);
  }
}

void SparseIntMatrix::add_at(int r, int c, const Int& value) {
  if (value == 0) return;
  check_range(r, rows_, "row");
  check_range(c, cols_, "col");
  Int& slot = data_[r][c];
  slot += value;
  if (slot == 0) {
    data_[r].erase(c);
    col_index_[c].erase(r);
  } else {
    col_index_[c].insert(r);
  }
}

int SparseIntMatrix::nnz() const {
  int n = 0;
  for (const auto& row : data_) n += static_cast<int>(row.size());
  return n;
}

bool SparseIntMatrix::is_zero() const { return nnz() == 0; }

void SparseIntMatrix::swap_rows(int i, int j) {
  if (i == j) return;
  check_range(i, rows_, "row");
  check_range(j, rows_, "row");
  for (const auto& [c, v] : data_[i]) {
    if (!data_[j].count(c)) col_index_[c].erase(i), col_index_[c].insert(j);
  }
  for (const auto& [c, v] : data_[j]) {
    if (!data_[i].count(c)) col_index_[c].erase(j), col_index_[c].insert(i);
  }
  std::swap(data_[i], data_[j]);
}

void SparseIntMatrix::swap_cols(int i, int j) {
  if (i == j) return;
  check_range(i, cols_, "col");
  check_range(j, cols_, "col");
  std::set<int> touched = col_index_[i];
  touched.insert(col_index_[j].begin(), col_index_[j].end());
  for (int r : touched) {
    auto it_i = data_[r].find(i);
    auto it_j = data_[r].find(j);
    Int vi = it_i == data_[r].end() ? Int(0) : it_i->second;
    Int vj = it_j == data_[r].end() ? Int(0) : it_j->second;
    if (it_i != data_[r].end()) data_[r].erase(it_i);
    if (it_j != data_[r].end()) data_[r].erase(it_j);
    if (vj != 0) data_[r][i] = vj;
    if (vi != 0) data_[r][j] = vi;
  }
  std::swap(col_index_[i], col_index_[j]);
}

void SparseIntMatrix::negate_row(int i) {
  check_range(i, rows_, "row");
  for (auto& [c, v] : data_[i]) v = -v;
}

void SparseIntMatrix::negate_col(int i) {
  check_range(i, cols_, "col");
  for (int r : col_index_[i]) data_[r][i] = -data_[r][i];
}

void SparseIntMatrix::add_row_multiple(int dst, int src, const Int& q) {
  if (q == 0) return;
  check_range(dst, rows_, "row");
  check_range(src, rows_, "row");
  for (const auto& [c, v] : data_[src]) {
    Int& slot = data_[dst][c];
    slot += q * v;
    if (slot == 0) {
      data_[dst].erase(c);
      col_index_[c].erase(dst);
    } else {
      col_index_[c].insert(dst);
    }
  }
}

void SparseIntMatrix::add_col_multiple(int dst, int src, const Int& q) {
  if (q == 0) return;
  check_range(dst, cols_, "col");
  check_range(src, cols_, "col");
  // Copy: the support set mutates while we write into column dst.
  std::vector<int> src_rows(col_index_[src].begin(), col_index_[src].end());
  for (int r : src_rows) {
    const Int v = data_[r].at(src);
    Int& slot = data_[r][dst];
    slot += q * v;
    if (slot == 0) {
      data_[r].erase(dst);
      col_index_[dst].erase(r);
    } else {
      col_index_[dst].insert(r);
    }
  }
}

SparseIntMatrix SparseIntMatrix::transpose() const {
  SparseIntMatrix out(cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : data_[r]) out.set(c, r, v);
  }
  return out;
}

Int SparseIntMatrix::trace() const {
  Int t = 0;
  const int n = std::min(rows_, cols_);
  for (int i = 0; i < n; ++i) t += at(i, i);
  return t;
}

SparseVector SparseIntMatrix::apply(const SparseVector& v) const {
  SparseVector out;
  for (const auto& [c, coeff] : v) {
    check_range(c, cols_, "col");
    for (int r : col_index_[c]) {
      Int& slot = out[r];
      slot += data_[r].at(c) * coeff;
      if (slot == 0) out.erase(r);
    }
  }
  return out;
}

SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.cols_ != b.rows_) throw_input("matrix product: inner dimensions differ");
  SparseIntMatrix out(a.rows_, b.cols_);
  for (int r = 0; r < a.rows_; ++r) {
    SparseVector acc;
    for (const auto& [k, av] : a.data_[r]) {
      for (const auto& [c, bv] : b.data_[k]) {
        Int& slot = acc[c];
        slot += av * bv;
      }
    }
    for (auto& [c, v] : acc) {
      if (v != 0) out.set(r, c, std::move(v));
    }
  }
  return out;
}

SparseIntMatrix operator+(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw_input("matrix sum: shapes differ");
  SparseIntMatrix out = a;
  for (int r = 0; r < b.rows_; ++r) {
    for (const auto& [c, v] : b.data_[r]) out.add_at(r, c, v);
  }
  return out;
}

SparseIntMatrix operator-(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw_input("matrix difference: shapes differ");
  SparseIntMatrix out = a;
  for (int r = 0; r < b.rows_; ++r) {
    for (const auto& [c, v] : b.data_[r]) out.add_at(r, c, -v);
  }
  return out;
}

SparseIntMatrix SparseIntMatrix::operator-() const { return scaled(Int(-1)); }

SparseIntMatrix SparseIntMatrix::scaled(const Int& s) const {
  SparseIntMatrix out(rows_, cols_);
  if (s == 0) return out;
  for (int r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : data_[r]) out.set(r, c, v * s);
  }
  return out;
}

bool SparseIntMatrix::operator==(const SparseIntMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

}  // namespace fpindex
