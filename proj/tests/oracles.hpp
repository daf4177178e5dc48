// Independent test oracles. Everything here is deliberately written from
// first principles (dense arithmetic, determinantal identities) and shares no
// code with the library paths it checks.

#pragma once

#include <numeric>
#include <optional>
#include <vector>

#include "fpindex/matrix.hpp"

namespace oracle {

using fpindex::Int;
using fpindex::Rational;
using Dense = std::vector<std::vector<Int>>;

inline Dense to_dense(const fpindex::SparseIntMatrix& m) {
  Dense out(m.rows(), std::vector<Int>(m.cols(), 0));
  for (int r = 0; r < m.rows(); ++r) {
    for (const auto& [c, v] : m.row(r)) out[r][c] = v;
  }
  return out;
}

inline fpindex::SparseIntMatrix from_dense(const Dense& d) {
  const int rows = static_cast<int>(d.size());
  const int cols = rows ? static_cast<int>(d[0].size()) : 0;
  fpindex::SparseIntMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (d[r][c] != 0) m.set(r, c, d[r][c]);
    }
  }
  return m;
}

// Fraction-free (Bareiss) determinant of a square dense matrix.
inline Int bareiss_det(Dense a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int swap = -1;
      for (int r = k + 1; r < n; ++r) {
        if (a[r][k] != 0) {
          swap = r;
          break;
        }
      }
      if (swap == -1) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return Int(sign) * a[n - 1][n - 1];
}

// Rank over the rationals via exact elimination.
inline int rational_rank(const Dense& a_in) {
  std::vector<std::vector<Rational>> a;
  for (const auto& row : a_in) {
    std::vector<Rational> r;
    for (const auto& v : row) r.emplace_back(v);
    a.push_back(std::move(r));
  }
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (a[r][c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == -1) continue;
    std::swap(a[rank], a[pivot]);
    for (int r = 0; r < rows; ++r) {
      if (r != rank && a[r][c] != 0) {
        Rational f = a[r][c] / a[rank][c];
        for (int j = c; j < cols; ++j) a[r][j] -= f * a[rank][j];
      }
    }
    ++rank;
  }
  return rank;
}

// gcd of all k x k minors, for every k up to min(rows, cols); D_0 = 1.
// Exponential in the matrix size; use only on small matrices.
inline std::vector<Int> minor_gcds(const Dense& a) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  const int n = std::min(rows, cols);
  std::vector<Int> out;
  for (int k = 1; k <= n; ++k) {
    Int g = 0;
    std::vector<int> rsel(k), csel(k);
    std::iota(rsel.begin(), rsel.end(), 0);
    auto next_combo = [](std::vector<int>& sel, int limit) {
      int i = static_cast<int>(sel.size()) - 1;
      while (i >= 0 && sel[i] == limit - (static_cast<int>(sel.size()) - i)) --i;
      if (i < 0) return false;
      ++sel[i];
      for (size_t j = i + 1; j < sel.size(); ++j) sel[j] = sel[j - 1] + 1;
      return true;
    };
    do {
      std::iota(csel.begin(), csel.end(), 0);
      do {
        Dense sub(k, std::vector<Int>(k));
        for (int i = 0; i < k; ++i) {
          for (int j = 0; j < k; ++j) sub[i][j] = a[rsel[i]][csel[j]];
        }
        g = boost::multiprecision::gcd(g, abs(bareiss_det(sub)));
      } while (next_combo(csel, cols));
    } while (next_combo(rsel, rows));
    out.push_back(g);
  }
  return out;
}

// Invariant factors from the determinantal divisors: d_k = D_k / D_{k-1}.
inline std::vector<Int> invariant_factors_by_minors(const Dense& a) {
  std::vector<Int> gcds = minor_gcds(a);
  std::vector<Int> out;
  Int prev = 1;
  for (const Int& g : gcds) {
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

// Exact rational solve of a * x = b (any solution); nullopt if inconsistent.
inline std::optional<std::vector<Rational>> rational_solve(const Dense& a_in,
                                                           const std::vector<Int>& b_in) {
  std::vector<std::vector<Rational>> a;
  const int rows = static_cast<int>(a_in.size());
  const int cols = rows ? static_cast<int>(a_in[0].size()) : 0;
  for (int r = 0; r < rows; ++r) {
    std::vector<Rational> row;
    for (const auto& v : a_in[r]) row.emplace_back(v);
    row.emplace_back(b_in[r]);
    a.push_back(std::move(row));
  }
  int rank = 0;
  std::vector<int> pivot_col;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (a[r][c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == -1) continue;
    std::swap(a[rank], a[pivot]);
    for (int r = 0; r < rows; ++r) {
      if (r != rank && a[r][c] != 0) {
        Rational f = a[r][c] / a[rank][c];
        for (int j = c; j <= cols; ++j) a[r][j] -= f * a[rank][j];
      }
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (int r = rank; r < rows; ++r) {
    if (a[r][cols] != 0) return std::nullopt;  // inconsistent
  }
  std::vector<Rational> x(cols, Rational(0));
  for (int r = 0; r < rank; ++r) x[pivot_col[r]] = a[r][cols] / a[r][pivot_col[r]];
  return x;
}

// Integer solvability by determinantal divisors: b lies in the integer column
// span of a iff ranks agree and all determinantal divisors agree.
inline bool solvable_over_z(const Dense& a, const std::vector<Int>& b) {
  Dense aug = a;
  for (size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b[r]);
  if (rational_rank(a) != rational_rank(aug)) return false;
  std::vector<Int> da = minor_gcds(a);
  std::vector<Int> daug = minor_gcds(aug);
  const int rank = rational_rank(a);
  for (int k = 0; k < rank; ++k) {
    if (da[k] != daug[k]) return false;
  }
  return true;
}

}  // namespace oracle
