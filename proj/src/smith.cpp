#include "fpindex/smith.hpp"

#include <cstdlib>

#include "fpindex/errors.hpp"

namespace fpindex {

namespace {

// Reduction state; the change-of-basis factors are optional so the
// invariants-only path can skip them.
struct Reduction {
  SparseIntMatrix d;
  bool track;
  SparseIntMatrix u, u_inv, v, v_inv;
  int det_u = 1, det_v = 1;

  explicit Reduction(const SparseIntMatrix& m, bool track_bases) : d(m), track(track_bases) {
    if (track) {
      u = SparseIntMatrix::identity(m.rows());
      u_inv = SparseIntMatrix::identity(m.rows());
      v = SparseIntMatrix::identity(m.cols());
      v_inv = SparseIntMatrix::identity(m.cols());
    }
  }

  void row_swap(int i, int j) {
    if (i == j) return;
    d.swap_rows(i, j);
    if (track) {
      u_inv.swap_rows(i, j);
      u.swap_cols(i, j);
      det_u = -det_u;
    } else {
      det_u = -det_u;
    }
  }

  void col_swap(int i, int j) {
    if (i == j) return;
    d.swap_cols(i, j);
    if (track) {
      v_inv.swap_cols(i, j);
      v.swap_rows(i, j);
    }
    det_v = -det_v;
  }

  void row_negate(int i) {
    d.negate_row(i);
    if (track) {
      u_inv.negate_row(i);
      u.negate_col(i);
    }
    det_u = -det_u;
  }

  // row_dst += q * row_src
  void row_add(int dst, int src, const Int& q) {
    if (q == 0) return;
    d.add_row_multiple(dst, src, q);
    if (track) {
      u_inv.add_row_multiple(dst, src, q);
      u.add_col_multiple(src, dst, -q);
    }
  }

  // col_dst += q * col_src
  void col_add(int dst, int src, const Int& q) {
    if (q == 0) return;
    d.add_col_multiple(dst, src, q);
    if (track) {
      v_inv.add_col_multiple(dst, src, q);
      v.add_row_multiple(src, dst, -q);
    }
  }
};

// Finds the entry of minimal |value| in the submatrix [t.., t..];
// ties broken by (row, col). Returns false when the submatrix is zero.
bool find_pivot(const SparseIntMatrix& d, int t, int& pr, int& pc) {
  bool found = false;
  Int best = 0;
  for (int r = t; r < d.rows(); ++r) {
    for (const auto& [c, val] : d.row(r)) {
      if (c < t) continue;
      Int a = abs(val);
      if (!found || a < best) {
        found = true;
        best = a;
        pr = r;
        pc = c;
      }
    }
  }
  return found;
}

void reduce(Reduction& red) {
  SparseIntMatrix& d = red.d;
  const int n = std::min(d.rows(), d.cols());
  for (int t = 0; t < n; ++t) {
    int pr = 0, pc = 0;
    if (!find_pivot(d, t, pr, pc)) break;
    red.row_swap(t, pr);
    red.col_swap(t, pc);

    for (;;) {
      // Clear column t.
      bool dirty = true;
      while (dirty) {
        dirty = false;
        std::vector<int> rows(d.column_support(t).begin(), d.column_support(t).end());
        for (int r : rows) {
          if (r == t || d.at(r, t) == 0) continue;
          Int q = d.at(r, t) / d.at(t, t);  // truncated: |remainder| < |pivot|
          red.row_add(r, t, -q);
          if (d.at(r, t) != 0) {
            red.row_swap(t, r);  // strictly smaller pivot
            dirty = true;
          }
        }
        // Clear row t.
        std::vector<int> cols;
        for (const auto& [c, val] : d.row(t)) {
          if (c != t) cols.push_back(c);
        }
        for (int c : cols) {
          if (d.at(t, c) == 0) continue;
          Int q = d.at(t, c) / d.at(t, t);
          red.col_add(c, t, -q);
          if (d.at(t, c) != 0) {
            red.col_swap(t, c);
            dirty = true;
          }
        }
      }

      // Divisibility sweep: the pivot must divide every remaining entry.
      bool fixed = true;
      for (int r = t + 1; r < d.rows() && fixed; ++r) {
        for (const auto& [c, val] : d.row(r)) {
          if (c <= t) continue;
          if (val % d.at(t, t) != 0) {
            red.row_add(t, r, 1);
            fixed = false;
            break;
          }
        }
      }
      if (fixed) break;
    }

    if (d.at(t, t) < 0) red.row_negate(t);
  }
}

}  // namespace

SmithDecomposition smith_normal_form(const SparseIntMatrix& m) {
  Reduction red(m, /*track_bases=*/true);
  reduce(red);

  SmithDecomposition out;
  out.d = red.d;
  out.u = red.u;
  out.u_inv = red.u_inv;
  out.v = red.v;
  out.v_inv = red.v_inv;
  out.det_u = red.det_u;
  out.det_v = red.det_v;
  const int n = std::min(out.d.rows(), out.d.cols());
  for (int i = 0; i < n; ++i) {
    const Int& di = out.d.at(i, i);
    if (di == 0) break;
    out.invariants.push_back(di);
  }
  out.rank = static_cast<int>(out.invariants.size());
  return out;
}

std::vector<Int> smith_invariants(const SparseIntMatrix& m) {
  Reduction red(m, /*track_bases=*/false);
  reduce(red);
  std::vector<Int> inv;
  const int n = std::min(red.d.rows(), red.d.cols());
  for (int i = 0; i < n; ++i) {
    const Int& di = red.d.at(i, i);
    if (di == 0) break;
    inv.push_back(di);
  }
  return inv;
}

std::optional<SparseVector> solve_integer(const SmithDecomposition& s, const SparseVector& rhs) {
  // m x = rhs  <=>  d (v_inv^{-1} x) ... solved as y = u_inv * rhs, t_i = y_i / d_i,
  // x = v_inv * t.
  SparseVector y = s.u_inv.apply(rhs);
  SparseVector t;
  for (const auto& [i, val] : y) {
    if (i < s.rank) {
      const Int& di = s.invariants[i];
      if (val % di != 0) return std::nullopt;
      t[i] = val / di;
    } else {
      return std::nullopt;  // coordinate outside the image
    }
  }
  return s.v_inv.apply(t);
}

std::vector<SparseVector> kernel_basis(const SmithDecomposition& s) {
  std::vector<SparseVector> basis;
  for (int j = s.rank; j < s.v_inv.cols(); ++j) {
    SparseVector col;
    for (int r : s.v_inv.column_support(j)) col[r] = s.v_inv.at(r, j);
    basis.push_back(std::move(col));
  }
  return basis;
}

}  // namespace fpindex
