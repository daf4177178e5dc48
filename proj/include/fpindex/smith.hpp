// Smith normal form over the integers.
//
// Reduction is by elementary row/column operations with a deterministic
// pivot rule: smallest absolute value in the working submatrix, ties broken
// by (row, col). The decomposition keeps both the unimodular factors and
// their inverses so that integer linear systems can be solved exactly.

#pragma once

#include <optional>
#include <vector>

#include "fpindex/matrix.hpp"

namespace fpindex {

struct SmithDecomposition {
  // m = u * d * v, with u, v unimodular and d diagonal, d_1 | d_2 | ...
  SparseIntMatrix u, d, v;
  // u_inv * m * v_inv = d
  SparseIntMatrix u_inv, v_inv;
  std::vector<Int> invariants;  // positive diagonal entries
  int rank = 0;
  int det_u = 1;   // tracked through the elementary operations
  int det_v = 1;
};

SmithDecomposition smith_normal_form(const SparseIntMatrix& m);

// Invariant factors only; skips the change-of-basis bookkeeping.
std::vector<Int> smith_invariants(const SparseIntMatrix& m);

inline int smith_rank(const SparseIntMatrix& m) {
  return static_cast<int>(smith_invariants(m).size());
}

// Solves m * x = rhs over the integers. Returns nullopt when no integer
// solution exists.
std::optional<SparseVector> solve_integer(const SmithDecomposition& s, const SparseVector& rhs);

// Columns rank..cols-1 of v_inv span the kernel of m.
std::vector<SparseVector> kernel_basis(const SmithDecomposition& s);

}  // namespace fpindex
