#include "fpindex/chain.hpp"

#include <algorithm>

#include "fpindex/errors.hpp"

namespace fpindex {

namespace {

SparseIntMatrix boundary_or_zero(const ChainComplexData& cc, int d) {
  if (d >= 1 && d <= cc.dim()) return cc.boundary(d);
  const int rows = cc.rank(d - 1);
  const int cols = cc.rank(d);
  return SparseIntMatrix(std::max(rows, 0), std::max(cols, 0));
}

}  // namespace

// --- ChainComplexData ---------------------------------------------------------

ChainComplexData::ChainComplexData(Subcomplex space) : space_(std::move(space)) {
  const SimplicialComplex& parent = *space_.parent();
  const int top = space_.dim();
  boundary_.resize(top + 1 > 0 ? top + 1 : 0);
  if (top >= 0) {
    boundary_[0] = SparseIntMatrix(0, rank(0));
    for (int d = 1; d <= top; ++d) {
      SparseIntMatrix m(rank(d - 1), rank(d));
      const auto& basis = space_.members(d);
      for (size_t j = 0; j < basis.size(); ++j) {
        const std::vector<int> facets = parent.facet_indices(d, basis[j]);
        int sign = 1;
        for (int f : facets) {
          auto local = local_index(d - 1, f);
          if (!local) throw_input("internal: subcomplex not face-closed in chain data");
          m.add_at(*local, static_cast<int>(j), sign);
          sign = -sign;
        }
      }
      boundary_[d] = std::move(m);
    }
  }
  augmentation_ = SparseIntMatrix(1, std::max(rank(0), 0));
  for (int j = 0; j < rank(0); ++j) augmentation_.set(0, j, 1);

  // del o del = 0, and the augmentation kills boundaries.
  for (int d = 2; d <= top; ++d) {
    if (!(boundary_[d - 1] * boundary_[d]).is_zero())
      throw_input("internal: boundary matrices do not compose to zero");
  }
  if (top >= 1 && !(augmentation_ * boundary_[1]).is_zero())
    throw_input("internal: augmentation does not kill boundaries");
}

std::shared_ptr<const ChainComplexData> ChainComplexData::of(Subcomplex space) {
  return std::shared_ptr<const ChainComplexData>(new ChainComplexData(std::move(space)));
}

std::shared_ptr<const ChainComplexData> ChainComplexData::of_complex(ComplexPtr complex) {
  return of(Subcomplex::full(std::move(complex)));
}

const SparseIntMatrix& ChainComplexData::boundary(int d) const {
  if (d < 0 || d >= static_cast<int>(boundary_.size()))
    throw_input("boundary: dimension out of range");
  return boundary_[d];
}

std::optional<int> ChainComplexData::local_index(int d, int parent_index) const {
  const auto& v = space_.members(d);
  auto it = std::lower_bound(v.begin(), v.end(), parent_index);
  if (it == v.end() || *it != parent_index) return std::nullopt;
  return static_cast<int>(it - v.begin());
}

SparseVector ChainComplexData::to_local(int d, const SparseVector& parent_coeffs) const {
  SparseVector out;
  for (const auto& [p, c] : parent_coeffs) {
    auto l = local_index(d, p);
    if (!l) throw_input("chain support leaves the subcomplex");
    out[*l] = c;
  }
  return out;
}

SparseVector ChainComplexData::to_global(int d, const SparseVector& local_coeffs) const {
  SparseVector out;
  for (const auto& [l, c] : local_coeffs) out[parent_index(d, l)] = c;
  return out;
}

// --- GradedIntegerMap -----------------------------------------------------------

const SparseIntMatrix& GradedIntegerMap::mat(int d) const {
  if (d < 0 || d >= static_cast<int>(mats.size())) throw_input("graded map: dimension out of range");
  return mats[d];
}

SparseIntMatrix GradedIntegerMap::mat_or_zero(int d) const {
  if (d >= 0 && d < static_cast<int>(mats.size())) return mats[d];
  const int rows = target ? std::max(target->rank(d + degree), 0) : 0;
  const int cols = source ? std::max(source->rank(d), 0) : 0;
  return SparseIntMatrix(rows, cols);
}

Chain GradedIntegerMap::apply(const Chain& c) const {
  Chain out;
  out.dim = c.dim + degree;
  out.coeffs = mat_or_zero(c.dim).apply(c.coeffs);
  return out;
}

void validate_graded_map(const GradedIntegerMap& f) {
  if (!f.source || !f.target) throw_input("graded map: missing source or target");
  for (size_t d = 0; d < f.mats.size(); ++d) {
    const int expect_rows = std::max(f.target->rank(static_cast<int>(d) + f.degree), 0);
    const int expect_cols = std::max(f.source->rank(static_cast<int>(d)), 0);
    if (f.mats[d].rows() != expect_rows || f.mats[d].cols() != expect_cols)
      throw_input("graded map: matrix shape mismatch at dimension " + std::to_string(d));
  }
}

GradedIntegerMap identity_map(ChainDataPtr cc) {
  GradedIntegerMap f;
  f.source = cc;
  f.target = cc;
  f.degree = 0;
  for (int d = 0; d <= cc->dim(); ++d) f.mats.push_back(SparseIntMatrix::identity(cc->rank(d)));
  return f;
}

GradedIntegerMap zero_map(ChainDataPtr source, ChainDataPtr target, int degree) {
  GradedIntegerMap f;
  f.source = std::move(source);
  f.target = std::move(target);
  f.degree = degree;
  for (int d = 0; d <= f.source->dim(); ++d) {
    f.mats.push_back(
        SparseIntMatrix(std::max(f.target->rank(d + degree), 0), f.source->rank(d)));
  }
  return f;
}

GradedIntegerMap compose(const GradedIntegerMap& f, const GradedIntegerMap& g) {
  if (!g.target->same_basis(*f.source))
    throw_input("graded map composition: inner bases differ");
  GradedIntegerMap out;
  out.source = g.source;
  out.target = f.target;
  out.degree = f.degree + g.degree;
  for (int d = 0; d <= g.source->dim(); ++d) {
    out.mats.push_back(f.mat_or_zero(d + g.degree) * g.mat_or_zero(d));
  }
  return out;
}

namespace {
GradedIntegerMap combine(const GradedIntegerMap& f, const GradedIntegerMap& g, int sign) {
  if (!f.source->same_basis(*g.source) || !f.target->same_basis(*g.target) ||
      f.degree != g.degree)
    throw_input("graded map sum: incompatible maps");
  GradedIntegerMap out;
  out.source = f.source;
  out.target = f.target;
  out.degree = f.degree;
  for (int d = 0; d <= f.source->dim(); ++d) {
    out.mats.push_back(sign > 0 ? f.mat_or_zero(d) + g.mat_or_zero(d)
                                : f.mat_or_zero(d) - g.mat_or_zero(d));
  }
  return out;
}
}  // namespace

GradedIntegerMap map_sum(const GradedIntegerMap& f, const GradedIntegerMap& g) {
  return combine(f, g, +1);
}

GradedIntegerMap map_difference(const GradedIntegerMap& f, const GradedIntegerMap& g) {
  return combine(f, g, -1);
}

GradedIntegerMap map_scaled(const GradedIntegerMap& f, const Int& s) {
  GradedIntegerMap out = f;
  for (auto& m : out.mats) m = m.scaled(s);
  return out;
}

GradedIntegerMap inclusion_map(ChainDataPtr sub, ChainDataPtr whole) {
  if (sub->complex() != whole->complex())
    throw_input("inclusion: subcomplex and complex have different parents");
  GradedIntegerMap f;
  f.source = sub;
  f.target = whole;
  f.degree = 0;
  for (int d = 0; d <= sub->dim(); ++d) {
    SparseIntMatrix m(std::max(whole->rank(d), 0), sub->rank(d));
    for (int j = 0; j < sub->rank(d); ++j) {
      auto w = whole->local_index(d, sub->parent_index(d, j));
      if (!w) throw_input("inclusion: source is not contained in target");
      m.set(*w, j, 1);
    }
    f.mats.push_back(std::move(m));
  }
  return f;
}

GradedIntegerMap projection_onto(ChainDataPtr whole, ChainDataPtr sub) {
  if (sub->complex() != whole->complex())
    throw_input("projection: subcomplex and complex have different parents");
  GradedIntegerMap f;
  f.source = whole;
  f.target = sub;
  f.degree = 0;
  for (int d = 0; d <= whole->dim(); ++d) {
    SparseIntMatrix m(std::max(sub->rank(d), 0), whole->rank(d));
    for (int j = 0; j < sub->rank(d); ++j) {
      auto w = whole->local_index(d, sub->parent_index(d, j));
      if (!w) throw_input("projection: target is not contained in source");
      m.set(j, *w, 1);
    }
    f.mats.push_back(std::move(m));
  }
  return f;
}

namespace {

bool first_nonzero_column(const SparseIntMatrix& m, int* col) {
  int best = -1;
  for (int r = 0; r < m.rows(); ++r) {
    for (const auto& [c, v] : m.row(r)) {
      if (best == -1 || c < best) best = c;
    }
  }
  if (best == -1) return false;
  *col = best;
  return true;
}

}  // namespace

bool is_chain_map(const GradedIntegerMap& f, ChainMapWitness* witness,
                  bool require_augmentation) {
  validate_graded_map(f);
  if (f.degree != 0) throw_input("is_chain_map: map must have degree 0");
  const ChainComplexData& src = *f.source;
  const ChainComplexData& tgt = *f.target;
  for (int d = 1; d <= src.dim(); ++d) {
    SparseIntMatrix lhs = boundary_or_zero(tgt, d) * f.mat_or_zero(d);
    SparseIntMatrix rhs = f.mat_or_zero(d - 1) * src.boundary(d);
    SparseIntMatrix diff = lhs - rhs;
    int col = 0;
    if (first_nonzero_column(diff, &col)) {
      if (witness) {
        witness->dim = d;
        witness->local_index = col;
        witness->description = "boundary square fails at " +
                               src.complex()->simplex_label(d, src.parent_index(d, col));
      }
      return false;
    }
  }
  if (require_augmentation && src.rank(0) > 0) {
    SparseIntMatrix diff = tgt.augmentation() * f.mat_or_zero(0) - src.augmentation();
    int col = 0;
    if (first_nonzero_column(diff, &col)) {
      if (witness) {
        witness->dim = 0;
        witness->local_index = col;
        witness->description = "augmentation not preserved at " +
                               src.complex()->simplex_label(0, src.parent_index(0, col));
      }
      return false;
    }
  }
  return true;
}

bool verify_chain_homotopy(const GradedIntegerMap& f, const GradedIntegerMap& g,
                           const GradedIntegerMap& d, ChainMapWitness* witness) {
  validate_graded_map(f);
  validate_graded_map(g);
  validate_graded_map(d);
  if (f.degree != 0 || g.degree != 0 || d.degree != 1)
    throw_input("verify_chain_homotopy: degree mismatch");
  if (!f.source->same_basis(*g.source) || !f.target->same_basis(*g.target) ||
      !f.source->same_basis(*d.source) || !f.target->same_basis(*d.target))
    throw_input("verify_chain_homotopy: maps live on different bases");
  const ChainComplexData& src = *f.source;
  const ChainComplexData& tgt = *f.target;
  for (int t = 0; t <= src.dim(); ++t) {
    SparseIntMatrix diff = f.mat_or_zero(t) - g.mat_or_zero(t);
    SparseIntMatrix rhs = boundary_or_zero(tgt, t + 1) * d.mat_or_zero(t);
    if (t >= 1) rhs = rhs + d.mat_or_zero(t - 1) * src.boundary(t);
    SparseIntMatrix residue = diff - rhs;
    int col = 0;
    if (first_nonzero_column(residue, &col)) {
      if (witness) {
        witness->dim = t;
        witness->local_index = col;
        witness->description = "homotopy identity fails at " +
                               src.complex()->simplex_label(t, src.parent_index(t, col));
      }
      return false;
    }
  }
  return true;
}

Int lefschetz_number(const GradedIntegerMap& psi) {
  validate_graded_map(psi);
  if (psi.degree != 0) throw_input("lefschetz_number: map must have degree 0");
  if (!psi.source->same_basis(*psi.target))
    throw_input("lefschetz_number: source and target bases differ");
  Int out = 0;
  for (int d = 0; d <= psi.source->dim(); ++d) {
    const Int t = psi.mat_or_zero(d).trace();
    out += (d % 2 == 0) ? t : -t;
  }
  return out;
}

// --- homology ------------------------------------------------------------------

bool HomologyProfile::trivial() const {
  for (const auto& g : groups) {
    if (g.betti != 0 || !g.torsion.empty()) return false;
  }
  return true;
}

namespace {

HomologyProfile profile_from_invariants(const ChainComplexData& cc,
                                        const std::vector<std::vector<Int>>& inv, int rank_a0,
                                        bool reduced) {
  HomologyProfile out;
  out.reduced = reduced;
  for (int d = 0; d <= cc.dim(); ++d) {
    HomologyProfile::Group g;
    g.dim = d;
    const int rank_a = (d == 0) ? rank_a0 : static_cast<int>(inv[d].size());
    const int rank_b = (d + 1 <= cc.dim()) ? static_cast<int>(inv[d + 1].size()) : 0;
    g.betti = cc.rank(d) - rank_a - rank_b;
    if (d + 1 <= cc.dim()) {
      for (const Int& x : inv[d + 1]) {
        if (x > 1) g.torsion.push_back(x);
      }
    }
    out.groups.push_back(std::move(g));
  }
  return out;
}

}  // namespace

HomologyProfile homology(const ChainComplexData& cc, bool reduced) {
  std::vector<std::vector<Int>> inv(cc.dim() + 1 > 0 ? cc.dim() + 1 : 0);
  for (int d = 1; d <= cc.dim(); ++d) inv[d] = smith_invariants(cc.boundary(d));
  const int rank_a0 = reduced ? static_cast<int>(smith_invariants(cc.augmentation()).size()) : 0;
  return profile_from_invariants(cc, inv, rank_a0, reduced);
}

HomologyProfile cohomology(const ChainComplexData& cc) {
  // Coboundaries are the transposed boundaries; the quotient arithmetic is
  // the same. delta^k = boundary(k+1)^T.
  HomologyProfile out;
  out.reduced = false;
  std::vector<std::vector<Int>> inv_t(cc.dim() + 1 > 0 ? cc.dim() + 1 : 0);
  for (int d = 1; d <= cc.dim(); ++d) inv_t[d] = smith_invariants(cc.boundary(d).transpose());
  for (int k = 0; k <= cc.dim(); ++k) {
    HomologyProfile::Group g;
    g.dim = k;
    const int rank_delta_k = (k + 1 <= cc.dim()) ? static_cast<int>(inv_t[k + 1].size()) : 0;
    const int rank_delta_prev = (k >= 1) ? static_cast<int>(inv_t[k].size()) : 0;
    g.betti = cc.rank(k) - rank_delta_k - rank_delta_prev;
    if (k >= 1) {
      for (const Int& x : inv_t[k]) {
        if (x > 1) g.torsion.push_back(x);
      }
    }
    out.groups.push_back(std::move(g));
  }
  return out;
}

bool is_acyclic(const ChainComplexData& cc) {
  if (cc.dim() < 0) return false;  // the empty space is not acyclic
  return homology(cc, /*reduced=*/true).trivial();
}

bool is_rationally_acyclic(const ChainComplexData& cc) {
  if (cc.dim() < 0) return false;
  HomologyProfile p = homology(cc, /*reduced=*/true);
  for (const auto& g : p.groups) {
    if (g.betti != 0) return false;
  }
  return true;
}

UctReport verify_uct(const ChainComplexData& cc) {
  UctReport out;
  HomologyProfile h = homology(cc, /*reduced=*/false);
  HomologyProfile ch = cohomology(cc);
  for (int n = 0; n <= cc.dim(); ++n) {
    UctReport::Item item;
    item.dim = n;
    item.rank_homology = h.groups[n].betti;
    item.rank_cohomology = ch.groups[n].betti;
    item.torsion_homology = h.groups[n].torsion;
    if (n + 1 <= cc.dim()) item.torsion_cohomology_next = ch.groups[n + 1].torsion;
    item.rank_ok = item.rank_homology == item.rank_cohomology;
    item.torsion_ok = item.torsion_homology == item.torsion_cohomology_next;
    out.pass = out.pass && item.rank_ok && item.torsion_ok;
    out.items.push_back(std::move(item));
  }
  return out;
}

// --- homology with generators ----------------------------------------------------

HomologyBasis::HomologyBasis(ChainDataPtr cc, bool reduced) : cc_(std::move(cc)), reduced_(reduced) {
  const int top = cc_->dim();
  for (int d = 0; d <= top; ++d) {
    DimData data;
    SparseIntMatrix a = (d == 0)
                            ? (reduced_ ? cc_->augmentation() : SparseIntMatrix(0, cc_->rank(0)))
                            : cc_->boundary(d);
    SmithDecomposition snf_a = smith_normal_form(a);
    const int n = cc_->rank(d);
    const int z = n - snf_a.rank;
    SparseIntMatrix t(z, n);
    for (int r = 0; r < z; ++r) {
      for (const auto& [c, v] : snf_a.v.row(snf_a.rank + r)) t.set(r, c, v);
    }
    SparseIntMatrix k(n, z);
    for (int j = 0; j < z; ++j) {
      for (int r : snf_a.v_inv.column_support(snf_a.rank + j)) {
        k.set(r, j, snf_a.v_inv.at(r, snf_a.rank + j));
      }
    }
    data.kernel_coords = std::move(t);
    data.kernel_basis = std::move(k);
    SparseIntMatrix b = boundary_or_zero(*cc_, d + 1);
    data.quotient = smith_normal_form(data.kernel_coords * b);
    for (int i = 0; i < data.quotient.rank; ++i) {
      if (data.quotient.invariants[i] > 1) {
        data.torsion.push_back(data.quotient.invariants[i]);
        data.torsion_slots.push_back(i);
      }
    }
    data.free_count = z - data.quotient.rank;
    dims_.push_back(std::move(data));
  }
}

int HomologyBasis::betti(int d) const {
  if (d < 0 || d >= static_cast<int>(dims_.size())) return 0;
  return dims_[d].free_count;
}

const std::vector<Int>& HomologyBasis::torsion(int d) const {
  static const std::vector<Int> kEmpty;
  if (d < 0 || d >= static_cast<int>(dims_.size())) return kEmpty;
  return dims_[d].torsion;
}

Chain HomologyBasis::free_generator(int d, int j) const {
  const DimData& data = dims_.at(d);
  if (j < 0 || j >= data.free_count) throw_input("free_generator: index out of range");
  SparseVector w;
  const int col = data.quotient.rank + j;
  for (int r : data.quotient.u.column_support(col)) w[r] = data.quotient.u.at(r, col);
  Chain out;
  out.dim = d;
  out.coeffs = data.kernel_basis.apply(w);
  return out;
}

Chain HomologyBasis::torsion_generator(int d, int j) const {
  const DimData& data = dims_.at(d);
  if (j < 0 || j >= static_cast<int>(data.torsion_slots.size()))
    throw_input("torsion_generator: index out of range");
  SparseVector w;
  const int col = data.torsion_slots[j];
  for (int r : data.quotient.u.column_support(col)) w[r] = data.quotient.u.at(r, col);
  Chain out;
  out.dim = d;
  out.coeffs = data.kernel_basis.apply(w);
  return out;
}

bool HomologyBasis::ClassCoords::is_zero() const {
  for (const Int& x : torsion) {
    if (x != 0) return false;
  }
  for (const Int& x : free_part) {
    if (x != 0) return false;
  }
  return true;
}

HomologyBasis::ClassCoords HomologyBasis::class_of(const Chain& z) const {
  const DimData& data = dims_.at(z.dim);
  // Precondition: z is a cycle (and augmentation-free in the reduced case).
  SparseIntMatrix a = (z.dim == 0)
                          ? (reduced_ ? cc_->augmentation() : SparseIntMatrix(0, cc_->rank(0)))
                          : cc_->boundary(z.dim);
  if (!a.apply(z.coeffs).empty()) throw_input("class_of: chain is not a cycle");
  SparseVector w = data.kernel_coords.apply(z.coeffs);
  SparseVector s = data.quotient.u_inv.apply(w);
  ClassCoords out;
  for (size_t j = 0; j < data.torsion_slots.size(); ++j) {
    const Int& di = data.torsion[j];
    Int residue = 0;
    auto it = s.find(data.torsion_slots[j]);
    if (it != s.end()) {
      residue = it->second % di;
      if (residue < 0) residue += di;
    }
    out.torsion.push_back(residue);
  }
  const int z_rank = data.kernel_coords.rows();
  for (int i = data.quotient.rank; i < z_rank; ++i) {
    auto it = s.find(i);
    out.free_part.push_back(it == s.end() ? Int(0) : it->second);
  }
  // Entries of s below the quotient rank at trivial invariants (d_i = 1)
  // contribute nothing; entries at torsion slots were reduced above.
  return out;
}

HomologyProfile HomologyBasis::profile() const {
  HomologyProfile out;
  out.reduced = reduced_;
  for (size_t d = 0; d < dims_.size(); ++d) {
    HomologyProfile::Group g;
    g.dim = static_cast<int>(d);
    g.betti = dims_[d].free_count;
    g.torsion = dims_[d].torsion;
    out.groups.push_back(std::move(g));
  }
  return out;
}

InducedHomologyMap induced_map_on_homology(const GradedIntegerMap& f, const HomologyBasis& basis) {
  ChainMapWitness w;
  if (!f.source->same_basis(*f.target))
    throw_input("induced_map_on_homology: map is not an endomorphism");
  if (!basis.data()->same_basis(*f.source))
    throw_input("induced_map_on_homology: basis does not match the map");
  if (!is_chain_map(f, &w, /*require_augmentation=*/false))
    throw_input("induced_map_on_homology: not a chain map (" + w.description + ")");

  InducedHomologyMap out;
  for (int d = 0; d <= f.source->dim(); ++d) {
    const int nb = basis.betti(d);
    const int nt = static_cast<int>(basis.torsion(d).size());
    SparseIntMatrix free_m(nb, nb);
    for (int j = 0; j < nb; ++j) {
      Chain image = f.apply(basis.free_generator(d, j));
      auto cls = basis.class_of(image);
      for (int i = 0; i < nb; ++i) free_m.set(i, j, cls.free_part[i]);
    }
    SparseIntMatrix tor_m(nt, nt);
    for (int j = 0; j < nt; ++j) {
      Chain image = f.apply(basis.torsion_generator(d, j));
      auto cls = basis.class_of(image);
      for (int i = 0; i < nt; ++i) tor_m.set(i, j, cls.torsion[i]);
    }
    const Int t = free_m.trace();
    out.lefschetz += (d % 2 == 0) ? t : -t;
    out.free_action.push_back(std::move(free_m));
    out.torsion_action.push_back(std::move(tor_m));
  }
  return out;
}

InducedHomologyMap induced_map_on_homology(const GradedIntegerMap& f) {
  HomologyBasis basis(f.source, /*reduced=*/false);
  return induced_map_on_homology(f, basis);
}

// --- boundary equations -----------------------------------------------------------

BoundarySolver::BoundarySolver(Subcomplex within) : cc_(ChainComplexData::of(std::move(within))) {
  smith_.resize(cc_->dim() + 1 > 0 ? cc_->dim() + 1 : 0);
}

const SmithDecomposition& BoundarySolver::smith_for(int d) const {
  auto& slot = smith_[d];
  if (!slot) slot = smith_normal_form(cc_->boundary(d + 1));
  return *slot;
}

const HomologyBasis& BoundarySolver::basis() const {
  if (!reduced_basis_) reduced_basis_.emplace(cc_, /*reduced=*/true);
  return *reduced_basis_;
}

SolveBoundaryResult BoundarySolver::fill(const Chain& z) const {
  SolveBoundaryResult out;
  if (z.coeffs.empty()) {
    out.chain = Chain{z.dim + 1, {}};
    return out;
  }
  if (z.dim < 0 || z.dim > cc_->dim()) throw_input("solve_boundary: chain dimension out of range");
  Chain local{z.dim, cc_->to_local(z.dim, z.coeffs)};
  if (z.dim > 0 && !cc_->boundary(z.dim).apply(local.coeffs).empty())
    throw_input("solve_boundary: chain is not a cycle");

  if (z.dim + 1 > cc_->dim()) {
    // No cells to fill with; the chain itself is the obstruction.
    out.obstruction = BoundaryObstruction{z.dim, basis().class_of(local)};
    return out;
  }
  auto sol = solve_integer(smith_for(z.dim), local.coeffs);
  if (sol) {
    out.chain = Chain{z.dim + 1, cc_->to_global(z.dim + 1, *sol)};
    return out;
  }
  out.obstruction = BoundaryObstruction{z.dim, basis().class_of(local)};
  return out;
}

std::optional<Chain> BoundarySolver::kernel_element(int chain_dim) const {
  if (chain_dim < 1 || chain_dim > cc_->dim()) return std::nullopt;
  auto basis = kernel_basis(smith_for(chain_dim - 1));
  if (basis.empty()) return std::nullopt;
  return Chain{chain_dim, cc_->to_global(chain_dim, basis.front())};
}

SolveBoundaryResult solve_boundary(const Chain& z, const Subcomplex& within) {
  return BoundarySolver(within).fill(z);
}

// --- structure maps -----------------------------------------------------------------

GradedIntegerMap subdivision_step_map(const SubdivisionRecord& rec, ChainDataPtr prev_cc,
                                      ChainDataPtr next_cc) {
  if (rec.level() == 0) throw_input("subdivision_step_map: record has no previous level");
  if (prev_cc->complex() != rec.previous()->complex() || next_cc->complex() != rec.complex())
    throw_input("subdivision_step_map: chain data does not match the record");
  const SimplicialComplex& prev = *prev_cc->complex();
  const SimplicialComplex& next = *next_cc->complex();

  GradedIntegerMap sd;
  sd.source = prev_cc;
  sd.target = next_cc;
  sd.degree = 0;

  for (int d = 0; d <= prev.dim(); ++d) {
    SparseIntMatrix m(next.num_simplices(d), prev.num_simplices(d));
    if (d == 0) {
      for (int i = 0; i < prev.num_simplices(0); ++i) {
        Simplex v{rec.barycenter_vertex(0, i)};
        m.set(*next.find(v), i, 1);
      }
    } else {
      const SparseIntMatrix& prev_level = sd.mats[d - 1];
      const int cone_sign = (d % 2 == 0) ? 1 : -1;
      for (int i = 0; i < prev.num_simplices(d); ++i) {
        const Vertex apex = rec.barycenter_vertex(d, i);
        // sd(sigma) = apex * sd(boundary sigma), as chains of the new level.
        SparseVector z;
        int sign = 1;
        for (int f : prev.facet_indices(d, i)) {
          // column f of the (d-1)-matrix, with the face sign
          for (int r : prev_level.column_support(f)) {
            Int& slot = z[r];
            slot += Int(sign) * prev_level.at(r, f);
            if (slot == 0) z.erase(r);
          }
          sign = -sign;
        }
        for (const auto& [t_idx, c] : z) {
          Simplex tuple = next.simplex(d - 1, t_idx);
          tuple.push_back(apex);  // the apex has the largest order key
          auto idx = next.find(tuple);
          if (!idx) throw_input("internal: cone simplex missing from the subdivision");
          m.add_at(*idx, i, c * cone_sign);
        }
      }
    }
    sd.mats.push_back(std::move(m));
  }
  return sd;
}

GradedIntegerMap simplicial_chain_map(const std::vector<Vertex>& vertex_map, ChainDataPtr source,
                                      ChainDataPtr target) {
  const SimplicialComplex& src = *source->complex();
  const SimplicialComplex& tgt = *target->complex();
  if (static_cast<int>(vertex_map.size()) != src.vertex_count())
    throw_input("simplicial map: vertex map has the wrong length");
  for (Vertex w : vertex_map) {
    if (w < 0 || w >= tgt.vertex_count()) throw_input("simplicial map: image vertex out of range");
  }
  GradedIntegerMap f;
  f.source = source;
  f.target = target;
  f.degree = 0;
  for (int d = 0; d <= source->dim(); ++d) {
    SparseIntMatrix m(std::max(target->rank(d), 0), source->rank(d));
    for (int j = 0; j < source->rank(d); ++j) {
      const Simplex& s = src.simplex(d, source->parent_index(d, j));
      Simplex image;
      for (Vertex v : s) image.push_back(vertex_map[v]);
      // The distinct image vertices must span a simplex of the target.
      Simplex distinct = image;
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      auto check = tgt.find(distinct);
      if (!check)
        throw_input("vertex map is not simplicial: image of " + src.simplex_label(d, source->parent_index(d, j)) +
                    " is not a simplex");
      const int sign = normalize_simplex(image);
      if (sign == 0) continue;  // collapsed simplex
      auto parent_idx = tgt.find(image);
      auto local = target->local_index(d, *parent_idx);
      if (!local) throw_input("simplicial map: image leaves the target subcomplex");
      m.set(*local, j, sign);
    }
    f.mats.push_back(std::move(m));
  }
  return f;
}

}  // namespace fpindex
