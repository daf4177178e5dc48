// Integer chain complexes, graded maps, Smith-normal-form homology,
// boundary-equation solving and Lefschetz numbers.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fpindex/complex.hpp"
#include "fpindex/matrix.hpp"
#include "fpindex/smith.hpp"

namespace fpindex {

// A chain of fixed dimension; coefficients are indexed by the local basis of
// some ChainComplexData (which one is clear from context).
struct Chain {
  int dim = 0;
  SparseVector coeffs;
  bool is_zero() const { return coeffs.empty(); }
};

// Chain groups of a (sub)complex, with boundary matrices in the canonical
// basis (simplices in the parent's lexicographic order) and the augmentation
// row on degree zero. The composite ∂∘∂ = 0 is asserted at construction.
class ChainComplexData {
 public:
  static std::shared_ptr<const ChainComplexData> of(Subcomplex space);
  static std::shared_ptr<const ChainComplexData> of_complex(ComplexPtr complex);

  const Subcomplex& space() const { return space_; }
  const ComplexPtr& complex() const { return space_.parent(); }
  int dim() const { return space_.dim(); }
  int rank(int d) const { return space_.num_members(d); }

  // boundary(d): C_d -> C_{d-1}; for d = 0 a 0-row matrix.
  const SparseIntMatrix& boundary(int d) const;
  const SparseIntMatrix& augmentation() const { return augmentation_; }

  // Local basis <-> parent complex indices.
  int parent_index(int d, int local) const { return space_.members(d)[local]; }
  std::optional<int> local_index(int d, int parent_index) const;
  SparseVector to_local(int d, const SparseVector& parent_coeffs) const;
  SparseVector to_global(int d, const SparseVector& local_coeffs) const;

  bool same_basis(const ChainComplexData& other) const { return space_ == other.space_; }

 private:
  explicit ChainComplexData(Subcomplex space);
  Subcomplex space_;
  std::vector<SparseIntMatrix> boundary_;  // index d = 0..dim
  SparseIntMatrix augmentation_;           // 1 x rank(0)
};

using ChainDataPtr = std::shared_ptr<const ChainComplexData>;

// Degree-preserving (or degree +1) family of integer matrices between chain
// groups: chain maps, projections, subdivision operators, homotopies.
struct GradedIntegerMap {
  ChainDataPtr source, target;
  int degree = 0;
  std::vector<SparseIntMatrix> mats;  // index by source dim d; shape rank_tgt(d+degree) x rank_src(d)

  const SparseIntMatrix& mat(int d) const;
  SparseIntMatrix mat_or_zero(int d) const;  // zero-shaped outside the stored range
  Chain apply(const Chain& c) const;
};

// Validates shapes per the degree convention; throws a shape error otherwise.
void validate_graded_map(const GradedIntegerMap& f);

GradedIntegerMap identity_map(ChainDataPtr cc);
GradedIntegerMap zero_map(ChainDataPtr source, ChainDataPtr target, int degree);
GradedIntegerMap compose(const GradedIntegerMap& f, const GradedIntegerMap& g);  // f after g
GradedIntegerMap map_sum(const GradedIntegerMap& f, const GradedIntegerMap& g);
GradedIntegerMap map_difference(const GradedIntegerMap& f, const GradedIntegerMap& g);
GradedIntegerMap map_scaled(const GradedIntegerMap& f, const Int& s);

// Inclusion C(sub) -> C(whole) and projection C(whole) -> C(sub) for a
// subcomplex of the same parent complex.
GradedIntegerMap inclusion_map(ChainDataPtr sub, ChainDataPtr whole);
GradedIntegerMap projection_onto(ChainDataPtr whole, ChainDataPtr sub);

struct ChainMapWitness {
  int dim = -1;
  int local_index = -1;     // failing basis simplex in the source
  std::string description;  // human-readable
};

// require_augmentation = false accepts any boundary-commuting map (integer
// multiples, differences); approximations always demand the augmentation.
bool is_chain_map(const GradedIntegerMap& f, ChainMapWitness* witness = nullptr,
                  bool require_augmentation = true);
bool verify_chain_homotopy(const GradedIntegerMap& f, const GradedIntegerMap& g,
                           const GradedIntegerMap& d, ChainMapWitness* witness = nullptr);

Int lefschetz_number(const GradedIntegerMap& psi);

// --- homology ---------------------------------------------------------------

struct HomologyProfile {
  struct Group {
    int dim = 0;
    Int betti = 0;
    std::vector<Int> torsion;  // d_i >= 2, d_i | d_{i+1}
  };
  std::vector<Group> groups;
  bool reduced = false;

  bool trivial() const;  // all groups zero
};

HomologyProfile homology(const ChainComplexData& cc, bool reduced = false);
HomologyProfile cohomology(const ChainComplexData& cc);

bool is_acyclic(const ChainComplexData& cc);              // reduced H_* = 0 over Z
bool is_rationally_acyclic(const ChainComplexData& cc);   // reduced Betti numbers vanish

struct UctReport {
  struct Item {
    int dim = 0;
    Int rank_homology = 0, rank_cohomology = 0;
    std::vector<Int> torsion_homology, torsion_cohomology_next;
    bool rank_ok = false, torsion_ok = false;
  };
  std::vector<Item> items;
  bool pass = true;
};

UctReport verify_uct(const ChainComplexData& cc);

// Homology with explicit generators; supports expressing the class of an
// arbitrary cycle in the chosen (deterministic) basis.
class HomologyBasis {
 public:
  HomologyBasis(ChainDataPtr cc, bool reduced);

  struct ClassCoords {
    std::vector<Int> torsion;  // residues mod the torsion invariants
    std::vector<Int> free_part;
    bool is_zero() const;
  };

  int betti(int d) const;
  const std::vector<Int>& torsion(int d) const;
  Chain free_generator(int d, int j) const;
  Chain torsion_generator(int d, int j) const;
  // z must be a cycle (boundary(d)z = 0; augmentation too when reduced).
  ClassCoords class_of(const Chain& z) const;
  HomologyProfile profile() const;
  const ChainDataPtr& data() const { return cc_; }

 private:
  struct DimData {
    SparseIntMatrix kernel_coords;  // T: z x n, rows rank.. of V_A
    SparseIntMatrix kernel_basis;   // K: n x z, cols rank.. of V_A^{-1}
    SmithDecomposition quotient;    // SNF of T * boundary(d+1)
    std::vector<Int> torsion;       // invariants >= 2
    std::vector<int> torsion_slots; // their positions among the invariants
    int free_count = 0;
  };
  ChainDataPtr cc_;
  bool reduced_;
  std::vector<DimData> dims_;
};

// Action of a chain self-map on homology; the Lefschetz number uses the free
// part only (traces over the torsion-free quotient).
struct InducedHomologyMap {
  std::vector<SparseIntMatrix> free_action;
  std::vector<SparseIntMatrix> torsion_action;  // entries reduced mod the invariant
  Int lefschetz = 0;
};

InducedHomologyMap induced_map_on_homology(const GradedIntegerMap& f, const HomologyBasis& basis);
InducedHomologyMap induced_map_on_homology(const GradedIntegerMap& f);

// --- boundary equations -------------------------------------------------------

struct BoundaryObstruction {
  int dim = 0;
  HomologyBasis::ClassCoords cls;  // nonzero reduced homology class of z
};

struct SolveBoundaryResult {
  std::optional<Chain> chain;  // dim z.dim + 1, parent-global coefficients
  std::optional<BoundaryObstruction> obstruction;
  bool ok() const { return chain.has_value(); }
};

// Solves boundary equations repeatedly inside one subcomplex; caches the
// Smith decompositions per dimension.
class BoundarySolver {
 public:
  explicit BoundarySolver(Subcomplex within);

  // z has parent-global coefficients supported in the subcomplex.
  SolveBoundaryResult fill(const Chain& z) const;
  // First kernel basis element of the boundary out of `chain_dim`; fillings
  // in that dimension stay valid when it is added. nullopt when the kernel
  // is trivial.
  std::optional<Chain> kernel_element(int chain_dim) const;
  const ChainDataPtr& data() const { return cc_; }

 private:
  ChainDataPtr cc_;
  mutable std::vector<std::optional<SmithDecomposition>> smith_;  // of boundary(d+1)
  mutable std::optional<HomologyBasis> reduced_basis_;            // for certificates
  const SmithDecomposition& smith_for(int d) const;
  const HomologyBasis& basis() const;
};

SolveBoundaryResult solve_boundary(const Chain& z, const Subcomplex& within);

// --- structure maps -----------------------------------------------------------

// One-level barycentric subdivision operator C(prev) -> C(rec.complex());
// a chain map (checked in tests, not here).
GradedIntegerMap subdivision_step_map(const SubdivisionRecord& rec, ChainDataPtr prev_cc,
                                      ChainDataPtr next_cc);

// Chain map of a simplicial vertex map; throws when the vertex map is not
// simplicial. Simplices with repeated image vertices map to zero.
GradedIntegerMap simplicial_chain_map(const std::vector<Vertex>& vertex_map, ChainDataPtr source,
                                      ChainDataPtr target);

}  // namespace fpindex
