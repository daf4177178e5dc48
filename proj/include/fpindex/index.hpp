// The integer fixed point index of an acyclic carrier on an open polyhedral
// set: admissibility, the graded endomorphism psi = p(U,k) o phi(l,k) o
// b(k,l), its Lefschetz number, stability under refinement, extension to
// star-described open sets, and retraction (domination) data.

#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "fpindex/carrier.hpp"
#include "fpindex/chain.hpp"
#include "fpindex/complex.hpp"

namespace fpindex {

// Lazily grown tower of barycentric subdivisions over one base complex.
class SubdivisionTower {
 public:
  explicit SubdivisionTower(ComplexPtr base);
  const SubdivisionPtr& at(int level);
  int built_levels() const { return static_cast<int>(records_.size()) - 1; }
  const ComplexPtr& base() const { return records_[0]->complex(); }

  // Chain data of the full complex at a level (cached).
  const ChainDataPtr& chain_data(int level);
  // Carrier projection of a simplex from a finer to a coarser level.
  SimplexRef carrier_ref(int from_level, int to_level, SimplexRef ref);
  // Subdivision of a subcomplex from a coarser to a finer level.
  Subcomplex subdivided_to(int from_level, int to_level, const Subcomplex& sub);

 private:
  std::vector<SubdivisionPtr> records_;
  std::vector<ChainDataPtr> chain_data_;
};

using TowerPtr = std::shared_ptr<SubdivisionTower>;

// b(k, l): the iterated barycentric subdivision operator C(tau^k) -> C(tau^l).
GradedIntegerMap subdivision_chain_map(SubdivisionTower& tower, int k, int l);

// p(U, k): basis simplices inside the closure map to themselves, everything
// else to zero. A graded homomorphism, not a chain map.
GradedIntegerMap projection_map(ChainDataPtr whole, ChainDataPtr restricted);

struct IndexProblem {
  TowerPtr tower;
  int u_level = 0;        // k: level of U and of the carrier's target
  int carrier_level = 0;  // l >= k: level of the carrier's source
  OpenPolyhedralSet u;    // at tau^k
  CarrierPtr carrier;     // source = tau^l | closure(U), target = tau^k complex
  ApproxOptions options;
  // Supplied approximations are accepted but re-verified before use.
  std::optional<ChainApproximation> approximation;
};

// Validates levels, supports and shapes; builds nothing yet.
IndexProblem make_index_problem(TowerPtr tower, int u_level, OpenPolyhedralSet u,
                                int carrier_level, CarrierPtr carrier, ApproxOptions options = {});

// Convenience: U = K (whole space), carrier on the full complex.
IndexProblem whole_space_problem(TowerPtr tower, int u_level, int carrier_level,
                                 CarrierPtr carrier, ApproxOptions options = {});

// One-level canonical refinement of a carrier: the source space is
// subdivided, the values are subdivided, and the assignment factors through
// the carrier projection of the subdivision.
CarrierPtr refine_carrier(SubdivisionTower& tower, const CarrierPtr& carrier, int source_level,
                          int target_level);

struct AdmissibilityReport {
  bool admissible = false;
  // Source simplices touching the boundary whose closed star meets their
  // carrier value.
  std::vector<SimplexRef> suspicious;
};

AdmissibilityReport check_admissible(IndexProblem& p);

struct IndexResult {
  Int value = 0;
  int level_k = 0, level_l = 0;
  std::vector<Int> traces;  // per dimension
  AdmissibilityReport admissibility;
};

// Refuses (kInadmissible) when suspicious simplices remain; builds or
// verifies the approximation, assembles psi and takes its Lefschetz number.
IndexResult fixed_point_index(IndexProblem& p);

// The graded endomorphism psi itself (admissibility enforced, approximation
// built on demand). For U = K this is a chain map and the normalization
// cross-route runs through its induced action on homology.
GradedIntegerMap index_endomorphism(IndexProblem& p);

// The same problem one level finer: U and the carrier values subdivided, the
// carrier source refined through the carrier projection.
IndexProblem refine_problem(const IndexProblem& p);

std::pair<IndexResult, IndexResult> index_stability(IndexProblem& p);

// --- general open sets ------------------------------------------------------------

// V given as a union of open vertex stars at level k (vertices of tau^k).
// Searches for a polyhedral inner approximation U with closure(U) inside V
// and no potential fixed points in V minus U, refining up to `level_cap`
// extra levels; computes the index there.
struct GeneralOpenSetResult {
  IndexResult result;
  int chosen_level = 0;      // level of the inner approximation
  int refinements_used = 0;  // how many times the problem was refined
};

GeneralOpenSetResult index_on_general_open_set(TowerPtr tower, int v_level,
                                               const std::vector<Vertex>& star_vertices,
                                               int carrier_level, CarrierPtr carrier,
                                               int level_cap, ApproxOptions options = {});

// --- domination (retracts) ----------------------------------------------------------

struct DominationData {
  ComplexPtr ambient;            // K
  Subcomplex retract;            // X, a subcomplex of K
  int level = 0;                 // m: the retraction is defined on tau^m(K)
  std::vector<Vertex> retraction;  // vertex map tau^m(K) -> X's vertices (in K)
};

// r o s = id on X, exactly at level 0; at higher levels the star condition
// r(w) in carrier(w) is required (a simplicial approximation of the
// identity). Throws on violation.
void validate_domination(SubdivisionTower& tower, const DominationData& d);

// Index of a carrier F on X with U open in X, computed on the ambient
// complex via s o F o r over the preimage of U. When X is polyhedral the
// direct index exists too; callers cross-check the two routes.
IndexResult index_via_domination(TowerPtr tower, const DominationData& d, CarrierPtr f_on_x,
                                 const OpenPolyhedralSet& u_in_x, ApproxOptions options = {});

}  // namespace fpindex
