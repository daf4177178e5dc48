// Acyclic carriers — monotone assignments of nonempty acyclic subcomplexes —
// and the chain approximations they carry: construction by skeletal
// induction, carried homotopies between different choice rules, composition,
// and prism homotopies.

#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "fpindex/chain.hpp"
#include "fpindex/complex.hpp"

namespace fpindex {

// true iff every member of `small` is a member of `big` (same parent).
bool subcomplex_subset(const Subcomplex& small, const Subcomplex& big);

class AcyclicCarrier {
 public:
  // `assignment` receives parent-complex refs of the source space's members.
  // Monotonicity and nonemptiness are validated here; acyclicity is checked
  // separately (check_acyclic), since it is the expensive part.
  AcyclicCarrier(Subcomplex source_space, ComplexPtr target,
                 const std::function<Subcomplex(SimplexRef)>& assignment);

  const Subcomplex& source_space() const { return source_space_; }
  const ComplexPtr& source_complex() const { return source_space_.parent(); }
  const ComplexPtr& target() const { return target_; }

  const Subcomplex& value(int d, int local) const { return *values_[d][local]; }
  const std::shared_ptr<const Subcomplex>& value_ptr(int d, int local) const {
    return values_[d][local];
  }
  // Value of a parent-complex simplex (must belong to the source space).
  const Subcomplex& value_of(SimplexRef parent_ref) const;

  int source_dim() const { return source_space_.dim(); }
  SimplexRef source_ref(int d, int local) const {
    return {d, source_space_.members(d)[local]};
  }

 private:
  Subcomplex source_space_;
  ComplexPtr target_;
  std::vector<std::vector<std::shared_ptr<const Subcomplex>>> values_;  // deduped
};

using CarrierPtr = std::shared_ptr<const AcyclicCarrier>;

// Carrier of a simplicial map: sends each simplex to the closure of its
// image. `vertex_map` is indexed by source-complex vertices.
CarrierPtr carrier_of_simplicial_map(Subcomplex source_space, ComplexPtr target,
                                     const std::vector<Vertex>& vertex_map);

// Constant carrier: every simplex goes to the same subcomplex.
CarrierPtr constant_carrier(Subcomplex source_space, ComplexPtr target, Subcomplex value);

// --- acyclicity --------------------------------------------------------------

struct AcyclicityReport {
  struct Failure {
    SimplexRef simplex;       // source simplex (parent ref)
    HomologyProfile profile;  // reduced homology of the offending value
  };
  std::vector<Failure> failures;
  int checked = 0;
  bool all_acyclic = true;
};

// rational = true checks only the vanishing of the reduced Betti numbers
// (acyclicity over the rationals); torsion is then invisible.
AcyclicityReport check_acyclic(const AcyclicCarrier& carrier, bool rational = false);

// --- chain approximations -------------------------------------------------------

struct ApproxOptions {
  enum class VertexRule { kLeast, kGreatest };
  VertexRule vertex_rule = VertexRule::kLeast;
  // Adds the first kernel element of the restricted boundary to every
  // filling; a second deterministic choice rule.
  bool kernel_tweak = false;
};

struct ChainApproximation {
  CarrierPtr carrier;
  GradedIntegerMap map;  // C(source space) -> C(target), degree 0
  int level_source = 0, level_target = 0;
};

struct FillObstruction {
  SimplexRef simplex;  // source simplex whose filling failed
  BoundaryObstruction obstruction;
};

struct BuildResult {
  std::optional<ChainApproximation> approximation;
  std::optional<FillObstruction> failure;
  bool ok() const { return approximation.has_value(); }
};

// Skeletal induction: vertices go to a chosen vertex of their value, higher
// simplices are filled inside their value by exact boundary solving.
BuildResult build_chain_approximation(CarrierPtr carrier, ApproxOptions options = {});
ChainApproximation build_chain_approximation_or_throw(CarrierPtr carrier,
                                                      ApproxOptions options = {});

struct CarriedWitness {
  SimplexRef simplex;     // source simplex
  SimplexRef target_ref;  // offending target simplex outside the value
};

bool is_carried(const GradedIntegerMap& f, const AcyclicCarrier& carrier,
                CarriedWitness* witness = nullptr);

struct ApproximationReport {
  bool chain_map = false;  // includes augmentation preservation
  bool carried = false;
  ChainMapWitness chain_witness;
  std::optional<CarriedWitness> carried_witness;
  bool ok() const { return chain_map && carried; }
};

ApproximationReport verify_approximation(const ChainApproximation& a);

// --- homotopies -------------------------------------------------------------------

struct HomotopyResult {
  std::optional<GradedIntegerMap> homotopy;  // degree +1; a1 - a2 = dD + Dd
  std::optional<FillObstruction> failure;
  bool ok() const { return homotopy.has_value(); }
};

// Carried homotopy between two approximations over the same carrier.
HomotopyResult homotopy_between(const ChainApproximation& a1, const ChainApproximation& a2);

// --- composition ------------------------------------------------------------------

struct CompositionResult {
  ChainApproximation approximation;  // of the composite
  CarrierPtr composite_carrier;      // value = union of outer values over the inner value
  // The composite of acyclic carriers need not have acyclic values; those are
  // flagged here, never silently dropped.
  std::vector<SimplexRef> non_acyclic_values;
  bool composite_values_acyclic() const { return non_acyclic_values.empty(); }
};

// outer after inner; inner.target must equal outer's source complex, and
// outer must be defined on all of it.
CompositionResult compose_approximations(const ChainApproximation& outer,
                                         const ChainApproximation& inner);

// Same, but the middle space is refined first: `middle_steps` holds the
// subdivision records leading from inner.target (level of the first record's
// previous) up to outer's source complex.
CompositionResult compose_approximations(const ChainApproximation& outer,
                                         const ChainApproximation& inner,
                                         const std::vector<SubdivisionPtr>& middle_steps);

// --- prisms -----------------------------------------------------------------------

struct PrismData {
  ComplexPtr base;
  ComplexPtr prism;                 // base x I, staircase triangulation
  std::vector<Vertex> bottom, top;  // base vertex -> prism vertex
  ChainDataPtr base_cc, prism_cc;
  GradedIntegerMap bottom_inclusion, top_inclusion;  // C(base) -> C(prism)
  GradedIntegerMap prism_operator;                   // degree +1
};

PrismData build_prism(ComplexPtr base);

// Reference of the bottom/top copy of a base simplex inside the prism.
SimplexRef prism_bottom_ref(const PrismData& p, SimplexRef base_ref);
SimplexRef prism_top_ref(const PrismData& p, SimplexRef base_ref);

struct PrismHomotopyResult {
  ChainApproximation bottom, top;            // canonical approximations of c1, c2
  std::optional<GradedIntegerMap> homotopy;  // bottom - top = dD + Dd, carried by H
  CarrierPtr homotopy_carrier;               // sigma -> union of H over the prism of sigma
  std::optional<FillObstruction> failure;
  bool ok() const { return homotopy.has_value(); }
};

// c1, c2 must be defined on the full base complex; h is a carrier on the full
// prism complex restricting to c1 at the bottom and c2 at the top.
PrismHomotopyResult prism_homotopy(CarrierPtr c1, CarrierPtr c2, CarrierPtr h,
                                   const PrismData& prism, ApproxOptions options = {});

}  // namespace fpindex
