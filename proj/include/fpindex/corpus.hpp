// Built-in model complexes, carriers and index problems.
//
// Everything here is deterministic; the axiom harness, the acceptance suite
// and the CLI `verify` command all run against these instances.

#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fpindex/carrier.hpp"
#include "fpindex/chain.hpp"
#include "fpindex/complex.hpp"
#include "fpindex/index.hpp"

namespace fpindex::corpus {

// --- model complexes -------------------------------------------------------

ComplexPtr triangle_circle();   // boundary of a triangle
ComplexPtr hexagon_circle();    // cyclic 6-gon, vertices h0..h5
ComplexPtr full_triangle();     // the closed 2-simplex (a disk)
ComplexPtr path_complex(int n); // path with n edges, vertices p0..pn
ComplexPtr sphere2();           // boundary of the 3-simplex
ComplexPtr projective_plane();  // 6-vertex triangulation
ComplexPtr torus7();            // 7-vertex triangulation
ComplexPtr klein9();            // 9-vertex grid triangulation
ComplexPtr annulus_hex();       // hexagonal annulus, retracts onto its core
ComplexPtr cone_over_projective_plane();
ComplexPtr two_triangles();     // disjoint union of two closed triangles

// The core circle of annulus_hex as a subcomplex, plus its retraction vertex map.
Subcomplex annulus_core(const ComplexPtr& annulus);
std::vector<Vertex> annulus_retraction(const ComplexPtr& annulus);

struct NamedComplex {
  std::string name;
  ComplexPtr complex;
};
std::vector<NamedComplex> surface_corpus();  // the homology golden set
std::vector<NamedComplex> all_complexes();   // everything above

// --- generated chain self-maps ----------------------------------------------

struct NamedChainMap {
  std::string name;
  GradedIntegerMap map;
};

// Deterministic battery of integer chain self-maps (sums and compositions of
// simplicial chain maps); used for the Hopf trace checks.
std::vector<NamedChainMap> chain_self_map_battery(unsigned seed, int count);

// --- carriers and index instances ---------------------------------------------

struct NamedCarrier {
  std::string name;
  std::shared_ptr<const AcyclicCarrier> carrier;
};

// Carriers paired with U = K index problems (normalization / choice corpus).
std::vector<NamedCarrier> carrier_corpus();

struct NamedProblem {
  std::string name;
  IndexProblem problem;
};

// Whole-space problems (U = K) for every corpus carrier.
std::vector<NamedProblem> whole_space_problems();

// Problems with proper open sets that pass admissibility.
std::vector<NamedProblem> proper_open_set_problems();

// Doubling-map carrier on the hexagon at levels (1, 0).
IndexProblem hexagon_doubling_problem();

// Axiom harness -----------------------------------------------------------------

struct AxiomCheck {
  std::string instance;
  std::string status;  // "pass", "fail" or "skip"
  std::string note;
  Int lhs = 0, rhs = 0;
};

std::vector<AxiomCheck> verify_additivity();
std::vector<AxiomCheck> verify_homotopy_invariance();
std::vector<AxiomCheck> verify_commutativity();
std::vector<AxiomCheck> verify_normalization(unsigned seed);

}  // namespace fpindex::corpus
