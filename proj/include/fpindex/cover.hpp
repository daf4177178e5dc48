// Finite open covers by unions of vertex stars, their nerves, and refinement
// projections between nerves.

#pragma once

#include <string>
#include <vector>

#include "fpindex/chain.hpp"
#include "fpindex/complex.hpp"

namespace fpindex {

struct FiniteCover {
  SubdivisionPtr space;  // covers space->complex()
  struct Element {
    std::string name;
    std::vector<Vertex> star_vertices;    // the element is the union of their open stars
    std::vector<std::vector<int>> cells;  // covered simplices, per dimension
  };
  std::vector<Element> elements;
};

// Validates that the elements are nonempty and the union covers every
// simplex.
FiniteCover make_cover(SubdivisionPtr space,
                       std::vector<std::pair<std::string, std::vector<Vertex>>> elements);

// One element per vertex: the open-star cover of the subdivision level.
FiniteCover star_cover(SubdivisionPtr rec);

struct NerveComplex {
  FiniteCover cover;
  ComplexPtr complex;  // vertices = cover elements, in element order
};

// Elements span a simplex exactly when their cell sets share a simplex. For
// star covers the nerve reproduces the subdivision level itself.
NerveComplex nerve(FiniteCover cover);

struct RefinementProjection {
  std::vector<int> element_map;  // fine element -> first containing coarse element
  NerveComplex fine_nerve, coarse_nerve;
  GradedIntegerMap chain_map;  // C(N(fine)) -> C(N(coarse))
};

// Requires every fine element to be contained in some coarse element; throws
// a not-a-refinement error naming the witness element otherwise. The covers
// may live at different levels of the same subdivision chain.
RefinementProjection refinement_projection(const FiniteCover& fine, const FiniteCover& coarse);

struct SupportResult {
  std::vector<int> elements;             // indices of contributing elements
  std::vector<std::vector<int>> cells;   // union of their cells
};

// Union of the cover elements over the simplices with nonzero coefficient.
SupportResult support(const NerveComplex& nerve, const Chain& chain);

}  // namespace fpindex
