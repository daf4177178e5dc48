// File formats and deterministic JSON serialization for the CLI.
//
// Text formats:
//   complex:    one maximal simplex per line, vertices whitespace-separated
//   open set:   one simplex per line (verbatim; must be face-closed)
//   cover:      "name: v1 v2 v3" per line
//   vertex map: "v -> w" per line
//   carrier:    "v1 v2 -> w1 w2, w3 w4" per line (value generators)
//   bundle:     directive lines (complex/open-set/u-level/carrier-level/
//               carrier/space)
//   retraction: directives complex/level/x plus "r from -> to" lines
// '#' starts a comment anywhere; blank lines are ignored.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fpindex/carrier.hpp"
#include "fpindex/complex.hpp"
#include "fpindex/corpus.hpp"
#include "fpindex/cover.hpp"
#include "fpindex/index.hpp"

namespace fpindex::io {

ComplexPtr load_complex(const std::string& path);
std::string complex_to_text(const SimplicialComplex& cx);  // maximal simplices

// Verbatim simplex list resolved against an existing complex.
std::vector<std::vector<int>> load_simplex_list(const std::string& path,
                                                const SimplicialComplex& cx);

FiniteCover load_cover(const std::string& path, SubdivisionPtr space);

std::vector<Vertex> load_vertex_map(const std::string& path, const SimplicialComplex& src,
                                    const SimplicialComplex& dst);

CarrierPtr load_carrier(const std::string& path, Subcomplex source_space, ComplexPtr target,
                        bool monotone_complete);

struct Bundle {
  std::string directory;
  std::string complex_path;
  std::optional<std::string> open_set_path;
  int u_level = 0;
  int carrier_level = 0;
  struct Factor {
    std::string carrier_path;
    std::optional<std::string> space_path;  // intermediate target; absent = ambient
  };
  std::vector<Factor> factors;  // applied first to last
};

Bundle load_bundle(const std::string& path);

struct LoadedProblem {
  TowerPtr tower;
  IndexProblem problem;
  std::vector<SimplexRef> non_acyclic_composite_values;  // flagged by composition
};

LoadedProblem build_problem(const Bundle& bundle, ApproxOptions options, bool monotone_complete);

struct RetractionFile {
  ComplexPtr ambient;
  DominationData data;
};

RetractionFile load_retraction(const std::string& path);

// --- JSON ------------------------------------------------------------------

std::string homology_json(const HomologyProfile& profile, const Int& euler);
std::string uct_json(const UctReport& report);
std::string lefschetz_json(const Int& chain_level, const Int& homology_level);
std::string index_json(const IndexResult& result);
std::string stability_json(const IndexResult& coarse, const IndexResult& fine);
std::string general_open_set_json(const GeneralOpenSetResult& result);
std::string approximation_json(const ChainApproximation& approx, const ApproximationReport& report,
                               const AcyclicityReport& acyclicity, bool rational_oracle);
std::string axiom_json(const std::string& axiom, const std::vector<corpus::AxiomCheck>& checks);
std::string error_json(int code, const std::string& kind, const std::string& message,
                       const std::string& detail);

}  // namespace fpindex::io
