// Finite abstract simplicial complexes, subcomplexes, open polyhedral sets
// and barycentric subdivision records.
//
// Vertices carry a global total order (their position in the name table);
// simplices are stored as strictly ascending vertex tuples, which fixes all
// orientations. Complexes are immutable after construction and shared via
// shared_ptr<const ...>.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fpindex/numeric.hpp"

namespace fpindex {

using Vertex = int;                   // index into the vertex name table
using Simplex = std::vector<Vertex>;  // strictly ascending

struct SimplexRef {
  int dim = -1;
  int index = -1;
  friend bool operator==(const SimplexRef& a, const SimplexRef& b) {
    return a.dim == b.dim && a.index == b.index;
  }
  friend bool operator<(const SimplexRef& a, const SimplexRef& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.index < b.index;
  }
};

// Sorts a vertex list into ascending order and reports the permutation sign;
// returns sign 0 when a vertex repeats (degenerate simplex).
int normalize_simplex(Simplex& s);

class SimplicialComplex {
 public:
  // Face closure of the given maximal simplices; vertex order is the
  // lexicographic order of the names (deterministic in the input).
  static std::shared_ptr<const SimplicialComplex> from_maximal_tuples(
      const std::vector<std::vector<std::string>>& tuples);

  // Explicit vertex order; the simplex list is face-closed automatically.
  static std::shared_ptr<const SimplicialComplex> from_simplices(
      std::vector<std::string> vertex_names, const std::vector<Simplex>& simplices);

  int dim() const { return static_cast<int>(by_dim_.size()) - 1; }
  int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
  const std::vector<std::string>& vertex_names() const { return vertex_names_; }
  const std::string& vertex_name(Vertex v) const { return vertex_names_[v]; }
  std::optional<Vertex> vertex_id(const std::string& name) const;

  int num_simplices(int d) const {
    return (d < 0 || d > dim()) ? 0 : static_cast<int>(by_dim_[d].size());
  }
  int total_simplices() const;
  const Simplex& simplex(int d, int i) const { return by_dim_[d][i]; }
  const Simplex& simplex(SimplexRef r) const { return by_dim_[r.dim][r.index]; }
  const std::vector<Simplex>& simplices(int d) const { return by_dim_[d]; }

  std::optional<int> find(const Simplex& s) const;
  bool contains(const Simplex& s) const { return find(s).has_value(); }

  // Codimension-1 cofaces of (d, i).
  const std::vector<int>& cofacets(int d, int i) const { return cofacets_[d][i]; }
  // Codimension-1 faces with their positions: facet j omits the j-th vertex.
  std::vector<int> facet_indices(int d, int i) const;

  Int euler_characteristic() const;

  std::string simplex_label(int d, int i) const;
  std::string simplex_label(SimplexRef r) const { return simplex_label(r.dim, r.index); }

 private:
  std::vector<std::string> vertex_names_;
  std::vector<std::vector<Simplex>> by_dim_;            // sorted lexicographically
  std::vector<std::map<Simplex, int>> index_by_dim_;    // simplex -> position
  std::vector<std::vector<std::vector<int>>> cofacets_; // per (d, i): indices in dim d+1

  void finalize();
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

// Same object, or the same vertex names and simplices.
bool same_complex(const ComplexPtr& a, const ComplexPtr& b);

// A face-closed selection of simplices of a parent complex.
class Subcomplex {
 public:
  Subcomplex() = default;
  // Validates face-closedness; throws a malformed-subcomplex error otherwise.
  Subcomplex(ComplexPtr parent, std::vector<std::vector<int>> members);

  static Subcomplex full(ComplexPtr parent);
  static Subcomplex empty(ComplexPtr parent);
  static Subcomplex face_closure(ComplexPtr parent, const std::vector<SimplexRef>& generators);

  const ComplexPtr& parent() const { return parent_; }
  int dim() const;
  bool is_empty() const;
  int num_members(int d) const {
    return (d < 0 || d >= static_cast<int>(members_.size()))
               ? 0
               : static_cast<int>(members_[d].size());
  }
  const std::vector<int>& members(int d) const;
  bool contains(int d, int index) const;
  bool contains(SimplexRef r) const { return contains(r.dim, r.index); }
  int total_members() const;

  // Least vertex (in the global order) among the member 0-simplices.
  std::optional<Vertex> least_vertex() const;
  std::optional<Vertex> greatest_vertex() const;

  static Subcomplex union_of(const Subcomplex& a, const Subcomplex& b);

  bool operator==(const Subcomplex& other) const;
  bool operator!=(const Subcomplex& other) const { return !(*this == other); }

 private:
  ComplexPtr parent_;
  std::vector<std::vector<int>> members_;  // per dim, sorted parent indices
};

// Open sets are represented by their closures; the boundary consists of the
// closure simplices that are faces of some ambient simplex outside the
// closure.
struct OpenPolyhedralSet {
  ComplexPtr ambient;
  Subcomplex closure;
  Subcomplex boundary;
};

OpenPolyhedralSet open_set_from_closure(ComplexPtr ambient,
                                        std::vector<std::vector<int>> closure_members);
OpenPolyhedralSet open_set_from_closure(Subcomplex closure);

// Simplices of the interior: closure minus boundary (not face-closed in
// general; these are the open cells making up U).
std::vector<std::vector<int>> interior_cells(const OpenPolyhedralSet& u);

// A standalone complex with the subcomplex's simplices; vertex names are
// kept, the vertex order is induced from the parent.
ComplexPtr materialize(const Subcomplex& sub);

// --- stars and skeleta ---------------------------------------------------

// All simplices having v as a vertex (not face-closed).
std::vector<SimplexRef> open_star(const SimplicialComplex& c, Vertex v);

// Face closure of all simplices containing s.
Subcomplex closed_star(ComplexPtr c, SimplexRef s);

ComplexPtr skeleton(const SimplicialComplex& c, int n);

// --- barycentric subdivision ----------------------------------------------

class SubdivisionRecord : public std::enable_shared_from_this<SubdivisionRecord> {
 public:
  static std::shared_ptr<const SubdivisionRecord> base(ComplexPtr complex);

  std::shared_ptr<const SubdivisionRecord> subdivide() const;

  int level() const { return level_; }
  const ComplexPtr& complex() const { return complex_; }
  const ComplexPtr& base_complex() const { return base_; }
  const std::shared_ptr<const SubdivisionRecord>& previous() const { return prev_; }

  // Barycentric coordinates of a vertex over the base complex's vertices;
  // nonnegative rationals summing to one.
  const std::map<Vertex, Rational>& vertex_coords(Vertex v) const { return coords_[v]; }

  // Level >= 1 bookkeeping: which previous-level simplex a vertex is the
  // barycenter of, and the reverse.
  SimplexRef vertex_source(Vertex v) const { return vertex_source_[v]; }
  Vertex barycenter_vertex(int d, int i) const { return barycenter_vertex_[d][i]; }

  // The smallest previous-level simplex whose closed cell contains the given
  // simplex of this level (the top of its defining flag).
  SimplexRef carrier_in_previous(int d, int i) const;

  // Pushes a subcomplex of the previous level through the subdivision.
  Subcomplex subdivided(const Subcomplex& prev_sub) const;

 private:
  SubdivisionRecord() = default;

  int level_ = 0;
  ComplexPtr base_;
  ComplexPtr complex_;
  std::shared_ptr<const SubdivisionRecord> prev_;
  std::vector<std::map<Vertex, Rational>> coords_;
  std::vector<SimplexRef> vertex_source_;         // level >= 1
  std::vector<std::vector<Vertex>> barycenter_vertex_;
};

using SubdivisionPtr = std::shared_ptr<const SubdivisionRecord>;

}  // namespace fpindex
