#include "fpindex/complex.hpp"

#include <algorithm>
#include <set>

#include "fpindex/errors.hpp"

namespace fpindex {

int normalize_simplex(Simplex& s) {
  int sign = 1;
  // Insertion sort; counts inversions.
  for (size_t i = 1; i < s.size(); ++i) {
    Vertex v = s[i];
    size_t j = i;
    while (j > 0 && s[j - 1] > v) {
      s[j] = s[j - 1];
      --j;
      sign = -sign;
    }
    s[j] = v;
  }
  for (size_t i = 1; i < s.size(); ++i) {
    if (s[i] == s[i - 1]) return 0;
  }
  return sign;
}

namespace {

// All nonempty subsets of an ascending tuple, as ascending tuples.
void nonempty_subsets(const Simplex& s, std::vector<Simplex>& out) {
  const int n = static_cast<int>(s.size());
  for (int mask = 1; mask < (1 << n); ++mask) {
    Simplex sub;
    for (int i = 0; i < n; ++i) {
      if (mask & (1 << i)) sub.push_back(s[i]);
    }
    out.push_back(std::move(sub));
  }
}

}  // namespace

std::shared_ptr<const SimplicialComplex> SimplicialComplex::from_maximal_tuples(
    const std::vector<std::vector<std::string>>& tuples) {
  std::set<std::string> names;
  for (const auto& t : tuples) {
    if (t.empty()) throw_input("malformed simplex: empty vertex tuple");
    std::set<std::string> seen;
    for (const auto& n : t) {
      if (!seen.insert(n).second)
        throw_input("malformed simplex: duplicate vertex '" + n + "' in a tuple");
      names.insert(n);
    }
  }
  std::vector<std::string> order(names.begin(), names.end());
  std::map<std::string, Vertex> id;
  for (size_t i = 0; i < order.size(); ++i) id[order[i]] = static_cast<Vertex>(i);

  std::vector<Simplex> simplices;
  for (const auto& t : tuples) {
    Simplex s;
    for (const auto& n : t) s.push_back(id[n]);
    if (normalize_simplex(s) == 0) throw_input("malformed simplex: duplicate vertex");
    simplices.push_back(std::move(s));
  }
  return from_simplices(std::move(order), simplices);
}

std::shared_ptr<const SimplicialComplex> SimplicialComplex::from_simplices(
    std::vector<std::string> vertex_names, const std::vector<Simplex>& simplices) {
  auto c = std::shared_ptr<SimplicialComplex>(new SimplicialComplex());
  c->vertex_names_ = std::move(vertex_names);

  std::vector<std::set<Simplex>> closed;
  std::vector<Simplex> subs;
  for (const auto& s : simplices) {
    if (s.empty()) throw_input("malformed simplex: empty vertex tuple");
    for (Vertex v : s) {
      if (v < 0 || v >= static_cast<Vertex>(c->vertex_names_.size()))
        throw_input("simplex vertex outside the declared universe");
    }
    Simplex copy = s;
    if (normalize_simplex(copy) == 0) throw_input("malformed simplex: duplicate vertex");
    subs.clear();
    nonempty_subsets(copy, subs);
    for (auto& f : subs) {
      const int d = static_cast<int>(f.size()) - 1;
      if (d >= static_cast<int>(closed.size())) closed.resize(d + 1);
      closed[d].insert(std::move(f));
    }
  }
  c->by_dim_.resize(closed.size());
  for (size_t d = 0; d < closed.size(); ++d) {
    c->by_dim_[d].assign(closed[d].begin(), closed[d].end());
  }
  c->finalize();
  return c;
}

void SimplicialComplex::finalize() {
  index_by_dim_.resize(by_dim_.size());
  for (size_t d = 0; d < by_dim_.size(); ++d) {
    for (size_t i = 0; i < by_dim_[d].size(); ++i) index_by_dim_[d][by_dim_[d][i]] = static_cast<int>(i);
  }
  cofacets_.resize(by_dim_.size());
  for (size_t d = 0; d < by_dim_.size(); ++d) cofacets_[d].resize(by_dim_[d].size());
  for (size_t d = 1; d < by_dim_.size(); ++d) {
    for (size_t i = 0; i < by_dim_[d].size(); ++i) {
      const Simplex& s = by_dim_[d][i];
      Simplex facet(s.size() - 1);
      for (size_t drop = 0; drop < s.size(); ++drop) {
        for (size_t k = 0, w = 0; k < s.size(); ++k) {
          if (k != drop) facet[w++] = s[k];
        }
        auto it = index_by_dim_[d - 1].find(facet);
        if (it == index_by_dim_[d - 1].end())
          throw_input("internal: complex not face-closed");  // unreachable after closure
        cofacets_[d - 1][it->second].push_back(static_cast<int>(i));
      }
    }
  }
}

std::optional<Vertex> SimplicialComplex::vertex_id(const std::string& name) const {
  auto it = std::lower_bound(vertex_names_.begin(), vertex_names_.end(), name);
  if (it != vertex_names_.end() && *it == name)
    return static_cast<Vertex>(it - vertex_names_.begin());
  // Vertex order is not always lexicographic (subdivisions, prisms); fall
  // back to a linear scan.
  for (size_t i = 0; i < vertex_names_.size(); ++i) {
    if (vertex_names_[i] == name) return static_cast<Vertex>(i);
  }
  return std::nullopt;
}

int SimplicialComplex::total_simplices() const {
  int n = 0;
  for (const auto& level : by_dim_) n += static_cast<int>(level.size());
  return n;
}

std::optional<int> SimplicialComplex::find(const Simplex& s) const {
  const int d = static_cast<int>(s.size()) - 1;
  if (d < 0 || d > dim()) return std::nullopt;
  auto it = index_by_dim_[d].find(s);
  if (it == index_by_dim_[d].end()) return std::nullopt;
  return it->second;
}

std::vector<int> SimplicialComplex::facet_indices(int d, int i) const {
  std::vector<int> out;
  if (d == 0) return out;
  const Simplex& s = by_dim_[d][i];
  Simplex facet(s.size() - 1);
  for (size_t drop = 0; drop < s.size(); ++drop) {
    for (size_t k = 0, w = 0; k < s.size(); ++k) {
      if (k != drop) facet[w++] = s[k];
    }
    out.push_back(index_by_dim_[d - 1].at(facet));
  }
  return out;
}

Int SimplicialComplex::euler_characteristic() const {
  Int chi = 0;
  for (int d = 0; d <= dim(); ++d) {
    if (d % 2 == 0)
      chi += num_simplices(d);
    else
      chi -= num_simplices(d);
  }
  return chi;
}

std::string SimplicialComplex::simplex_label(int d, int i) const {
  const Simplex& s = by_dim_[d][i];
  std::string out = "(";
  for (size_t k = 0; k < s.size(); ++k) {
    if (k) out += " ";
    out += vertex_names_[s[k]];
  }
  out += ")";
  return out;
}

bool same_complex(const ComplexPtr& a, const ComplexPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->vertex_names() != b->vertex_names() || a->dim() != b->dim()) return false;
  for (int d = 0; d <= a->dim(); ++d) {
    if (a->simplices(d) != b->simplices(d)) return false;
  }
  return true;
}

// --- Subcomplex -------------------------------------------------------------

Subcomplex::Subcomplex(ComplexPtr parent, std::vector<std::vector<int>> members)
    : parent_(std::move(parent)), members_(std::move(members)) {
  members_.resize(std::max<size_t>(members_.size(), 0));
  for (size_t d = 0; d < members_.size(); ++d) {
    auto& v = members_[d];
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    for (int i : v) {
      if (i < 0 || i >= parent_->num_simplices(static_cast<int>(d)))
        throw_input("subcomplex member index out of range");
    }
  }
  while (!members_.empty() && members_.back().empty()) members_.pop_back();
  // Face-closedness.
  for (size_t d = 1; d < members_.size(); ++d) {
    for (int i : members_[d]) {
      for (int f : parent_->facet_indices(static_cast<int>(d), i)) {
        if (!contains(static_cast<int>(d) - 1, f))
          throw_input("malformed subcomplex: not face-closed at " +
                      parent_->simplex_label(static_cast<int>(d), i));
      }
    }
  }
}

Subcomplex Subcomplex::full(ComplexPtr parent) {
  std::vector<std::vector<int>> members(parent->dim() + 1);
  for (int d = 0; d <= parent->dim(); ++d) {
    members[d].resize(parent->num_simplices(d));
    for (int i = 0; i < parent->num_simplices(d); ++i) members[d][i] = i;
  }
  Subcomplex out;
  out.parent_ = std::move(parent);
  out.members_ = std::move(members);
  return out;
}

Subcomplex Subcomplex::empty(ComplexPtr parent) {
  Subcomplex out;
  out.parent_ = std::move(parent);
  return out;
}

Subcomplex Subcomplex::face_closure(ComplexPtr parent, const std::vector<SimplexRef>& generators) {
  std::vector<std::set<int>> closed;
  std::vector<Simplex> subs;
  for (const auto& g : generators) {
    const Simplex& s = parent->simplex(g);
    subs.clear();
    nonempty_subsets(s, subs);
    for (const auto& f : subs) {
      const int d = static_cast<int>(f.size()) - 1;
      auto idx = parent->find(f);
      if (!idx) throw_input("internal: face missing from parent complex");
      if (d >= static_cast<int>(closed.size())) closed.resize(d + 1);
      closed[d].insert(*idx);
    }
  }
  std::vector<std::vector<int>> members(closed.size());
  for (size_t d = 0; d < closed.size(); ++d) members[d].assign(closed[d].begin(), closed[d].end());
  Subcomplex out;
  out.parent_ = std::move(parent);
  out.members_ = std::move(members);
  return out;
}

int Subcomplex::dim() const { return static_cast<int>(members_.size()) - 1; }

bool Subcomplex::is_empty() const {
  for (const auto& v : members_) {
    if (!v.empty()) return false;
  }
  return true;
}

const std::vector<int>& Subcomplex::members(int d) const {
  static const std::vector<int> kEmpty;
  if (d < 0 || d >= static_cast<int>(members_.size())) return kEmpty;
  return members_[d];
}

bool Subcomplex::contains(int d, int index) const {
  if (d < 0 || d >= static_cast<int>(members_.size())) return false;
  const auto& v = members_[d];
  return std::binary_search(v.begin(), v.end(), index);
}

int Subcomplex::total_members() const {
  int n = 0;
  for (const auto& v : members_) n += static_cast<int>(v.size());
  return n;
}

std::optional<Vertex> Subcomplex::least_vertex() const {
  if (members_.empty() || members_[0].empty()) return std::nullopt;
  Vertex best = parent_->simplex(0, members_[0].front())[0];
  for (int i : members_[0]) best = std::min(best, parent_->simplex(0, i)[0]);
  return best;
}

std::optional<Vertex> Subcomplex::greatest_vertex() const {
  if (members_.empty() || members_[0].empty()) return std::nullopt;
  Vertex best = parent_->simplex(0, members_[0].front())[0];
  for (int i : members_[0]) best = std::max(best, parent_->simplex(0, i)[0]);
  return best;
}

Subcomplex Subcomplex::union_of(const Subcomplex& a, const Subcomplex& b) {
  if (a.parent_ != b.parent_) throw_input("subcomplex union: different parents");
  std::vector<std::vector<int>> members(std::max(a.members_.size(), b.members_.size()));
  for (size_t d = 0; d < members.size(); ++d) {
    const auto& av = a.members(static_cast<int>(d));
    const auto& bv = b.members(static_cast<int>(d));
    std::set_union(av.begin(), av.end(), bv.begin(), bv.end(), std::back_inserter(members[d]));
  }
  Subcomplex out;
  out.parent_ = a.parent_;
  out.members_ = std::move(members);
  while (!out.members_.empty() && out.members_.back().empty()) out.members_.pop_back();
  return out;
}

bool Subcomplex::operator==(const Subcomplex& other) const {
  if (!same_complex(parent_, other.parent_)) return false;
  const size_t n = std::max(members_.size(), other.members_.size());
  for (size_t d = 0; d < n; ++d) {
    if (members(static_cast<int>(d)) != other.members(static_cast<int>(d))) return false;
  }
  return true;
}

// --- open polyhedral sets ---------------------------------------------------

OpenPolyhedralSet open_set_from_closure(ComplexPtr ambient,
                                        std::vector<std::vector<int>> closure_members) {
  Subcomplex closure(ambient, std::move(closure_members));
  return open_set_from_closure(std::move(closure));
}

OpenPolyhedralSet open_set_from_closure(Subcomplex closure) {
  ComplexPtr ambient = closure.parent();
  // has_outside[d][i]: the simplex is a face of some ambient simplex outside
  // the closure. Computed top-down through the cofacet graph.
  std::vector<std::vector<char>> has_outside(ambient->dim() + 1);
  for (int d = 0; d <= ambient->dim(); ++d) has_outside[d].assign(ambient->num_simplices(d), 0);
  for (int d = ambient->dim() - 1; d >= 0; --d) {
    for (int i = 0; i < ambient->num_simplices(d); ++i) {
      for (int cf : ambient->cofacets(d, i)) {
        if (!closure.contains(d + 1, cf) || has_outside[d + 1][cf]) {
          has_outside[d][i] = 1;
          break;
        }
      }
    }
  }
  std::vector<std::vector<int>> boundary(closure.dim() + 1 > 0 ? closure.dim() + 1 : 0);
  for (int d = 0; d <= closure.dim(); ++d) {
    for (int i : closure.members(d)) {
      if (has_outside[d][i]) boundary[d].push_back(i);
    }
  }
  OpenPolyhedralSet out;
  out.ambient = ambient;
  out.closure = std::move(closure);
  out.boundary = Subcomplex(ambient, std::move(boundary));
  return out;
}

std::vector<std::vector<int>> interior_cells(const OpenPolyhedralSet& u) {
  std::vector<std::vector<int>> out(u.closure.dim() + 1 > 0 ? u.closure.dim() + 1 : 0);
  for (int d = 0; d <= u.closure.dim(); ++d) {
    for (int i : u.closure.members(d)) {
      if (!u.boundary.contains(d, i)) out[d].push_back(i);
    }
  }
  return out;
}

ComplexPtr materialize(const Subcomplex& sub) {
  const SimplicialComplex& parent = *sub.parent();
  std::vector<Vertex> old_vertices;
  for (int i : sub.members(0)) old_vertices.push_back(parent.simplex(0, i)[0]);
  std::sort(old_vertices.begin(), old_vertices.end());
  std::map<Vertex, Vertex> renumber;
  std::vector<std::string> names;
  for (size_t k = 0; k < old_vertices.size(); ++k) {
    renumber[old_vertices[k]] = static_cast<Vertex>(k);
    names.push_back(parent.vertex_name(old_vertices[k]));
  }
  std::vector<Simplex> simplices;
  for (int d = 0; d <= sub.dim(); ++d) {
    for (int i : sub.members(d)) {
      Simplex s;
      for (Vertex v : parent.simplex(d, i)) s.push_back(renumber.at(v));
      simplices.push_back(std::move(s));
    }
  }
  return SimplicialComplex::from_simplices(std::move(names), simplices);
}

// --- stars and skeleta -------------------------------------------------------

std::vector<SimplexRef> open_star(const SimplicialComplex& c, Vertex v) {
  if (v < 0 || v >= c.vertex_count()) throw_input("open_star: unknown vertex");
  std::vector<SimplexRef> out;
  for (int d = 0; d <= c.dim(); ++d) {
    for (int i = 0; i < c.num_simplices(d); ++i) {
      const Simplex& s = c.simplex(d, i);
      if (std::binary_search(s.begin(), s.end(), v)) out.push_back({d, i});
    }
  }
  return out;
}

Subcomplex closed_star(ComplexPtr c, SimplexRef ref) {
  if (ref.dim < 0 || ref.dim > c->dim() || ref.index < 0 ||
      ref.index >= c->num_simplices(ref.dim))
    throw_input("closed_star: simplex not found");
  const Simplex& s = c->simplex(ref);
  std::vector<SimplexRef> gens;
  for (int d = ref.dim; d <= c->dim(); ++d) {
    for (int i = 0; i < c->num_simplices(d); ++i) {
      const Simplex& t = c->simplex(d, i);
      if (std::includes(t.begin(), t.end(), s.begin(), s.end())) gens.push_back({d, i});
    }
  }
  return Subcomplex::face_closure(std::move(c), gens);
}

ComplexPtr skeleton(const SimplicialComplex& c, int n) {
  if (n < 0) throw_input("skeleton: dimension must be nonnegative");
  std::vector<Simplex> simplices;
  for (int d = 0; d <= std::min(n, c.dim()); ++d) {
    for (int i = 0; i < c.num_simplices(d); ++i) simplices.push_back(c.simplex(d, i));
  }
  return SimplicialComplex::from_simplices(c.vertex_names(), simplices);
}

// --- barycentric subdivision --------------------------------------------------

std::shared_ptr<const SubdivisionRecord> SubdivisionRecord::base(ComplexPtr complex) {
  auto rec = std::shared_ptr<SubdivisionRecord>(new SubdivisionRecord());
  rec->level_ = 0;
  rec->base_ = complex;
  rec->complex_ = complex;
  rec->coords_.resize(complex->vertex_count());
  for (Vertex v = 0; v < complex->vertex_count(); ++v) rec->coords_[v][v] = Rational(1);
  return rec;
}

std::shared_ptr<const SubdivisionRecord> SubdivisionRecord::subdivide() const {
  const SimplicialComplex& prev = *complex_;
  auto rec = std::shared_ptr<SubdivisionRecord>(new SubdivisionRecord());
  rec->level_ = level_ + 1;
  rec->base_ = base_;
  rec->prev_ = shared_from_this();

  // One vertex per simplex of the previous level, ordered by (dim, index).
  std::vector<std::string> names;
  rec->barycenter_vertex_.resize(prev.dim() + 1 > 0 ? prev.dim() + 1 : 0);
  for (int d = 0; d <= prev.dim(); ++d) {
    rec->barycenter_vertex_[d].resize(prev.num_simplices(d));
    for (int i = 0; i < prev.num_simplices(d); ++i) {
      Vertex v = static_cast<Vertex>(names.size());
      rec->barycenter_vertex_[d][i] = v;
      rec->vertex_source_.push_back({d, i});
      if (d == 0) {
        names.push_back(prev.vertex_name(prev.simplex(0, i)[0]));
      } else {
        std::string n = "[";
        const Simplex& s = prev.simplex(d, i);
        for (size_t k = 0; k < s.size(); ++k) {
          if (k) n += "|";
          n += prev.vertex_name(s[k]);
        }
        n += "]";
        names.push_back(std::move(n));
      }
    }
  }

  // Geometry: the barycenter of a simplex averages its vertices' coordinates.
  rec->coords_.resize(names.size());
  for (int d = 0; d <= prev.dim(); ++d) {
    for (int i = 0; i < prev.num_simplices(d); ++i) {
      const Simplex& s = prev.simplex(d, i);
      std::map<Vertex, Rational>& target = rec->coords_[rec->barycenter_vertex_[d][i]];
      const Rational w = Rational(1, static_cast<int>(s.size()));
      for (Vertex pv : s) {
        for (const auto& [bv, coord] : coords_[pv]) target[bv] += coord * w;
      }
    }
  }

  // Simplices: flags of the previous level. flags[d][i] holds the new-vertex
  // tuples of all flags whose top element is (d, i).
  std::vector<std::vector<std::vector<Simplex>>> flags(prev.dim() + 1 > 0 ? prev.dim() + 1 : 0);
  std::vector<Simplex> all;
  std::vector<Simplex> subs;
  for (int d = 0; d <= prev.dim(); ++d) {
    flags[d].resize(prev.num_simplices(d));
    for (int i = 0; i < prev.num_simplices(d); ++i) {
      const Vertex apex = rec->barycenter_vertex_[d][i];
      std::vector<Simplex>& here = flags[d][i];
      here.push_back({apex});
      const Simplex& s = prev.simplex(d, i);
      subs.clear();
      nonempty_subsets(s, subs);
      for (const auto& f : subs) {
        const int fd = static_cast<int>(f.size()) - 1;
        if (fd == d) continue;  // proper faces only
        const int fi = *prev.find(f);
        for (const Simplex& chain : flags[fd][fi]) {
          Simplex ext = chain;
          ext.push_back(apex);  // apex has the largest order key
          here.push_back(std::move(ext));
        }
      }
      all.insert(all.end(), here.begin(), here.end());
    }
  }

  rec->complex_ = SimplicialComplex::from_simplices(std::move(names), all);
  return rec;
}

SimplexRef SubdivisionRecord::carrier_in_previous(int d, int i) const {
  if (level_ == 0) throw_input("carrier_in_previous: level-0 record has no previous level");
  const Simplex& s = complex_->simplex(d, i);
  // Vertex order follows (dim, index) of the defining simplices, so the top
  // of the flag is the last vertex.
  return vertex_source_[s.back()];
}

Subcomplex SubdivisionRecord::subdivided(const Subcomplex& prev_sub) const {
  if (level_ == 0) throw_input("subdivided: level-0 record has no previous level");
  if (prev_sub.parent() != (prev_ ? prev_->complex() : nullptr))
    throw_input("subdivided: subcomplex does not live at the previous level");
  std::vector<std::vector<int>> members(complex_->dim() + 1 > 0 ? complex_->dim() + 1 : 0);
  for (int d = 0; d <= complex_->dim(); ++d) {
    for (int i = 0; i < complex_->num_simplices(d); ++i) {
      const Simplex& s = complex_->simplex(d, i);
      bool inside = true;
      for (Vertex v : s) {
        SimplexRef src = vertex_source_[v];
        if (!prev_sub.contains(src)) {
          inside = false;
          break;
        }
      }
      if (inside) members[d].push_back(i);
    }
  }
  Subcomplex out(complex_, std::move(members));
  return out;
}

}  // namespace fpindex
