#include "fpindex/cover.hpp"

#include <algorithm>
#include <set>

#include "fpindex/errors.hpp"

namespace fpindex {

namespace {

std::vector<std::vector<int>> covered_cells(const SimplicialComplex& cx,
                                            const std::vector<Vertex>& star_vertices) {
  std::vector<char> in_star(cx.vertex_count(), 0);
  for (Vertex v : star_vertices) {
    if (v < 0 || v >= cx.vertex_count()) throw_input("cover element: unknown vertex");
    in_star[v] = 1;
  }
  std::vector<std::vector<int>> cells(cx.dim() + 1 > 0 ? cx.dim() + 1 : 0);
  for (int d = 0; d <= cx.dim(); ++d) {
    for (int i = 0; i < cx.num_simplices(d); ++i) {
      for (Vertex v : cx.simplex(d, i)) {
        if (in_star[v]) {
          cells[d].push_back(i);
          break;
        }
      }
    }
  }
  return cells;
}

bool cells_contain(const std::vector<std::vector<int>>& cells, int d, int i) {
  if (d < 0 || d >= static_cast<int>(cells.size())) return false;
  return std::binary_search(cells[d].begin(), cells[d].end(), i);
}

}  // namespace

FiniteCover make_cover(SubdivisionPtr space,
                       std::vector<std::pair<std::string, std::vector<Vertex>>> elements) {
  FiniteCover cover;
  cover.space = std::move(space);
  const SimplicialComplex& cx = *cover.space->complex();
  std::set<std::string> names;
  for (auto& [name, verts] : elements) {
    if (verts.empty()) throw_input("cover element '" + name + "' is empty");
    if (!names.insert(name).second) throw_input("duplicate cover element name '" + name + "'");
    FiniteCover::Element e;
    e.name = name;
    e.star_vertices = verts;
    std::sort(e.star_vertices.begin(), e.star_vertices.end());
    e.cells = covered_cells(cx, e.star_vertices);
    cover.elements.push_back(std::move(e));
  }
  // The union must cover everything.
  for (int d = 0; d <= cx.dim(); ++d) {
    for (int i = 0; i < cx.num_simplices(d); ++i) {
      bool covered = false;
      for (const auto& e : cover.elements) covered = covered || cells_contain(e.cells, d, i);
      if (!covered)
        throw_input("cover does not reach the simplex " + cx.simplex_label(d, i));
    }
  }
  return cover;
}

FiniteCover star_cover(SubdivisionPtr rec) {
  const SimplicialComplex& cx = *rec->complex();
  std::vector<std::pair<std::string, std::vector<Vertex>>> elements;
  for (Vertex v = 0; v < cx.vertex_count(); ++v) {
    elements.push_back({cx.vertex_name(v), {v}});
  }
  FiniteCover cover;
  if (elements.empty()) {
    cover.space = std::move(rec);
    return cover;  // the empty cover of the empty complex
  }
  return make_cover(std::move(rec), std::move(elements));
}

NerveComplex nerve(FiniteCover cover) {
  const SimplicialComplex& cx = *cover.space->complex();
  const int n = static_cast<int>(cover.elements.size());
  std::vector<std::string> names;
  for (const auto& e : cover.elements) names.push_back(e.name);

  // For each simplex, the set of elements covering it; every subset of that
  // set spans a nerve simplex.
  std::set<Simplex> simplices;
  for (int i = 0; i < n; ++i) simplices.insert({i});
  for (int d = 0; d <= cx.dim(); ++d) {
    for (int i = 0; i < cx.num_simplices(d); ++i) {
      Simplex covering;
      for (int e = 0; e < n; ++e) {
        if (cells_contain(cover.elements[e].cells, d, i)) covering.push_back(e);
      }
      const int m = static_cast<int>(covering.size());
      for (int mask = 1; mask < (1 << m); ++mask) {
        Simplex s;
        for (int b = 0; b < m; ++b) {
          if (mask & (1 << b)) s.push_back(covering[b]);
        }
        simplices.insert(std::move(s));
      }
    }
  }
  NerveComplex out;
  out.complex = SimplicialComplex::from_simplices(
      std::move(names), std::vector<Simplex>(simplices.begin(), simplices.end()));
  out.cover = std::move(cover);
  return out;
}

namespace {

// Number of subdivision steps from `coarse` down to `fine`; input error when
// the records are not part of one chain.
int levels_between(const SubdivisionPtr& coarse, const SubdivisionPtr& fine) {
  int steps = 0;
  SubdivisionPtr walk = fine;
  while (walk && walk != coarse) {
    walk = walk->previous();
    ++steps;
  }
  if (!walk) throw_input("covers do not live on one subdivision chain");
  return steps;
}

}  // namespace

RefinementProjection refinement_projection(const FiniteCover& fine, const FiniteCover& coarse) {
  const int steps = levels_between(coarse.space, fine.space);

  // Geometric containment: each covered open cell of the fine element lands,
  // through the carrier projection, in a covered open cell of the coarse one.
  auto contained = [&](const FiniteCover::Element& f, const FiniteCover::Element& c) {
    for (int d = 0; d < static_cast<int>(f.cells.size()); ++d) {
      for (int i : f.cells[d]) {
        SimplexRef ref{d, i};
        SubdivisionPtr walk = fine.space;
        for (int s = 0; s < steps; ++s) {
          ref = walk->carrier_in_previous(ref.dim, ref.index);
          walk = walk->previous();
        }
        if (!cells_contain(c.cells, ref.dim, ref.index)) return false;
      }
    }
    return true;
  };

  RefinementProjection out;
  for (size_t j = 0; j < fine.elements.size(); ++j) {
    int target = -1;
    for (size_t c = 0; c < coarse.elements.size(); ++c) {
      if (contained(fine.elements[j], coarse.elements[c])) {
        target = static_cast<int>(c);
        break;
      }
    }
    if (target == -1)
      throw_input("not a refinement: element '" + fine.elements[j].name +
                  "' is contained in no coarse element");
    out.element_map.push_back(target);
  }
  out.fine_nerve = nerve(fine);
  out.coarse_nerve = nerve(coarse);
  out.chain_map = simplicial_chain_map(out.element_map,
                                       ChainComplexData::of_complex(out.fine_nerve.complex),
                                       ChainComplexData::of_complex(out.coarse_nerve.complex));
  return out;
}

SupportResult support(const NerveComplex& nerve, const Chain& chain) {
  SupportResult out;
  std::set<int> elements;
  for (const auto& [idx, coeff] : chain.coeffs) {
    if (coeff == 0) continue;
    for (Vertex v : nerve.complex->simplex(chain.dim, idx)) elements.insert(v);
  }
  out.elements.assign(elements.begin(), elements.end());
  const SimplicialComplex& cx = *nerve.cover.space->complex();
  out.cells.resize(cx.dim() + 1 > 0 ? cx.dim() + 1 : 0);
  for (int e : out.elements) {
    const auto& cells = nerve.cover.elements[e].cells;
    for (size_t d = 0; d < cells.size(); ++d) {
      std::vector<int> merged;
      std::set_union(out.cells[d].begin(), out.cells[d].end(), cells[d].begin(), cells[d].end(),
                     std::back_inserter(merged));
      out.cells[d] = std::move(merged);
    }
  }
  return out;
}

}  // namespace fpindex
