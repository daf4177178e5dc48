#include "fpindex/index.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "fpindex/errors.hpp"

namespace fpindex {

// --- SubdivisionTower ----------------------------------------------------------

SubdivisionTower::SubdivisionTower(ComplexPtr base) {
  records_.push_back(SubdivisionRecord::base(std::move(base)));
  chain_data_.push_back(nullptr);
}

const SubdivisionPtr& SubdivisionTower::at(int level) {
  if (level < 0) throw_input("subdivision level must be nonnegative");
  while (static_cast<int>(records_.size()) <= level) {
    records_.push_back(records_.back()->subdivide());
    chain_data_.push_back(nullptr);
  }
  return records_[level];
}

const ChainDataPtr& SubdivisionTower::chain_data(int level) {
  at(level);
  if (!chain_data_[level])
    chain_data_[level] = ChainComplexData::of_complex(records_[level]->complex());
  return chain_data_[level];
}

SimplexRef SubdivisionTower::carrier_ref(int from_level, int to_level, SimplexRef ref) {
  if (to_level > from_level) throw_input("carrier_ref: target level is finer than the source");
  at(from_level);
  for (int lv = from_level; lv > to_level; --lv) {
    ref = records_[lv]->carrier_in_previous(ref.dim, ref.index);
  }
  return ref;
}

Subcomplex SubdivisionTower::subdivided_to(int from_level, int to_level, const Subcomplex& sub) {
  if (to_level < from_level) throw_input("subdivided_to: target level is coarser than the source");
  at(to_level);
  Subcomplex out = sub;
  for (int lv = from_level + 1; lv <= to_level; ++lv) out = records_[lv]->subdivided(out);
  return out;
}

GradedIntegerMap subdivision_chain_map(SubdivisionTower& tower, int k, int l) {
  if (l < k) throw_input("subdivision chain map: target level below source level");
  GradedIntegerMap b = identity_map(tower.chain_data(k));
  for (int lv = k + 1; lv <= l; ++lv) {
    b = compose(subdivision_step_map(*tower.at(lv), tower.chain_data(lv - 1),
                                     tower.chain_data(lv)),
                b);
  }
  return b;
}

GradedIntegerMap projection_map(ChainDataPtr whole, ChainDataPtr restricted) {
  return projection_onto(std::move(whole), std::move(restricted));
}

// --- problems --------------------------------------------------------------------

IndexProblem make_index_problem(TowerPtr tower, int u_level, OpenPolyhedralSet u,
                                int carrier_level, CarrierPtr carrier, ApproxOptions options) {
  if (!tower) throw_input("index problem: missing subdivision tower");
  if (u_level < 0 || carrier_level < u_level)
    throw_input("index problem: carrier level must be at least the open set level");
  if (u.ambient != tower->at(u_level)->complex())
    throw_input("index problem: open set does not live at the stated level");
  if (u.closure.is_empty()) throw_input("index problem: the open set is empty");
  if (carrier->target() != tower->at(u_level)->complex())
    throw_input("index problem: carrier target is not the level-k complex");
  if (carrier->source_complex() != tower->at(carrier_level)->complex())
    throw_input("index problem: carrier source is not the level-l complex");
  Subcomplex expected = tower->subdivided_to(u_level, carrier_level, u.closure);
  if (!(carrier->source_space() == expected))
    throw_input("index problem: carrier source must be the subdivided closure of U");
  IndexProblem p;
  p.tower = std::move(tower);
  p.u_level = u_level;
  p.carrier_level = carrier_level;
  p.u = std::move(u);
  p.carrier = std::move(carrier);
  p.options = options;
  return p;
}

IndexProblem whole_space_problem(TowerPtr tower, int u_level, int carrier_level,
                                 CarrierPtr carrier, ApproxOptions options) {
  OpenPolyhedralSet u = open_set_from_closure(Subcomplex::full(tower->at(u_level)->complex()));
  return make_index_problem(std::move(tower), u_level, std::move(u), carrier_level,
                            std::move(carrier), options);
}

// --- admissibility -----------------------------------------------------------------

namespace {

// |closed star of sigma at level l| meets |value at level k|: the open cell
// of a fine simplex lies inside the open cell of its carrier, so membership
// of the carrier decides the intersection.
bool star_meets_value(SubdivisionTower& tower, int l, int k, SimplexRef sigma,
                      const Subcomplex& value) {
  Subcomplex star = closed_star(tower.at(l)->complex(), sigma);
  for (int d = 0; d <= star.dim(); ++d) {
    for (int i : star.members(d)) {
      SimplexRef coarse = tower.carrier_ref(l, k, SimplexRef{d, i});
      if (value.contains(coarse)) return true;
    }
  }
  return false;
}

}  // namespace

AdmissibilityReport check_admissible(IndexProblem& p) {
  AdmissibilityReport report;
  SubdivisionTower& tower = *p.tower;
  const int k = p.u_level, l = p.carrier_level;
  Subcomplex boundary_l = p.u.boundary.is_empty()
                              ? Subcomplex::empty(tower.at(l)->complex())
                              : tower.subdivided_to(k, l, p.u.boundary);
  const SimplicialComplex& fine = *tower.at(l)->complex();
  const Subcomplex& source = p.carrier->source_space();
  for (int d = 0; d <= source.dim(); ++d) {
    for (int i : source.members(d)) {
      // In the boundary collar: some vertex lies in the boundary.
      bool touches = false;
      for (Vertex v : fine.simplex(d, i)) {
        auto idx = fine.find({v});
        if (boundary_l.contains(0, *idx)) {
          touches = true;
          break;
        }
      }
      if (!touches) continue;
      if (star_meets_value(tower, l, k, SimplexRef{d, i}, p.carrier->value_of({d, i})))
        report.suspicious.push_back({d, i});
    }
  }
  report.admissible = report.suspicious.empty();
  return report;
}

// --- the index ------------------------------------------------------------------------

namespace {

AdmissibilityReport require_admissible(IndexProblem& p) {
  AdmissibilityReport admissibility = check_admissible(p);
  if (!admissibility.admissible) {
    std::ostringstream detail;
    const SimplicialComplex& fine = *p.tower->at(p.carrier_level)->complex();
    for (size_t i = 0; i < admissibility.suspicious.size(); ++i) {
      if (i) detail << ", ";
      detail << fine.simplex_label(admissibility.suspicious[i]);
    }
    throw Error(ErrorKind::kInadmissible,
                "possible fixed points on the boundary of U", detail.str());
  }
  return admissibility;
}

void ensure_approximation(IndexProblem& p) {
  if (p.approximation) {
    ApproximationReport check = verify_approximation(*p.approximation);
    if (!check.ok()) throw_input("index problem: supplied approximation fails verification");
    return;
  }
  BuildResult build = build_chain_approximation(p.carrier, p.options);
  if (!build.ok()) {
    const SimplicialComplex& fine = *p.tower->at(p.carrier_level)->complex();
    throw Error(ErrorKind::kAcyclicityFailure,
                "carrier filling obstructed at " + fine.simplex_label(build.failure->simplex));
  }
  p.approximation = std::move(build.approximation);
  p.approximation->level_source = p.carrier_level;
  p.approximation->level_target = p.u_level;
}

GradedIntegerMap build_psi(IndexProblem& p) {
  SubdivisionTower& tower = *p.tower;
  const int k = p.u_level, l = p.carrier_level;
  ChainDataPtr cc_k = tower.chain_data(k);
  ChainDataPtr cc_l = tower.chain_data(l);
  ChainDataPtr closure_k = ChainComplexData::of(p.u.closure);
  ChainDataPtr source_cc = p.approximation->map.source;

  // b restricted to the closure: subdivision never leaves the subcomplex.
  GradedIntegerMap b = subdivision_chain_map(tower, k, l);
  GradedIntegerMap b_res =
      compose(projection_onto(cc_l, source_cc), compose(b, inclusion_map(closure_k, cc_k)));
  return compose(projection_onto(cc_k, closure_k), compose(p.approximation->map, b_res));
}

}  // namespace

IndexResult fixed_point_index(IndexProblem& p) {
  AdmissibilityReport admissibility = require_admissible(p);
  ensure_approximation(p);
  GradedIntegerMap psi = build_psi(p);

  IndexResult result;
  result.level_k = p.u_level;
  result.level_l = p.carrier_level;
  result.admissibility = std::move(admissibility);
  for (int d = 0; d <= psi.source->dim(); ++d) {
    Int t = psi.mat_or_zero(d).trace();
    result.traces.push_back(t);
    result.value += (d % 2 == 0) ? t : -t;
  }
  return result;
}

GradedIntegerMap index_endomorphism(IndexProblem& p) {
  require_admissible(p);
  ensure_approximation(p);
  return build_psi(p);
}

// --- refinement --------------------------------------------------------------------------

CarrierPtr refine_carrier(SubdivisionTower& tower, const CarrierPtr& carrier, int source_level,
                          int target_level) {
  if (carrier->source_complex() != tower.at(source_level)->complex() ||
      carrier->target() != tower.at(target_level)->complex())
    throw_input("refine_carrier: levels do not match the carrier");
  Subcomplex fine_source = tower.subdivided_to(source_level, source_level + 1,
                                               carrier->source_space());
  ComplexPtr fine_target = tower.at(target_level + 1)->complex();
  const SubdivisionPtr& source_step = tower.at(source_level + 1);
  // Values are interned per carrier; push each through one subdivision once.
  std::map<const Subcomplex*, Subcomplex> pushed;
  auto assignment = [&](SimplexRef ref) {
    SimplexRef coarse = source_step->carrier_in_previous(ref.dim, ref.index);
    const auto& members = carrier->source_space().members(coarse.dim);
    auto it = std::lower_bound(members.begin(), members.end(), coarse.index);
    const std::shared_ptr<const Subcomplex>& value =
        carrier->value_ptr(coarse.dim, static_cast<int>(it - members.begin()));
    auto cached = pushed.find(value.get());
    if (cached == pushed.end()) {
      cached = pushed
                   .emplace(value.get(),
                            tower.subdivided_to(target_level, target_level + 1, *value))
                   .first;
    }
    return cached->second;
  };
  return std::make_shared<const AcyclicCarrier>(std::move(fine_source), fine_target, assignment);
}

IndexProblem refine_problem(const IndexProblem& p) {
  SubdivisionTower& tower = *p.tower;
  Subcomplex fine_closure = tower.subdivided_to(p.u_level, p.u_level + 1, p.u.closure);
  OpenPolyhedralSet fine_u = open_set_from_closure(std::move(fine_closure));
  CarrierPtr fine_carrier = refine_carrier(tower, p.carrier, p.carrier_level, p.u_level);
  return make_index_problem(p.tower, p.u_level + 1, std::move(fine_u), p.carrier_level + 1,
                            std::move(fine_carrier), p.options);
}

std::pair<IndexResult, IndexResult> index_stability(IndexProblem& p) {
  IndexResult coarse = fixed_point_index(p);
  IndexProblem finer = refine_problem(p);
  IndexResult fine = fixed_point_index(finer);
  return {std::move(coarse), std::move(fine)};
}

// --- general open sets ----------------------------------------------------------------------

namespace {

std::vector<std::vector<char>> star_union_cells(const SimplicialComplex& cx,
                                                const std::vector<Vertex>& star_vertices) {
  std::vector<char> is_star_vertex(cx.vertex_count(), 0);
  for (Vertex v : star_vertices) {
    if (v < 0 || v >= cx.vertex_count()) throw_input("open set: unknown star vertex");
    is_star_vertex[v] = 1;
  }
  std::vector<std::vector<char>> cells(cx.dim() + 1 > 0 ? cx.dim() + 1 : 0);
  for (int d = 0; d <= cx.dim(); ++d) {
    cells[d].assign(cx.num_simplices(d), 0);
    for (int i = 0; i < cx.num_simplices(d); ++i) {
      for (Vertex v : cx.simplex(d, i)) {
        if (is_star_vertex[v]) {
          cells[d][i] = 1;
          break;
        }
      }
    }
  }
  return cells;
}

}  // namespace

GeneralOpenSetResult index_on_general_open_set(TowerPtr tower, int v_level,
                                               const std::vector<Vertex>& star_vertices,
                                               int carrier_level, CarrierPtr carrier,
                                               int level_cap, ApproxOptions options) {
  if (carrier_level < v_level) throw_input("open set: carrier level below the set level");
  if (carrier->source_space().total_members() !=
      tower->at(carrier_level)->complex()->total_simplices())
    throw_input("open set: the carrier must be defined on the whole complex");
  if (star_vertices.empty()) throw_input("open set: no star vertices given");

  const std::vector<std::vector<char>> v_cells =
      star_union_cells(*tower->at(v_level)->complex(), star_vertices);

  CarrierPtr current = carrier;
  for (int j = 0; v_level + j <= v_level + level_cap; ++j) {
    const int m = v_level + j;
    const int l = carrier_level + j;
    if (j > 0) current = refine_carrier(*tower, current, l - 1, m - 1);
    const SimplicialComplex& cx_m = *tower->at(m)->complex();

    // Which level-m cells lie in V.
    std::vector<std::vector<char>> in_v(cx_m.dim() + 1 > 0 ? cx_m.dim() + 1 : 0);
    for (int d = 0; d <= cx_m.dim(); ++d) {
      in_v[d].assign(cx_m.num_simplices(d), 0);
      for (int i = 0; i < cx_m.num_simplices(d); ++i) {
        SimplexRef coarse = tower->carrier_ref(m, v_level, SimplexRef{d, i});
        in_v[d][i] = v_cells[coarse.dim][coarse.index];
      }
    }
    // Candidate closure: simplices whose entire closed cell lies in V.
    std::vector<std::vector<int>> closure_members(in_v.size());
    std::vector<std::vector<char>> in_closure(in_v.size());
    for (int d = 0; d <= cx_m.dim(); ++d) {
      in_closure[d].assign(cx_m.num_simplices(d), 0);
      for (int i = 0; i < cx_m.num_simplices(d); ++i) {
        if (!in_v[d][i]) continue;
        bool all_faces = true;
        if (d > 0) {
          for (int f : cx_m.facet_indices(d, i)) all_faces = all_faces && in_closure[d - 1][f];
        }
        if (all_faces) {
          in_closure[d][i] = 1;
          closure_members[d].push_back(i);
        }
      }
    }
    bool any = false;
    for (const auto& v : closure_members) any = any || !v.empty();
    if (!any) continue;

    OpenPolyhedralSet u = open_set_from_closure(tower->at(m)->complex(), closure_members);

    // Bad cells: open cells of V outside the interior of U; potential fixed
    // points must avoid them.
    auto interior = interior_cells(u);
    std::vector<std::vector<char>> bad = in_v;
    for (size_t d = 0; d < interior.size(); ++d) {
      for (int i : interior[d]) bad[d][i] = 0;
    }

    const SimplicialComplex& cx_l = *tower->at(l)->complex();
    bool blocked = false;
    for (int d = 0; d <= current->source_dim() && !blocked; ++d) {
      for (int i : current->source_space().members(d)) {
        SimplexRef sigma{d, i};
        if (!star_meets_value(*tower, l, m, sigma, current->value_of(sigma))) continue;
        // A potential fixed simplex: its closed cell must avoid V minus U.
        for (int fd = 0; fd <= d && !blocked; ++fd) {
          // enumerate faces via subsets of the vertex tuple
          const Simplex& s = cx_l.simplex(d, i);
          std::vector<int> pick(fd + 1);
          std::function<void(int, int)> rec = [&](int start, int chosen) {
            if (blocked) return;
            if (chosen == fd + 1) {
              Simplex face;
              for (int idx : pick) face.push_back(s[idx]);
              SimplexRef face_ref{fd, *cx_l.find(face)};
              SimplexRef coarse = tower->carrier_ref(l, m, face_ref);
              if (bad[coarse.dim][coarse.index]) blocked = true;
              return;
            }
            for (int v = start; v <= static_cast<int>(s.size()) - (fd + 1 - chosen); ++v) {
              pick[chosen] = v;
              rec(v + 1, chosen + 1);
            }
          };
          rec(0, 0);
        }
        if (blocked) break;
      }
    }
    if (blocked) continue;

    // Restrict the carrier to the subdivided closure and compute there.
    Subcomplex fine_closure = tower->subdivided_to(m, l, u.closure);
    const AcyclicCarrier& whole = *current;
    auto restricted = std::make_shared<const AcyclicCarrier>(
        fine_closure, whole.target(), [&](SimplexRef ref) { return whole.value_of(ref); });
    IndexProblem problem =
        make_index_problem(tower, m, std::move(u), l, std::move(restricted), options);
    AdmissibilityReport adm = check_admissible(problem);
    if (!adm.admissible) continue;

    GeneralOpenSetResult out;
    out.result = fixed_point_index(problem);
    out.chosen_level = m;
    out.refinements_used = j;
    return out;
  }
  throw Error(ErrorKind::kResolutionExhausted,
              "no polyhedral inner approximation separates the fixed set up to the level cap");
}

// --- domination -----------------------------------------------------------------------------

void validate_domination(SubdivisionTower& tower, const DominationData& d) {
  if (!d.ambient || d.retract.parent() != d.ambient)
    throw_input("domination: retract must be a subcomplex of the ambient complex");
  const SimplicialComplex& fine = *tower.at(d.level)->complex();
  if (static_cast<int>(d.retraction.size()) != fine.vertex_count())
    throw_input("domination: retraction map has the wrong length");
  // Images are vertices of X.
  for (Vertex w : d.retraction) {
    if (w < 0 || w >= d.ambient->vertex_count())
      throw_input("domination: retraction image out of range");
    auto idx = d.ambient->find({w});
    if (!idx || !d.retract.contains(0, *idx))
      throw_input("domination: retraction image " + d.ambient->vertex_name(w) +
                  " is not a vertex of the retract");
  }
  // r o s = id on X: exact at level 0; at finer levels the star condition
  // (the image vertex belongs to the carrier simplex) for vertices over X.
  for (Vertex w = 0; w < fine.vertex_count(); ++w) {
    SimplexRef carrier = tower.carrier_ref(d.level, 0, SimplexRef{0, *fine.find({w})});
    if (!d.retract.contains(carrier)) continue;  // not over X
    const Simplex& base_simplex = d.ambient->simplex(carrier);
    Vertex image = d.retraction[w];
    if (d.level == 0) {
      if (image != base_simplex[0])
        throw Error(ErrorKind::kInput, "domination: r o s is not the identity at vertex " +
                                           d.ambient->vertex_name(base_simplex[0]));
    } else if (!std::binary_search(base_simplex.begin(), base_simplex.end(), image)) {
      throw Error(ErrorKind::kInput,
                  "domination: retraction fails the star condition at " + fine.vertex_name(w));
    }
  }
}

IndexResult index_via_domination(TowerPtr tower, const DominationData& d, CarrierPtr f_on_x,
                                 const OpenPolyhedralSet& u_in_x, ApproxOptions options) {
  validate_domination(*tower, d);
  if (f_on_x->source_complex() != d.ambient || f_on_x->target() != d.ambient)
    throw_input("domination: the carrier must live on the ambient complex over the retract");
  if (!(f_on_x->source_space() == d.retract))
    throw_input("domination: the carrier must be defined exactly on the retract");
  for (int dd = 0; dd <= f_on_x->source_dim(); ++dd) {
    const int n = static_cast<int>(f_on_x->source_space().members(dd).size());
    for (int j = 0; j < n; ++j) {
      if (!subcomplex_subset(f_on_x->value(dd, j), d.retract))
        throw_input("domination: carrier values must stay inside the retract");
    }
  }
  // Scope: U = X (the whole retract). General U reduces to the plain index
  // when X is the whole complex.
  if (!(u_in_x.closure == d.retract))
    throw_input("domination: only U = X is supported on proper retracts");

  const SimplicialComplex& fine = *tower->at(d.level)->complex();
  // G = s o F o r on tau^m(K): value at sigma is F's value at r(sigma).
  auto assignment = [&](SimplexRef ref) -> Subcomplex {
    const Simplex& s = fine.simplex(ref);
    Simplex image;
    for (Vertex v : s) image.push_back(d.retraction[v]);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    auto idx = d.ambient->find(image);
    if (!idx)
      throw_input("domination: retraction is not simplicial at " + fine.simplex_label(ref));
    return f_on_x->value_of(SimplexRef{static_cast<int>(image.size()) - 1, *idx});
  };
  auto g = std::make_shared<const AcyclicCarrier>(
      Subcomplex::full(tower->at(d.level)->complex()), d.ambient, assignment);
  IndexProblem problem = whole_space_problem(tower, 0, d.level, std::move(g), options);
  return fixed_point_index(problem);
}

}  // namespace fpindex
