#include "fpindex/carrier.hpp"

#include <algorithm>
#include <map>

#include "fpindex/errors.hpp"

namespace fpindex {

bool subcomplex_subset(const Subcomplex& small, const Subcomplex& big) {
  if (small.parent() != big.parent()) return false;
  for (int d = 0; d <= small.dim(); ++d) {
    for (int i : small.members(d)) {
      if (!big.contains(d, i)) return false;
    }
  }
  return true;
}

namespace {

SparseVector column_of(const SparseIntMatrix& m, int j) {
  SparseVector out;
  for (int r : m.column_support(j)) out[r] = m.at(r, j);
  return out;
}

}  // namespace

// --- AcyclicCarrier ------------------------------------------------------------

AcyclicCarrier::AcyclicCarrier(Subcomplex source_space, ComplexPtr target,
                               const std::function<Subcomplex(SimplexRef)>& assignment)
    : source_space_(std::move(source_space)), target_(std::move(target)) {
  const int top = source_space_.dim();
  values_.resize(top + 1 > 0 ? top + 1 : 0);
  std::map<std::vector<std::vector<int>>, std::shared_ptr<const Subcomplex>> interned;
  for (int d = 0; d <= top; ++d) {
    const auto& members = source_space_.members(d);
    values_[d].reserve(members.size());
    for (int i : members) {
      Subcomplex v = assignment(SimplexRef{d, i});
      if (v.parent() != target_)
        throw_input("carrier value does not live in the target complex at " +
                    source_space_.parent()->simplex_label(d, i));
      if (v.is_empty())
        throw_input("carrier value is empty at " + source_space_.parent()->simplex_label(d, i));
      std::vector<std::vector<int>> key;
      for (int dd = 0; dd <= v.dim(); ++dd) key.push_back(v.members(dd));
      auto it = interned.find(key);
      if (it == interned.end()) {
        it = interned.emplace(std::move(key), std::make_shared<const Subcomplex>(std::move(v)))
                 .first;
      }
      values_[d].push_back(it->second);
    }
  }
  // Monotonicity: values grow along face inclusions.
  for (int d = 1; d <= top; ++d) {
    const auto& members = source_space_.members(d);
    for (size_t j = 0; j < members.size(); ++j) {
      for (int f : source_space_.parent()->facet_indices(d, members[j])) {
        if (!subcomplex_subset(value_of(SimplexRef{d - 1, f}), *values_[d][j]))
          throw_input("carrier is not monotone at " +
                      source_space_.parent()->simplex_label(d, members[j]));
      }
    }
  }
}

const Subcomplex& AcyclicCarrier::value_of(SimplexRef parent_ref) const {
  const auto& members = source_space_.members(parent_ref.dim);
  auto it = std::lower_bound(members.begin(), members.end(), parent_ref.index);
  if (it == members.end() || *it != parent_ref.index)
    throw_input("carrier: simplex outside the source space");
  return *values_[parent_ref.dim][it - members.begin()];
}

CarrierPtr carrier_of_simplicial_map(Subcomplex source_space, ComplexPtr target,
                                     const std::vector<Vertex>& vertex_map) {
  const ComplexPtr source = source_space.parent();
  if (static_cast<int>(vertex_map.size()) != source->vertex_count())
    throw_input("carrier_of_simplicial_map: vertex map has the wrong length");
  auto assignment = [&](SimplexRef ref) {
    const Simplex& s = source->simplex(ref);
    Simplex image;
    for (Vertex v : s) image.push_back(vertex_map[v]);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    auto idx = target->find(image);
    if (!idx)
      throw_input("vertex map is not simplicial: image of " + source->simplex_label(ref) +
                  " is not a simplex");
    return Subcomplex::face_closure(target,
                                    {SimplexRef{static_cast<int>(image.size()) - 1, *idx}});
  };
  return std::make_shared<const AcyclicCarrier>(std::move(source_space), target, assignment);
}

CarrierPtr constant_carrier(Subcomplex source_space, ComplexPtr target, Subcomplex value) {
  auto assignment = [&value](SimplexRef) { return value; };
  return std::make_shared<const AcyclicCarrier>(std::move(source_space), std::move(target),
                                                assignment);
}

// --- acyclicity -------------------------------------------------------------------

AcyclicityReport check_acyclic(const AcyclicCarrier& carrier, bool rational) {
  AcyclicityReport report;
  std::map<const Subcomplex*, std::optional<HomologyProfile>> verdicts;  // nullopt = acyclic
  for (int d = 0; d <= carrier.source_dim(); ++d) {
    const int n = static_cast<int>(carrier.source_space().members(d).size());
    for (int j = 0; j < n; ++j) {
      const Subcomplex* key = carrier.value_ptr(d, j).get();
      auto it = verdicts.find(key);
      if (it == verdicts.end()) {
        auto cc = ChainComplexData::of(*carrier.value_ptr(d, j));
        HomologyProfile p = homology(*cc, /*reduced=*/true);
        bool ok;
        if (rational) {
          ok = true;
          for (const auto& g : p.groups) ok = ok && g.betti == 0;
        } else {
          ok = p.trivial();
        }
        it = verdicts.emplace(key, ok ? std::nullopt : std::make_optional(std::move(p))).first;
      }
      ++report.checked;
      if (it->second) {
        report.all_acyclic = false;
        report.failures.push_back({carrier.source_ref(d, j), *it->second});
      }
    }
  }
  return report;
}

// --- building approximations ----------------------------------------------------------

namespace {

// Per-carrier solver cache; values are interned, so pointers are stable keys.
class ValueSolvers {
 public:
  explicit ValueSolvers(const AcyclicCarrier& carrier) : carrier_(carrier) {}

  const BoundarySolver& for_value(int d, int j) {
    const Subcomplex* key = carrier_.value_ptr(d, j).get();
    auto it = cache_.find(key);
    if (it == cache_.end())
      it = cache_.emplace(key, std::make_unique<BoundarySolver>(*carrier_.value_ptr(d, j))).first;
    return *it->second;
  }

 private:
  const AcyclicCarrier& carrier_;
  std::map<const Subcomplex*, std::unique_ptr<BoundarySolver>> cache_;
};

}  // namespace

BuildResult build_chain_approximation(CarrierPtr carrier, ApproxOptions options) {
  BuildResult result;
  auto src_cc = ChainComplexData::of(carrier->source_space());
  auto tgt_cc = ChainComplexData::of_complex(carrier->target());

  GradedIntegerMap f;
  f.source = src_cc;
  f.target = tgt_cc;
  f.degree = 0;

  ValueSolvers solvers(*carrier);
  const SimplicialComplex& target = *carrier->target();

  for (int d = 0; d <= src_cc->dim(); ++d) {
    SparseIntMatrix m(std::max(tgt_cc->rank(d), 0), src_cc->rank(d));
    for (int j = 0; j < src_cc->rank(d); ++j) {
      if (d == 0) {
        const Subcomplex& value = carrier->value(0, j);
        Vertex w = options.vertex_rule == ApproxOptions::VertexRule::kLeast
                       ? *value.least_vertex()
                       : *value.greatest_vertex();
        auto idx = target.find({w});
        m.set(*tgt_cc->local_index(0, *idx), j, 1);
        continue;
      }
      // z = f(boundary of sigma): a cycle inside the value by monotonicity.
      SparseVector z = f.mats[d - 1].apply(column_of(src_cc->boundary(d), j));
      Chain cycle{d - 1, std::move(z)};
      const BoundarySolver& solver = solvers.for_value(d, j);
      SolveBoundaryResult fill = solver.fill(cycle);
      if (!fill.ok()) {
        result.failure = FillObstruction{carrier->source_ref(d, j), *fill.obstruction};
        return result;
      }
      Chain c = *fill.chain;
      if (options.kernel_tweak) {
        if (auto k = solver.kernel_element(d)) c.coeffs = sparse_add(c.coeffs, k->coeffs);
      }
      for (const auto& [idx, v] : c.coeffs) m.set(*tgt_cc->local_index(d, idx), j, v);
    }
    f.mats.push_back(std::move(m));
  }

  result.approximation = ChainApproximation{std::move(carrier), std::move(f), 0, 0};
  return result;
}

ChainApproximation build_chain_approximation_or_throw(CarrierPtr carrier, ApproxOptions options) {
  const SimplicialComplex& source = *carrier->source_complex();
  BuildResult r = build_chain_approximation(std::move(carrier), options);
  if (!r.ok()) {
    throw Error(ErrorKind::kAcyclicityFailure, "chain approximation obstructed at " +
                                                   source.simplex_label(r.failure->simplex));
  }
  return *r.approximation;
}

// --- verification -----------------------------------------------------------------------

bool is_carried(const GradedIntegerMap& f, const AcyclicCarrier& carrier, CarriedWitness* witness) {
  for (int d = 0; d <= carrier.source_dim(); ++d) {
    if (d >= static_cast<int>(f.mats.size())) break;
    const int n = f.mats[d].cols();
    for (int j = 0; j < n; ++j) {
      const Subcomplex& value = carrier.value(d, j);
      for (int r : f.mats[d].column_support(j)) {
        const int target_dim = d + f.degree;
        const int parent_idx = f.target->parent_index(target_dim, r);
        if (!value.contains(target_dim, parent_idx)) {
          if (witness) {
            witness->simplex = carrier.source_ref(d, j);
            witness->target_ref = SimplexRef{target_dim, parent_idx};
          }
          return false;
        }
      }
    }
  }
  return true;
}

ApproximationReport verify_approximation(const ChainApproximation& a) {
  ApproximationReport report;
  report.chain_map = is_chain_map(a.map, &report.chain_witness);
  CarriedWitness cw;
  report.carried = is_carried(a.map, *a.carrier, &cw);
  if (!report.carried) report.carried_witness = cw;
  return report;
}

// --- homotopies --------------------------------------------------------------------------

namespace {

bool same_carrier(const AcyclicCarrier& a, const AcyclicCarrier& b) {
  if (&a == &b) return true;
  if (!(a.source_space() == b.source_space()) || !same_complex(a.target(), b.target()))
    return false;
  for (int d = 0; d <= a.source_dim(); ++d) {
    const int n = static_cast<int>(a.source_space().members(d).size());
    for (int j = 0; j < n; ++j) {
      if (!(a.value(d, j) == b.value(d, j))) return false;
    }
  }
  return true;
}

}  // namespace

HomotopyResult homotopy_between(const ChainApproximation& a1, const ChainApproximation& a2) {
  if (!a1.carrier || !a2.carrier || !same_carrier(*a1.carrier, *a2.carrier))
    throw_input("homotopy_between: approximations do not share a carrier");
  ApproximationReport r1 = verify_approximation(a1);
  ApproximationReport r2 = verify_approximation(a2);
  if (!r1.ok() || !r2.ok())
    throw_input("homotopy_between: input is not a verified approximation");

  const AcyclicCarrier& carrier = *a1.carrier;
  ChainDataPtr src_cc = a1.map.source;
  ChainDataPtr tgt_cc = a1.map.target;

  HomotopyResult result;
  GradedIntegerMap d_map;
  d_map.source = src_cc;
  d_map.target = tgt_cc;
  d_map.degree = 1;

  ValueSolvers solvers(carrier);
  for (int d = 0; d <= src_cc->dim(); ++d) {
    SparseIntMatrix m(std::max(tgt_cc->rank(d + 1), 0), src_cc->rank(d));
    for (int j = 0; j < src_cc->rank(d); ++j) {
      SparseVector rhs =
          sparse_sub(column_of(a1.map.mats[d], j), column_of(a2.map.mats[d], j));
      if (d >= 1) {
        rhs = sparse_sub(rhs, d_map.mats[d - 1].apply(column_of(src_cc->boundary(d), j)));
      }
      const BoundarySolver& solver = solvers.for_value(d, j);
      SolveBoundaryResult fill = solver.fill(Chain{d, std::move(rhs)});
      if (!fill.ok()) {
        result.failure = FillObstruction{carrier.source_ref(d, j), *fill.obstruction};
        return result;
      }
      for (const auto& [idx, v] : fill.chain->coeffs)
        m.set(*tgt_cc->local_index(d + 1, idx), j, v);
    }
    d_map.mats.push_back(std::move(m));
  }
  result.homotopy = std::move(d_map);
  return result;
}

// --- composition -------------------------------------------------------------------------

namespace {

CompositionResult compose_impl(const ChainApproximation& outer, const ChainApproximation& inner,
                               const std::vector<SubdivisionPtr>& middle_steps) {
  const ComplexPtr middle_coarse = inner.map.target->complex();
  const ComplexPtr middle_fine = outer.map.source->complex();
  if (!middle_steps.empty()) {
    if (middle_steps.front()->previous() == nullptr ||
        middle_steps.front()->previous()->complex() != middle_coarse)
      throw_input("compose: subdivision steps do not start at the inner target");
    for (size_t i = 0; i + 1 < middle_steps.size(); ++i) {
      if (middle_steps[i + 1]->previous() == nullptr ||
          middle_steps[i]->complex() != middle_steps[i + 1]->previous()->complex())
        throw_input("compose: subdivision steps are not consecutive");
    }
    if (middle_steps.back()->complex() != middle_fine)
      throw_input("compose: subdivision steps do not reach the outer source");
  } else if (!same_complex(middle_coarse, middle_fine)) {
    throw_input("compose: factor levels differ; supply the middle subdivision steps");
  }
  if (outer.carrier->source_space().total_members() != middle_fine->total_simplices())
    throw_input("compose: outer carrier must be defined on the whole middle complex");

  // Chain level: outer o b o inner.
  GradedIntegerMap b = identity_map(inner.map.target);
  ChainDataPtr prev_cc = inner.map.target;
  for (const SubdivisionPtr& step : middle_steps) {
    ChainDataPtr next_cc = ChainComplexData::of_complex(step->complex());
    b = compose(subdivision_step_map(*step, prev_cc, next_cc), b);
    prev_cc = next_cc;
  }
  GradedIntegerMap composite_map = compose(outer.map, compose(b, inner.map));

  // Carrier level: push the inner value through the subdivisions, then take
  // the union of outer values over all its simplices.
  const AcyclicCarrier& inner_car = *inner.carrier;
  const AcyclicCarrier& outer_car = *outer.carrier;
  std::map<const Subcomplex*, Subcomplex> union_cache;
  auto assignment = [&](SimplexRef ref) {
    const std::shared_ptr<const Subcomplex>& raw = [&] {
      const auto& members = inner_car.source_space().members(ref.dim);
      auto it = std::lower_bound(members.begin(), members.end(), ref.index);
      return inner_car.value_ptr(ref.dim, static_cast<int>(it - members.begin()));
    }();
    auto cached = union_cache.find(raw.get());
    if (cached != union_cache.end()) return cached->second;
    Subcomplex pushed = *raw;
    for (const SubdivisionPtr& step : middle_steps) pushed = step->subdivided(pushed);
    Subcomplex out = Subcomplex::empty(outer_car.target());
    for (int d = 0; d <= pushed.dim(); ++d) {
      for (int i : pushed.members(d)) {
        out = Subcomplex::union_of(out, outer_car.value_of(SimplexRef{d, i}));
      }
    }
    union_cache.emplace(raw.get(), out);
    return out;
  };
  auto composite_carrier = std::make_shared<const AcyclicCarrier>(
      inner_car.source_space(), outer_car.target(), assignment);

  CompositionResult result{
      ChainApproximation{composite_carrier, std::move(composite_map), inner.level_source,
                         outer.level_target},
      composite_carrier,
      {},
  };
  AcyclicityReport acyclicity = check_acyclic(*composite_carrier);
  for (const auto& fail : acyclicity.failures) result.non_acyclic_values.push_back(fail.simplex);
  return result;
}

}  // namespace

CompositionResult compose_approximations(const ChainApproximation& outer,
                                         const ChainApproximation& inner) {
  return compose_impl(outer, inner, {});
}

CompositionResult compose_approximations(const ChainApproximation& outer,
                                         const ChainApproximation& inner,
                                         const std::vector<SubdivisionPtr>& middle_steps) {
  return compose_impl(outer, inner, middle_steps);
}

// --- prisms ------------------------------------------------------------------------------

PrismData build_prism(ComplexPtr base) {
  PrismData p;
  p.base = base;
  const int nv = base->vertex_count();
  std::vector<std::string> names;
  names.reserve(2 * nv);
  for (Vertex v = 0; v < nv; ++v) names.push_back(base->vertex_name(v) + "@0");
  for (Vertex v = 0; v < nv; ++v) names.push_back(base->vertex_name(v) + "@1");
  p.bottom.resize(nv);
  p.top.resize(nv);
  for (Vertex v = 0; v < nv; ++v) {
    p.bottom[v] = v;
    p.top[v] = nv + v;
  }

  std::vector<Simplex> cells;
  for (int d = 0; d <= base->dim(); ++d) {
    for (int i = 0; i < base->num_simplices(d); ++i) {
      const Simplex& s = base->simplex(d, i);
      for (int split = 0; split <= d; ++split) {
        Simplex cell;
        for (int k = 0; k <= split; ++k) cell.push_back(p.bottom[s[k]]);
        for (int k = split; k <= d; ++k) cell.push_back(p.top[s[k]]);
        cells.push_back(std::move(cell));
      }
    }
  }
  p.prism = SimplicialComplex::from_simplices(std::move(names), cells);
  p.base_cc = ChainComplexData::of_complex(base);
  p.prism_cc = ChainComplexData::of_complex(p.prism);
  p.bottom_inclusion = simplicial_chain_map(p.bottom, p.base_cc, p.prism_cc);
  p.top_inclusion = simplicial_chain_map(p.top, p.base_cc, p.prism_cc);

  GradedIntegerMap op;
  op.source = p.base_cc;
  op.target = p.prism_cc;
  op.degree = 1;
  for (int d = 0; d <= base->dim(); ++d) {
    SparseIntMatrix m(p.prism_cc->rank(d + 1), p.base_cc->rank(d));
    for (int i = 0; i < base->num_simplices(d); ++i) {
      const Simplex& s = base->simplex(d, i);
      int sign = 1;
      for (int split = 0; split <= d; ++split) {
        Simplex cell;
        for (int k = 0; k <= split; ++k) cell.push_back(p.bottom[s[k]]);
        for (int k = split; k <= d; ++k) cell.push_back(p.top[s[k]]);
        m.add_at(*p.prism->find(cell), i, sign);
        sign = -sign;
      }
    }
    op.mats.push_back(std::move(m));
  }
  p.prism_operator = std::move(op);
  return p;
}

namespace {

Simplex map_simplex(const std::vector<Vertex>& vmap, const Simplex& s) {
  Simplex out;
  for (Vertex v : s) out.push_back(vmap[v]);
  return out;  // strictly increasing maps keep the order
}

}  // namespace

SimplexRef prism_bottom_ref(const PrismData& p, SimplexRef base_ref) {
  Simplex cell = map_simplex(p.bottom, p.base->simplex(base_ref));
  return SimplexRef{base_ref.dim, *p.prism->find(cell)};
}

SimplexRef prism_top_ref(const PrismData& p, SimplexRef base_ref) {
  Simplex cell = map_simplex(p.top, p.base->simplex(base_ref));
  return SimplexRef{base_ref.dim, *p.prism->find(cell)};
}

// Face closure of the staircase cells over one base simplex.
static Subcomplex prism_region(const PrismData& p, SimplexRef base_ref) {
  const Simplex& s = p.base->simplex(base_ref);
  std::vector<SimplexRef> gens;
  for (int split = 0; split <= base_ref.dim; ++split) {
    Simplex cell;
    for (int k = 0; k <= split; ++k) cell.push_back(p.bottom[s[k]]);
    for (int k = split; k <= base_ref.dim; ++k) cell.push_back(p.top[s[k]]);
    gens.push_back(SimplexRef{base_ref.dim + 1, *p.prism->find(cell)});
  }
  return Subcomplex::face_closure(p.prism, gens);
}

PrismHomotopyResult prism_homotopy(CarrierPtr c1, CarrierPtr c2, CarrierPtr h,
                                   const PrismData& prism, ApproxOptions options) {
  if (c1->source_complex() != prism.base || c2->source_complex() != prism.base)
    throw_input("prism_homotopy: carriers do not live over the prism base");
  if (c1->source_space().total_members() != prism.base->total_simplices() ||
      c2->source_space().total_members() != prism.base->total_simplices())
    throw_input("prism_homotopy: carriers must be defined on the whole base");
  if (c1->target() != c2->target() || h->target() != c1->target())
    throw_input("prism_homotopy: targets differ");
  if (h->source_complex() != prism.prism ||
      h->source_space().total_members() != prism.prism->total_simplices())
    throw_input("prism_homotopy: homotopy carrier must cover the whole prism");

  // H restricts to c1 at the bottom and to c2 at the top.
  for (int d = 0; d <= prism.base->dim(); ++d) {
    for (int i = 0; i < prism.base->num_simplices(d); ++i) {
      SimplexRef ref{d, i};
      if (!(h->value_of(prism_bottom_ref(prism, ref)) == c1->value_of(ref)))
        throw_input("prism_homotopy: bottom restriction mismatch at " +
                    prism.base->simplex_label(d, i));
      if (!(h->value_of(prism_top_ref(prism, ref)) == c2->value_of(ref)))
        throw_input("prism_homotopy: top restriction mismatch at " +
                    prism.base->simplex_label(d, i));
    }
  }

  PrismHomotopyResult result;
  // The homotopy carrier: everything H does over the prism of a simplex.
  auto w_assignment = [&](SimplexRef ref) {
    Subcomplex region = prism_region(prism, ref);
    Subcomplex out = Subcomplex::empty(h->target());
    for (int d = 0; d <= region.dim(); ++d) {
      for (int i : region.members(d)) out = Subcomplex::union_of(out, h->value_of({d, i}));
    }
    return out;
  };
  result.homotopy_carrier = std::make_shared<const AcyclicCarrier>(
      Subcomplex::full(prism.base), c1->target(), w_assignment);

  BuildResult b1 = build_chain_approximation(c1, options);
  if (!b1.ok()) {
    result.failure = b1.failure;
    return result;
  }
  BuildResult b2 = build_chain_approximation(c2, options);
  if (!b2.ok()) {
    result.failure = b2.failure;
    return result;
  }
  BuildResult bh = build_chain_approximation(h, options);
  if (!bh.ok()) {
    result.failure = bh.failure;
    return result;
  }
  result.bottom = *b1.approximation;
  result.top = *b2.approximation;

  const GradedIntegerMap& phi = bh.approximation->map;
  GradedIntegerMap phi_bottom = compose(phi, prism.bottom_inclusion);
  GradedIntegerMap phi_top = compose(phi, prism.top_inclusion);

  // End corrections inside c1 and c2 (zero under canonical choices), plus the
  // prism part. D = d1 - Phi o P + d2 realizes bottom - top = dD + Dd.
  HomotopyResult d1 =
      homotopy_between(result.bottom, ChainApproximation{c1, phi_bottom, 0, 0});
  if (!d1.ok()) {
    result.failure = d1.failure;
    return result;
  }
  HomotopyResult d2 = homotopy_between(ChainApproximation{c2, phi_top, 0, 0}, result.top);
  if (!d2.ok()) {
    result.failure = d2.failure;
    return result;
  }
  GradedIntegerMap phi_p = compose(phi, prism.prism_operator);
  result.homotopy = map_sum(map_difference(*d1.homotopy, phi_p), *d2.homotopy);
  return result;
}

}  // namespace fpindex
