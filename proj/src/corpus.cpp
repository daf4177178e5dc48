#include "fpindex/corpus.hpp"

#include <algorithm>
#include <sstream>

#include "fpindex/errors.hpp"

namespace fpindex::corpus {

namespace {

std::vector<std::vector<std::string>> cyclic_edges(const std::string& prefix, int n) {
  std::vector<std::vector<std::string>> out;
  for (int i = 0; i < n; ++i)
    out.push_back({prefix + std::to_string(i), prefix + std::to_string((i + 1) % n)});
  return out;
}

}  // namespace

ComplexPtr triangle_circle() {
  return SimplicialComplex::from_maximal_tuples({{"a", "b"}, {"b", "c"}, {"a", "c"}});
}

ComplexPtr hexagon_circle() { return SimplicialComplex::from_maximal_tuples(cyclic_edges("h", 6)); }

ComplexPtr full_triangle() { return SimplicialComplex::from_maximal_tuples({{"a", "b", "c"}}); }

ComplexPtr path_complex(int n) {
  std::vector<std::vector<std::string>> edges;
  for (int i = 0; i < n; ++i)
    edges.push_back({"p" + std::to_string(i), "p" + std::to_string(i + 1)});
  return SimplicialComplex::from_maximal_tuples(edges);
}

ComplexPtr sphere2() {
  return SimplicialComplex::from_maximal_tuples(
      {{"s0", "s1", "s2"}, {"s0", "s1", "s3"}, {"s0", "s2", "s3"}, {"s1", "s2", "s3"}});
}

ComplexPtr projective_plane() {
  const std::vector<std::vector<int>> faces = {{1, 2, 5}, {1, 2, 6}, {1, 3, 4}, {1, 3, 6},
                                               {1, 4, 5}, {2, 3, 4}, {2, 3, 5}, {2, 4, 6},
                                               {3, 5, 6}, {4, 5, 6}};
  std::vector<std::vector<std::string>> tuples;
  for (const auto& f : faces)
    tuples.push_back(
        {"r" + std::to_string(f[0]), "r" + std::to_string(f[1]), "r" + std::to_string(f[2])});
  return SimplicialComplex::from_maximal_tuples(tuples);
}

ComplexPtr torus7() {
  std::vector<std::vector<std::string>> tuples;
  auto v = [](int i) { return "t" + std::to_string(((i % 7) + 7) % 7); };
  for (int i = 0; i < 7; ++i) {
    tuples.push_back({v(i), v(i + 1), v(i + 3)});
    tuples.push_back({v(i), v(i + 2), v(i + 3)});
  }
  return SimplicialComplex::from_maximal_tuples(tuples);
}

ComplexPtr klein9() {
  // 3 x 3 grid; columns wrap, the top row glues to the bottom with a flip.
  auto v = [](int col, int row) {
    if (row == 3) {
      col = ((3 - col) % 3 + 3) % 3;
      row = 0;
    }
    col = ((col % 3) + 3) % 3;
    return "k" + std::to_string(col) + std::to_string(row);
  };
  std::vector<std::vector<std::string>> tuples;
  for (int col = 0; col < 3; ++col) {
    for (int row = 0; row < 3; ++row) {
      std::string a = v(col, row), b = v(col + 1, row);
      std::string c = v(col, row + 1), d = v(col + 1, row + 1);
      tuples.push_back({a, b, d});
      tuples.push_back({a, d, c});
    }
  }
  return SimplicialComplex::from_maximal_tuples(tuples);
}

ComplexPtr annulus_hex() {
  std::vector<std::vector<std::string>> tuples;
  auto o = [](int i) { return "o" + std::to_string(((i % 6) + 6) % 6); };
  auto in = [](int i) { return "i" + std::to_string(((i % 6) + 6) % 6); };
  for (int j = 0; j < 6; ++j) {
    tuples.push_back({o(j), o(j + 1), in(j)});
    tuples.push_back({o(j + 1), in(j), in(j + 1)});
  }
  return SimplicialComplex::from_maximal_tuples(tuples);
}

ComplexPtr cone_over_projective_plane() {
  auto p = projective_plane();
  std::vector<std::vector<std::string>> tuples;
  for (int i = 0; i < p->num_simplices(2); ++i) {
    const Simplex& s = p->simplex(2, i);
    std::vector<std::string> t;
    for (Vertex v : s) t.push_back(p->vertex_name(v));
    tuples.push_back(t);  // the base face
    t.push_back("z");     // and its join with the apex
    tuples.push_back(t);
  }
  return SimplicialComplex::from_maximal_tuples(tuples);
}

ComplexPtr two_triangles() {
  return SimplicialComplex::from_maximal_tuples({{"a0", "a1", "a2"}, {"b0", "b1", "b2"}});
}

Subcomplex annulus_core(const ComplexPtr& annulus) {
  std::vector<SimplexRef> gens;
  for (int j = 0; j < 6; ++j) {
    Simplex e{*annulus->vertex_id("i" + std::to_string(j)),
              *annulus->vertex_id("i" + std::to_string((j + 1) % 6))};
    if (int sign = normalize_simplex(e); sign == 0) throw_input("internal: degenerate core edge");
    gens.push_back(SimplexRef{1, *annulus->find(e)});
  }
  return Subcomplex::face_closure(annulus, gens);
}

std::vector<Vertex> annulus_retraction(const ComplexPtr& annulus) {
  std::vector<Vertex> r(annulus->vertex_count());
  for (int j = 0; j < 6; ++j) {
    Vertex inner = *annulus->vertex_id("i" + std::to_string(j));
    Vertex outer = *annulus->vertex_id("o" + std::to_string(j));
    r[inner] = inner;
    r[outer] = inner;
  }
  return r;
}

std::vector<NamedComplex> surface_corpus() {
  return {
      {"circle", hexagon_circle()},  {"disk", full_triangle()}, {"torus", torus7()},
      {"rp2", projective_plane()},   {"klein", klein9()},
  };
}

std::vector<NamedComplex> all_complexes() {
  std::vector<NamedComplex> out = surface_corpus();
  out.push_back({"triangle_circle", triangle_circle()});
  out.push_back({"path4", path_complex(4)});
  out.push_back({"sphere", sphere2()});
  out.push_back({"annulus", annulus_hex()});
  out.push_back({"cone_rp2", cone_over_projective_plane()});
  out.push_back({"two_triangles", two_triangles()});
  return out;
}

// --- generated chain self-maps --------------------------------------------------

namespace {

struct MapPool {
  std::string complex_name;
  ComplexPtr complex;
  std::vector<std::pair<std::string, std::vector<Vertex>>> vertex_maps;
};

std::vector<MapPool> map_pools() {
  std::vector<MapPool> pools;
  {
    MapPool p{"hexagon", hexagon_circle(), {}};
    for (int r = 0; r < 6; ++r) {
      std::vector<Vertex> rot(6), refl(6);
      for (int i = 0; i < 6; ++i) {
        rot[i] = (i + r) % 6;
        refl[i] = ((r - i) % 6 + 6) % 6;
      }
      p.vertex_maps.push_back({"rot" + std::to_string(r), rot});
      p.vertex_maps.push_back({"refl" + std::to_string(r), refl});
    }
    p.vertex_maps.push_back({"const0", std::vector<Vertex>(6, 0)});
    pools.push_back(std::move(p));
  }
  {
    MapPool p{"disk", full_triangle(), {}};
    p.vertex_maps.push_back({"cycle", {1, 2, 0}});
    p.vertex_maps.push_back({"swap", {1, 0, 2}});
    p.vertex_maps.push_back({"collapse", {0, 0, 1}});
    p.vertex_maps.push_back({"const", {2, 2, 2}});
    pools.push_back(std::move(p));
  }
  {
    MapPool p{"torus", torus7(), {}};
    std::vector<Vertex> shift(7), twice(7), thrice(7);
    for (int i = 0; i < 7; ++i) {
      shift[i] = (i + 1) % 7;
      twice[i] = (2 * i) % 7;
      thrice[i] = (3 * i) % 7;
    }
    p.vertex_maps.push_back({"shift", shift});
    p.vertex_maps.push_back({"times2", twice});
    p.vertex_maps.push_back({"times3", thrice});
    std::vector<Vertex> id7(7);
    for (int i = 0; i < 7; ++i) id7[i] = i;
    p.vertex_maps.push_back({"id", id7});
    pools.push_back(std::move(p));
  }
  {
    MapPool p{"sphere", sphere2(), {}};
    p.vertex_maps.push_back({"cycle", {1, 2, 3, 0}});
    p.vertex_maps.push_back({"swap", {1, 0, 2, 3}});
    p.vertex_maps.push_back({"collapse", {0, 0, 1, 2}});
    p.vertex_maps.push_back({"const", {3, 3, 3, 3}});
    pools.push_back(std::move(p));
  }
  {
    MapPool p{"rp2", projective_plane(), {}};
    std::vector<Vertex> id6(6);
    for (int i = 0; i < 6; ++i) id6[i] = i;
    p.vertex_maps.push_back({"id", id6});
    p.vertex_maps.push_back({"const", std::vector<Vertex>(6, 0)});
    pools.push_back(std::move(p));
  }
  {
    MapPool p{"klein", klein9(), {}};
    std::vector<Vertex> id9(9);
    for (int i = 0; i < 9; ++i) id9[i] = i;
    p.vertex_maps.push_back({"id", id9});
    p.vertex_maps.push_back({"const", std::vector<Vertex>(9, 0)});
    pools.push_back(std::move(p));
  }
  return pools;
}

}  // namespace

std::vector<NamedChainMap> chain_self_map_battery(unsigned seed, int count) {
  std::vector<MapPool> pools = map_pools();
  std::vector<ChainDataPtr> ccs;
  for (const auto& p : pools) ccs.push_back(ChainComplexData::of_complex(p.complex));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-2, 2);
  std::vector<NamedChainMap> out;
  for (int n = 0; n < count; ++n) {
    const size_t pi = rng() % pools.size();
    const MapPool& pool = pools[pi];
    const ChainDataPtr& cc = ccs[pi];
    auto pick = [&]() -> const std::pair<std::string, std::vector<Vertex>>& {
      return pool.vertex_maps[rng() % pool.vertex_maps.size()];
    };
    const int mode = static_cast<int>(rng() % 3);
    std::ostringstream name;
    name << pool.complex_name << "#" << n << ":";
    GradedIntegerMap f;
    if (mode == 0) {
      const auto& m = pick();
      f = simplicial_chain_map(m.second, cc, cc);
      name << m.first;
    } else if (mode == 1) {
      const auto& m1 = pick();
      const auto& m2 = pick();
      Int a = coeff(rng), b = coeff(rng);
      f = map_sum(map_scaled(simplicial_chain_map(m1.second, cc, cc), a),
                  map_scaled(simplicial_chain_map(m2.second, cc, cc), b));
      name << a << "*" << m1.first << "+" << b << "*" << m2.first;
    } else {
      const auto& m1 = pick();
      const auto& m2 = pick();
      f = compose(simplicial_chain_map(m1.second, cc, cc),
                  simplicial_chain_map(m2.second, cc, cc));
      name << m1.first << "o" << m2.first;
    }
    out.push_back({name.str(), std::move(f)});
  }
  return out;
}

// --- carriers ---------------------------------------------------------------------

namespace {

std::vector<Vertex> identity_vertex_map(const ComplexPtr& c) {
  std::vector<Vertex> v(c->vertex_count());
  for (int i = 0; i < c->vertex_count(); ++i) v[i] = i;
  return v;
}

Subcomplex vertex_value(const ComplexPtr& c, const std::string& name) {
  return Subcomplex::face_closure(c, {SimplexRef{0, *c->find({*c->vertex_id(name)})}});
}

Subcomplex edge_value(const ComplexPtr& c, const std::string& a, const std::string& b) {
  Simplex e{*c->vertex_id(a), *c->vertex_id(b)};
  normalize_simplex(e);
  return Subcomplex::face_closure(c, {SimplexRef{1, *c->find(e)}});
}

CarrierPtr restrict_to(const CarrierPtr& full, Subcomplex sub_source) {
  const AcyclicCarrier& whole = *full;
  return std::make_shared<const AcyclicCarrier>(
      std::move(sub_source), whole.target(),
      [&whole](SimplexRef ref) { return whole.value_of(ref); });
}

// Pushes a simplicial vertex map tau^a -> tau^b one subdivision level up:
// the barycenter of s goes to the barycenter of the image simplex of s.
std::vector<Vertex> sd_vertex_map(SubdivisionTower& tower, int src_level, int tgt_level,
                                  const std::vector<Vertex>& vmap) {
  const SubdivisionPtr& fine_src = tower.at(src_level + 1);
  const SubdivisionPtr& fine_tgt = tower.at(tgt_level + 1);
  const SimplicialComplex& src = *tower.at(src_level)->complex();
  const SimplicialComplex& tgt = *tower.at(tgt_level)->complex();
  const SimplicialComplex& fine = *fine_src->complex();
  std::vector<Vertex> out(fine.vertex_count());
  for (Vertex w = 0; w < fine.vertex_count(); ++w) {
    SimplexRef s = fine_src->vertex_source(w);
    Simplex image;
    for (Vertex v : src.simplex(s)) image.push_back(vmap[v]);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    auto idx = tgt.find(image);
    if (!idx) throw_input("sd_vertex_map: the vertex map is not simplicial");
    out[w] = fine_tgt->barycenter_vertex(static_cast<int>(image.size()) - 1, *idx);
  }
  return out;
}

// The flow map on the path p0..p4: fixed at both ends, moving right between.
// Defined on the first subdivision; h_i are the base vertices, midpoints sit
// between them.
std::vector<Vertex> path_flow_map(SubdivisionTower& tower) {
  const SimplicialComplex& base = *tower.at(0)->complex();
  const SubdivisionPtr& rec = tower.at(1);
  const SimplicialComplex& fine = *rec->complex();
  auto base_vertex = [&](int i) { return *base.vertex_id("p" + std::to_string(i)); };
  std::vector<Vertex> out(fine.vertex_count());
  for (Vertex w = 0; w < fine.vertex_count(); ++w) {
    SimplexRef s = rec->vertex_source(w);
    if (s.dim == 0) {
      // p0 -> p0, p4 -> p4, p_i -> p_{i+1} otherwise
      Vertex v = base.simplex(s)[0];
      int i = -1;
      for (int k = 0; k <= 4; ++k) {
        if (base_vertex(k) == v) i = k;
      }
      out[w] = (i == 0 || i == 4) ? v : base_vertex(i + 1);
    } else {
      // midpoint of [p_i, p_{i+1}] -> p_{i+1}
      const Simplex& e = base.simplex(s);
      int hi = -1;
      for (int k = 0; k <= 4; ++k) {
        if (base_vertex(k) == e[0] || base_vertex(k) == e[1]) hi = std::max(hi, k);
      }
      out[w] = base_vertex(hi);
    }
  }
  return out;
}

// Degree-one circle map on the hexagon with an attractor at h0 and a
// repeller at h3, defined on the first subdivision.
std::vector<Vertex> circle_two_fixed_map(SubdivisionTower& tower) {
  const SimplicialComplex& base = *tower.at(0)->complex();
  const SubdivisionPtr& rec = tower.at(1);
  const SimplicialComplex& fine = *rec->complex();
  auto h = [&](int i) { return *base.vertex_id("h" + std::to_string(((i % 6) + 6) % 6)); };
  // images on base vertices and on midpoints m(i) of [h_i, h_{i+1}]
  // flow: 3 -> 4 -> 5 -> 0 on one side, 3 -> 2 -> 1 -> 0 on the other
  std::vector<int> vertex_image = {0, 0, 1, 3, 5, 0};  // h_i -> h_{image[i]}
  std::vector<int> midpoint_image = {0, 1, 2, 4, 5, 0};  // m(i) -> h_{...}
  std::vector<Vertex> out(fine.vertex_count());
  for (Vertex w = 0; w < fine.vertex_count(); ++w) {
    SimplexRef s = rec->vertex_source(w);
    if (s.dim == 0) {
      Vertex v = base.simplex(s)[0];
      for (int i = 0; i < 6; ++i) {
        if (h(i) == v) out[w] = h(vertex_image[i]);
      }
    } else {
      const Simplex& e = base.simplex(s);
      for (int i = 0; i < 6; ++i) {
        Simplex probe{h(i), h(i + 1)};
        normalize_simplex(probe);
        if (probe == e) out[w] = h(midpoint_image[i]);
      }
    }
  }
  return out;
}

}  // namespace

std::vector<NamedCarrier> carrier_corpus() {
  std::vector<NamedCarrier> out;
  auto add = [&out](std::string name, CarrierPtr c) { out.push_back({std::move(name), std::move(c)}); };

  auto disk = full_triangle();
  add("identity_disk", carrier_of_simplicial_map(Subcomplex::full(disk), disk,
                                                 identity_vertex_map(disk)));
  add("constant_disk", constant_carrier(Subcomplex::full(disk), disk, vertex_value(disk, "a")));
  add("full_disk", constant_carrier(Subcomplex::full(disk), disk, Subcomplex::full(disk)));

  auto hexa = hexagon_circle();
  add("identity_hexagon", carrier_of_simplicial_map(Subcomplex::full(hexa), hexa,
                                                    identity_vertex_map(hexa)));
  {
    std::vector<Vertex> rot(6);
    for (int i = 0; i < 6; ++i) rot[i] = (i + 1) % 6;
    add("rotation_hexagon", carrier_of_simplicial_map(Subcomplex::full(hexa), hexa, rot));
  }
  add("edge_constant_hexagon",
      constant_carrier(Subcomplex::full(hexa), hexa, edge_value(hexa, "h0", "h1")));

  auto torus = torus7();
  add("star_constant_torus",
      constant_carrier(Subcomplex::full(torus), torus,
                       closed_star(torus, SimplexRef{0, *torus->find({*torus->vertex_id("t0")})})));

  auto rp2 = projective_plane();
  add("triangle_constant_rp2",
      constant_carrier(Subcomplex::full(rp2), rp2,
                       Subcomplex::face_closure(rp2, {SimplexRef{2, 0}})));

  auto klein = klein9();
  add("star_constant_klein",
      constant_carrier(Subcomplex::full(klein), klein,
                       closed_star(klein, SimplexRef{0, *klein->find({*klein->vertex_id("k00")})})));

  auto sphere = sphere2();
  add("collapse_sphere",
      constant_carrier(Subcomplex::full(sphere), sphere, vertex_value(sphere, "s0")));

  auto annulus = annulus_hex();
  add("retraction_annulus", carrier_of_simplicial_map(Subcomplex::full(annulus), annulus,
                                                      annulus_retraction(annulus)));
  return out;
}

IndexProblem hexagon_doubling_problem() {
  auto tower = std::make_shared<SubdivisionTower>(hexagon_circle());
  const SimplicialComplex& base = *tower->at(0)->complex();
  const SubdivisionPtr& rec = tower->at(1);
  const SimplicialComplex& fine = *rec->complex();
  auto h = [&](int i) { return *base.vertex_id("h" + std::to_string(((i % 6) + 6) % 6)); };
  std::vector<Vertex> g(fine.vertex_count());
  for (Vertex w = 0; w < fine.vertex_count(); ++w) {
    SimplexRef s = rec->vertex_source(w);
    if (s.dim == 0) {
      Vertex v = base.simplex(s)[0];
      for (int i = 0; i < 6; ++i) {
        if (h(i) == v) g[w] = h(2 * i);
      }
    } else {
      const Simplex& e = base.simplex(s);
      for (int i = 0; i < 6; ++i) {
        Simplex probe{h(i), h(i + 1)};
        normalize_simplex(probe);
        if (probe == e) g[w] = h(2 * i + 1);
      }
    }
  }
  CarrierPtr carrier =
      carrier_of_simplicial_map(Subcomplex::full(rec->complex()), tower->at(0)->complex(), g);
  return whole_space_problem(tower, 0, 1, std::move(carrier));
}

std::vector<NamedProblem> whole_space_problems() {
  std::vector<NamedProblem> out;
  for (NamedCarrier& entry : carrier_corpus()) {
    auto tower = std::make_shared<SubdivisionTower>(entry.carrier->target());
    // carrier_corpus carriers live at level (0, 0) on their own complex
    out.push_back({entry.name, whole_space_problem(tower, 0, 0, entry.carrier)});
  }
  out.push_back({"doubling_hexagon", hexagon_doubling_problem()});

  {
    // Flow on the path at levels (1, 0): fixed endpoints, admissible since
    // U = K has no boundary.
    auto tower = std::make_shared<SubdivisionTower>(path_complex(4));
    std::vector<Vertex> g = path_flow_map(*tower);
    CarrierPtr carrier = carrier_of_simplicial_map(Subcomplex::full(tower->at(1)->complex()),
                                                   tower->at(0)->complex(), g);
    out.push_back({"path_flow", whole_space_problem(tower, 0, 1, std::move(carrier))});
  }
  {
    // Degree-one circle map with two fixed points, at levels (1, 0).
    auto tower = std::make_shared<SubdivisionTower>(hexagon_circle());
    std::vector<Vertex> g = circle_two_fixed_map(*tower);
    CarrierPtr carrier = carrier_of_simplicial_map(Subcomplex::full(tower->at(1)->complex()),
                                                   tower->at(0)->complex(), g);
    out.push_back({"circle_two_fixed", whole_space_problem(tower, 0, 1, std::move(carrier))});
  }
  {
    // A declared composition: two constants on the disk, composed.
    auto tower = std::make_shared<SubdivisionTower>(full_triangle());
    ComplexPtr disk = tower->at(0)->complex();
    CarrierPtr f1 = constant_carrier(Subcomplex::full(disk), disk, vertex_value(disk, "a"));
    CarrierPtr f2 = constant_carrier(Subcomplex::full(disk), disk, vertex_value(disk, "b"));
    ChainApproximation a1 = build_chain_approximation_or_throw(f1);
    ChainApproximation a2 = build_chain_approximation_or_throw(f2);
    CompositionResult comp = compose_approximations(a2, a1);
    IndexProblem p = whole_space_problem(tower, 0, 0, comp.composite_carrier);
    p.approximation = comp.approximation;
    out.push_back({"composite_constants_disk", std::move(p)});
  }
  return out;
}

std::vector<NamedProblem> proper_open_set_problems() {
  std::vector<NamedProblem> out;
  {
    // Constant map to a far corner; U is a star around the opposite edge.
    auto tower = std::make_shared<SubdivisionTower>(full_triangle());
    const ComplexPtr& base = tower->at(0)->complex();
    ComplexPtr fine2 = tower->at(2)->complex();
    CarrierPtr full_carrier = constant_carrier(
        Subcomplex::full(fine2), fine2,
        Subcomplex::face_closure(fine2, {SimplexRef{0, *fine2->find({*fine2->vertex_id("a")})}}));
    // U: the closed star, at level 2, of the midpoint of the edge [b, c].
    Simplex bc{*base->vertex_id("b"), *base->vertex_id("c")};
    normalize_simplex(bc);
    Vertex mid_bc = tower->at(1)->barycenter_vertex(1, *base->find(bc));
    // the vertex persists into level 2
    Vertex mid_bc_2 = tower->at(2)->barycenter_vertex(0, *tower->at(1)->complex()->find({mid_bc}));
    Subcomplex closure = closed_star(fine2, SimplexRef{0, *fine2->find({mid_bc_2})});
    OpenPolyhedralSet u = open_set_from_closure(closure);
    CarrierPtr carrier = restrict_to(full_carrier, tower->subdivided_to(2, 2, u.closure));
    out.push_back({"disk_const_far_corner",
                   make_index_problem(tower, 2, std::move(u), 2, std::move(carrier))});
  }
  {
    // Constant map to an edge midpoint; U is its subdivided one-ring (a
    // two-ring neighborhood at the computing level).
    auto tower = std::make_shared<SubdivisionTower>(full_triangle());
    const ComplexPtr& base = tower->at(0)->complex();
    ComplexPtr fine1 = tower->at(1)->complex();
    ComplexPtr fine2 = tower->at(2)->complex();
    Simplex ab{*base->vertex_id("a"), *base->vertex_id("b")};
    normalize_simplex(ab);
    Vertex mid1 = tower->at(1)->barycenter_vertex(1, *base->find(ab));
    Vertex mid2 = tower->at(2)->barycenter_vertex(0, *fine1->find({mid1}));
    CarrierPtr full_carrier = constant_carrier(
        Subcomplex::full(fine2), fine2,
        Subcomplex::face_closure(fine2, {SimplexRef{0, *fine2->find({mid2})}}));
    Subcomplex star1 = closed_star(fine1, SimplexRef{0, *fine1->find({mid1})});
    OpenPolyhedralSet u = open_set_from_closure(tower->subdivided_to(1, 2, star1));
    CarrierPtr carrier = restrict_to(full_carrier, u.closure);
    out.push_back({"disk_const_edge_midpoint",
                   make_index_problem(tower, 2, std::move(u), 2, std::move(carrier))});
  }

  // The two flow instances at levels (3, 2), restricted to balls around each
  // fixed point.
  auto flow_instances = [&](const ComplexPtr& base_complex,
                            const std::function<std::vector<Vertex>(SubdivisionTower&)>& base_map,
                            const std::vector<std::string>& fixed_vertices,
                            const std::string& tag) {
    for (const std::string& fixed_name : fixed_vertices) {
      auto tower = std::make_shared<SubdivisionTower>(base_complex);
      std::vector<Vertex> g1 = base_map(*tower);               // tau^1 -> tau^0
      std::vector<Vertex> g2 = sd_vertex_map(*tower, 1, 0, g1);  // tau^2 -> tau^1
      std::vector<Vertex> g3 = sd_vertex_map(*tower, 2, 1, g2);  // tau^3 -> tau^2
      ComplexPtr fine3 = tower->at(3)->complex();
      ComplexPtr fine2 = tower->at(2)->complex();
      CarrierPtr full_carrier =
          carrier_of_simplicial_map(Subcomplex::full(fine3), fine2, g3);
      // U: subdivision of the level-1 closed star of the fixed vertex.
      ComplexPtr fine1 = tower->at(1)->complex();
      Vertex v1 = *fine1->vertex_id(fixed_name);
      Subcomplex star1 = closed_star(fine1, SimplexRef{0, *fine1->find({v1})});
      OpenPolyhedralSet u = open_set_from_closure(tower->subdivided_to(1, 2, star1));
      CarrierPtr carrier = restrict_to(full_carrier, tower->subdivided_to(2, 3, u.closure));
      out.push_back({tag + "_" + fixed_name,
                     make_index_problem(tower, 2, std::move(u), 3, std::move(carrier))});
    }
  };
  flow_instances(path_complex(4), path_flow_map, {"p0", "p4"}, "path_flow");
  flow_instances(hexagon_circle(), circle_two_fixed_map, {"h0", "h3"}, "circle_two_fixed");
  return out;
}

// --- axiom harness -------------------------------------------------------------------

namespace {

AxiomCheck run_equality(const std::string& name, const std::string& note, const Int& lhs,
                        const Int& rhs) {
  AxiomCheck check;
  check.instance = name;
  check.note = note;
  check.lhs = lhs;
  check.rhs = rhs;
  check.status = (lhs == rhs) ? "pass" : "fail";
  return check;
}

// Sufficient test that every potential fixed point lies inside one of the
// allowed open sets: potentially fixed simplices (closed star meets the
// value) must have their closed cells inside the union of the interiors.
bool fixed_set_within(IndexProblem& whole, const std::vector<const OpenPolyhedralSet*>& allowed) {
  SubdivisionTower& tower = *whole.tower;
  const int k = whole.u_level, l = whole.carrier_level;
  const SimplicialComplex& fine = *tower.at(l)->complex();
  // interior cells of the allowed sets, at level k
  std::vector<std::vector<char>> good;
  const SimplicialComplex& coarse = *tower.at(k)->complex();
  good.resize(coarse.dim() + 1 > 0 ? coarse.dim() + 1 : 0);
  for (int d = 0; d <= coarse.dim(); ++d) good[d].assign(coarse.num_simplices(d), 0);
  for (const OpenPolyhedralSet* u : allowed) {
    auto cells = interior_cells(*u);
    for (size_t d = 0; d < cells.size(); ++d) {
      for (int i : cells[d]) good[d][i] = 1;
    }
  }
  const Subcomplex& source = whole.carrier->source_space();
  for (int d = 0; d <= source.dim(); ++d) {
    for (int i : source.members(d)) {
      SimplexRef sigma{d, i};
      Subcomplex star = closed_star(tower.at(l)->complex(), sigma);
      const Subcomplex& value = whole.carrier->value_of(sigma);
      bool potential = false;
      for (int sd = 0; sd <= star.dim() && !potential; ++sd) {
        for (int si : star.members(sd)) {
          if (value.contains(tower.carrier_ref(l, k, SimplexRef{sd, si}))) {
            potential = true;
            break;
          }
        }
      }
      if (!potential) continue;
      // every face of sigma must project into an allowed interior cell
      const Simplex& s = fine.simplex(d, i);
      const int nsub = 1 << s.size();
      for (int mask = 1; mask < nsub; ++mask) {
        Simplex face;
        for (size_t b = 0; b < s.size(); ++b) {
          if (mask & (1 << b)) face.push_back(s[b]);
        }
        SimplexRef face_ref{static_cast<int>(face.size()) - 1, *fine.find(face)};
        SimplexRef cell = tower.carrier_ref(l, k, face_ref);
        if (!good[cell.dim][cell.index]) return false;
      }
    }
  }
  return true;
}

}  // namespace

std::vector<AxiomCheck> verify_additivity() {
  std::vector<AxiomCheck> out;

  struct TwoCluster {
    std::string name;
    IndexProblem whole;
    IndexProblem part1, part2;
  };
  std::vector<TwoCluster> instances;

  {
    // Disjoint components, constant on each.
    auto tower = std::make_shared<SubdivisionTower>(two_triangles());
    ComplexPtr k = tower->at(0)->complex();
    Vertex a0 = *k->vertex_id("a0");
    Vertex b0 = *k->vertex_id("b0");
    auto assignment = [&](SimplexRef ref) {
      const Simplex& s = k->simplex(ref);
      const bool in_a = k->vertex_name(s[0])[0] == 'a';
      return vertex_value(k, in_a ? "a0" : "b0");
    };
    (void)a0;
    (void)b0;
    auto carrier = std::make_shared<const AcyclicCarrier>(Subcomplex::full(k), k, assignment);
    IndexProblem whole = whole_space_problem(tower, 0, 0, carrier);
    // components as open sets
    Simplex ta{*k->vertex_id("a0"), *k->vertex_id("a1"), *k->vertex_id("a2")};
    Simplex tb{*k->vertex_id("b0"), *k->vertex_id("b1"), *k->vertex_id("b2")};
    normalize_simplex(ta);
    normalize_simplex(tb);
    auto u1 = open_set_from_closure(Subcomplex::face_closure(k, {SimplexRef{2, *k->find(ta)}}));
    auto u2 = open_set_from_closure(Subcomplex::face_closure(k, {SimplexRef{2, *k->find(tb)}}));
    IndexProblem p1 =
        make_index_problem(tower, 0, u1, 0, restrict_to(carrier, u1.closure));
    IndexProblem p2 =
        make_index_problem(tower, 0, u2, 0, restrict_to(carrier, u2.closure));
    instances.push_back({"two_components_constant", std::move(whole), std::move(p1), std::move(p2)});
  }

  // The two genuinely connected flow instances reuse the proper-set corpus.
  auto build_flow_instance = [&](const ComplexPtr& base_complex,
                                 const std::function<std::vector<Vertex>(SubdivisionTower&)>& bm,
                                 const std::string& fix1, const std::string& fix2,
                                 const std::string& name) {
    auto tower = std::make_shared<SubdivisionTower>(base_complex);
    std::vector<Vertex> g1 = bm(*tower);
    std::vector<Vertex> g2 = sd_vertex_map(*tower, 1, 0, g1);
    std::vector<Vertex> g3 = sd_vertex_map(*tower, 2, 1, g2);
    ComplexPtr fine3 = tower->at(3)->complex();
    ComplexPtr fine2 = tower->at(2)->complex();
    CarrierPtr full_carrier = carrier_of_simplicial_map(Subcomplex::full(fine3), fine2, g3);
    IndexProblem whole = make_index_problem(
        tower, 2, open_set_from_closure(Subcomplex::full(fine2)), 3, full_carrier);
    ComplexPtr fine1 = tower->at(1)->complex();
    auto ball = [&](const std::string& vertex_name) {
      Vertex v1 = *fine1->vertex_id(vertex_name);
      Subcomplex star1 = closed_star(fine1, SimplexRef{0, *fine1->find({v1})});
      return open_set_from_closure(tower->subdivided_to(1, 2, star1));
    };
    OpenPolyhedralSet u1 = ball(fix1);
    OpenPolyhedralSet u2 = ball(fix2);
    IndexProblem p1 = make_index_problem(
        tower, 2, u1, 3, restrict_to(full_carrier, tower->subdivided_to(2, 3, u1.closure)));
    IndexProblem p2 = make_index_problem(
        tower, 2, u2, 3, restrict_to(full_carrier, tower->subdivided_to(2, 3, u2.closure)));
    instances.push_back({name, std::move(whole), std::move(p1), std::move(p2)});
  };
  build_flow_instance(path_complex(4), path_flow_map, "p0", "p4", "path_flow_two_clusters");
  build_flow_instance(hexagon_circle(), circle_two_fixed_map, "h0", "h3",
                      "circle_attractor_repeller");

  {
    // Two components of different shapes.
    auto disk = full_triangle();
    auto hexa = hexagon_circle();
    std::vector<std::vector<std::string>> tuples;
    for (int i = 0; i < disk->num_simplices(2); ++i) {
      const Simplex& s = disk->simplex(2, i);
      tuples.push_back({disk->vertex_name(s[0]), disk->vertex_name(s[1]), disk->vertex_name(s[2])});
    }
    for (int i = 0; i < hexa->num_simplices(1); ++i) {
      const Simplex& s = hexa->simplex(1, i);
      tuples.push_back({hexa->vertex_name(s[0]), hexa->vertex_name(s[1])});
    }
    auto k = SimplicialComplex::from_maximal_tuples(tuples);
    auto tower = std::make_shared<SubdivisionTower>(k);
    auto assignment = [&](SimplexRef ref) {
      const Simplex& s = k->simplex(ref);
      const bool in_disk = k->vertex_name(s[0])[0] != 'h';
      return vertex_value(k, in_disk ? "a" : "h0");
    };
    auto carrier = std::make_shared<const AcyclicCarrier>(Subcomplex::full(k), k, assignment);
    IndexProblem whole = whole_space_problem(tower, 0, 0, carrier);
    std::vector<SimplexRef> disk_gens, hex_gens;
    for (int d = 0; d <= k->dim(); ++d) {
      for (int i = 0; i < k->num_simplices(d); ++i) {
        if (k->vertex_name(k->simplex(d, i)[0])[0] == 'h')
          hex_gens.push_back({d, i});
        else
          disk_gens.push_back({d, i});
      }
    }
    auto u1 = open_set_from_closure(Subcomplex::face_closure(k, disk_gens));
    auto u2 = open_set_from_closure(Subcomplex::face_closure(k, hex_gens));
    IndexProblem p1 = make_index_problem(tower, 0, u1, 0, restrict_to(carrier, u1.closure));
    IndexProblem p2 = make_index_problem(tower, 0, u2, 0, restrict_to(carrier, u2.closure));
    instances.push_back(
        {"disk_plus_circle_constants", std::move(whole), std::move(p1), std::move(p2)});
  }

  for (TwoCluster& inst : instances) {
    AxiomCheck check;
    check.instance = inst.name;
    try {
      if (!fixed_set_within(inst.whole, {&inst.part1.u, &inst.part2.u})) {
        check.status = "skip";
        check.note = "hypothesis Fix(F) inside U1 u U2 not certified at this resolution";
        out.push_back(std::move(check));
        continue;
      }
      IndexResult whole = fixed_point_index(inst.whole);
      IndexResult r1 = fixed_point_index(inst.part1);
      IndexResult r2 = fixed_point_index(inst.part2);
      check = run_equality(inst.name, "I(U) vs I(U1) + I(U2)", whole.value, r1.value + r2.value);
    } catch (const Error& e) {
      check.status = (e.kind() == ErrorKind::kInadmissible) ? "skip" : "fail";
      check.note = e.what();
    }
    out.push_back(std::move(check));
  }
  return out;
}

std::vector<AxiomCheck> verify_homotopy_invariance() {
  std::vector<AxiomCheck> out;

  struct PrismInstance {
    std::string name;
    ComplexPtr space;
    CarrierPtr c1, c2, h;
    PrismData prism;
  };
  std::vector<PrismInstance> instances;

  {
    // Constant in the prism direction: the homotopy must come out zero.
    ComplexPtr disk = full_triangle();
    PrismData prism = build_prism(disk);
    CarrierPtr c = constant_carrier(Subcomplex::full(disk), disk, vertex_value(disk, "a"));
    Subcomplex value = vertex_value(disk, "a");
    auto h = std::make_shared<const AcyclicCarrier>(
        Subcomplex::full(prism.prism), disk, [&](SimplexRef) { return value; });
    instances.push_back({"constant_in_t_disk", disk, c, c, h, std::move(prism)});
  }
  {
    // Straight-line homotopy between two constants.
    ComplexPtr disk = full_triangle();
    PrismData prism = build_prism(disk);
    CarrierPtr c1 = constant_carrier(Subcomplex::full(disk), disk, vertex_value(disk, "a"));
    CarrierPtr c2 = constant_carrier(Subcomplex::full(disk), disk, vertex_value(disk, "b"));
    Subcomplex va = vertex_value(disk, "a");
    Subcomplex vb = vertex_value(disk, "b");
    Subcomplex edge = edge_value(disk, "a", "b");
    const PrismData& pr = prism;
    auto h = std::make_shared<const AcyclicCarrier>(
        Subcomplex::full(prism.prism), disk, [&, va, vb, edge](SimplexRef ref) {
          const Simplex& s = pr.prism->simplex(ref);
          const int nv = pr.base->vertex_count();
          bool has_bottom = false, has_top = false;
          for (Vertex v : s) (v < nv ? has_bottom : has_top) = true;
          if (has_bottom && has_top) return edge;
          return has_bottom ? va : vb;
        });
    instances.push_back({"straight_line_disk", disk, c1, c2, h, std::move(prism)});
  }
  {
    // Sweep from the identity to the rotation of the hexagon.
    ComplexPtr hexa = hexagon_circle();
    PrismData prism = build_prism(hexa);
    CarrierPtr c1 =
        carrier_of_simplicial_map(Subcomplex::full(hexa), hexa, identity_vertex_map(hexa));
    std::vector<Vertex> rot(6);
    for (int i = 0; i < 6; ++i) rot[i] = (i + 1) % 6;
    CarrierPtr c2 = carrier_of_simplicial_map(Subcomplex::full(hexa), hexa, rot);
    const PrismData& pr = prism;
    // Arc from the smallest vertex of the projection to the rotation of the
    // largest: contains the bottom value (the projection itself) and the top
    // value (its rotation).
    auto arc = [hexa](int from, int to) {
      // closed arc travelling forward from h_from to h_to
      std::vector<SimplexRef> gens;
      int i = from;
      while (i != to) {
        Simplex e{i, (i + 1) % 6};
        normalize_simplex(e);
        gens.push_back(SimplexRef{1, *hexa->find(e)});
        i = (i + 1) % 6;
      }
      if (gens.empty()) gens.push_back(SimplexRef{0, *hexa->find({from})});
      return Subcomplex::face_closure(hexa, gens);
    };
    auto h = std::make_shared<const AcyclicCarrier>(
        Subcomplex::full(prism.prism), hexa, [&, arc](SimplexRef ref) {
          const Simplex& s = pr.prism->simplex(ref);
          const int nv = pr.base->vertex_count();
          int lo = 7, hi = -1;  // projected endpoints of the cell
          bool has_bottom = false, has_top = false;
          for (Vertex v : s) {
            const int b = v % nv;  // bottom copy id or top copy id
            (v < nv ? has_bottom : has_top) = true;
            lo = std::min(lo, b);
            hi = std::max(hi, b);
          }
          // cells project onto a vertex or an edge of the hexagon; travel
          // forward from the projection start to the rotated end
          int from = lo, to;
          if (hi == lo) {
            to = has_top ? (lo + 1) % 6 : lo;
            if (!has_bottom) from = (lo + 1) % 6, to = (lo + 1) % 6;
          } else {
            // an edge [lo, hi]: either consecutive or the wrap [0, 5]
            from = (hi == lo + 1) ? lo : hi;
            int end = (hi == lo + 1) ? hi : lo;
            to = has_top ? (end + 1) % 6 : end;
            if (!has_bottom) from = (from + 1) % 6;
          }
          return arc(from, to);
        });
    instances.push_back({"rotation_sweep_hexagon", hexa, c1, c2, h, std::move(prism)});
  }

  for (PrismInstance& inst : instances) {
    AxiomCheck check;
    check.instance = inst.name;
    try {
      PrismHomotopyResult hr = prism_homotopy(inst.c1, inst.c2, inst.h, inst.prism);
      if (!hr.ok()) {
        check.status = "fail";
        check.note = "prism filling obstructed";
        out.push_back(std::move(check));
        continue;
      }
      bool identity_ok = verify_chain_homotopy(hr.bottom.map, hr.top.map, *hr.homotopy);
      bool carried_ok = is_carried(*hr.homotopy, *hr.homotopy_carrier);
      if (!identity_ok || !carried_ok) {
        check.status = "fail";
        check.note = identity_ok ? "homotopy not carried" : "homotopy identity fails";
        out.push_back(std::move(check));
        continue;
      }
      auto tower1 = std::make_shared<SubdivisionTower>(inst.space);
      auto tower2 = std::make_shared<SubdivisionTower>(inst.space);
      IndexProblem p1 = whole_space_problem(tower1, 0, 0, inst.c1);
      IndexProblem p2 = whole_space_problem(tower2, 0, 0, inst.c2);
      check = run_equality(inst.name, "index of the two homotopic carriers",
                           fixed_point_index(p1).value, fixed_point_index(p2).value);
      if (inst.name == "constant_in_t_disk") {
        for (const auto& mat : hr.homotopy->mats) {
          if (!mat.is_zero()) {
            check.status = "fail";
            check.note = "degenerate prism produced a nonzero homotopy";
          }
        }
      }
    } catch (const Error& e) {
      check.status = "fail";
      check.note = e.what();
    }
    out.push_back(std::move(check));
  }

  {
    // Choice independence feeding the same axiom: both deterministic rules
    // give the same index over one carrier.
    AxiomCheck check;
    check.instance = "vertex_rule_independence_hexagon";
    try {
      ComplexPtr hexa = hexagon_circle();
      CarrierPtr c = constant_carrier(Subcomplex::full(hexa), hexa, edge_value(hexa, "h0", "h1"));
      auto tower1 = std::make_shared<SubdivisionTower>(hexa);
      auto tower2 = std::make_shared<SubdivisionTower>(hexa);
      ApproxOptions least, greatest;
      greatest.vertex_rule = ApproxOptions::VertexRule::kGreatest;
      IndexProblem p1 = whole_space_problem(tower1, 0, 0, c, least);
      IndexProblem p2 = whole_space_problem(tower2, 0, 0, c, greatest);
      check = run_equality(check.instance, "least vs greatest vertex rule",
                           fixed_point_index(p1).value, fixed_point_index(p2).value);
    } catch (const Error& e) {
      check.status = "fail";
      check.note = e.what();
    }
    out.push_back(std::move(check));
  }
  return out;
}

std::vector<AxiomCheck> verify_commutativity() {
  std::vector<AxiomCheck> out;

  {
    // F1 = doubling (hexagon to hexagon), F2 = identity; W = K.
    AxiomCheck check;
    check.instance = "doubling_and_identity";
    try {
      auto tower = std::make_shared<SubdivisionTower>(hexagon_circle());
      IndexProblem doubling = hexagon_doubling_problem();
      // rebuild on this tower to share complexes
      const SubdivisionPtr& rec = doubling.tower->at(1);
      (void)rec;
      // K-side: F2 o F1 at levels (1, 0)
      ChainApproximation phi1 = build_chain_approximation_or_throw(doubling.carrier);
      ComplexPtr base = doubling.tower->at(0)->complex();
      CarrierPtr identity =
          carrier_of_simplicial_map(Subcomplex::full(base), base, identity_vertex_map(base));
      ChainApproximation phi2 = build_chain_approximation_or_throw(identity);
      CompositionResult k_side = compose_approximations(phi2, phi1);
      IndexProblem pk = whole_space_problem(doubling.tower, 0, 1, k_side.composite_carrier);
      pk.approximation = k_side.approximation;
      // L-side: F1 o F2 at levels (0, 0), with the middle refined once
      CompositionResult l_side =
          compose_approximations(phi1, phi2, {doubling.tower->at(1)});
      IndexProblem pl = whole_space_problem(doubling.tower, 0, 0, l_side.composite_carrier);
      pl.approximation = l_side.approximation;
      check = run_equality(check.instance, "I(K, F2F1, K) vs I(L, F1F2, L); side condition vacuous",
                           fixed_point_index(pk).value, fixed_point_index(pl).value);
      (void)tower;
    } catch (const Error& e) {
      check.status = "fail";
      check.note = e.what();
    }
    out.push_back(std::move(check));
  }

  {
    // Constant maps between different spaces: disk and hexagon.
    AxiomCheck check;
    check.instance = "constants_disk_hexagon";
    try {
      ComplexPtr disk = full_triangle();
      ComplexPtr hexa = hexagon_circle();
      CarrierPtr f1 = constant_carrier(Subcomplex::full(disk), hexa, vertex_value(hexa, "h0"));
      CarrierPtr f2 = constant_carrier(Subcomplex::full(hexa), disk, vertex_value(disk, "a"));
      ChainApproximation a1 = build_chain_approximation_or_throw(f1);
      ChainApproximation a2 = build_chain_approximation_or_throw(f2);
      CompositionResult on_disk = compose_approximations(a2, a1);  // F2F1 : disk -> disk
      CompositionResult on_hexa = compose_approximations(a1, a2);  // F1F2 : hexagon -> hexagon
      auto tower_k = std::make_shared<SubdivisionTower>(disk);
      auto tower_l = std::make_shared<SubdivisionTower>(hexa);
      IndexProblem pk = whole_space_problem(tower_k, 0, 0, on_disk.composite_carrier);
      pk.approximation = on_disk.approximation;
      IndexProblem pl = whole_space_problem(tower_l, 0, 0, on_hexa.composite_carrier);
      pl.approximation = on_hexa.approximation;
      check = run_equality(check.instance, "I(K, F2F1, K) vs I(L, F1F2, L); side condition vacuous",
                           fixed_point_index(pk).value, fixed_point_index(pl).value);
    } catch (const Error& e) {
      check.status = "fail";
      check.note = e.what();
    }
    out.push_back(std::move(check));
  }

  {
    // Rotation against a constant on the hexagon.
    AxiomCheck check;
    check.instance = "rotation_and_constant";
    try {
      ComplexPtr hexa = hexagon_circle();
      std::vector<Vertex> rot(6);
      for (int i = 0; i < 6; ++i) rot[i] = (i + 1) % 6;
      CarrierPtr f1 = carrier_of_simplicial_map(Subcomplex::full(hexa), hexa, rot);
      CarrierPtr f2 = constant_carrier(Subcomplex::full(hexa), hexa, vertex_value(hexa, "h0"));
      ChainApproximation a1 = build_chain_approximation_or_throw(f1);
      ChainApproximation a2 = build_chain_approximation_or_throw(f2);
      CompositionResult side1 = compose_approximations(a2, a1);  // F2F1
      CompositionResult side2 = compose_approximations(a1, a2);  // F1F2
      auto tower1 = std::make_shared<SubdivisionTower>(hexa);
      auto tower2 = std::make_shared<SubdivisionTower>(hexa);
      IndexProblem p1 = whole_space_problem(tower1, 0, 0, side1.composite_carrier);
      p1.approximation = side1.approximation;
      IndexProblem p2 = whole_space_problem(tower2, 0, 0, side2.composite_carrier);
      p2.approximation = side2.approximation;
      check = run_equality(check.instance, "I(K, F2F1, K) vs I(L, F1F2, L); side condition vacuous",
                           fixed_point_index(p1).value, fixed_point_index(p2).value);
    } catch (const Error& e) {
      check.status = "fail";
      check.note = e.what();
    }
    out.push_back(std::move(check));
  }
  return out;
}

std::vector<AxiomCheck> verify_normalization(unsigned seed) {
  std::vector<AxiomCheck> out;
  for (NamedProblem& entry : whole_space_problems()) {
    AxiomCheck check;
    check.instance = "carrier:" + entry.name;
    try {
      IndexResult direct = fixed_point_index(entry.problem);
      GradedIntegerMap psi = index_endomorphism(entry.problem);
      ChainMapWitness w;
      if (!is_chain_map(psi, &w)) {
        check.status = "fail";
        check.note = "psi is not a chain map on U = K: " + w.description;
        out.push_back(std::move(check));
        continue;
      }
      InducedHomologyMap induced = induced_map_on_homology(psi);
      check = run_equality(check.instance, "lambda(psi) vs lambda(psi_*)", direct.value,
                           induced.lefschetz);
    } catch (const Error& e) {
      check.status = "fail";
      check.note = e.what();
    }
    out.push_back(std::move(check));
  }
  for (NamedChainMap& entry : chain_self_map_battery(seed, 20)) {
    AxiomCheck check;
    try {
      InducedHomologyMap induced = induced_map_on_homology(entry.map);
      check = run_equality("selfmap:" + entry.name, "lambda(f) vs lambda(f_*)",
                           lefschetz_number(entry.map), induced.lefschetz);
    } catch (const Error& e) {
      check.instance = "selfmap:" + entry.name;
      check.status = "fail";
      check.note = e.what();
    }
    out.push_back(std::move(check));
  }
  return out;
}

}  // namespace fpindex::corpus
