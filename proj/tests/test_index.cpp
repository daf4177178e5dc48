#include "doctest.h"
#include "fpindex/corpus.hpp"
#include "fpindex/errors.hpp"
#include "fpindex/index.hpp"

using namespace fpindex;

TEST_CASE("subdivision chain maps compose and commute with boundaries") {
  SubdivisionTower tower(corpus::full_triangle());
  auto b00 = subdivision_chain_map(tower, 0, 0);
  CHECK(b00.mats[0] == SparseIntMatrix::identity(3));

  auto b01 = subdivision_chain_map(tower, 0, 1);
  auto b12 = subdivision_chain_map(tower, 1, 2);
  auto b02 = subdivision_chain_map(tower, 0, 2);
  auto chained = compose(b12, b01);
  for (size_t d = 0; d < b02.mats.size(); ++d) CHECK(b02.mats[d] == chained.mats[d]);
  CHECK(is_chain_map(b02));

  // one subdivision of the triangle: the signed sum of the six fragments
  SparseVector top = b01.mats[2].apply({{0, 1}});
  CHECK(top.size() == 6);
  for (const auto& [i, v] : top) CHECK(abs(v) == 1);

  CHECK_THROWS_AS(subdivision_chain_map(tower, 2, 1), Error);
}

TEST_CASE("projection maps") {
  auto disk = corpus::full_triangle();
  auto cc = ChainComplexData::of_complex(disk);
  // U = K: the projection is the identity
  auto full = ChainComplexData::of(Subcomplex::full(disk));
  auto p_full = projection_map(cc, full);
  for (int d = 0; d <= 2; ++d) CHECK(p_full.mats[d] == SparseIntMatrix::identity(cc->rank(d)));

  // closure = one closed edge: rank 3 projection
  auto edge = ChainComplexData::of(Subcomplex::face_closure(disk, {SimplexRef{1, 0}}));
  auto p_edge = projection_map(cc, edge);
  CHECK(p_edge.mats[0].nnz() == 2);
  CHECK(p_edge.mats[1].nnz() == 1);

  // empty subcomplex: the zero map
  auto none = ChainComplexData::of(Subcomplex::empty(disk));
  auto p_none = projection_map(cc, none);
  for (const auto& m : p_none.mats) CHECK(m.is_zero());
}

TEST_CASE("admissibility") {
  // Identity carrier with a proper open set: every boundary simplex is
  // suspicious.
  auto tower = std::make_shared<SubdivisionTower>(corpus::full_triangle());
  ComplexPtr fine1 = tower->at(1)->complex();
  std::vector<Vertex> id_map(fine1->vertex_count());
  for (int i = 0; i < fine1->vertex_count(); ++i) id_map[i] = i;
  Subcomplex star = closed_star(fine1, SimplexRef{0, 0});
  OpenPolyhedralSet u = open_set_from_closure(star);
  auto carrier = carrier_of_simplicial_map(u.closure, fine1, id_map);
  IndexProblem p = make_index_problem(tower, 1, u, 1, carrier);
  AdmissibilityReport report = check_admissible(p);
  CHECK(!report.admissible);
  CHECK(!report.suspicious.empty());
  CHECK_THROWS_AS(fixed_point_index(p), Error);

  // The proper corpus instances are all admissible by construction.
  for (auto& entry : corpus::proper_open_set_problems()) {
    AdmissibilityReport r = check_admissible(entry.problem);
    INFO(entry.name);
    CHECK(r.admissible);
  }
}

TEST_CASE("degree sanity on whole spaces") {
  std::map<std::string, Int> expected = {
      {"identity_disk", 1},        // chi of a disk
      {"identity_hexagon", 0},     // chi of the circle
      {"constant_disk", 1},        // constant map
      {"full_disk", 1},            // every value the whole acyclic disk
      {"edge_constant_hexagon", 1},
      {"star_constant_torus", 1},
      {"triangle_constant_rp2", 1},
      {"star_constant_klein", 1},
      {"collapse_sphere", 1},
      {"rotation_hexagon", 0},     // degree one, no trace
      {"retraction_annulus", 0},   // deformation retraction of the annulus
      {"doubling_hexagon", -1},    // 1 - deg with deg = 2
      {"path_flow", 1},            // contractible space
      {"circle_two_fixed", 0},     // degree one
      {"composite_constants_disk", 1},
  };
  for (auto& entry : corpus::whole_space_problems()) {
    auto it = expected.find(entry.name);
    REQUIRE(it != expected.end());
    IndexResult r = fixed_point_index(entry.problem);
    INFO(entry.name);
    CHECK(r.value == it->second);
  }
}

TEST_CASE("indices on proper open sets") {
  std::map<std::string, Int> expected = {
      {"disk_const_far_corner", 0},     // fixed point outside U
      {"disk_const_edge_midpoint", 1},  // attracting constant inside U
      {"path_flow_p0", 0},              // repelling endpoint
      {"path_flow_p4", 1},              // attracting endpoint
      {"circle_two_fixed_h0", 1},       // attractor
      {"circle_two_fixed_h3", -1},      // repeller
  };
  for (auto& entry : corpus::proper_open_set_problems()) {
    auto it = expected.find(entry.name);
    REQUIRE(it != expected.end());
    IndexResult r = fixed_point_index(entry.problem);
    INFO(entry.name);
    CHECK(r.value == it->second);
  }
}

TEST_CASE("stability under refinement") {
  for (auto& entry : corpus::whole_space_problems()) {
    INFO(entry.name);
    auto [coarse, fine] = index_stability(entry.problem);
    CHECK(coarse.value == fine.value);
  }
  for (auto& entry : corpus::proper_open_set_problems()) {
    INFO(entry.name);
    auto [coarse, fine] = index_stability(entry.problem);
    CHECK(coarse.value == fine.value);
  }
}

TEST_CASE("choice independence of the index") {
  for (auto& entry : corpus::whole_space_problems()) {
    INFO(entry.name);
    if (entry.problem.approximation) continue;  // supplied-approximation instances
    IndexProblem alt = entry.problem;
    alt.options.vertex_rule = ApproxOptions::VertexRule::kGreatest;
    alt.options.kernel_tweak = true;
    alt.approximation.reset();
    IndexResult r1 = fixed_point_index(entry.problem);
    IndexResult r2 = fixed_point_index(alt);
    CHECK(r1.value == r2.value);
  }
}

TEST_CASE("index on star-described open sets") {
  // V already polyhedral (all stars): same value as the whole-space problem.
  {
    auto hexa = corpus::hexagon_circle();
    auto tower = std::make_shared<SubdivisionTower>(hexa);
    auto value = Subcomplex::face_closure(hexa, {SimplexRef{0, 0}});
    auto carrier = constant_carrier(Subcomplex::full(hexa), hexa, value);
    std::vector<Vertex> all(6);
    for (int i = 0; i < 6; ++i) all[i] = i;
    GeneralOpenSetResult r = index_on_general_open_set(tower, 0, all, 0, carrier, 3);
    CHECK(r.result.value == 1);
    CHECK(r.refinements_used == 0);
  }
  // V = two stars, the fixed set inside one of them.
  {
    auto tower = std::make_shared<SubdivisionTower>(corpus::full_triangle());
    const ComplexPtr& base = tower->at(0)->complex();
    ComplexPtr fine1 = tower->at(1)->complex();
    Simplex ab{*base->vertex_id("a"), *base->vertex_id("b")};
    normalize_simplex(ab);
    Vertex mid = tower->at(1)->barycenter_vertex(1, *base->find(ab));
    Vertex far = *fine1->vertex_id("c");
    auto value = Subcomplex::face_closure(fine1, {SimplexRef{0, *fine1->find({mid})}});
    auto carrier = constant_carrier(Subcomplex::full(fine1), fine1, value);
    GeneralOpenSetResult r =
        index_on_general_open_set(tower, 1, {mid, far}, 1, carrier, 4);
    CHECK(r.result.value == 1);
    CHECK(r.refinements_used >= 1);
  }
  // The identity carrier never separates: resolution exhausted.
  {
    auto tower = std::make_shared<SubdivisionTower>(corpus::full_triangle());
    ComplexPtr base = tower->at(0)->complex();
    std::vector<Vertex> id_map{0, 1, 2};
    auto carrier = carrier_of_simplicial_map(Subcomplex::full(base), base, id_map);
    bool exhausted = false;
    try {
      index_on_general_open_set(tower, 0, {0}, 0, carrier, 2);
    } catch (const Error& e) {
      exhausted = e.kind() == ErrorKind::kResolutionExhausted;
    }
    CHECK(exhausted);
  }
}

TEST_CASE("index via domination") {
  // X = K, r = id: identical to the plain index.
  {
    auto hexa = corpus::hexagon_circle();
    auto tower = std::make_shared<SubdivisionTower>(hexa);
    std::vector<Vertex> rot(6), id6(6);
    for (int i = 0; i < 6; ++i) {
      rot[i] = (i + 1) % 6;
      id6[i] = i;
    }
    DominationData d{hexa, Subcomplex::full(hexa), 0, id6};
    auto carrier = carrier_of_simplicial_map(Subcomplex::full(hexa), hexa, rot);
    auto u = open_set_from_closure(Subcomplex::full(hexa));
    IndexResult via = index_via_domination(tower, d, carrier, u);
    auto tower2 = std::make_shared<SubdivisionTower>(hexa);
    IndexProblem direct = whole_space_problem(tower2, 0, 0, carrier);
    CHECK(via.value == fixed_point_index(direct).value);
  }
  // The annulus retracts onto its core circle; the identity carrier on the
  // core has index 0 through both routes.
  {
    auto annulus = corpus::annulus_hex();
    auto tower = std::make_shared<SubdivisionTower>(annulus);
    Subcomplex core = corpus::annulus_core(annulus);
    DominationData d{annulus, core, 0, corpus::annulus_retraction(annulus)};
    auto id_on_core = std::make_shared<const AcyclicCarrier>(
        core, annulus, [&](SimplexRef ref) {
          return Subcomplex::face_closure(annulus, {ref});
        });
    auto u = open_set_from_closure(core);
    IndexResult via = index_via_domination(tower, d, id_on_core, u);
    CHECK(via.value == 0);

    // Direct route: the core materialized as a complex of its own.
    ComplexPtr core_complex = materialize(core);
    auto tower_core = std::make_shared<SubdivisionTower>(core_complex);
    std::vector<Vertex> idc(core_complex->vertex_count());
    for (int i = 0; i < core_complex->vertex_count(); ++i) idc[i] = i;
    auto direct_carrier =
        carrier_of_simplicial_map(Subcomplex::full(core_complex), core_complex, idc);
    IndexProblem direct = whole_space_problem(tower_core, 0, 0, direct_carrier);
    CHECK(fixed_point_index(direct).value == via.value);
  }
  // A broken retraction is rejected.
  {
    auto annulus = corpus::annulus_hex();
    auto tower = std::make_shared<SubdivisionTower>(annulus);
    Subcomplex core = corpus::annulus_core(annulus);
    std::vector<Vertex> bad = corpus::annulus_retraction(annulus);
    // send i0 to i1: r o s is no longer the identity
    Vertex i0 = *annulus->vertex_id("i0");
    Vertex i1 = *annulus->vertex_id("i1");
    bad[i0] = i1;
    DominationData d{annulus, core, 0, bad};
    CHECK_THROWS_AS(validate_domination(*tower, d), Error);
  }
}

TEST_CASE("empty open sets are rejected downstream") {
  auto disk = corpus::full_triangle();
  auto tower = std::make_shared<SubdivisionTower>(disk);
  // The open-set constructor allows an empty closure...
  OpenPolyhedralSet u = open_set_from_closure(Subcomplex::empty(disk));
  CHECK(u.closure.is_empty());
  // ...but an index problem refuses it.
  auto carrier = carrier_of_simplicial_map(Subcomplex::empty(disk), disk, {0, 1, 2});
  CHECK_THROWS_AS(make_index_problem(tower, 0, u, 0, carrier), Error);
}

TEST_CASE("supplied approximations are verified before use") {
  auto hexa = corpus::hexagon_circle();
  auto tower = std::make_shared<SubdivisionTower>(hexa);
  std::vector<Vertex> rot(6);
  for (int i = 0; i < 6; ++i) rot[i] = (i + 1) % 6;
  auto carrier = carrier_of_simplicial_map(Subcomplex::full(hexa), hexa, rot);
  IndexProblem p = whole_space_problem(tower, 0, 0, carrier);
  ChainApproximation a = build_chain_approximation_or_throw(carrier);
  a.map.mats[1].set(0, 0, 7);  // tamper
  p.approximation = a;
  CHECK_THROWS_AS(fixed_point_index(p), Error);
}

TEST_CASE("axiom harness") {
  for (const auto& check : corpus::verify_additivity()) {
    INFO(check.instance << ": " << check.note);
    CHECK(check.status == "pass");
  }
  for (const auto& check : corpus::verify_homotopy_invariance()) {
    INFO(check.instance << ": " << check.note);
    CHECK(check.status == "pass");
  }
  for (const auto& check : corpus::verify_commutativity()) {
    INFO(check.instance << ": " << check.note);
    CHECK(check.status == "pass");
  }
  for (const auto& check : corpus::verify_normalization(20240811)) {
    INFO(check.instance << ": " << check.note);
    CHECK(check.status == "pass");
  }
}
