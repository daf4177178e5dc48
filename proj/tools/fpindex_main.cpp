// Batch front end: parse inputs, dispatch computations, emit deterministic
// JSON reports. Exit codes: 0 success, 1 input error, 2 parse error,
// 3 inadmissible, 4 acyclicity failure, 5 resolution exhausted.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fpindex/corpus.hpp"
#include "fpindex/errors.hpp"
#include "fpindex/io.hpp"

namespace {

using namespace fpindex;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return 2;
    case ErrorKind::kInadmissible: return 3;
    case ErrorKind::kAcyclicityFailure: return 4;
    case ErrorKind::kResolutionExhausted: return 5;
    case ErrorKind::kInput: return 1;
  }
  return 1;
}

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kInadmissible: return "inadmissible";
    case ErrorKind::kAcyclicityFailure: return "acyclicity-failure";
    case ErrorKind::kResolutionExhausted: return "resolution-exhausted";
    case ErrorKind::kInput: return "input";
  }
  return "input";
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw_input("cannot write '" + out_path + "'");
  out << payload;
}

SubdivisionPtr subdivided(ComplexPtr complex, int level) {
  SubdivisionPtr rec = SubdivisionRecord::base(std::move(complex));
  for (int i = 0; i < level; ++i) rec = rec->subdivide();
  return rec;
}

std::vector<Vertex> parse_star_list(const std::string& csv, const SimplicialComplex& cx) {
  std::vector<Vertex> out;
  std::istringstream stream(csv);
  std::string name;
  while (std::getline(stream, name, ',')) {
    if (name.empty()) continue;
    auto v = cx.vertex_id(name);
    if (!v) throw_input("unknown star vertex '" + name + "'");
    out.push_back(*v);
  }
  return out;
}

struct Options {
  int level = 0;
  int level_cap = 4;
  bool reduced = false;
  bool monotone_complete = false;
  bool stability = false;
  bool oracle_rational = false;
  unsigned seed = 20240811;
  std::string out_path;
  std::string dominate_path;
  std::string stars;
  std::string axiom;
};

int run(int argc, char** argv) {
  CLI::App app{"exact integer fixed point indices of acyclic carriers on finite complexes"};
  app.require_subcommand(1);
  Options opt;

  std::string complex_path, map_path, cover_path, bundle_path;

  CLI::App* homology = app.add_subcommand("homology", "integer homology of a complex");
  homology->add_option("complex", complex_path)->required();
  homology->add_option("--level", opt.level, "subdivision level");
  homology->add_flag("--reduced", opt.reduced, "reduced homology");
  homology->add_option("--out", opt.out_path);

  CLI::App* uct = app.add_subcommand("uct-check", "rank and torsion duality between homology and cohomology");
  uct->add_option("complex", complex_path)->required();
  uct->add_option("--level", opt.level);
  uct->add_option("--out", opt.out_path);

  CLI::App* lef = app.add_subcommand("lefschetz", "Lefschetz number of a simplicial self-map, two routes");
  lef->add_option("complex", complex_path)->required();
  lef->add_option("map", map_path)->required();
  lef->add_option("--out", opt.out_path);

  CLI::App* nerve_cmd = app.add_subcommand("nerve", "nerve of a cover, as a complex");
  nerve_cmd->add_option("complex", complex_path)->required();
  nerve_cmd->add_option("cover", cover_path)->required();
  nerve_cmd->add_option("--level", opt.level);
  nerve_cmd->add_option("--out", opt.out_path);

  CLI::App* approx = app.add_subcommand("approx", "build and serialize a chain approximation");
  approx->add_option("bundle", bundle_path)->required();
  approx->add_flag("--monotone-complete", opt.monotone_complete);
  approx->add_flag("--oracle-rational", opt.oracle_rational,
                   "check acyclicity over the rationals instead of the integers");
  approx->add_option("--out", opt.out_path);

  CLI::App* index_cmd = app.add_subcommand("index", "fixed point index of a carrier bundle");
  index_cmd->add_option("bundle", bundle_path)->required();
  index_cmd->add_flag("--stability", opt.stability, "also compute one level finer");
  index_cmd->add_flag("--monotone-complete", opt.monotone_complete);
  index_cmd->add_option("--dominate", opt.dominate_path, "retraction file: compute through the ambient complex");
  index_cmd->add_option("--stars", opt.stars, "comma-separated star vertices describing the open set V");
  index_cmd->add_option("--level-cap", opt.level_cap, "refinement cap for --stars");
  index_cmd->add_option("--out", opt.out_path);

  CLI::App* verify = app.add_subcommand("verify", "axiom harness over the built-in corpus");
  verify->add_option("--axiom", opt.axiom, "add | hom | comm | norm")->required();
  verify->add_option("--seed", opt.seed, "seed for the generated self-map battery");
  verify->add_option("--out", opt.out_path);

  CLI11_PARSE(app, argc, argv);

  if (homology->parsed()) {
    SubdivisionPtr rec = subdivided(io::load_complex(complex_path), opt.level);
    auto cc = ChainComplexData::of_complex(rec->complex());
    emit(io::homology_json(fpindex::homology(*cc, opt.reduced),
                           rec->complex()->euler_characteristic()),
         opt.out_path);
    return 0;
  }

  if (uct->parsed()) {
    SubdivisionPtr rec = subdivided(io::load_complex(complex_path), opt.level);
    auto cc = ChainComplexData::of_complex(rec->complex());
    UctReport report = verify_uct(*cc);
    emit(io::uct_json(report), opt.out_path);
    return report.pass ? 0 : 1;
  }

  if (lef->parsed()) {
    ComplexPtr complex = io::load_complex(complex_path);
    std::vector<Vertex> vmap = io::load_vertex_map(map_path, *complex, *complex);
    auto cc = ChainComplexData::of_complex(complex);
    GradedIntegerMap f = simplicial_chain_map(vmap, cc, cc);
    Int chain_level = lefschetz_number(f);
    Int homology_level = induced_map_on_homology(f).lefschetz;
    emit(io::lefschetz_json(chain_level, homology_level), opt.out_path);
    return 0;
  }

  if (nerve_cmd->parsed()) {
    SubdivisionPtr rec = subdivided(io::load_complex(complex_path), opt.level);
    FiniteCover cover = io::load_cover(cover_path, rec);
    NerveComplex n = nerve(std::move(cover));
    emit(io::complex_to_text(*n.complex), opt.out_path);
    return 0;
  }

  if (approx->parsed()) {
    io::Bundle bundle = io::load_bundle(bundle_path);
    io::LoadedProblem loaded = io::build_problem(bundle, {}, opt.monotone_complete);
    AcyclicityReport acyclicity = check_acyclic(*loaded.problem.carrier, opt.oracle_rational);
    if (!acyclicity.all_acyclic) {
      const SimplicialComplex& src = *loaded.problem.carrier->source_complex();
      std::ostringstream detail;
      for (size_t i = 0; i < acyclicity.failures.size(); ++i) {
        if (i) detail << ", ";
        detail << src.simplex_label(acyclicity.failures[i].simplex);
      }
      throw Error(ErrorKind::kAcyclicityFailure,
                  std::string("carrier values are not acyclic over ") +
                      (opt.oracle_rational ? "Q" : "Z"),
                  detail.str());
    }
    if (!loaded.problem.approximation) {
      BuildResult build = build_chain_approximation(loaded.problem.carrier);
      if (!build.ok()) {
        throw Error(ErrorKind::kAcyclicityFailure,
                    "carrier filling obstructed at " +
                        loaded.problem.carrier->source_complex()->simplex_label(
                            build.failure->simplex));
      }
      loaded.problem.approximation = std::move(build.approximation);
    }
    ChainApproximation& a = *loaded.problem.approximation;
    a.level_source = loaded.problem.carrier_level;
    a.level_target = loaded.problem.u_level;
    emit(io::approximation_json(a, verify_approximation(a), acyclicity, opt.oracle_rational),
         opt.out_path);
    return 0;
  }

  if (index_cmd->parsed()) {
    io::Bundle bundle = io::load_bundle(bundle_path);
    if (!opt.dominate_path.empty()) {
      io::RetractionFile retraction = io::load_retraction(opt.dominate_path);
      if (bundle.open_set_path)
        throw_input("--dominate computes on U = X; drop the open-set directive");
      if (bundle.u_level != 0 || bundle.carrier_level != 0 || bundle.factors.size() != 1)
        throw_input("--dominate expects a single carrier at levels (0, 0) on the retract");
      CarrierPtr f_on_x = io::load_carrier(
          (std::filesystem::path(bundle.directory) / bundle.factors[0].carrier_path).string(),
          retraction.data.retract, retraction.ambient, opt.monotone_complete);
      auto tower = std::make_shared<SubdivisionTower>(retraction.ambient);
      OpenPolyhedralSet u = open_set_from_closure(retraction.data.retract);
      IndexResult result = index_via_domination(tower, retraction.data, f_on_x, u);
      emit(io::index_json(result), opt.out_path);
      return 0;
    }
    if (!opt.stars.empty()) {
      io::LoadedProblem loaded = io::build_problem(bundle, {}, opt.monotone_complete);
      if (bundle.open_set_path)
        throw_input("--stars describes the open set; drop the open-set directive");
      const SimplicialComplex& cx = *loaded.tower->at(bundle.u_level)->complex();
      std::vector<Vertex> stars = parse_star_list(opt.stars, cx);
      GeneralOpenSetResult result = index_on_general_open_set(
          loaded.tower, bundle.u_level, stars, bundle.carrier_level, loaded.problem.carrier,
          opt.level_cap);
      emit(io::general_open_set_json(result), opt.out_path);
      return 0;
    }
    io::LoadedProblem loaded = io::build_problem(bundle, {}, opt.monotone_complete);
    if (opt.stability) {
      auto [coarse, fine] = index_stability(loaded.problem);
      emit(io::stability_json(coarse, fine), opt.out_path);
      return 0;
    }
    IndexResult result = fixed_point_index(loaded.problem);
    emit(io::index_json(result), opt.out_path);
    return 0;
  }

  if (verify->parsed()) {
    std::vector<corpus::AxiomCheck> checks;
    std::string axiom;
    if (opt.axiom == "add") {
      axiom = "additivity";
      checks = corpus::verify_additivity();
    } else if (opt.axiom == "hom") {
      axiom = "homotopy-invariance";
      checks = corpus::verify_homotopy_invariance();
    } else if (opt.axiom == "comm") {
      axiom = "commutativity";
      checks = corpus::verify_commutativity();
    } else if (opt.axiom == "norm") {
      axiom = "normalization";
      checks = corpus::verify_normalization(opt.seed);
    } else {
      throw_input("unknown axiom '" + opt.axiom + "' (use add, hom, comm or norm)");
    }
    emit(io::axiom_json(axiom, checks), opt.out_path);
    for (const auto& c : checks) {
      if (c.status == "fail") return 1;
    }
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    const int code = exit_code(e.kind());
    std::cout << io::error_json(code, kind_name(e.kind()), e.what(), e.detail());
    std::cerr << "error: " << e.what() << "\n";
    return code;
  } catch (const std::exception& e) {
    std::cout << io::error_json(1, "input", e.what(), "");
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
