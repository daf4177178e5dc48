#include "fpindex/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "fpindex/errors.hpp"
#include "json.hpp"

namespace fpindex::io {

namespace {

using nlohmann::json;

struct Line {
  int number;
  std::vector<std::string> tokens;
  std::string raw;
};

std::vector<Line> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_parse("cannot open '" + path + "'");
  std::vector<Line> out;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::string text = raw;
    if (auto pos = text.find('#'); pos != std::string::npos) text.erase(pos);
    std::istringstream stream(text);
    std::vector<std::string> tokens;
    std::string tok;
    while (stream >> tok) tokens.push_back(tok);
    if (!tokens.empty()) out.push_back({number, std::move(tokens), raw});
  }
  return out;
}

[[noreturn]] void parse_fail(const std::string& path, int line, const std::string& message) {
  throw_parse(path + ":" + std::to_string(line) + ": " + message);
}

Simplex resolve_simplex(const SimplicialComplex& cx, const std::vector<std::string>& names,
                        const std::string& path, int line) {
  Simplex s;
  for (const auto& n : names) {
    auto v = cx.vertex_id(n);
    if (!v) parse_fail(path, line, "unknown vertex '" + n + "'");
    s.push_back(*v);
  }
  if (normalize_simplex(s) == 0) parse_fail(path, line, "duplicate vertex in simplex");
  return s;
}

// Splits tokens on a literal "," token boundary; commas may also be glued to
// names, so re-tokenize on commas first.
std::vector<std::vector<std::string>> split_on_commas(const std::vector<std::string>& tokens) {
  std::vector<std::vector<std::string>> groups(1);
  for (const std::string& t : tokens) {
    std::string current;
    for (char c : t) {
      if (c == ',') {
        if (!current.empty()) groups.back().push_back(current);
        current.clear();
        groups.emplace_back();
      } else {
        current += c;
      }
    }
    if (!current.empty()) groups.back().push_back(current);
  }
  while (!groups.empty() && groups.back().empty()) groups.pop_back();
  return groups;
}

json json_int(const Int& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return json(static_cast<long long>(v));
  return json(v.str());
}

json json_int_list(const std::vector<Int>& v) {
  json out = json::array();
  for (const Int& x : v) out.push_back(json_int(x));
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

ComplexPtr load_complex(const std::string& path) {
  std::vector<std::vector<std::string>> tuples;
  for (const Line& line : read_lines(path)) {
    std::set<std::string> seen(line.tokens.begin(), line.tokens.end());
    if (seen.size() != line.tokens.size())
      parse_fail(path, line.number, "duplicate vertex in simplex");
    tuples.push_back(line.tokens);
  }
  return SimplicialComplex::from_maximal_tuples(tuples);
}

std::string complex_to_text(const SimplicialComplex& cx) {
  // Maximal simplices: those without cofacets, by (dim, index).
  std::ostringstream out;
  for (int d = 0; d <= cx.dim(); ++d) {
    for (int i = 0; i < cx.num_simplices(d); ++i) {
      if (!cx.cofacets(d, i).empty()) continue;
      const Simplex& s = cx.simplex(d, i);
      for (size_t k = 0; k < s.size(); ++k) {
        if (k) out << " ";
        out << cx.vertex_name(s[k]);
      }
      out << "\n";
    }
  }
  return out.str();
}

std::vector<std::vector<int>> load_simplex_list(const std::string& path,
                                                const SimplicialComplex& cx) {
  std::vector<std::vector<int>> members(cx.dim() + 1 > 0 ? cx.dim() + 1 : 0);
  for (const Line& line : read_lines(path)) {
    Simplex s = resolve_simplex(cx, line.tokens, path, line.number);
    auto idx = cx.find(s);
    if (!idx) parse_fail(path, line.number, "simplex is not in the complex");
    members[s.size() - 1].push_back(*idx);
  }
  return members;
}

FiniteCover load_cover(const std::string& path, SubdivisionPtr space) {
  const SimplicialComplex& cx = *space->complex();
  std::vector<std::pair<std::string, std::vector<Vertex>>> elements;
  for (const Line& line : read_lines(path)) {
    // name: v1 v2 v3
    std::string name = line.tokens[0];
    size_t start = 1;
    if (!name.empty() && name.back() == ':') {
      name.pop_back();
    } else if (line.tokens.size() >= 2 && line.tokens[1] == ":") {
      start = 2;
    } else {
      parse_fail(path, line.number, "expected 'name: v1 v2 ...'");
    }
    if (name.empty()) parse_fail(path, line.number, "empty cover element name");
    std::vector<Vertex> verts;
    for (size_t i = start; i < line.tokens.size(); ++i) {
      auto v = cx.vertex_id(line.tokens[i]);
      if (!v) parse_fail(path, line.number, "unknown vertex '" + line.tokens[i] + "'");
      verts.push_back(*v);
    }
    if (verts.empty()) parse_fail(path, line.number, "cover element lists no vertices");
    elements.push_back({std::move(name), std::move(verts)});
  }
  return make_cover(std::move(space), std::move(elements));
}

std::vector<Vertex> load_vertex_map(const std::string& path, const SimplicialComplex& src,
                                    const SimplicialComplex& dst) {
  std::vector<Vertex> map(src.vertex_count(), -1);
  for (const Line& line : read_lines(path)) {
    if (line.tokens.size() != 3 || line.tokens[1] != "->")
      parse_fail(path, line.number, "expected 'v -> w'");
    auto from = src.vertex_id(line.tokens[0]);
    auto to = dst.vertex_id(line.tokens[2]);
    if (!from) parse_fail(path, line.number, "unknown source vertex '" + line.tokens[0] + "'");
    if (!to) parse_fail(path, line.number, "unknown target vertex '" + line.tokens[2] + "'");
    map[*from] = *to;
  }
  for (Vertex v = 0; v < src.vertex_count(); ++v) {
    if (map[v] == -1)
      throw_parse(path + ": vertex '" + src.vertex_name(v) + "' has no image");
  }
  return map;
}

CarrierPtr load_carrier(const std::string& path, Subcomplex source_space, ComplexPtr target,
                        bool monotone_complete) {
  const SimplicialComplex& src = *source_space.parent();
  const SimplicialComplex& tgt = *target;

  std::map<std::pair<int, int>, Subcomplex> declared;
  for (const Line& line : read_lines(path)) {
    auto arrow = std::find(line.tokens.begin(), line.tokens.end(), "->");
    if (arrow == line.tokens.end())
      parse_fail(path, line.number, "expected 'simplex -> value generators'");
    std::vector<std::string> left(line.tokens.begin(), arrow);
    std::vector<std::string> right(arrow + 1, line.tokens.end());
    if (left.empty()) parse_fail(path, line.number, "missing source simplex");
    Simplex s = resolve_simplex(src, left, path, line.number);
    auto idx = src.find(s);
    if (!idx) parse_fail(path, line.number, "source simplex is not in the complex");
    const int d = static_cast<int>(s.size()) - 1;
    if (!source_space.contains(d, *idx))
      parse_fail(path, line.number, "source simplex is outside the carrier's domain");

    std::vector<SimplexRef> gens;
    for (const auto& group : split_on_commas(right)) {
      if (group.empty()) continue;
      Simplex g = resolve_simplex(tgt, group, path, line.number);
      auto gidx = tgt.find(g);
      if (!gidx) parse_fail(path, line.number, "value simplex is not in the target complex");
      gens.push_back(SimplexRef{static_cast<int>(g.size()) - 1, *gidx});
    }
    if (gens.empty()) parse_fail(path, line.number, "carrier value lists no simplices");
    if (!declared.emplace(std::make_pair(d, *idx), Subcomplex::face_closure(target, gens)).second)
      parse_fail(path, line.number, "source simplex assigned twice");
  }

  auto assignment = [&, monotone_complete](SimplexRef ref) -> Subcomplex {
    auto it = declared.find({ref.dim, ref.index});
    if (it != declared.end()) return it->second;
    if (!monotone_complete)
      throw_input("carrier file leaves " + src.simplex_label(ref) +
                  " unassigned (pass --monotone-complete for the minimal completion)");
    // Minimal monotone completion: union of the declared values of faces.
    const Simplex& s = src.simplex(ref);
    Subcomplex value = Subcomplex::empty(target);
    const int n = static_cast<int>(s.size());
    for (int mask = 1; mask < (1 << n); ++mask) {
      Simplex face;
      for (int b = 0; b < n; ++b) {
        if (mask & (1 << b)) face.push_back(s[b]);
      }
      auto fidx = src.find(face);
      auto dit = declared.find({static_cast<int>(face.size()) - 1, *fidx});
      if (dit != declared.end()) value = Subcomplex::union_of(value, dit->second);
    }
    if (value.is_empty())
      throw_input("carrier value at " + src.simplex_label(ref) +
                  " is empty even after monotone completion");
    return value;
  };
  // The lambda reads `target`; keep it alive through construction.
  return std::make_shared<const AcyclicCarrier>(std::move(source_space), target, assignment);
}

Bundle load_bundle(const std::string& path) {
  Bundle bundle;
  bundle.directory = std::filesystem::path(path).parent_path().string();
  bool have_complex = false;
  for (const Line& line : read_lines(path)) {
    const std::string& key = line.tokens[0];
    auto expect_value = [&](size_t count) {
      if (line.tokens.size() != count + 1)
        parse_fail(path, line.number, "directive '" + key + "' expects an argument");
    };
    if (key == "complex") {
      expect_value(1);
      bundle.complex_path = line.tokens[1];
      have_complex = true;
    } else if (key == "open-set") {
      expect_value(1);
      bundle.open_set_path = line.tokens[1];
    } else if (key == "u-level") {
      expect_value(1);
      bundle.u_level = std::stoi(line.tokens[1]);
    } else if (key == "carrier-level") {
      expect_value(1);
      bundle.carrier_level = std::stoi(line.tokens[1]);
    } else if (key == "carrier") {
      expect_value(1);
      bundle.factors.push_back({line.tokens[1], std::nullopt});
    } else if (key == "space") {
      expect_value(1);
      if (bundle.factors.empty())
        parse_fail(path, line.number, "'space' must follow a 'carrier' directive");
      if (bundle.factors.back().space_path)
        parse_fail(path, line.number, "factor already has a target space");
      bundle.factors.back().space_path = line.tokens[1];
    } else {
      parse_fail(path, line.number, "unknown directive '" + key + "'");
    }
  }
  if (!have_complex) throw_parse(path + ": bundle lists no complex");
  if (bundle.factors.empty()) throw_parse(path + ": bundle lists no carrier");
  if (bundle.factors.back().space_path)
    throw_parse(path + ": the final carrier must target the ambient complex");
  return bundle;
}

namespace {

std::string resolve(const Bundle& bundle, const std::string& rel) {
  if (bundle.directory.empty()) return rel;
  return (std::filesystem::path(bundle.directory) / rel).string();
}

}  // namespace

LoadedProblem build_problem(const Bundle& bundle, ApproxOptions options, bool monotone_complete) {
  LoadedProblem out;
  ComplexPtr ambient = load_complex(resolve(bundle, bundle.complex_path));
  out.tower = std::make_shared<SubdivisionTower>(ambient);
  const int k = bundle.u_level;
  const int l = bundle.carrier_level;
  if (l < k) throw_input("bundle: carrier-level must be at least u-level");

  ComplexPtr level_k = out.tower->at(k)->complex();
  OpenPolyhedralSet u =
      bundle.open_set_path
          ? open_set_from_closure(level_k, load_simplex_list(resolve(bundle, *bundle.open_set_path),
                                                             *level_k))
          : open_set_from_closure(Subcomplex::full(level_k));
  if (u.closure.is_empty()) throw_input("bundle: the open set is empty");
  Subcomplex source_space = out.tower->subdivided_to(k, l, u.closure);
  ComplexPtr level_l = out.tower->at(l)->complex();

  if (bundle.factors.size() == 1) {
    CarrierPtr carrier = load_carrier(resolve(bundle, bundle.factors[0].carrier_path),
                                      std::move(source_space), level_k, monotone_complete);
    out.problem =
        make_index_problem(out.tower, k, std::move(u), l, std::move(carrier), options);
    return out;
  }

  // Composition: intermediate spaces at level 0, the last factor back in the
  // ambient complex at level k.
  std::optional<ChainApproximation> composite;
  CarrierPtr composite_carrier;
  Subcomplex factor_source = source_space;
  for (size_t i = 0; i < bundle.factors.size(); ++i) {
    const Bundle::Factor& factor = bundle.factors[i];
    ComplexPtr factor_target =
        factor.space_path ? load_complex(resolve(bundle, *factor.space_path)) : level_k;
    CarrierPtr carrier = load_carrier(resolve(bundle, factor.carrier_path), factor_source,
                                      factor_target, monotone_complete);
    ChainApproximation approx = build_chain_approximation_or_throw(carrier, options);
    if (!composite) {
      composite = std::move(approx);
      composite_carrier = carrier;
    } else {
      CompositionResult step = compose_approximations(approx, *composite);
      composite = std::move(step.approximation);
      composite_carrier = step.composite_carrier;
      for (const auto& ref : step.non_acyclic_values)
        out.non_acyclic_composite_values.push_back(ref);
    }
    factor_source = Subcomplex::full(factor_target);
  }
  out.problem = make_index_problem(out.tower, k, std::move(u), l, composite_carrier, options);
  out.problem.approximation = std::move(composite);
  return out;
}

RetractionFile load_retraction(const std::string& path) {
  RetractionFile out;
  std::string dir = std::filesystem::path(path).parent_path().string();
  auto resolve_local = [&](const std::string& rel) {
    return dir.empty() ? rel : (std::filesystem::path(dir) / rel).string();
  };
  std::optional<std::string> complex_path, x_path;
  int level = 0;
  std::vector<std::pair<std::string, std::string>> map_lines;
  for (const Line& line : read_lines(path)) {
    const std::string& key = line.tokens[0];
    if (key == "complex" && line.tokens.size() == 2) {
      complex_path = line.tokens[1];
    } else if (key == "level" && line.tokens.size() == 2) {
      level = std::stoi(line.tokens[1]);
    } else if (key == "x" && line.tokens.size() == 2) {
      x_path = line.tokens[1];
    } else if (key == "r" && line.tokens.size() == 4 && line.tokens[2] == "->") {
      map_lines.push_back({line.tokens[1], line.tokens[3]});
    } else {
      parse_fail(path, line.number, "unknown retraction directive");
    }
  }
  if (!complex_path || !x_path) throw_parse(path + ": retraction needs 'complex' and 'x'");
  out.ambient = load_complex(resolve_local(*complex_path));
  // X given by its maximal simplices.
  std::vector<SimplexRef> gens;
  {
    const std::string x_file = resolve_local(*x_path);
    for (const Line& line : read_lines(x_file)) {
      Simplex s = resolve_simplex(*out.ambient, line.tokens, x_file, line.number);
      auto idx = out.ambient->find(s);
      if (!idx) parse_fail(x_file, line.number, "simplex is not in the ambient complex");
      gens.push_back(SimplexRef{static_cast<int>(s.size()) - 1, *idx});
    }
  }
  out.data.ambient = out.ambient;
  out.data.retract = Subcomplex::face_closure(out.ambient, gens);
  out.data.level = level;

  SubdivisionPtr rec = SubdivisionRecord::base(out.ambient);
  for (int i = 0; i < level; ++i) rec = rec->subdivide();
  const SimplicialComplex& fine = *rec->complex();
  std::vector<Vertex> retraction(fine.vertex_count(), -1);
  for (const auto& [from, to] : map_lines) {
    auto f = fine.vertex_id(from);
    auto t = out.ambient->vertex_id(to);
    if (!f) throw_parse(path + ": unknown vertex '" + from + "' at level " + std::to_string(level));
    if (!t) throw_parse(path + ": unknown target vertex '" + to + "'");
    retraction[*f] = *t;
  }
  // Unlisted vertices default to themselves when that makes sense.
  for (Vertex v = 0; v < fine.vertex_count(); ++v) {
    if (retraction[v] != -1) continue;
    auto same = out.ambient->vertex_id(fine.vertex_name(v));
    if (!same) throw_parse(path + ": vertex '" + fine.vertex_name(v) + "' has no image");
    retraction[v] = *same;
  }
  out.data.retraction = std::move(retraction);
  return out;
}

// --- JSON --------------------------------------------------------------------

std::string homology_json(const HomologyProfile& profile, const Int& euler) {
  json groups = json::array();
  for (const auto& g : profile.groups) {
    groups.push_back(
        {{"dim", g.dim}, {"betti", json_int(g.betti)}, {"torsion", json_int_list(g.torsion)}});
  }
  return dump({{"euler", json_int(euler)}, {"groups", groups}, {"reduced", profile.reduced}});
}

std::string uct_json(const UctReport& report) {
  json items = json::array();
  for (const auto& item : report.items) {
    items.push_back({{"dim", item.dim},
                     {"rank_homology", json_int(item.rank_homology)},
                     {"rank_cohomology", json_int(item.rank_cohomology)},
                     {"torsion_homology", json_int_list(item.torsion_homology)},
                     {"torsion_next_cohomology", json_int_list(item.torsion_cohomology_next)},
                     {"rank_ok", item.rank_ok},
                     {"torsion_ok", item.torsion_ok}});
  }
  return dump({{"items", items}, {"pass", report.pass}});
}

std::string lefschetz_json(const Int& chain_level, const Int& homology_level) {
  return dump({{"chain_lefschetz", json_int(chain_level)},
               {"homology_lefschetz", json_int(homology_level)},
               {"match", chain_level == homology_level}});
}

namespace {

json index_result_payload(const IndexResult& result) {
  return {{"value", json_int(result.value)},
          {"level_k", result.level_k},
          {"level_l", result.level_l},
          {"traces", json_int_list(result.traces)},
          {"admissible", result.admissibility.admissible}};
}

}  // namespace

std::string index_json(const IndexResult& result) { return dump(index_result_payload(result)); }

std::string stability_json(const IndexResult& coarse, const IndexResult& fine) {
  return dump({{"coarse", index_result_payload(coarse)},
               {"fine", index_result_payload(fine)},
               {"stable", coarse.value == fine.value}});
}

std::string general_open_set_json(const GeneralOpenSetResult& result) {
  return dump({{"result", index_result_payload(result.result)},
               {"chosen_level", result.chosen_level},
               {"refinements_used", result.refinements_used}});
}

std::string approximation_json(const ChainApproximation& approx, const ApproximationReport& report,
                               const AcyclicityReport& acyclicity, bool rational_oracle) {
  json matrices = json::array();
  const SimplicialComplex& src = *approx.map.source->complex();
  const SimplicialComplex& tgt = *approx.map.target->complex();
  for (size_t d = 0; d < approx.map.mats.size(); ++d) {
    const SparseIntMatrix& m = approx.map.mats[d];
    json entries = json::array();
    for (int r = 0; r < m.rows(); ++r) {
      for (const auto& [c, v] : m.row(r)) entries.push_back({r, c, json_int(v)});
    }
    matrices.push_back(
        {{"dim", d}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}});
  }
  json failures = json::array();
  for (const auto& f : acyclicity.failures) failures.push_back(src.simplex_label(f.simplex));
  (void)tgt;
  return dump({{"matrices", matrices},
               {"chain_map", report.chain_map},
               {"carried", report.carried},
               {"level_source", approx.level_source},
               {"level_target", approx.level_target},
               {"acyclicity",
                {{"all", acyclicity.all_acyclic},
                 {"checked", acyclicity.checked},
                 {"failures", failures},
                 {"rational_oracle", rational_oracle}}}});
}

std::string axiom_json(const std::string& axiom, const std::vector<corpus::AxiomCheck>& checks) {
  json items = json::array();
  bool pass = true;
  for (const auto& c : checks) {
    items.push_back({{"instance", c.instance},
                     {"status", c.status},
                     {"note", c.note},
                     {"lhs", json_int(c.lhs)},
                     {"rhs", json_int(c.rhs)}});
    pass = pass && c.status != "fail";
  }
  return dump({{"axiom", axiom}, {"checks", items}, {"pass", pass}});
}

std::string error_json(int code, const std::string& kind, const std::string& message,
                       const std::string& detail) {
  return dump({{"error", {{"code", code}, {"kind", kind}, {"message", message}, {"detail", detail}}}});
}

}  // namespace fpindex::io
