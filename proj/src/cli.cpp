#include "prg/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "prg/io.hpp"
#include "prg/isomorphism.hpp"
#include "prg/labeling.hpp"
#include "prg/oracle.hpp"
#include "prg/reeb.hpp"
#include "prg/surgery.hpp"

namespace prg {

namespace {

// Maps to exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Maps to exit code 2.
struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write " + path);
}

Arrangement load_scene(const std::string& path) {
  try {
    return parse_scene(read_file(path));
  } catch (const SceneError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const NumericError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void require_valid_scene(const Arrangement& a, const std::string& path) {
  ValidationReport rep = validate(a);
  if (!rep.valid) {
    const RuleResult* f = rep.first_failure();
    throw Failure(path + ": invalid scene, rule " + f->rule + (f->detail.empty() ? "" : ": " + f->detail));
  }
}

std::vector<Axis> axes_of(const std::string& s) {
  if (s == "x") return {Axis::X};
  if (s == "y") return {Axis::Y};
  if (s == "both") return {Axis::X, Axis::Y};
  throw UsageError("axis must be x, y or both");
}

int max_columns() {
  const char* env = std::getenv("PR_MAX_COLUMNS");
  if (!env || !*env) return kOracleMaxColumns;
  try {
    int v = std::stoi(env);
    if (v < 64) throw UsageError("PR_MAX_COLUMNS must be at least 64");
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("PR_MAX_COLUMNS is not an integer");
  }
}

// "ID:J:LAMBDA" (fraction of arc J) or "ID:x=X:+" / "ID:x=X:-" (abscissa
// and branch).
Point parse_point(const Arrangement& a, const std::string& text) {
  auto first = text.find(':');
  auto second = first == std::string::npos ? first : text.find(':', first + 1);
  if (second == std::string::npos) throw UsageError("point must be ID:J:LAMBDA or ID:x=X:+|-");
  std::string id = text.substr(0, first), mid = text.substr(first + 1, second - first - 1),
              last = text.substr(second + 1);
  int ci = a.index_of(id);
  if (ci < 0) throw UsageError("no circle '" + id + "'");
  const Circle& c = a.circle(static_cast<std::size_t>(ci));
  try {
    if (mid.rfind("x=", 0) == 0) {
      Rational x = parse_rational(mid.substr(2));
      if (last != "+" && last != "-") throw UsageError("branch must be + or -");
      Rational k = c.r2 - (x - c.cx) * (x - c.cx);
      if (k < 0) throw UsageError("abscissa outside the circle");
      return Point(RadicalExpr(x), RadicalExpr(c.cy, last == "+" ? 1 : -1, k));
    }
    return point_on_arc(c, std::stoi(mid), parse_rational(last));
  } catch (const NumericError& e) {
    throw UsageError(std::string("bad point: ") + e.what());
  } catch (const SurgeryError& e) {
    throw UsageError(std::string("bad point: ") + e.what());
  } catch (const std::logic_error& e) {
    throw UsageError(std::string("bad point: ") + e.what());
  }
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

int cmd_validate(const std::string& path, std::ostream& out) {
  Arrangement a = load_scene(path);
  ValidationReport rep = validate(a);
  Json rules = Json::array();
  for (const auto& r : rep.rules) {
    Json w = Json::array();
    for (const auto& p : r.witnesses) w.push_back(point_to_json(p));
    rules.push_back(Json{{"rule", r.rule}, {"pass", r.pass}, {"step", r.step}, {"detail", r.detail}, {"witnesses", w}});
  }
  Json j{{"scene", path}, {"valid", rep.valid}, {"rules", rules}};
  if (!rep.valid) j["failed_rule"] = rep.first_failure()->rule;
  emit(out, j);
  if (!rep.valid) throw Failure("invalid scene, rule " + rep.first_failure()->rule);
  return 0;
}

int cmd_graph(const std::string& path, const std::string& axis, const std::string& format, bool labels,
              std::ostream& out) {
  Arrangement a = load_scene(path);
  require_valid_scene(a, path);
  auto axes = axes_of(axis);
  if (axes.size() != 1) throw UsageError("graph takes --axis x or y");
  PRGraph g = build_pr_graph_unchecked(a, axes[0]);
  std::optional<LabelMap> m;
  if (labels) m = label_map(a, g);
  if (format == "dot") {
    out << graph_to_dot(g, m ? &*m : nullptr);
  } else if (format == "json") {
    emit(out, graph_to_json(a, g, m ? &*m : nullptr));
  } else {
    throw UsageError("format must be json or dot");
  }
  return 0;
}

int cmd_labels(const std::string& path, const std::string& axis, std::ostream& out) {
  Arrangement a = load_scene(path);
  require_valid_scene(a, path);
  auto axes = axes_of(axis);
  if (axes.size() != 1) throw UsageError("labels takes --axis x or y");
  PRGraph g = build_pr_graph_unchecked(a, axes[0]);
  emit(out, labels_to_json(label_map(a, g)));
  return 0;
}

struct SurgeryArgs {
  std::string scene, point, kase = "auto", output, closeness;
  int edge = 0, budget = 64;
};

int cmd_surgery(const SurgeryArgs& s, std::ostream& out) {
  Arrangement a = load_scene(s.scene);
  require_valid_scene(a, s.scene);
  SurgerySpec spec;
  spec.edge = s.edge;
  spec.point = parse_point(a, s.point);
  try {
    spec.request = SurgeryCase::parse(s.kase);
    if (!s.closeness.empty()) spec.closeness = parse_rational(s.closeness);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  spec.shrink_budget = s.budget;
  SurgeryResult r;
  try {
    r = construct_addition(a, spec);
  } catch (const SurgeryError& e) {
    throw Failure(e.what());
  }
  Json j = Json::parse(change_report_json(r));
  j["requested_case"] = spec.request.name();
  if (!s.output.empty()) {
    write_file(s.output, scene_to_json(r.scene) + "\n");
    j["scene_file"] = s.output;
  } else {
    j["scene"] = Json::parse(scene_to_json(r.scene));
  }
  emit(out, j);
  return 0;
}

int cmd_classify(const std::string& old_path, const std::string& new_path, std::ostream& out) {
  Arrangement a = load_scene(old_path), b = load_scene(new_path);
  require_valid_scene(a, old_path);
  require_valid_scene(b, new_path);
  Json j = Json::object();
  std::vector<ChangeKind> kinds;
  for (Axis axis : {Axis::X, Axis::Y}) {
    PRGraph g0 = build_pr_graph_unchecked(a, axis), g1 = build_pr_graph_unchecked(b, axis);
    AxisChange c = classify_change(g0, g1);
    kinds.push_back(c.kind);
    j[axis_name(axis)] = Json::parse(classification_json(c, g1));
  }
  j["pair"] = {change_kind_name(kinds[0]), change_kind_name(kinds[1])};
  bool ok = admissible_pair(kinds[0], kinds[1]);
  j["admissible"] = ok;
  emit(out, j);
  if (!ok) throw Failure("change not recognized as an admissible pair");
  return 0;
}

LoadedGraph load_graph(const std::string& path) {
  try {
    return graph_from_json(Json::parse(read_file(path)));
  } catch (const Json::exception& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const IoError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

int cmd_iso(const std::string& p1, const std::string& p2, const std::string& mode_name, std::ostream& out) {
  LoadedGraph g1 = load_graph(p1), g2 = load_graph(p2);
  IsoMode mode;
  std::optional<IsoWitness> w;
  try {
    mode = parse_iso_mode(mode_name);
    w = isomorphic(g1.graph, g2.graph, mode, g1.labels ? &*g1.labels : nullptr,
                   g2.labels ? &*g2.labels : nullptr);
  } catch (const IsoError& e) {
    throw UsageError(e.what());
  }
  Json j{{"mode", iso_mode_name(mode)}, {"isomorphic", w.has_value()}};
  j["witness"] = w ? Json::parse(witness_to_json(*w)) : Json(nullptr);
  emit(out, j);
  if (!w) throw Failure("not isomorphic");
  return 0;
}

int cmd_render(const std::string& path, const std::string& output, bool overlay, const std::string& axis,
               std::ostream& out) {
  Arrangement a = load_scene(path);
  RenderOptions opt;
  opt.overlay = overlay;
  auto axes = axes_of(axis);
  if (axes.size() != 1) throw UsageError("render takes --axis x or y");
  opt.axis = axes[0];
  if (overlay) require_valid_scene(a, path);
  std::string svg = render_svg(a, opt);
  if (output.empty()) {
    out << svg;
  } else {
    write_file(output, svg);
  }
  return 0;
}

Json oracle_json(const PRGraph& g, const Arrangement& a, Axis axis, int columns) {
  int cap = max_columns();
  columns = std::max(64, std::min(columns, cap));
  Json j{{"requested_columns", columns}, {"max_columns", cap}};
  try {
    OracleGraph o = grid_reeb(a, axis, columns, cap);
    Agreement ag = agree(g, o);
    j["columns"] = o.columns;
    j["agree"] = ag.agree;
    j["diff"] = ag.diff;
  } catch (const OracleError& e) {
    j["agree"] = false;
    j["diff"] = e.what();
  }
  return j;
}

int cmd_check(const std::string& path, bool skip_oracle, int columns, std::ostream& out, std::ostream& err) {
  Arrangement a = load_scene(path);
  require_valid_scene(a, path);
  int boundary = boundary_components(a).count;
  Json axes = Json::object();
  std::vector<std::string> failed;
  for (Axis axis : {Axis::X, Axis::Y}) {
    std::string an = axis_name(axis);
    PRGraph g = build_pr_graph_unchecked(a, axis);
    LabelMap m = label_map(a, g);
    PropositionReport rep = check_propositions(a, g, m);
    Json props = Json::array();
    for (const auto& r : rep.results) {
      props.push_back(Json{{"name", r.name}, {"status", r.status()}, {"checked", r.checked}, {"failures", r.failures}});
      if (!r.pass()) failed.push_back(an + ":" + r.name);
    }
    Json ax{{"vertices", g.vertices.size()},
            {"edges", g.edges.size()},
            {"cycle_rank", g.cycle_rank()},
            {"boundary_components", boundary},
            {"propositions", props}};
    if (g.cycle_rank() != boundary - 1) failed.push_back(an + ":cycle_rank");
    if (skip_oracle) {
      ax["oracle"] = "skipped";
    } else {
      Json o = oracle_json(g, a, axis, columns);
      if (!o["agree"].get<bool>()) failed.push_back(an + ":oracle");
      ax["oracle"] = o;
    }
    axes[an] = ax;
  }
  Json j{{"scene", path}, {"axes", axes}, {"pass", failed.empty()}, {"failed", failed}};
  emit(out, j);
  if (!failed.empty()) {
    for (const auto& f : failed) err << "failed: " << f << "\n";
    throw Failure("check failed: " + failed.front());
  }
  return 0;
}

int cmd_oracle(const std::string& path, const std::string& axis, int columns, std::ostream& out) {
  Arrangement a = load_scene(path);
  require_valid_scene(a, path);
  Json j = Json::object();
  bool ok = true;
  for (Axis ax : axes_of(axis)) {
    Json o = oracle_json(build_pr_graph_unchecked(a, ax), a, ax, columns);
    ok = ok && o["agree"].get<bool>();
    j[axis_name(ax)] = o;
  }
  j["agree"] = ok;
  emit(out, j);
  if (!ok) throw Failure("oracle disagrees");
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Poincaré-Reeb graphs of circle arrangements", "prgraph"};
  app.require_subcommand(1);

  std::string scene, scene2, axis = "x", format = "json", output, mode = "vdigraph";
  bool labels = false, overlay = false, skip_oracle = false;
  int columns = 1024;
  SurgeryArgs s;

  auto* validate_cmd = app.add_subcommand("validate", "check the arrangement rules");
  validate_cmd->add_option("scene", scene, "scene JSON")->required();

  auto* graph_cmd = app.add_subcommand("graph", "build the graph for one axis");
  graph_cmd->add_option("scene", scene, "scene JSON")->required();
  graph_cmd->add_option("--axis", axis, "x or y");
  graph_cmd->add_option("--format", format, "json or dot");
  graph_cmd->add_flag("--labels", labels, "attach octant-arc labels");

  auto* labels_cmd = app.add_subcommand("labels", "octant-arc labels for one axis");
  labels_cmd->add_option("scene", scene, "scene JSON")->required();
  labels_cmd->add_option("--axis", axis, "x or y");

  auto* surgery_cmd = app.add_subcommand("surgery", "add a circle next to a boundary point");
  surgery_cmd->add_option("scene", s.scene, "scene JSON")->required();
  surgery_cmd->add_option("--edge", s.edge, "edge id in the x graph")->required();
  surgery_cmd->add_option("--point", s.point, "ID:J:LAMBDA or ID:x=X:+|-")->required();
  surgery_cmd->add_option("--case", s.kase, "auto, c1..c5, 2.1.k or 2.2.k");
  surgery_cmd->add_option("--shrink-budget", s.budget, "candidate circles to try");
  surgery_cmd->add_option("--closeness", s.closeness, "initial chord distance");
  surgery_cmd->add_option("-o,--output", s.output, "new scene path");

  auto* classify_cmd = app.add_subcommand("classify", "classify the graph change between two scenes");
  classify_cmd->add_option("old", scene, "scene JSON")->required();
  classify_cmd->add_option("new", scene2, "scene JSON")->required();

  auto* iso_cmd = app.add_subcommand("iso", "isomorphism of two graph files");
  iso_cmd->add_option("first", scene, "graph JSON")->required();
  iso_cmd->add_option("second", scene2, "graph JSON")->required();
  iso_cmd->add_option("--mode", mode, "graph, digraph, vdigraph or labeled");

  auto* render_cmd = app.add_subcommand("render", "draw the scene as SVG");
  render_cmd->add_option("scene", scene, "scene JSON")->required();
  render_cmd->add_option("-o,--output", output, "SVG path (stdout when absent)");
  render_cmd->add_flag("--graph-overlay", overlay, "draw the graph over the scene");
  render_cmd->add_option("--axis", axis, "overlay axis, x or y");

  auto* check_cmd = app.add_subcommand("check", "propositions, cycle rank and oracle on both axes");
  check_cmd->add_option("scene", scene, "scene JSON")->required();
  check_cmd->add_flag("--skip-oracle", skip_oracle, "skip the sampling cross-check");
  check_cmd->add_option("--columns", columns, "oracle columns");

  auto* oracle_cmd = app.add_subcommand("oracle-check", "compare with the sampling oracle");
  oracle_cmd->add_option("scene", scene, "scene JSON")->required();
  oracle_cmd->add_option("--axis", axis, "x, y or both");
  oracle_cmd->add_option("--columns", columns, "oracle columns");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*validate_cmd) return cmd_validate(scene, out);
    if (*graph_cmd) return cmd_graph(scene, axis, format, labels, out);
    if (*labels_cmd) return cmd_labels(scene, axis, out);
    if (*surgery_cmd) return cmd_surgery(s, out);
    if (*classify_cmd) return cmd_classify(scene, scene2, out);
    if (*iso_cmd) return cmd_iso(scene, scene2, mode, out);
    if (*render_cmd) return cmd_render(scene, output, overlay, axis, out);
    if (*check_cmd) return cmd_check(scene, skip_oracle, columns, out, err);
    if (*oracle_cmd) return cmd_oracle(scene, axis, columns, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Failure& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace prg
