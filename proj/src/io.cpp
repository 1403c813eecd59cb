#include "prg/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "prg/reeb.hpp"

namespace prg {

namespace {

Rational rational_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) throw IoError(std::string("missing rational field '") + key + "'");
  try {
    return parse_rational(j[key].get<std::string>());
  } catch (const NumericError& e) {
    throw IoError(std::string("bad rational in '") + key + "': " + e.what());
  }
}

const std::string& circle_id(const Arrangement& a, int i) { return a.circle(static_cast<std::size_t>(i)).id; }

Json tag_json(const Arrangement& a, const BranchTag& t) {
  return Json{{"circle", circle_id(a, t.circle)}, {"index", t.circle}, {"branch", t.branch}};
}

BranchTag tag_from(const Json& j) {
  BranchTag t;
  t.circle = j.at("index").get<int>();
  t.branch = j.at("branch").get<int>();
  return t;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

Json radical_to_json(const RadicalExpr& e) {
  return Json{{"p", to_string(e.p())},
              {"q", to_string(e.q())},
              {"d", to_string(e.d())},
              {"exact", to_exact_string(e)},
              {"approx", approx(e, 12)}};
}

RadicalExpr radical_from_json(const Json& j) {
  if (j.is_string()) return RadicalExpr(parse_rational(j.get<std::string>()));
  if (!j.is_object()) throw IoError("expected a radical object");
  return RadicalExpr(rational_field(j, "p"), rational_field(j, "q"), rational_field(j, "d"));
}

Json point_to_json(const Point& p) { return Json{{"x", radical_to_json(p.x)}, {"y", radical_to_json(p.y)}}; }

Json label_sequence_to_json(const LabelSequence& s) {
  Json out = Json::array();
  for (const auto& entry : s) {
    Json e = Json::array();
    for (const auto& c : entry.circles()) {
      Json names = Json::array();
      auto idx = entry.indices(c);
      for (int j : idx) names.push_back(arc_name(j));
      e.push_back(Json{{"circle", c}, {"arcs", idx}, {"names", names}});
    }
    out.push_back(e);
  }
  return out;
}

Json labels_to_json(const LabelMap& m) {
  Json edges = Json::array(), vertices = Json::array(), tangents = Json::array();
  for (std::size_t i = 0; i < m.edges.size(); ++i) {
    edges.push_back(Json{{"id", i}, {"label", label_sequence_to_json(m.edges[i])}});
  }
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    vertices.push_back(Json{{"id", i}, {"label", label_sequence_to_json(m.vertices[i])}});
  }
  for (const auto& t : m.tangents) {
    tangents.push_back(Json{{"point", point_to_json(t.point)},
                            {"circles", {t.circle1, t.circle2}},
                            {"t1", {t.t1.first, t.t1.second}},
                            {"t2", {t.t2.first, t.t2.second}}});
  }
  return Json{{"axis", axis_name(m.axis)}, {"edges", edges}, {"vertices", vertices}, {"tangents", tangents}};
}

Json graph_to_json(const Arrangement& a, const PRGraph& g, const LabelMap* labels) {
  Json vertices = Json::array(), edges = Json::array();
  for (const auto& v : g.vertices) {
    Json anchors = Json::array();
    for (const auto& f : v.fiber) {
      if (!f.exact) continue;
      Json circles = Json::array(), poles = Json::array();
      for (int c : f.circles) circles.push_back(circle_id(a, c));
      for (int c : f.pole_of) poles.push_back(circle_id(a, c));
      anchors.push_back(Json{{"point", point_to_json(f.point)}, {"circles", circles}, {"pole_of", poles}});
    }
    vertices.push_back(Json{{"id", v.id},
                            {"value", radical_to_json(v.value)},
                            {"degree", g.degree(v.id)},
                            {"in", g.in_edges(v.id).size()},
                            {"out", g.out_edges(v.id).size()},
                            {"anchors", anchors}});
  }
  for (const auto& e : g.edges) {
    edges.push_back(Json{{"id", e.id},
                         {"tail", e.tail},
                         {"head", e.head},
                         {"lower", tag_json(a, e.lower)},
                         {"upper", tag_json(a, e.upper)},
                         {"sample", to_string(e.sample)}});
  }
  Json out{{"axis", axis_name(g.axis)},
           {"vertices", vertices},
           {"edges", edges},
           {"counts", {{"vertices", g.vertices.size()}, {"edges", g.edges.size()}}},
           {"cycle_rank", g.cycle_rank()}};
  if (labels) out["labels"] = labels_to_json(*labels);
  return out;
}

namespace {

LabelSequence sequence_from(const Json& j) {
  LabelSequence s;
  for (const auto& entry : j) {
    LabelEntry e;
    for (const auto& part : entry) {
      for (const auto& k : part.at("arcs")) e.arcs.push_back(OctantArc{part.at("circle").get<std::string>(), k.get<int>()});
    }
    std::sort(e.arcs.begin(), e.arcs.end());
    s.push_back(std::move(e));
  }
  return s;
}

Axis axis_from(const Json& j) {
  std::string s = j.get<std::string>();
  if (s == "x") return Axis::X;
  if (s == "y") return Axis::Y;
  throw IoError("axis must be x or y");
}

}  // namespace

LoadedGraph graph_from_json(const Json& j) {
  try {
    LoadedGraph out;
    out.graph.axis = axis_from(j.at("axis"));
    for (const auto& v : j.at("vertices")) {
      PRVertex pv;
      pv.id = v.at("id").get<int>();
      pv.value = radical_from_json(v.at("value"));
      if (pv.id != static_cast<int>(out.graph.vertices.size())) throw IoError("vertex ids must be 0..n-1 in order");
      out.graph.vertices.push_back(std::move(pv));
    }
    int n = static_cast<int>(out.graph.vertices.size());
    for (const auto& e : j.at("edges")) {
      PREdge pe;
      pe.id = e.at("id").get<int>();
      pe.tail = e.at("tail").get<int>();
      pe.head = e.at("head").get<int>();
      if (pe.id != static_cast<int>(out.graph.edges.size())) throw IoError("edge ids must be 0..m-1 in order");
      if (pe.tail < 0 || pe.tail >= n || pe.head < 0 || pe.head >= n) throw IoError("edge endpoint out of range");
      if (e.contains("lower")) pe.lower = tag_from(e["lower"]);
      if (e.contains("upper")) pe.upper = tag_from(e["upper"]);
      if (e.contains("sample")) pe.sample = parse_rational(e["sample"].get<std::string>());
      out.graph.edges.push_back(pe);
    }
    if (j.contains("labels")) {
      const Json& l = j["labels"];
      LabelMap m;
      m.axis = axis_from(l.at("axis"));
      for (const auto& e : l.at("edges")) m.edges.push_back(sequence_from(e.at("label")));
      for (const auto& v : l.at("vertices")) m.vertices.push_back(sequence_from(v.at("label")));
      out.labels = std::move(m);
    }
    return out;
  } catch (const Json::exception& e) {
    throw IoError(std::string("malformed graph JSON: ") + e.what());
  } catch (const NumericError& e) {
    throw IoError(std::string("malformed graph JSON: ") + e.what());
  }
}

std::string graph_to_dot(const PRGraph& g, const LabelMap* labels) {
  std::ostringstream out;
  out << "digraph prgraph {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (const auto& v : g.vertices) {
    out << "  v" << v.id << " [label=\"v" << v.id << "\\n" << approx(v.value, 4) << "\"];\n";
  }
  // one rank per distinct value, in ascending order
  for (std::size_t i = 0; i < g.vertices.size();) {
    std::size_t k = i;
    while (k < g.vertices.size() && compare_cross(g.vertices[k].value, g.vertices[i].value) == 0) ++k;
    out << "  { rank=same;";
    for (std::size_t m = i; m < k; ++m) out << " v" << g.vertices[m].id << ";";
    out << " }\n";
    i = k;
  }
  for (const auto& e : g.edges) {
    out << "  v" << e.tail << " -> v" << e.head << " [label=\"e" << e.id;
    if (labels && static_cast<std::size_t>(e.id) < labels->edges.size()) {
      for (const auto& entry : labels->edges[static_cast<std::size_t>(e.id)]) out << "\\n" << entry_to_string(entry);
    }
    out << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string render_svg(const Arrangement& a, const RenderOptions& opt) {
  auto circles = a.circles();
  auto sides = a.sides();
  if (circles.empty()) throw IoError("empty scene");
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& c : circles) {
    double r = std::sqrt(c.r2.get_d());
    xmin = std::min(xmin, c.cx.get_d() - r);
    xmax = std::max(xmax, c.cx.get_d() + r);
    ymin = std::min(ymin, c.cy.get_d() - r);
    ymax = std::max(ymax, c.cy.get_d() + r);
  }
  double span = std::max(xmax - xmin, ymax - ymin) * 1.1;
  double midx = (xmin + xmax) / 2, midy = (ymin + ymax) / 2;
  xmin = midx - span / 2;
  ymax = midy + span / 2;
  double scale = opt.width / span;
  auto px = [&](double x) { return (x - xmin) * scale; };
  auto py = [&](double y) { return (ymax - y) * scale; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.width
      << "\" viewBox=\"0 0 " << opt.width << " " << opt.width << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g class=\"region\" fill=\"#cfe0f5\">\n";
  int n = std::max(8, opt.shading);
  double cell = span / n;
  for (int row = 0; row < n; ++row) {
    double y = ymax - (row + 0.5) * cell;
    int run = -1;
    for (int col = 0; col <= n; ++col) {
      bool in = false;
      if (col < n) {
        double x = xmin + (col + 0.5) * cell;
        in = in_open_region(circles, sides, Rational(x), Rational(y));
      }
      if (in && run < 0) run = col;
      if (!in && run >= 0) {
        out << "<rect x=\"" << fmt(run * cell * scale) << "\" y=\"" << fmt(row * cell * scale) << "\" width=\""
            << fmt((col - run) * cell * scale) << "\" height=\"" << fmt(cell * scale) << "\"/>\n";
        run = -1;
      }
    }
  }
  out << "</g>\n<g class=\"circles\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\">\n";
  for (const auto& c : circles) {
    out << "<circle cx=\"" << fmt(px(c.cx.get_d())) << "\" cy=\"" << fmt(py(c.cy.get_d())) << "\" r=\""
        << fmt(std::sqrt(c.r2.get_d()) * scale) << "\"><title>" << c.id << "</title></circle>\n";
  }
  out << "</g>\n<g class=\"poles\">\n";
  for (const auto& c : circles) {
    for (int j = 0; j < 8; ++j) {
      Point p = pole(c, j);
      bool even = j % 2 == 0;
      out << "<circle class=\"pole " << (even ? "pole-even" : "pole-odd") << "\" cx=\"" << fmt(px(to_double(p.x)))
          << "\" cy=\"" << fmt(py(to_double(p.y))) << "\" r=\"3\" fill=\"" << (even ? "black" : "blue") << "\"/>\n";
    }
  }
  out << "</g>\n";
  if (opt.overlay) {
    PRGraph g = build_pr_graph(a, opt.axis);
    std::vector<std::pair<double, double>> at;
    for (const auto& v : g.vertices) {
      double across = 0;
      int k = 0;
      for (const auto& f : v.fiber) {
        if (!f.exact) continue;
        across += to_double(f.point.across(opt.axis));
        ++k;
      }
      across = k ? across / k : 0;
      double along = to_double(v.value);
      at.push_back(opt.axis == Axis::X ? std::make_pair(along, across) : std::make_pair(across, along));
    }
    out << "<g class=\"graph\" stroke=\"red\" stroke-width=\"2\">\n";
    for (const auto& e : g.edges) {
      auto [x1, y1] = at[static_cast<std::size_t>(e.tail)];
      auto [x2, y2] = at[static_cast<std::size_t>(e.head)];
      out << "<line class=\"graph-edge\" x1=\"" << fmt(px(x1)) << "\" y1=\"" << fmt(py(y1)) << "\" x2=\""
          << fmt(px(x2)) << "\" y2=\"" << fmt(py(y2)) << "\"/>\n";
    }
    for (const auto& v : g.vertices) {
      auto [x, y] = at[static_cast<std::size_t>(v.id)];
      out << "<circle class=\"graph-node\" cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y))
          << "\" r=\"5\" fill=\"red\"><title>v" << v.id << "</title></circle>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace prg
