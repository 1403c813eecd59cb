#include "prg/labeling.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace prg {

namespace {

int mod8(int j) { return ((j % 8) + 8) % 8; }

// Axis-dependent constants.  The start pole is where a circle begins along
// the axis (x: pole 4, y: pole 6), the end pole where it stops.
struct AxisFacts {
  int start_pole, end_pole;
  std::set<int> lower_half, upper_half;

  explicit AxisFacts(Axis axis) {
    if (axis == Axis::X) {
      start_pole = 4;
      end_pole = 0;
      lower_half = {4, 5, 6, 7};
      upper_half = {0, 1, 2, 3};
    } else {
      start_pole = 6;
      end_pole = 2;
      lower_half = {2, 3, 4, 5};
      upper_half = {0, 1, 6, 7};
    }
  }
  std::vector<int> pole_pair(int pole) const { return sorted({mod8(pole - 1), pole}); }
  static std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  }
};

LabelEntry make_entry(std::vector<OctantArc> arcs) {
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  return {std::move(arcs)};
}

int along_component(const std::pair<int, int>& t, Axis axis) {
  return axis == Axis::X ? t.first : t.second;
}

bool cyclically_contiguous(const std::vector<int>& idx) {
  if (idx.empty() || idx.size() >= 8) return !idx.empty();
  std::set<int> s(idx.begin(), idx.end());
  int starts = 0;
  for (int j : s) starts += !s.count(mod8(j - 1));
  return starts == 1;
}

std::string join_indices(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

std::string where_vertex(const PRGraph& g, int v) {
  return "vertex " + std::to_string(v) + " at " + to_exact_string(g.vertices[static_cast<std::size_t>(v)].value);
}

bool is_pole(const Circle& c, const Point& p, int j) {
  Octant o = octant_of(c, p);
  return o.is_pole && o.j == j;
}

}  // namespace

std::vector<std::string> LabelEntry::circles() const {
  std::vector<std::string> out;
  for (const auto& a : arcs) {
    if (out.empty() || out.back() != a.circle) out.push_back(a.circle);
  }
  return out;
}

std::vector<int> LabelEntry::indices(const std::string& circle) const {
  std::vector<int> out;
  for (const auto& a : arcs) {
    if (a.circle == circle) out.push_back(a.j);
  }
  return out;
}

LabelSequence edge_label(const Arrangement& a, const PRGraph& g, int edge) {
  const auto circles = a.circles();
  const PREdge& e = g.edges.at(static_cast<std::size_t>(edge));
  const RadicalExpr& t0 = g.vertices[static_cast<std::size_t>(e.tail)].value;
  const RadicalExpr& t1 = g.vertices[static_cast<std::size_t>(e.head)].value;
  LabelSequence out;
  for (const BranchTag& tag : {e.lower, e.upper}) {
    const Circle& c = circles[static_cast<std::size_t>(tag.circle)];
    CirclePoint p0{g.axis, t0, tag.branch}, p1{g.axis, t1, tag.branch};
    // Counter-clockwise runs toward increasing x on the lower half and
    // toward increasing y on the right half.
    bool forward = g.axis == Axis::X ? tag.branch < 0 : tag.branch > 0;
    ArcSpan span = forward ? ArcSpan::ccw(p0, p1) : ArcSpan::ccw(p1, p0);
    out.push_back(make_entry(arcs_meeting(c, span)));
  }
  return out;
}

LabelSequence vertex_label(const Arrangement& a, const PRGraph& g, int vertex) {
  const auto circles = a.circles();
  const PRVertex& v = g.vertices.at(static_cast<std::size_t>(vertex));
  LabelSequence out;
  for (const FiberPoint& fp : v.fiber) {
    std::vector<OctantArc> arcs;
    for (int ci : fp.circles) {
      const Circle& c = circles[static_cast<std::size_t>(ci)];
      auto more = arcs_meeting(c, ArcSpan::single(fp.on(circles, ci, g.axis, v.value)));
      arcs.insert(arcs.end(), more.begin(), more.end());
    }
    out.push_back(make_entry(std::move(arcs)));
  }
  return out;
}

TangentPair tangent_pair(const Arrangement& a, const Point& p, int c1, int c2) {
  const auto circles = a.circles();
  const auto sides = a.sides();
  const Circle& k1 = circles.at(static_cast<std::size_t>(c1));
  const Circle& k2 = circles.at(static_cast<std::size_t>(c2));
  TangentPair tp;
  tp.point = p;
  tp.circle1 = c1;
  tp.circle2 = c2;
  tp.t1 = tangent_direction(k1, p, k2, sides[static_cast<std::size_t>(c2)]);
  tp.t2 = tangent_direction(k2, p, k1, sides[static_cast<std::size_t>(c1)]);
  return tp;
}

LabelMap label_map(const Arrangement& a, const PRGraph& g) {
  LabelMap m;
  m.axis = g.axis;
  for (const auto& e : g.edges) m.edges.push_back(edge_label(a, g, e.id));
  for (const auto& v : g.vertices) {
    m.vertices.push_back(vertex_label(a, g, v.id));
    for (const auto& fp : v.fiber) {
      if (fp.circles.size() == 2) {
        m.tangents.push_back(tangent_pair(a, fp.point, fp.circles[0], fp.circles[1]));
      }
    }
  }
  return m;
}

bool PropositionReport::all_pass() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass(); });
}

const PropositionResult* PropositionReport::find(const std::string& name) const {
  for (const auto& r : results) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

std::string entry_to_string(const LabelEntry& e) {
  std::string s;
  for (const auto& c : e.circles()) {
    if (!s.empty()) s += " ";
    s += c + ":" + join_indices(e.indices(c));
  }
  return s.empty() ? "{}" : s;
}

PropositionReport check_propositions(const Arrangement& a, const PRGraph& g, const LabelMap& m) {
  const auto circles = a.circles();
  const AxisFacts ax(g.axis);
  const Axis axis = g.axis;

  PropositionResult edge_shape{
      "edge_entry_shape",
      "each edge entry is a connected set of at most four arcs of one circle "
      "avoiding both arc pairs around the axis poles",
      0, {}};
  PropositionResult edge_same{
      "edge_same_circle",
      "when both entries of an edge lie on one circle the lower one uses "
      "lower-half arcs and the upper one upper-half arcs",
      0, {}};
  PropositionResult deg1_pole{
      "degree1_pole",
      "a degree-1 vertex on one circle is its start pole (sources) or end "
      "pole (sinks)",
      0, {}};
  PropositionResult deg1_cross{
      "degree1_crossing",
      "at a degree-1 crossing both tangents point to the same side; a "
      "vertical one sits at the matching pole of its circle",
      0, {}};
  PropositionResult deg2_fiber{
      "degree2_fiber",
      "a degree-2 fiber has two boundary points, at least one a crossing, "
      "and no single-circle axis pole",
      0, {}};
  PropositionResult cross_ends{
      "fiber_end_crossing",
      "at a crossing ending a fiber segment the tangents point to opposite "
      "sides; a vertical one sits at the matching pole of its circle",
      0, {}};
  PropositionResult high_fiber{
      "high_degree_fiber",
      "a fiber of a degree k+ + k- >= 3 vertex has k+ + k- points with k+ - 1 "
      "start poles and k- - 1 end poles of distinct circles in its interior",
      0, {}};
  PropositionResult repeated{
      "repeated_circle",
      "a circle appearing in two entries of a label appears only in the first "
      "and last, with lower-half arcs first and upper-half arcs last",
      0, {}};

  auto fail = [](PropositionResult& r, std::string msg) { r.failures.push_back(std::move(msg)); };

  // Edge entries.
  for (std::size_t ei = 0; ei < m.edges.size(); ++ei) {
    const LabelSequence& seq = m.edges[ei];
    std::string where = "edge " + std::to_string(ei);
    ++edge_shape.checked;
    if (seq.size() != 2) {
      fail(edge_shape, where + ": " + std::to_string(seq.size()) + " entries");
      continue;
    }
    for (const auto& entry : seq) {
      auto cs = entry.circles();
      if (cs.size() != 1) {
        fail(edge_shape, where + ": entry " + entry_to_string(entry) + " is not on one circle");
        continue;
      }
      auto idx = entry.indices(cs[0]);
      if (idx.size() > 4 || !cyclically_contiguous(idx)) {
        fail(edge_shape, where + ": entry " + entry_to_string(entry) + " is not a short connected run");
      }
      for (int pole : {ax.start_pole, ax.end_pole}) {
        if (idx == ax.pole_pair(pole)) continue;
        std::set<int> s(idx.begin(), idx.end());
        if (s.count(mod8(pole - 1)) && s.count(pole)) {
          fail(edge_shape, where + ": entry " + entry_to_string(entry) + " crosses pole " +
                               std::to_string(pole));
        }
      }
    }
    auto c0 = seq[0].circles(), c1 = seq[1].circles();
    if (c0.size() == 1 && c1.size() == 1 && c0[0] == c1[0]) {
      ++edge_same.checked;
      for (int j : seq[0].indices(c0[0])) {
        if (!ax.lower_half.count(j)) fail(edge_same, where + ": lower entry uses arc " + std::to_string(j));
      }
      for (int j : seq[1].indices(c1[0])) {
        if (!ax.upper_half.count(j)) fail(edge_same, where + ": upper entry uses arc " + std::to_string(j));
      }
    }
  }

  // Tangent pairs keyed by crossing point for the vertex checks.
  auto tangents_at = [&](const Point& p) -> const TangentPair* {
    for (const auto& tp : m.tangents) {
      if (tp.point == p) return &tp;
    }
    return nullptr;
  };
  auto circle_of = [&](int ci) -> const Circle& { return circles[static_cast<std::size_t>(ci)]; };

  // Vertical-tangent rule shared by both crossing checks.  `source_like`
  // selects which pole a vertical tangent must sit at when the other
  // tangent points forward along the axis.
  auto check_vertical = [&](PropositionResult& r, const std::string& where, const TangentPair& tp,
                            bool degree_one, bool source_like_forward) {
    int s1 = along_component(tp.t1, axis), s2 = along_component(tp.t2, axis);
    if (s1 == 0 && s2 == 0) {
      fail(r, where + ": both tangents vertical");
      return;
    }
    if (s1 != 0 && s2 != 0) return;
    int flat = s1 == 0 ? tp.circle1 : tp.circle2;
    int other = s1 == 0 ? tp.circle2 : tp.circle1;
    int s = s1 == 0 ? s2 : s1;
    int want = (s > 0) == source_like_forward ? ax.start_pole : ax.end_pole;
    if (!is_pole(circle_of(flat), tp.point, want)) {
      fail(r, where + ": vertical tangent of " + circle_of(flat).id + " is not at pole " +
                  std::to_string(want));
    }
    if (degree_one && (is_pole(circle_of(other), tp.point, ax.start_pole) ||
                       is_pole(circle_of(other), tp.point, ax.end_pole))) {
      fail(r, where + ": " + circle_of(other).id + " also has an axis pole here");
    }
  };

  auto single_is_axis_pole = [&](const LabelEntry& entry) {
    auto cs = entry.circles();
    if (cs.size() != 1) return false;
    auto idx = entry.indices(cs[0]);
    return idx == ax.pole_pair(ax.start_pole) || idx == ax.pole_pair(ax.end_pole);
  };

  auto check_fiber_end = [&](const std::string& where, const FiberPoint& fp) {
    if (fp.circles.size() != 2) return;
    ++cross_ends.checked;
    const TangentPair* tp = tangents_at(fp.point);
    if (!tp) {
      fail(cross_ends, where + ": no tangent pair recorded");
      return;
    }
    int s1 = along_component(tp->t1, axis), s2 = along_component(tp->t2, axis);
    if (s1 * s2 > 0) fail(cross_ends, where + ": tangents point to the same side");
    check_vertical(cross_ends, where, *tp, false, false);
  };

  for (const auto& v : g.vertices) {
    const std::size_t vi = static_cast<std::size_t>(v.id);
    const LabelSequence& seq = m.vertices.at(vi);
    const std::string where = where_vertex(g, v.id);
    const int kin = static_cast<int>(g.in_edges(v.id).size());
    const int kout = static_cast<int>(g.out_edges(v.id).size());
    const int deg = kin + kout;

    if (deg == 1 && seq.size() == 1 && v.fiber.size() == 1) {
      const FiberPoint& fp = v.fiber[0];
      if (fp.circles.size() == 1) {
        ++deg1_pole.checked;
        int want = kout == 1 ? ax.start_pole : ax.end_pole;
        if (seq[0].indices(circle_of(fp.circles[0]).id) != ax.pole_pair(want)) {
          fail(deg1_pole, where + ": entry " + entry_to_string(seq[0]) + " is not pole " +
                              std::to_string(want));
        }
      } else {
        ++deg1_cross.checked;
        const TangentPair* tp = tangents_at(fp.point);
        if (!tp) {
          fail(deg1_cross, where + ": no tangent pair recorded");
          continue;
        }
        int s1 = along_component(tp->t1, axis), s2 = along_component(tp->t2, axis);
        if (s1 * s2 < 0) fail(deg1_cross, where + ": tangents point to opposite sides");
        int forward = kout == 1 ? 1 : -1;
        if (s1 * forward < 0 || s2 * forward < 0) {
          fail(deg1_cross, where + ": a tangent leaves the half-plane of the fiber");
        }
        check_vertical(deg1_cross, where, *tp, true, true);
        // Two-arc subsets come from the admissible list: any adjacent pair
        // except the ones around an axis pole, which only the circle with
        // the vertical tangent may contribute.
        for (int ci : {tp->circle1, tp->circle2}) {
          auto idx = seq[0].indices(circle_of(ci).id);
          bool axis_pair = idx == ax.pole_pair(ax.start_pole) || idx == ax.pole_pair(ax.end_pole);
          int s = along_component(ci == tp->circle1 ? tp->t1 : tp->t2, axis);
          if (axis_pair && s != 0) {
            fail(deg1_cross, where + ": inadmissible arc pair " + join_indices(idx) + " of " +
                                 circle_of(ci).id);
          }
        }
      }
    } else if (deg == 1) {
      ++deg1_pole.checked;
      fail(deg1_pole, where + ": degree-1 fiber has " + std::to_string(v.fiber.size()) + " points");
    }

    if (deg == 2) {
      ++deg2_fiber.checked;
      if (seq.size() != 2) {
        fail(deg2_fiber, where + ": " + std::to_string(seq.size()) + " fiber points");
      } else {
        bool any_double = false;
        for (const auto& entry : seq) {
          auto cs = entry.circles();
          if (cs.size() > 2) fail(deg2_fiber, where + ": a point on three circles");
          any_double = any_double || cs.size() == 2;
          if (single_is_axis_pole(entry)) {
            fail(deg2_fiber, where + ": single-circle point " + entry_to_string(entry) + " is an axis pole");
          }
        }
        if (!any_double) fail(deg2_fiber, where + ": neither point is a crossing");
      }
    }

    if (deg >= 3) {
      ++high_fiber.checked;
      if (static_cast<int>(seq.size()) != deg) {
        fail(high_fiber, where + ": " + std::to_string(seq.size()) + " fiber points for degree " +
                             std::to_string(deg));
      } else {
        int starts = 0, ends = 0;
        std::set<std::string> interior_circles;
        std::set<std::string> end_circles;
        for (const auto& c : seq.front().circles()) end_circles.insert(c);
        for (const auto& c : seq.back().circles()) end_circles.insert(c);
        for (std::size_t i = 1; i + 1 < seq.size(); ++i) {
          auto cs = seq[i].circles();
          if (cs.size() != 1) {
            fail(high_fiber, where + ": interior point " + entry_to_string(seq[i]) + " is not on one circle");
            continue;
          }
          auto idx = seq[i].indices(cs[0]);
          if (idx == ax.pole_pair(ax.start_pole)) {
            ++starts;
          } else if (idx == ax.pole_pair(ax.end_pole)) {
            ++ends;
          } else {
            fail(high_fiber, where + ": interior point " + entry_to_string(seq[i]) + " is not an axis pole");
          }
          if (!interior_circles.insert(cs[0]).second || end_circles.count(cs[0])) {
            fail(high_fiber, where + ": circle " + cs[0] + " repeats in the fiber");
          }
        }
        if (starts != kout - 1 || ends != kin - 1) {
          fail(high_fiber, where + ": " + std::to_string(starts) + " start and " + std::to_string(ends) +
                               " end poles for k+ = " + std::to_string(kout) + ", k- = " +
                               std::to_string(kin));
        }
        for (const auto* entry : {&seq.front(), &seq.back()}) {
          if (single_is_axis_pole(*entry)) {
            fail(high_fiber, where + ": fiber end " + entry_to_string(*entry) + " is an axis pole");
          }
        }
      }
    }

    if (v.fiber.size() >= 2) {
      check_fiber_end(where + " (first point)", v.fiber.front());
      check_fiber_end(where + " (last point)", v.fiber.back());
    }
  }

  // A circle in two entries of one label.
  auto check_repeats = [&](const LabelSequence& seq, const std::string& where) {
    std::map<std::string, std::vector<std::size_t>> seen;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      for (const auto& c : seq[i].circles()) seen[c].push_back(i);
    }
    for (const auto& [c, at] : seen) {
      if (at.size() < 2) continue;
      ++repeated.checked;
      if (at.size() != 2 || at.front() != 0 || at.back() != seq.size() - 1) {
        fail(repeated, where + ": circle " + c + " in entries other than the first and last");
        continue;
      }
      for (int j : seq.front().indices(c)) {
        if (!ax.lower_half.count(j)) fail(repeated, where + ": first entry uses arc " + std::to_string(j) + " of " + c);
      }
      for (int j : seq.back().indices(c)) {
        if (!ax.upper_half.count(j)) fail(repeated, where + ": last entry uses arc " + std::to_string(j) + " of " + c);
      }
    }
  };
  for (std::size_t ei = 0; ei < m.edges.size(); ++ei) check_repeats(m.edges[ei], "edge " + std::to_string(ei));
  for (std::size_t vi = 0; vi < m.vertices.size(); ++vi) {
    check_repeats(m.vertices[vi], where_vertex(g, static_cast<int>(vi)));
  }

  PropositionReport report;
  report.results = {edge_same, deg1_pole, deg1_cross, deg2_fiber,
                    cross_ends, high_fiber, edge_shape, repeated};
  return report;
}

LabelMap reindex_for_swap(const LabelMap& m) {
  LabelMap out;
  out.axis = m.axis == Axis::X ? Axis::Y : Axis::X;
  auto remap = [](const LabelSequence& seq) {
    LabelSequence r;
    for (const auto& entry : seq) {
      std::vector<OctantArc> arcs;
      for (const auto& a : entry.arcs) arcs.push_back({a.circle, swap_arc_index(a.j)});
      r.push_back(make_entry(std::move(arcs)));
    }
    return r;
  };
  for (const auto& s : m.edges) out.edges.push_back(remap(s));
  for (const auto& s : m.vertices) out.vertices.push_back(remap(s));
  for (const auto& tp : m.tangents) {
    TangentPair t = tp;
    t.point = swap_axes(tp.point);
    t.t1 = {tp.t1.second, tp.t1.first};
    t.t2 = {tp.t2.second, tp.t2.first};
    out.tangents.push_back(t);
  }
  return out;
}

}  // namespace prg
