#include "prg/arrangement.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <json.hpp>

#include "prg/sweep.hpp"

namespace prg {

namespace {

using nlohmann::json;

Rational rational_field(const json& obj, const char* key) {
  if (!obj.contains(key)) throw SceneError(std::string("missing field \"") + key + "\"");
  const json& v = obj.at(key);
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(Integer(v.dump()));
    if (v.is_number()) return parse_rational(v.dump());
  } catch (const NumericError& e) {
    throw SceneError(std::string("field \"") + key + "\": " + e.what());
  }
  throw SceneError(std::string("field \"") + key + "\" must be a number or string");
}

Circle parse_circle(const json& obj, std::size_t index) {
  if (!obj.is_object()) throw SceneError("circle entries must be objects");
  Circle c;
  if (obj.contains("id")) {
    const json& id = obj.at("id");
    c.id = id.is_string() ? id.get<std::string>() : id.dump();
  } else {
    c.id = "c" + std::to_string(index);
  }
  c.cx = rational_field(obj, "cx");
  c.cy = rational_field(obj, "cy");
  bool has_r = obj.contains("r"), has_r2 = obj.contains("r2");
  if (has_r == has_r2) throw SceneError("circle " + c.id + ": give exactly one of r, r2");
  if (has_r) {
    Rational r = rational_field(obj, "r");
    if (r <= 0) throw SceneError("circle " + c.id + ": nonpositive radius");
    c.r2 = r * r;
  } else {
    c.r2 = rational_field(obj, "r2");
    if (c.r2 <= 0) throw SceneError("circle " + c.id + ": nonpositive radius");
  }
  return c;
}

RegionSide parse_side(const json& obj, const std::string& id) {
  if (!obj.contains("side") || !obj.at("side").is_string()) {
    throw SceneError("addition " + id + ": missing side");
  }
  std::string s = obj.at("side").get<std::string>();
  if (s == "interior") return Inside;
  if (s == "exterior") return Outside;
  throw SceneError("addition " + id + ": side must be \"interior\" or \"exterior\"");
}

// sqrt(a) - sqrt(b) > sqrt(D), with a > b: closed disk B strictly inside A.
bool strictly_contains(const Circle& A, const Circle& B) {
  Rational dx = A.cx - B.cx, dy = A.cy - B.cy, D = dx * dx + dy * dy;
  if (A.r2 <= B.r2) return false;
  return sign_of(Rational(A.r2 + B.r2 - D), Rational(-2), Rational(A.r2 * B.r2)) > 0;
}

// sqrt(D) > sqrt(a) + sqrt(b): closed disks disjoint.
bool disks_apart(const Circle& A, const Circle& B) {
  Rational dx = A.cx - B.cx, dy = A.cy - B.cy, D = dx * dx + dy * dy;
  return sign_of(Rational(D - A.r2 - B.r2), Rational(-2), Rational(A.r2 * B.r2)) > 0;
}

struct ElementaryArc {
  int circle;
  Point from, to;  // counter-clockwise
  Point witness;
  bool boundary;
};

int cyclic_compare(const Circle& c, const Point& a, const Point& b) {
  CirclePoint pa = CirclePoint::of(c, a), pb = CirclePoint::of(c, b);
  int oa = octant_of(c, pa).position(), ob = octant_of(c, pb).position();
  if (oa != ob) return oa < ob ? -1 : 1;
  return compare_within_octant(c, pa, pb);
}

std::vector<ElementaryArc> elementary_arcs(const std::vector<Circle>& circles,
                                           const std::vector<int>& sides) {
  std::vector<ElementaryArc> out;
  for (std::size_t i = 0; i < circles.size(); ++i) {
    const Circle& c = circles[i];
    std::vector<Point> cuts;
    auto add = [&](const Point& p) {
      if (std::none_of(cuts.begin(), cuts.end(), [&](const Point& q) { return q == p; })) {
        cuts.push_back(p);
      }
    };
    for (int j = 0; j < 8; j += 2) add(pole(c, j));
    for (std::size_t k = 0; k < circles.size(); ++k) {
      if (k == i) continue;
      for (const Point& p : intersect(c, circles[k]).points) add(p);
    }
    std::sort(cuts.begin(), cuts.end(),
              [&](const Point& a, const Point& b) { return cyclic_compare(c, a, b) < 0; });
    for (std::size_t k = 0; k < cuts.size(); ++k) {
      const Point& a = cuts[k];
      const Point& b = cuts[(k + 1) % cuts.size()];
      int quadrant = octant_of(c, a).position() / 4;
      bool a_first = compare_cross(a.x, b.x) < 0;
      Rational x = rational_between(a_first ? a.x : b.x, a_first ? b.x : a.x);
      Rational u = x - c.cx;
      Rational rem = c.r2 - u * u;
      Point w(x, RadicalExpr(c.cy, quadrant <= 1 ? 1 : -1, rem));
      bool boundary = true;
      for (std::size_t k2 = 0; k2 < circles.size() && boundary; ++k2) {
        if (k2 != i && side(circles[k2], w) != sides[k2]) boundary = false;
      }
      out.push_back({static_cast<int>(i), a, b, w, boundary});
    }
  }
  return out;
}

template <typename T>
std::vector<T> head(const std::vector<T>& v, std::size_t n) {
  return {v.begin(), v.begin() + static_cast<long>(n)};
}

}  // namespace

std::vector<Circle> Arrangement::circles() const {
  std::vector<Circle> out = initial;
  for (const auto& s : additions) out.push_back(s.circle);
  return out;
}

int Arrangement::outer() const {
  int best = 0;
  for (std::size_t i = 1; i < initial.size(); ++i) {
    if (initial[i].r2 > initial[static_cast<std::size_t>(best)].r2) best = static_cast<int>(i);
  }
  return best;
}

std::vector<int> Arrangement::sides() const {
  std::vector<int> out(initial.size(), Outside);
  if (!initial.empty()) out[static_cast<std::size_t>(outer())] = Inside;
  for (const auto& s : additions) out.push_back(s.side);
  return out;
}

const Circle& Arrangement::circle(std::size_t i) const {
  return i < initial.size() ? initial[i] : additions.at(i - initial.size()).circle;
}

int Arrangement::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (circle(i).id == id) return static_cast<int>(i);
  }
  return -1;
}

Arrangement Arrangement::prefix(std::size_t n) const {
  Arrangement out;
  out.initial = initial;
  for (std::size_t k = 0; k + initial.size() < n && k < additions.size(); ++k) {
    out.additions.push_back(additions[k]);
  }
  return out;
}

Arrangement parse_scene(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SceneError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SceneError("scene must be a JSON object");
  if (!doc.contains("circles") || !doc.at("circles").is_array() || doc.at("circles").empty()) {
    throw SceneError("scene needs a nonempty \"circles\" array");
  }
  const json& list = doc.at("circles");
  std::size_t initial_count = list.size();
  if (doc.contains("initial_count")) {
    const json& n = doc.at("initial_count");
    if (!n.is_number_integer() || n.get<long>() < 1 ||
        n.get<long>() > static_cast<long>(list.size())) {
      throw SceneError("initial_count must be an integer in [1, len(circles)]");
    }
    initial_count = n.get<std::size_t>();
  }
  Arrangement a;
  std::size_t index = 0;
  for (const json& entry : list) {
    Circle c = parse_circle(entry, index);
    if (index < initial_count) {
      a.initial.push_back(std::move(c));
    } else {
      RegionSide s = parse_side(entry, c.id);
      a.additions.push_back({std::move(c), s});
    }
    ++index;
  }
  if (doc.contains("additions")) {
    if (!doc.at("additions").is_array()) throw SceneError("\"additions\" must be an array");
    for (const json& entry : doc.at("additions")) {
      Circle c = parse_circle(entry, index++);
      RegionSide s = parse_side(entry, c.id);
      a.additions.push_back({std::move(c), s});
    }
  }
  std::set<std::string> ids;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!ids.insert(a.circle(i).id).second) {
      throw SceneError("duplicate circle id " + a.circle(i).id);
    }
  }
  return a;
}

std::string scene_to_json(const Arrangement& a, int indent) {
  auto circle_json = [](const Circle& c) {
    return json{{"id", c.id}, {"cx", to_string(c.cx)}, {"cy", to_string(c.cy)},
                {"r2", to_string(c.r2)}};
  };
  json doc;
  doc["circles"] = json::array();
  for (const auto& c : a.initial) doc["circles"].push_back(circle_json(c));
  doc["initial_count"] = a.initial.size();
  doc["additions"] = json::array();
  for (const auto& s : a.additions) {
    json j = circle_json(s.circle);
    j["side"] = s.side == Inside ? "interior" : "exterior";
    doc["additions"].push_back(j);
  }
  return doc.dump(indent);
}

const RuleResult* ValidationReport::first_failure() const {
  for (const auto& r : rules) {
    if (!r.pass) return &r;
  }
  return nullptr;
}

bool closure_contains(const std::vector<Circle>& circles, const std::vector<int>& sides,
                      const Point& p) {
  std::vector<std::size_t> on;
  for (std::size_t i = 0; i < circles.size(); ++i) {
    int s = side(circles[i], p);
    if (s == 0) {
      on.push_back(i);
    } else if (s != sides[i]) {
      return false;
    }
  }
  if (on.size() <= 1) return true;
  struct Vec {
    RadicalExpr x, y;
  };
  std::vector<Vec> normal;
  for (std::size_t i : on) normal.push_back({p.x - circles[i].cx, p.y - circles[i].cy});
  bool tangent = false;
  for (std::size_t a = 0; a < on.size(); ++a) {
    for (std::size_t b = a + 1; b < on.size(); ++b) {
      tangent |= sign(normal[a].x * normal[b].y - normal[a].y * normal[b].x) == 0;
    }
  }
  if (tangent) {
    if (on.size() > 2) return true;
    int sa = sides[on[0]], sb = sides[on[1]];
    bool internal = sign(normal[0].x * normal[1].x + normal[0].y * normal[1].y) > 0;
    if (!internal) return !(sa == Inside && sb == Inside);
    bool a_small = circles[on[0]].r2 < circles[on[1]].r2;
    int s_small = a_small ? sa : sb, s_big = a_small ? sb : sa;
    return !(s_small == Inside && s_big == Outside);
  }
  // A direction entering every required side strictly.
  std::vector<Vec> candidates;
  for (std::size_t a = 0; a < on.size(); ++a) {
    for (std::size_t b = a + 1; b < on.size(); ++b) {
      Vec ta{-normal[a].y, normal[a].x}, tb{-normal[b].y, normal[b].x};
      for (int sa : {-1, 1}) {
        for (int sb : {-1, 1}) {
          candidates.push_back({ta.x * RadicalExpr(sa) + tb.x * RadicalExpr(sb),
                                ta.y * RadicalExpr(sa) + tb.y * RadicalExpr(sb)});
        }
      }
    }
  }
  for (const Vec& u : candidates) {
    bool ok = true;
    for (std::size_t a = 0; a < on.size() && ok; ++a) {
      ok = sign(u.x * normal[a].x + u.y * normal[a].y) == sides[on[a]];
    }
    if (ok) return true;
  }
  return false;
}

ValidationReport validate(const Arrangement& a) {
  ValidationReport report;
  auto record = [&](const std::string& rule, int step, bool pass, std::string detail = {},
                    std::vector<Point> witnesses = {}) {
    report.rules.push_back({rule, pass, step, std::move(detail), std::move(witnesses)});
    if (!pass) report.valid = false;
    return pass;
  };
  const std::vector<Circle> circles = a.circles();
  const std::vector<int> sides = a.sides();
  const std::size_t n0 = a.initial.size();
  if (n0 == 0) {
    record("initial normal form", -1, false, "no circles");
    return report;
  }

  // The outer circle must strictly contain every other initial circle and
  // the inner closed disks must be pairwise disjoint.
  {
    const Circle& outer = a.initial[static_cast<std::size_t>(a.outer())];
    std::string problem;
    for (std::size_t i = 0; i < n0 && problem.empty(); ++i) {
      if (static_cast<int>(i) == a.outer()) continue;
      if (!strictly_contains(outer, a.initial[i])) {
        problem = "circle " + a.initial[i].id + " is not strictly inside " + outer.id;
      }
      for (std::size_t j = i + 1; j < n0 && problem.empty(); ++j) {
        if (static_cast<int>(j) == a.outer()) continue;
        if (!disks_apart(a.initial[i], a.initial[j])) {
          problem = "inner disks " + a.initial[i].id + " and " + a.initial[j].id + " meet";
        }
      }
    }
    if (!record("initial normal form", -1, problem.empty(), problem)) return report;
  }

  auto region_rules = [&](std::size_t n, int step) {
    auto cs = head(circles, n);
    auto ss = head(sides, n);
    try {
      PRGraph g = sweep_graph(cs, ss, Axis::X);
      if (!record("region nonempty", step, !g.vertices.empty(), "empty region")) return false;
      int comps = g.connected_components();
      if (!record("region connected", step, comps == 1,
                  std::to_string(comps) + " components")) {
        return false;
      }
    } catch (const SweepError& e) {
      record("region connected", step, false, e.what());
      return false;
    }
    std::vector<bool> meets(n, false);
    for (const auto& arc : elementary_arcs(cs, ss)) {
      if (arc.boundary) meets[static_cast<std::size_t>(arc.circle)] = true;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!meets[i]) {
        return record("circles meet closure", step, false,
                      "circle " + cs[i].id + " misses the region closure");
      }
    }
    return record("circles meet closure", step, true);
  };
  if (!region_rules(n0, -1)) return report;

  for (std::size_t k = 0; k < a.additions.size(); ++k) {
    const int step = static_cast<int>(k);
    const std::size_t idx = n0 + k;
    const Circle& c = circles[idx];
    auto old_circles = head(circles, idx);
    auto old_sides = head(sides, idx);
    bool meets_any = false;
    std::string trans_problem, triple_problem;
    std::vector<Point> trans_witness, triple_witness;
    for (std::size_t i = 0; i < idx; ++i) {
      Intersection x = intersect(c, circles[i]);
      if (x.kind == Intersection::Kind::Identical) {
        trans_problem = "circle " + c.id + " coincides with " + circles[i].id;
        meets_any = true;
        continue;
      }
      if (x.kind == Intersection::Kind::Disjoint) continue;
      meets_any = true;
      for (const Point& p : x.points) {
        if (!closure_contains(old_circles, old_sides, p)) continue;
        if (x.kind == Intersection::Kind::Tangent) {
          if (trans_problem.empty()) {
            trans_problem = c.id + " is tangent to " + circles[i].id + " in the region closure";
            trans_witness.push_back(p);
          }
          continue;
        }
        for (std::size_t j = 0; j < idx; ++j) {
          if (j != i && side(circles[j], p) == 0 && triple_problem.empty()) {
            triple_problem = c.id + ", " + circles[i].id + " and " + circles[j].id +
                             " share a point of the region closure";
            triple_witness.push_back(p);
          }
        }
      }
    }
    if (!record("intersects earlier circle", step, meets_any,
                "circle " + c.id + " meets no earlier circle")) {
      return report;
    }
    if (!record("transversality", step, trans_problem.empty(), trans_problem, trans_witness)) {
      return report;
    }
    if (!record("no triple points", step, triple_problem.empty(), triple_problem,
                triple_witness)) {
      return report;
    }
    if (!region_rules(idx + 1, step)) return report;
  }
  return report;
}

void require_valid(const Arrangement& a) {
  ValidationReport r = validate(a);
  if (const RuleResult* f = r.first_failure()) {
    throw SceneError("invalid arrangement: " + f->rule +
                     (f->detail.empty() ? "" : " (" + f->detail + ")"));
  }
}

MembershipResult membership(const Arrangement& a, const Point& p) {
  const auto circles = a.circles();
  const auto sides = a.sides();
  MembershipResult out;
  bool strict = true;
  for (std::size_t i = 0; i < circles.size(); ++i) {
    int s = side(circles[i], p);
    if (s == 0) out.witnesses.push_back(circles[i].id);
    if (s != sides[i]) strict = false;
  }
  if (strict) {
    out.kind = MembershipResult::Kind::Interior;
  } else if (!out.witnesses.empty() && closure_contains(circles, sides, p)) {
    out.kind = MembershipResult::Kind::Boundary;
  } else {
    out.kind = MembershipResult::Kind::Exterior;
    out.witnesses.clear();
  }
  return out;
}

BoundaryComponents boundary_components(const Arrangement& a) {
  const auto circles = a.circles();
  const auto sides = a.sides();
  std::vector<ElementaryArc> arcs;
  for (auto& arc : elementary_arcs(circles, sides)) {
    if (arc.boundary) arcs.push_back(std::move(arc));
  }
  std::vector<Point> nodes;
  auto node_of = [&](const Point& p) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i] == p) return static_cast<int>(i);
    }
    nodes.push_back(p);
    return static_cast<int>(nodes.size() - 1);
  };
  std::vector<std::pair<int, int>> ends;
  for (const auto& arc : arcs) ends.emplace_back(node_of(arc.from), node_of(arc.to));
  std::vector<std::vector<int>> incident(nodes.size());
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    incident[static_cast<std::size_t>(ends[i].first)].push_back(static_cast<int>(i));
    incident[static_cast<std::size_t>(ends[i].second)].push_back(static_cast<int>(i));
  }
  BoundaryComponents out;
  std::vector<bool> seen(arcs.size(), false);
  for (std::size_t start = 0; start < arcs.size(); ++start) {
    if (seen[start]) continue;
    // Walk the cycle through `start`, recording (arc, forward) steps.
    std::vector<std::pair<int, bool>> walk;
    int cur = static_cast<int>(start);
    bool forward = true;
    while (true) {
      seen[static_cast<std::size_t>(cur)] = true;
      walk.emplace_back(cur, forward);
      int at = forward ? ends[static_cast<std::size_t>(cur)].second
                       : ends[static_cast<std::size_t>(cur)].first;
      int next = -1;
      for (int cand : incident[static_cast<std::size_t>(at)]) {
        if (cand != cur && !seen[static_cast<std::size_t>(cand)]) {
          next = cand;
          break;
        }
      }
      if (next < 0) break;
      forward = ends[static_cast<std::size_t>(next)].first == at;
      cur = next;
    }
    // Merge consecutive steps along one circle.
    std::vector<BoundaryPiece> pieces;
    for (auto [arc_index, fwd] : walk) {
      const auto& arc = arcs[static_cast<std::size_t>(arc_index)];
      const std::string& id = circles[static_cast<std::size_t>(arc.circle)].id;
      Point from = fwd ? arc.from : arc.to, to = fwd ? arc.to : arc.from;
      if (!pieces.empty() && pieces.back().circle == id && pieces.back().ccw == fwd) {
        pieces.back().to = to;
      } else {
        pieces.push_back({id, from, to, fwd, false});
      }
    }
    if (pieces.size() > 1 && pieces.front().circle == pieces.back().circle &&
        pieces.front().ccw == pieces.back().ccw) {
      pieces.front().from = pieces.back().from;
      pieces.pop_back();
    }
    if (pieces.size() == 1 && pieces.front().from == pieces.front().to) {
      pieces.front().full = true;
    }
    out.cycles.push_back(std::move(pieces));
  }
  out.count = static_cast<int>(out.cycles.size());
  return out;
}

Arrangement swap_axes(const Arrangement& a) {
  Arrangement out = a;
  for (auto& c : out.initial) c = swap_axes(c);
  for (auto& s : out.additions) s.circle = swap_axes(s.circle);
  return out;
}

}  // namespace prg
