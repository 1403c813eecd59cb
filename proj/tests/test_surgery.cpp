#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "prg/isomorphism.hpp"
#include "prg/oracle.hpp"
#include "prg/reeb.hpp"
#include "prg/surgery.hpp"
#include "support/random_scenes.hpp"
#include "support/scenes.hpp"

using namespace prg;
using namespace prg::testing;

namespace {

PRGraph make_graph(std::vector<long> values, std::vector<std::pair<int, int>> edges) {
  PRGraph g;
  for (std::size_t i = 0; i < values.size(); ++i) {
    PRVertex v;
    v.id = static_cast<int>(i);
    v.value = RadicalExpr(Rational(values[i]));
    g.vertices.push_back(v);
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    PREdge e;
    e.id = static_cast<int>(i);
    e.tail = edges[i].first;
    e.head = edges[i].second;
    g.edges.push_back(e);
  }
  return g;
}

// Removes every vertex with one incoming and one outgoing edge, joining
// the two edges.
PRGraph smoothed(PRGraph g) {
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& v : g.vertices) {
      auto in = g.in_edges(v.id), out = g.out_edges(v.id);
      if (in.size() != 1 || out.size() != 1) continue;
      PRGraph h;
      h.axis = g.axis;
      std::vector<int> to(g.vertices.size(), -1);
      for (const auto& w : g.vertices) {
        if (w.id == v.id) continue;
        to[static_cast<std::size_t>(w.id)] = static_cast<int>(h.vertices.size());
        PRVertex c = w;
        c.id = static_cast<int>(h.vertices.size());
        h.vertices.push_back(c);
      }
      for (const auto& e : g.edges) {
        if (e.id == in[0] || e.id == out[0]) continue;
        PREdge c = e;
        c.id = static_cast<int>(h.edges.size());
        c.tail = to[static_cast<std::size_t>(e.tail)];
        c.head = to[static_cast<std::size_t>(e.head)];
        h.edges.push_back(c);
      }
      PREdge j;
      j.id = static_cast<int>(h.edges.size());
      j.tail = to[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(in[0])].tail)];
      j.head = to[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(out[0])].head)];
      h.edges.push_back(j);
      g = h;
      changed = true;
      break;
    }
  }
  return g;
}

Point on_radius2(const Rational& x, int branch) {
  return Point(RadicalExpr(x), RadicalExpr(0, branch, 4 - x * x));
}

long double ld(const RadicalExpr& e) { return static_cast<long double>(to_double(e)); }

std::string pair_string(ChangeKind x, ChangeKind y) {
  return std::string(change_kind_name(x)) + "," + change_kind_name(y);
}

}  // namespace

TEST_CASE("chord near a point of the (2,3) arc has slope in (0,1)") {
  Circle s{"S", 0, 0, 1};
  Point p = point_on_arc(s, 2, Rational(1, 2));
  CHECK(std::fabs(std::atan2(to_double(p.y), to_double(p.x)) - 5 * M_PI / 8) < 1e-6);
  auto [a, b] = chord_near(s, p, Rational(1, 100));
  CHECK(side(s, a) == 0);
  CHECK(side(s, b) == 0);
  CHECK(octant_of(s, a) == Octant{false, 2});
  CHECK(octant_of(s, b) == Octant{false, 2});
  RadicalExpr slope = (b.y - a.y) / (b.x - a.x);
  CHECK(slope.is_rational());
  CHECK(sign(slope) > 0);
  CHECK(sign(slope - RadicalExpr(1)) < 0);
}

TEST_CASE("chord endpoints flank the point and close in on it") {
  for (const Circle& c : {Circle{"S", 0, 0, 1}, Circle{"T", Rational(1, 3), -2, 2}, Circle{"U", 5, 5, Rational(7, 3)}}) {
    for (int j = 0; j < 8; ++j) {
      Point p = point_on_arc(c, j, Rational(2, 5));
      long double px = ld(p.x), py = ld(p.y);
      long double prev = 1e9;
      for (int k = 2; k < 30; k += 3) {
        Rational closeness = Rational(1) / Rational(Integer(1) << static_cast<unsigned>(k));
        auto [a, b] = chord_near(c, p, closeness);
        CAPTURE(c.id);
        CAPTURE(j);
        CAPTURE(k);
        REQUIRE(octant_of(c, a) == Octant{false, j});
        REQUIRE(octant_of(c, b) == Octant{false, j});
        CHECK(compare_within_octant(c, CirclePoint::of(c, a), CirclePoint::of(c, p)) < 0);
        CHECK(compare_within_octant(c, CirclePoint::of(c, p), CirclePoint::of(c, b)) < 0);
        long double ax = ld(a.x), ay = ld(a.y), bx = ld(b.x), by = ld(b.y);
        long double len = std::hypot(bx - ax, by - ay);
        long double dist = std::fabs((bx - ax) * (ay - py) - (ax - px) * (by - ay)) / len;
        CHECK(dist <= closeness.get_d() * (1 + 1e-9L));
        long double reach = std::max(std::hypot(ax - px, ay - py), std::hypot(bx - px, by - py));
        CHECK(reach < prev);
        prev = reach;
        // chord parallel to the tangent up to the half-angle step
        long double tx = -(py - ld(RadicalExpr(c.cy))), ty = px - ld(RadicalExpr(c.cx));
        long double cross = std::fabs(tx * (by - ay) - ty * (bx - ax)) / (std::hypot(tx, ty) * len);
        CHECK(cross < 2 * std::sqrt(closeness.get_d()));
      }
    }
  }
}

TEST_CASE("chord and arc points refuse poles and bad parameters") {
  Circle s{"S", 0, 0, 1};
  CHECK_THROWS_AS(chord_near(s, pole(s, 2), Rational(1, 10)), SurgeryError);
  CHECK_THROWS_AS(chord_near(s, point_on_arc(s, 1, Rational(1, 2)), Rational(0)), SurgeryError);
  CHECK_THROWS_AS(point_on_arc(s, 8, Rational(1, 2)), SurgeryError);
  CHECK_THROWS_AS(point_on_arc(s, 0, Rational(1)), SurgeryError);
  CHECK_THROWS_AS(point_on_arc(s, 0, Rational(0)), SurgeryError);
}

TEST_CASE("case names parse and print") {
  CHECK(SurgeryCase::parse("auto").name() == "c3");
  CHECK(SurgeryCase::parse("c5").index == 5);
  CHECK(SurgeryCase::parse("2.2.4").family == 2);
  CHECK(SurgeryCase::parse("2.1.2").name() == "2.1.2");
  CHECK_THROWS_AS(SurgeryCase::parse("c6"), SurgeryError);
  CHECK_THROWS_AS(SurgeryCase::parse("2.3.1"), SurgeryError);
}

TEST_CASE("ladders and admissible pairs") {
  auto one = family_ladder(1), two = family_ladder(2);
  REQUIRE(one.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(one[i].first == two[i].second);
    CHECK(one[i].second == two[i].first);
    CHECK(pendant_count(one[i].first) + pendant_count(one[i].second) == static_cast<int>(i));
    CHECK(admissible_pair(one[i].first, one[i].second));
  }
  CHECK_FALSE(admissible_pair(ChangeKind::V2, ChangeKind::V2P2));
  CHECK_FALSE(admissible_pair(ChangeKind::V2P2, ChangeKind::V2));
}

TEST_CASE("classify_change on hand-built graphs") {
  PRGraph old = make_graph({0, 10}, {{0, 1}});
  SUBCASE("plain subdivision") {
    PRGraph g = make_graph({0, 3, 6, 10}, {{0, 1}, {1, 2}, {2, 3}});
    AxisChange c = classify_change(old, g);
    CHECK(c.kind == ChangeKind::V2);
    CHECK(c.old_edge == 0);
    CHECK(c.subdivision == std::vector<int>{1, 2});
    CHECK(c.facts_hold());
  }
  SUBCASE("one pendant") {
    PRGraph g = make_graph({0, 3, 5, 6, 10}, {{0, 1}, {1, 3}, {1, 2}, {3, 4}});
    AxisChange c = classify_change(old, g);
    CHECK(c.kind == ChangeKind::V2P1);
    CHECK(c.leaves == std::vector<int>{2});
    CHECK(c.attach == std::vector<int>{1});
  }
  SUBCASE("two pendants in chain order") {
    PRGraph g = make_graph({0, 2, 4, 6, 8, 10}, {{0, 1}, {1, 4}, {1, 2}, {3, 4}, {4, 5}});
    AxisChange c = classify_change(old, g);
    CHECK(c.kind == ChangeKind::V2P2);
    CHECK(c.facts_hold());
  }
  SUBCASE("two pendants out of chain order") {
    PRGraph g = make_graph({0, 2, 3, 4, 8, 10}, {{0, 1}, {1, 4}, {1, 3}, {2, 4}, {4, 5}});
    AxisChange c = classify_change(old, g);
    CHECK(c.kind == ChangeKind::V2P2);
    CHECK_FALSE(c.facts_hold());
  }
  SUBCASE("identical graphs") { CHECK(classify_change(old, old).kind == ChangeKind::Unrecognized); }
  SUBCASE("old vertex moved") {
    PRGraph g = make_graph({0, 3, 6, 11}, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(classify_change(old, g).kind == ChangeKind::Unrecognized);
  }
  SUBCASE("two edges each subdivided once") {
    PRGraph o2 = make_graph({0, 5, 10}, {{0, 1}, {1, 2}});
    PRGraph g = make_graph({0, 3, 5, 7, 10}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    CHECK(classify_change(o2, g).kind == ChangeKind::Unrecognized);
  }
  SUBCASE("different axes") {
    PRGraph g = make_graph({0, 3, 6, 10}, {{0, 1}, {1, 2}, {2, 3}});
    g.axis = Axis::Y;
    CHECK(classify_change(old, g).kind == ChangeKind::Unrecognized);
  }
}

TEST_CASE("small circle centered on the unit circle: five vertices, four edges") {
  Arrangement disk = parse_scene(kUnitDisk), bite = parse_scene(kBite);
  for (Axis axis : {Axis::X, Axis::Y}) {
    CAPTURE(std::string(axis_name(axis)));
    PRGraph g0 = build_pr_graph(disk, axis), g1 = build_pr_graph(bite, axis);
    CHECK(g1.vertices.size() == 5);
    CHECK(g1.edges.size() == 4);
    AxisChange c = classify_change(g0, g1);
    CHECK(c.kind == ChangeKind::V2P1);
    CHECK(c.old_edge == 0);
    CHECK(c.facts_hold());
  }
}

TEST_CASE("small lens near the unit circle: two more vertices, same underlying graph") {
  Arrangement disk = parse_scene(kUnitDisk);
  for (int j : {2, 3}) {
    Point p = point_on_arc(disk.initial[0], j, Rational(1, 3));
    SurgeryResult r = construct_addition(disk, SurgerySpec{0, p, SurgeryCase::parse("c1")});
    CHECK(validate(r.scene).valid);
    CHECK(r.x.kind == ChangeKind::V2);
    CHECK(r.y.kind == ChangeKind::V2);
    for (Axis axis : {Axis::X, Axis::Y}) {
      PRGraph g0 = build_pr_graph(disk, axis), g1 = build_pr_graph(r.scene, axis);
      CHECK(g1.vertices.size() == g0.vertices.size() + 2);
      CHECK(isomorphic(smoothed(g1), smoothed(g0), IsoMode::Graph).has_value());
    }
  }
}

TEST_CASE("unit disk: each band gives its ladder step and revalidates") {
  Arrangement disk = parse_scene(kUnitDisk);
  for (int j = 0; j < 8; ++j) {
    int family = (j == 1 || j == 2 || j == 5 || j == 6) ? 1 : 2;
    auto ladder = family_ladder(family);
    Point p = point_on_arc(disk.initial[0], j, Rational(1, 2));
    for (int band = 1; band <= 5; ++band) {
      CAPTURE(j);
      CAPTURE(band);
      SurgeryResult r = construct_addition(disk, SurgerySpec{0, p, SurgeryCase{0, band}});
      CHECK(validate(r.scene).valid);
      CHECK(r.arc == j);
      CHECK(r.arc_family == family);
      CHECK(pair_string(r.x.kind, r.y.kind) ==
            pair_string(ladder[static_cast<std::size_t>(band - 1)].first,
                        ladder[static_cast<std::size_t>(band - 1)].second));
      CHECK(admissible_pair(r.x.kind, r.y.kind));
      CHECK(r.x.facts_hold());
      CHECK(r.y.facts_hold());
      CHECK(r.scene.additions.back().side == Outside);
      for (Axis axis : {Axis::X, Axis::Y}) {
        const PRGraph& g = axis == Axis::X ? r.new_x : r.new_y;
        CHECK(agree(g, grid_reeb(r.scene, axis, 1024)).agree);
      }
    }
  }
}

TEST_CASE("annulus: concave and convex entries follow the arc's ladder") {
  Arrangement ann = parse_scene(kAnnulus);
  PRGraph gx = build_pr_graph(ann, Axis::X);
  int checked = 0;
  for (const auto& e : gx.edges) {
    for (const BranchTag& tag : {e.lower, e.upper}) {
      const Circle& c = ann.circle(static_cast<std::size_t>(tag.circle));
      for (int j = 0; j < 8; ++j) {
        Point p = point_on_arc(c, j, Rational(1, 2));
        if (CirclePoint::of(c, p).branch != tag.branch) continue;
        const auto& lo = gx.vertices[static_cast<std::size_t>(e.tail)].value;
        const auto& hi = gx.vertices[static_cast<std::size_t>(e.head)].value;
        if (compare_cross(lo, p.x) >= 0 || compare_cross(p.x, hi) >= 0) continue;
        CAPTURE(e.id);
        CAPTURE(c.id);
        CAPTURE(j);
        FamilyReport fr = verify_theorem2(ann, e.id, p);
        CHECK(fr.holds());
        CHECK(fr.family1 != fr.family2);
        CHECK(fr.family1 == (j == 1 || j == 2 || j == 5 || j == 6));
        ++checked;
      }
    }
  }
  CHECK(checked >= 12);
}

TEST_CASE("annulus: the five ranges on the outer circle") {
  Arrangement ann = parse_scene(kAnnulus);
  Point p3 = pole(ann.initial[0], 3);
  CHECK(p3.x == RadicalExpr(0, -1, 2));
  CHECK(p3.y == RadicalExpr(0, 1, 2));
  PRGraph gx = build_pr_graph(ann, Axis::X);
  REQUIRE(gx.vertices[static_cast<std::size_t>(gx.edges[0].tail)].value == RadicalExpr(-2));
  REQUIRE(gx.vertices[static_cast<std::size_t>(gx.edges[0].head)].value == RadicalExpr(-1));

  struct Case {
    Point p;
    bool first;
  };
  // x in (-2,-sqrt3); (-sqrt3,-sqrt2) above and below; (-sqrt2,-1) above and below
  std::vector<Case> cases{{on_radius2(Rational(-19, 10), 1), false},
                          {on_radius2(Rational(-8, 5), 1), false},
                          {on_radius2(Rational(-8, 5), -1), false},
                          {on_radius2(Rational(-6, 5), 1), true},
                          {on_radius2(Rational(-6, 5), -1), true}};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    CAPTURE(i);
    FamilyReport fr = verify_theorem2(ann, 0, cases[i].p);
    CHECK(fr.circle == "S2");
    CHECK(fr.family1 == cases[i].first);
    CHECK(fr.family2 == !cases[i].first);
    for (const auto& b : fr.bands) CHECK(b.built);
  }
  CHECK(verify_theorem2(ann, 0, on_radius2(Rational(-19, 10), -1)).family2);
}

TEST_CASE("family-qualified requests") {
  Arrangement disk = parse_scene(kUnitDisk);
  Point p = point_on_arc(disk.initial[0], 2, Rational(1, 2));
  auto r = construct_addition(disk, SurgerySpec{0, p, SurgeryCase::parse("2.1.4")});
  CHECK(r.band == 4);
  CHECK(r.x.kind == ChangeKind::V2P2);
  CHECK(r.y.kind == ChangeKind::V2P1);
  CHECK(construct_addition(disk, SurgerySpec{0, p, SurgeryCase::parse("2.2.5")}).band == 5);
  CHECK_THROWS_WITH_AS(construct_addition(disk, SurgerySpec{0, p, SurgeryCase::parse("2.2.2")}),
                       "case family unavailable, try reversed family", SurgeryError);
  CHECK_THROWS_WITH_AS(construct_addition(disk, SurgerySpec{0, p, SurgeryCase::parse("2.2.4")}),
                       "case family unavailable, try reversed family", SurgeryError);
}

TEST_CASE("construct_addition errors") {
  Arrangement disk = parse_scene(kUnitDisk);
  Point p = point_on_arc(disk.initial[0], 2, Rational(1, 2));
  SurgerySpec none{0, p, SurgeryCase{}};
  none.shrink_budget = 0;
  CHECK_THROWS_WITH_AS(construct_addition(disk, none), "no valid circle found", SurgeryError);
  CHECK_THROWS_AS(construct_addition(disk, SurgerySpec{1, p, SurgeryCase{}}), SurgeryError);
  CHECK_THROWS_AS(construct_addition(disk, SurgerySpec{0, pole(disk.initial[0], 2), SurgeryCase{}}), SurgeryError);
  CHECK_THROWS_AS(construct_addition(disk, SurgerySpec{0, Point(RadicalExpr(0), RadicalExpr(0)), SurgeryCase{}}),
                  SurgeryError);
}

TEST_CASE("report JSON carries both axes") {
  Arrangement disk = parse_scene(kUnitDisk);
  Point p = point_on_arc(disk.initial[0], 3, Rational(1, 2));
  auto r = construct_addition(disk, SurgerySpec{0, p, SurgeryCase::parse("c4")});
  std::string js = change_report_json(r);
  CHECK(js.find("\"pair\"") != std::string::npos);
  CHECK(js.find("\"V2P2\"") != std::string::npos);
  CHECK(js.find("\"arc_family\": \"2.2\"") != std::string::npos);
  CHECK(parse_scene(scene_to_json(r.scene)).additions.size() == 1);
}

TEST_CASE("two arcs of one circle in an entry: witnesses for both families") {
  SUBCASE("annulus, first edge") {
    Arrangement ann = parse_scene(kAnnulus);
    PairReport rep = verify_theorem3(ann, 0);
    REQUIRE(rep.found());
    CHECK(rep.circle == "S2");
    CHECK(rep.family1->arc == 2);
    CHECK(rep.family2->arc == 3);
  }
  SUBCASE("unit disk") {
    PairReport rep = verify_theorem3(parse_scene(kUnitDisk), 0);
    CHECK(rep.found());
  }
  SUBCASE("entries confined to arcs {1,2} and {5,6}") {
    Arrangement a = parse_scene(kTwoBites);
    PRGraph gx = build_pr_graph(a, Axis::X);
    int middle = -1;
    for (const auto& e : gx.edges) {
      if (gx.vertices[static_cast<std::size_t>(e.tail)].value == RadicalExpr(Rational(-1, 2)) &&
          gx.vertices[static_cast<std::size_t>(e.head)].value == RadicalExpr(Rational(1, 2))) {
        middle = e.id;
      }
    }
    REQUIRE(middle >= 0);
    PairReport rep = verify_theorem3(a, middle);
    CHECK(rep.family1.has_value());
    CHECK_FALSE(rep.family2.has_value());
    CHECK_FALSE(rep.found());
  }
}

TEST_CASE("single-arc entries do not meet the hypothesis") {
  Arrangement a = parse_scene(kBite);
  PRGraph gx = build_pr_graph(a, Axis::X);
  int tried = 0;
  for (const auto& e : gx.edges) {
    LabelSequence l = edge_label(a, gx, e.id);
    bool single = true;
    for (const auto& entry : l) {
      for (const auto& c : entry.circles()) single = single && entry.indices(c).size() == 1;
    }
    if (!single) continue;
    CHECK_THROWS_WITH_AS(verify_theorem3(a, e.id), "Theorem 3 hypothesis not satisfied", SurgeryError);
    ++tried;
  }
  CHECK(tried >= 1);
}

TEST_CASE("random scenes: every band revalidates and follows the arc's ladder") {
  int built = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Arrangement a = random_scene(seed);
    PRGraph gx = build_pr_graph(a, Axis::X);
    // first boundary point found at an arc midpoint over an open edge
    std::optional<std::pair<int, Point>> target;
    for (const auto& e : gx.edges) {
      for (const BranchTag& tag : {e.upper, e.lower}) {
        const Circle& c = a.circle(static_cast<std::size_t>(tag.circle));
        for (int j = 0; j < 8 && !target; ++j) {
          Point p = point_on_arc(c, j, Rational(1, 2));
          if (CirclePoint::of(c, p).branch != tag.branch) continue;
          if (compare_cross(gx.vertices[static_cast<std::size_t>(e.tail)].value, p.x) >= 0 ||
              compare_cross(p.x, gx.vertices[static_cast<std::size_t>(e.head)].value) >= 0) {
            continue;
          }
          if (membership(a, p).witnesses.size() != 1) continue;
          target = std::make_pair(e.id, p);
        }
      }
      if (target) break;
    }
    if (!target) continue;
    CAPTURE(seed);
    Point p = target->second;
    for (int band = 1; band <= 5; ++band) {
      CAPTURE(band);
      SurgeryResult r = construct_addition(a, SurgerySpec{target->first, p, SurgeryCase{0, band}});
      CHECK(validate(r.scene).valid);
      auto step = family_ladder(r.arc_family)[static_cast<std::size_t>(band - 1)];
      CHECK(r.x.kind == step.first);
      CHECK(r.y.kind == step.second);
      CHECK(r.x.old_edge == target->first);
      CHECK(r.x.facts_hold());
      CHECK(r.y.facts_hold());
      ++built;
    }
  }
  CHECK(built >= 150);
}
