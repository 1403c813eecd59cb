#include <doctest.h>

#include <cmath>
#include <random>

#include "prg/geometry.hpp"

using namespace prg;

namespace {

RadicalExpr rad(Rational p, Rational q, Rational d) { return {p, q, d}; }
Circle circle(const char* id, long cx, long cy, long r2) {
  return {id, Rational(cx), Rational(cy), Rational(r2)};
}
const Circle unit = circle("S", 0, 0, 1);

std::vector<int> js(const std::vector<OctantArc>& arcs) {
  std::vector<int> out;
  for (const auto& a : arcs) out.push_back(a.j);
  return out;
}

// Octant from a floating angle; nullopt near a pole.
std::optional<Octant> octant_from_angle(double ux, double uy) {
  double t = std::atan2(uy, ux);
  if (t < 0) t += 2 * M_PI;
  double k = t / (M_PI / 4);
  double nearest = std::round(k);
  if (std::abs(k - nearest) < 1e-9) return Octant{true, static_cast<int>(nearest) % 8};
  return Octant{false, static_cast<int>(std::floor(k)) % 8};
}

Circle random_circle(std::mt19937_64& rng, const char* id) {
  std::uniform_int_distribution<long> coord(-40, 40), den(1, 8), rad2(1, 200);
  return {id, Rational(coord(rng), den(rng)), Rational(coord(rng), den(rng)),
          Rational(rad2(rng), den(rng))};
}

}  // namespace

TEST_CASE("poles") {
  Point p3 = pole(unit, 3);
  CHECK(p3.x == rad(0, -1, Rational(1, 2)));
  CHECK(p3.y == rad(0, 1, Rational(1, 2)));
  Point q3 = pole(circle("S2", 0, 0, 4), 3);
  CHECK(q3.x == rad(0, -1, 2));
  CHECK(q3.y == rad(0, 1, 2));
  CHECK(pole(unit, 4) == Point(-1, 0));
  CHECK(pole(unit, 6) == Point(0, -1));
}

TEST_CASE("side") {
  CHECK(side(unit, Point(0, 0)) == -1);
  CHECK(side(unit, Point(Rational(1, 2), rad(0, 1, Rational(3, 4)))) == 0);
  CHECK(side(circle("T", 1, 0, 1), Point(-1, 0)) == 1);
}

TEST_CASE("intersect") {
  Intersection lens = intersect(unit, circle("T", 1, 0, 1));
  REQUIRE(lens.kind == Intersection::Kind::Transversal);
  CHECK(lens.points[0] == Point(Rational(1, 2), rad(0, -1, Rational(3, 4))));
  CHECK(lens.points[1] == Point(Rational(1, 2), rad(0, 1, Rational(3, 4))));
  Intersection touch = intersect(unit, circle("T", 2, 0, 1));
  REQUIRE(touch.kind == Intersection::Kind::Tangent);
  CHECK(touch.points[0] == Point(1, 0));
  CHECK(intersect(circle("A", 0, 0, 4), unit).kind == Intersection::Kind::Disjoint);
  CHECK(intersect(unit, circle("B", 0, 0, 1)).kind == Intersection::Kind::Identical);
  CHECK(intersect(unit, circle("C", 5, 0, 1)).kind == Intersection::Kind::Disjoint);
  CHECK(intersect(circle("D", 0, 0, 4), circle("E", 1, 0, 1)).kind ==
        Intersection::Kind::Tangent);
}

TEST_CASE("octant_of") {
  CHECK(octant_of(unit, Point(1, 0)) == Octant{true, 0});
  CHECK(octant_of(unit, Point(Rational(1, 2), rad(0, 1, Rational(3, 4)))) ==
        Octant{false, 1});
  CHECK(octant_of(unit, pole(unit, 3)) == Octant{true, 3});
  CHECK_THROWS_WITH_AS(octant_of(unit, Point(0, 0)), "not on circle", GeometryError);
  // 3-4-5 points visit each open arc.
  Rational a(3, 5), b(4, 5), na(-3, 5), nb(-4, 5);
  CHECK(octant_of(unit, Point(b, a)) == Octant{false, 0});
  CHECK(octant_of(unit, Point(a, b)) == Octant{false, 1});
  CHECK(octant_of(unit, Point(na, b)) == Octant{false, 2});
  CHECK(octant_of(unit, Point(nb, a)) == Octant{false, 3});
  CHECK(octant_of(unit, Point(nb, na)) == Octant{false, 4});
  CHECK(octant_of(unit, Point(na, nb)) == Octant{false, 5});
  CHECK(octant_of(unit, Point(a, nb)) == Octant{false, 6});
  CHECK(octant_of(unit, Point(b, na)) == Octant{false, 7});
}

TEST_CASE("arcs_meeting") {
  ArcSpan lower = ArcSpan::through(unit, Point(-1, 0), Point(1, 0), Point(0, -1));
  CHECK(js(arcs_meeting(unit, lower)) == std::vector<int>{4, 5, 6, 7});
  ArcSpan upper = ArcSpan::through(unit, Point(-1, 0), Point(1, 0), Point(0, 1));
  CHECK(js(arcs_meeting(unit, upper)) == std::vector<int>{0, 1, 2, 3});
  CHECK(js(arcs_meeting(unit, ArcSpan::single(CirclePoint::of(unit, Point(-1, 0))))) ==
        std::vector<int>{3, 4});
  CHECK(js(arcs_meeting(unit, ArcSpan::full())) == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});
  CHECK_THROWS_WITH_AS(ArcSpan::through(unit, Point(1, 0), Point(1, 0), Point(0, 1)),
                       "degenerate span", GeometryError);
  // Outer circle of the annulus over -2 < x < -1.
  Circle outer = circle("S2", 0, 0, 4);
  CirclePoint left{Axis::X, -2, 0}, low{Axis::X, -1, -1}, high{Axis::X, -1, 1};
  CHECK(arc_indices_meeting(outer, ArcSpan::ccw(left, low)) == std::vector<int>{4, 5});
  CHECK(arc_indices_meeting(outer, ArcSpan::ccw(high, left)) == std::vector<int>{2, 3});
  // Short span inside one arc versus its complement.
  Rational a(3, 5), b(4, 5);
  CirclePoint p1 = CirclePoint::of(unit, Point(b, a)), p2 = CirclePoint::of(unit,
      Point(Rational(12, 13), Rational(5, 13)));
  CHECK(arc_indices_meeting(unit, ArcSpan::ccw(p2, p1)) == std::vector<int>{0});
  CHECK(arc_indices_meeting(unit, ArcSpan::ccw(p1, p2)).size() == 8);
}

TEST_CASE("tangent_direction") {
  Point p(Rational(1, 2), rad(0, 1, Rational(3, 4)));
  Circle other = circle("T", 1, 0, 1);
  auto out = tangent_direction(unit, p, other, +1);
  CHECK(out == std::pair<int, int>{-1, 1});
  CHECK(tangent_direction(unit, p, other, -1) == std::pair<int, int>{1, -1});
  // Numerical directional derivative of |q - c_other|^2 - r2 along the result.
  double px = 0.5, py = std::sqrt(0.75), eps = 1e-6;
  double tx = -py, ty = px;
  if ((tx > 0) != (out.first > 0)) tx = -tx, ty = -ty;
  double g0 = (px - 1) * (px - 1) + py * py - 1;
  double g1 = (px + eps * tx - 1) * (px + eps * tx - 1) + (py + eps * ty) * (py + eps * ty) - 1;
  CHECK(g1 > g0);
  // Even pole: one component vanishes.
  auto at_pole = tangent_direction(unit, Point(0, 1), circle("U", 1, 1, 1), 1);
  CHECK((at_pole.first == 0) != (at_pole.second == 0));
  CHECK_THROWS_WITH_AS(tangent_direction(unit, Point(1, 0), circle("T", 2, 0, 1), 1),
                       "not transversal", GeometryError);
}

TEST_CASE("axis swap index maps") {
  CHECK(swap_arc_index(0) == 1);
  CHECK(swap_arc_index(3) == 6);
  CHECK(swap_pole_index(0) == 2);
  CHECK(swap_pole_index(4) == 6);
  for (int j = 0; j < 8; ++j) {
    CHECK(octant_of(swap_axes(unit), swap_axes(pole(unit, j))) ==
          Octant{true, swap_pole_index(j)});
  }
}

TEST_CASE("random circles: poles, intersections, frames") {
  std::mt19937_64 rng(4242);
  int transversal = 0;
  for (int trial = 0; trial < 400; ++trial) {
    Circle c1 = random_circle(rng, "A"), c2 = random_circle(rng, "B");
    for (int j = 0; j < 8; ++j) {
      Point p = pole(c1, j);
      REQUIRE(side(c1, p) == 0);
      CHECK(octant_of(c1, p) == Octant{true, j});
      CHECK(octant_of(c1, CirclePoint::of(c1, p, Axis::Y)) == Octant{true, j});
    }
    Intersection i12 = intersect(c1, c2), i21 = intersect(c2, c1);
    REQUIRE(i12.kind == i21.kind);
    REQUIRE(i12.points.size() == i21.points.size());
    for (std::size_t k = 0; k < i12.points.size(); ++k) {
      CHECK(i12.points[k] == i21.points[k]);
      CHECK(side(c1, i12.points[k]) == 0);
      CHECK(side(c2, i12.points[k]) == 0);
    }
    if (i12.kind != Intersection::Kind::Transversal) continue;
    ++transversal;
    for (const Point& p : i12.points) {
      for (const Circle* c : {&c1, &c2}) {
        Octant o = octant_of(*c, p);
        CHECK(octant_of(*c, CirclePoint::of(*c, p, Axis::Y)) == o);
        auto expect = octant_from_angle(to_double(p.x) - c->cx.get_d(),
                                        to_double(p.y) - c->cy.get_d());
        if (expect) CHECK(*expect == o);
        Octant swapped = octant_of(swap_axes(*c), swap_axes(p));
        CHECK(swapped.is_pole == o.is_pole);
        CHECK(swapped.j == (o.is_pole ? swap_pole_index(o.j) : swap_arc_index(o.j)));
      }
      auto t = tangent_direction(c1, p, c2, 1);
      CHECK(t != std::pair<int, int>{0, 0});
      auto r = tangent_direction(c1, p, c2, -1);
      CHECK(r == std::pair<int, int>{-t.first, -t.second});
    }
  }
  CHECK(transversal > 20);
}
