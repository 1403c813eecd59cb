#include "prg/geometry.hpp"

#include <algorithm>

namespace prg {

namespace {

int mod8(int j) { return ((j % 8) + 8) % 8; }

// Classifies a point of a circle from the signs of its offset (u, v) from
// the center and of u^2 - v^2.
Octant classify(int su, int sv, int cmp_sq) {
  int s_diff, s_sum;  // signs of u - v and u + v
  if (su * sv <= 0) {
    s_diff = su != 0 ? su : -sv;
  } else {
    s_diff = cmp_sq * su;
  }
  if (su * sv >= 0) {
    s_sum = su != 0 ? su : sv;
  } else {
    s_sum = cmp_sq * su;
  }
  if (sv == 0) return {true, su > 0 ? 0 : 4};
  if (su == 0) return {true, sv > 0 ? 2 : 6};
  if (s_diff == 0) return {true, su > 0 ? 1 : 5};
  if (s_sum == 0) return {true, sv > 0 ? 3 : 7};
  if (su > 0 && sv > 0) return {false, s_diff > 0 ? 0 : 1};
  if (su < 0 && sv > 0) return {false, s_sum > 0 ? 2 : 3};
  if (su < 0 && sv < 0) return {false, s_diff < 0 ? 4 : 5};
  return {false, s_sum < 0 ? 6 : 7};
}

// Key for counter-clockwise order of two points of one circle.
int cyclic_compare(const Circle& c, const CirclePoint& a, const CirclePoint& b) {
  int pa = octant_of(c, a).position(), pb = octant_of(c, b).position();
  if (pa != pb) return pa < pb ? -1 : 1;
  return compare_within_octant(c, a, b);
}

}  // namespace

Point::Point(RadicalExpr px, RadicalExpr py) : x(std::move(px)), y(std::move(py)) {
  try {
    (void)RadicalExpr::common_radicand(x, y);
  } catch (const NumericError&) {
    throw GeometryError("point coordinates lie in different extensions");
  }
}

bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }

bool lex_less(const Point& a, const Point& b) {
  auto cx = compare_cross(a.x, b.x);
  if (cx != 0) return cx < 0;
  return compare_cross(a.y, b.y) < 0;
}

Octant Octant::from_position(int pos) {
  pos = ((pos % 16) + 16) % 16;
  return {pos % 2 == 0, pos / 2};
}

Point pole(const Circle& c, int j) {
  j = mod8(j);
  if (j % 2 == 0) {
    RadicalExpr r = RadicalExpr::sqrt_of(c.r2);
    switch (j) {
      case 0: return {RadicalExpr(c.cx) + r, c.cy};
      case 2: return {c.cx, RadicalExpr(c.cy) + r};
      case 4: return {RadicalExpr(c.cx) - r, c.cy};
      default: return {c.cx, RadicalExpr(c.cy) - r};
    }
  }
  RadicalExpr h = RadicalExpr::sqrt_of(Rational(c.r2 / 2));
  int sx = (j == 1 || j == 7) ? 1 : -1;
  int sy = (j == 1 || j == 3) ? 1 : -1;
  return {RadicalExpr(c.cx) + (sx > 0 ? h : -h), RadicalExpr(c.cy) + (sy > 0 ? h : -h)};
}

int side(const Circle& c, const Point& p) {
  RadicalExpr u = p.x - c.cx, v = p.y - c.cy;
  return sign(u * u + v * v - c.r2);
}

Intersection intersect(const Circle& c1, const Circle& c2) {
  Intersection out;
  Rational dx = c2.cx - c1.cx, dy = c2.cy - c1.cy;
  Rational dist2 = dx * dx + dy * dy;
  if (dist2 == 0) {
    out.kind = c1.r2 == c2.r2 ? Intersection::Kind::Identical
                              : Intersection::Kind::Disjoint;
    return out;
  }
  // Foot of the radical line on the center line, as a fraction of (dx, dy).
  Rational a = (c1.r2 - c2.r2 + dist2) / (2 * dist2);
  Rational k = c1.r2 / dist2 - a * a;
  Rational mx = c1.cx + a * dx, my = c1.cy + a * dy;
  if (k < 0) return out;
  if (k == 0) {
    out.kind = Intersection::Kind::Tangent;
    out.points.emplace_back(mx, my);
    return out;
  }
  out.kind = Intersection::Kind::Transversal;
  out.points.emplace_back(RadicalExpr(mx, -dy, k), RadicalExpr(my, dx, k));
  out.points.emplace_back(RadicalExpr(mx, dy, k), RadicalExpr(my, -dx, k));
  if (lex_less(out.points[1], out.points[0])) std::swap(out.points[0], out.points[1]);
  return out;
}

CirclePoint CirclePoint::of(const Circle& c, const Point& p, Axis axis) {
  if (side(c, p) != 0) throw GeometryError("not on circle");
  return {axis, p.along(axis), sign(p.across(axis) - c.center_across(axis))};
}

Octant octant_of(const Circle& c, const CirclePoint& p) {
  RadicalExpr a = p.t - c.center_along(p.axis);
  RadicalExpr a2 = a * a;
  int rest = sign(RadicalExpr(c.r2) - a2);
  if (rest < 0) throw GeometryError("not on circle");
  int s_along = sign(a);
  int s_across = rest == 0 ? 0 : p.branch;
  if (rest > 0 && s_across == 0) throw GeometryError("not on circle");
  // along^2 - across^2 = 2 along^2 - r2
  int cmp = sign(a2 + a2 - c.r2);
  if (p.axis == Axis::X) return classify(s_along, s_across, cmp);
  return classify(s_across, s_along, -cmp);
}

Octant octant_of(const Circle& c, const Point& p) {
  return octant_of(c, CirclePoint::of(c, p, Axis::X));
}

int compare_within_octant(const Circle& c, const CirclePoint& a,
                          const CirclePoint& b) {
  if (a.axis != b.axis) throw GeometryError("mixed axes in arc comparison");
  Octant oa = octant_of(c, a);
  if (oa.is_pole) return 0;
  // Direction in which the along-coordinate moves counter-clockwise.
  bool increasing = a.axis == Axis::X ? oa.j >= 4 : (oa.j >= 6 || oa.j <= 1);
  auto order = compare_cross(a.t, b.t);
  int s = order < 0 ? -1 : (order > 0 ? 1 : 0);
  return increasing ? s : -s;
}

ArcSpan ArcSpan::through(const Circle& c, const Point& a, const Point& b,
                         const Point& witness) {
  if (a == b) throw GeometryError("degenerate span");
  CirclePoint pa = CirclePoint::of(c, a), pb = CirclePoint::of(c, b),
              pw = CirclePoint::of(c, witness);
  int ab = cyclic_compare(c, pa, pb), bw = cyclic_compare(c, pb, pw),
      aw = cyclic_compare(c, pa, pw);
  if (aw == 0 || bw == 0) throw GeometryError("witness is an endpoint");
  bool inside = (ab < 0 && aw < 0 && bw > 0) || (aw > 0 && bw > 0 && ab > 0) ||
                (ab > 0 && aw < 0 && bw < 0);
  return inside ? ccw(pa, pb) : ccw(pb, pa);
}

std::vector<int> arc_indices_meeting(const Circle& c, const ArcSpan& span) {
  std::vector<bool> met(8, false);
  auto mark_position = [&](int pos) {
    Octant o = Octant::from_position(pos);
    met[static_cast<std::size_t>(o.j)] = true;
    if (o.is_pole) met[static_cast<std::size_t>(mod8(o.j - 1))] = true;
  };
  switch (span.kind) {
    case ArcSpan::Kind::Full:
      std::fill(met.begin(), met.end(), true);
      break;
    case ArcSpan::Kind::Single:
      mark_position(octant_of(c, span.from).position());
      break;
    case ArcSpan::Kind::Open: {
      int pa = octant_of(c, span.from).position();
      int pb = octant_of(c, span.to).position();
      if (pa == pb) {
        if (pa % 2 == 1 && compare_within_octant(c, span.from, span.to) < 0) {
          mark_position(pa);
        } else {
          std::fill(met.begin(), met.end(), true);
        }
        break;
      }
      if (pa % 2 == 1) mark_position(pa);
      if (pb % 2 == 1) mark_position(pb);
      for (int k = (pa + 1) % 16; k != pb; k = (k + 1) % 16) mark_position(k);
      break;
    }
  }
  std::vector<int> out;
  for (int j = 0; j < 8; ++j) {
    if (met[static_cast<std::size_t>(j)]) out.push_back(j);
  }
  return out;
}

std::vector<OctantArc> arcs_meeting(const Circle& c, const ArcSpan& span) {
  std::vector<OctantArc> out;
  for (int j : arc_indices_meeting(c, span)) out.push_back({c.id, j});
  return out;
}

std::pair<int, int> tangent_direction(const Circle& c, const Point& p,
                                      const Circle& other, int required_side) {
  if (side(c, p) != 0 || side(other, p) != 0) throw GeometryError("not on circle");
  RadicalExpr ux = -(p.y - c.cy), uy = p.x - c.cx;
  int dot = sign(ux * (p.x - other.cx) + uy * (p.y - other.cy));
  if (dot == 0) throw GeometryError("not transversal");
  int orient = dot * (required_side < 0 ? -1 : 1);
  return {orient * sign(ux), orient * sign(uy)};
}

Point swap_axes(const Point& p) { return {p.y, p.x}; }

Circle swap_axes(const Circle& c) { return {c.id, c.cy, c.cx, c.r2}; }

int swap_arc_index(int j) { return mod8(1 - j); }

int swap_pole_index(int j) { return mod8(2 - j); }

std::string arc_name(int j) {
  return "(" + std::to_string(j) + "," + std::to_string(j + 1) + ")π/4";
}

}  // namespace prg
