#pragma once

// Circles, their eight poles and octant arcs, and exact predicates on
// points whose coordinates share one quadratic extension.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prg/numeric.hpp"

namespace prg {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Axis { X = 0, Y = 1 };

struct Point {
  RadicalExpr x, y;

  Point() = default;
  /// Throws GeometryError unless x and y share a radicand.
  Point(RadicalExpr px, RadicalExpr py);

  const RadicalExpr& along(Axis a) const { return a == Axis::X ? x : y; }
  const RadicalExpr& across(Axis a) const { return a == Axis::X ? y : x; }
};

bool operator==(const Point& a, const Point& b);
/// Lexicographic (x, then y).
bool lex_less(const Point& a, const Point& b);

struct Circle {
  std::string id;
  Rational cx, cy;
  Rational r2;

  const Rational& center_along(Axis a) const { return a == Axis::X ? cx : cy; }
  const Rational& center_across(Axis a) const { return a == Axis::X ? cy : cx; }
  bool operator==(const Circle&) const = default;
};

struct OctantArc {
  std::string circle;
  int j = 0;

  auto operator<=>(const OctantArc&) const = default;
  bool operator==(const OctantArc&) const = default;
};

/// Position of a point of a circle: pole j, or interior of arc (j, j+1).
struct Octant {
  bool is_pole = false;
  int j = 0;

  /// 2j for pole j, 2j+1 for the interior of arc j; counter-clockwise.
  int position() const { return is_pole ? 2 * j : 2 * j + 1; }
  static Octant from_position(int pos);
  bool operator==(const Octant&) const = default;
};

Point pole(const Circle& c, int j);

/// -1 inside, 0 on, +1 outside.
int side(const Circle& c, const Point& p);

struct Intersection {
  enum class Kind { Disjoint, Tangent, Transversal, Identical };
  Kind kind = Kind::Disjoint;
  std::vector<Point> points;  // lexicographically sorted
};

Intersection intersect(const Circle& c1, const Circle& c2);

/// Throws GeometryError("not on circle") when side(c, p) != 0.
Octant octant_of(const Circle& c, const Point& p);

/// A point of a circle addressed by its coordinate along one axis and the
/// sign of its offset from the center across that axis.  Handles points
/// whose other coordinate would need a nested radical.
struct CirclePoint {
  Axis axis = Axis::X;
  RadicalExpr t;
  int branch = 0;  // -1, 0 (only where the across-offset vanishes), +1

  static CirclePoint of(const Circle& c, const Point& p, Axis axis = Axis::X);
};

/// Requires (t - c_along)^2 <= r2.
Octant octant_of(const Circle& c, const CirclePoint& p);

/// Counter-clockwise comparison of two points in the same octant position:
/// negative when a comes first.  Both points must use the same axis.
int compare_within_octant(const Circle& c, const CirclePoint& a,
                          const CirclePoint& b);

/// A connected piece of a circle: a single point, the open arc running
/// counter-clockwise from `from` to `to`, or the whole circle.
struct ArcSpan {
  enum class Kind { Single, Open, Full };
  Kind kind = Kind::Full;
  CirclePoint from, to;

  static ArcSpan single(CirclePoint p) { return {Kind::Single, p, p}; }
  static ArcSpan ccw(CirclePoint a, CirclePoint b) { return {Kind::Open, a, b}; }
  static ArcSpan full() { return {}; }
  /// Open arc with endpoints a, b that contains `witness`; throws
  /// GeometryError for equal endpoints.
  static ArcSpan through(const Circle& c, const Point& a, const Point& b,
                         const Point& witness);
};

/// Closed octant arcs that meet the span, sorted by j.
std::vector<OctantArc> arcs_meeting(const Circle& c, const ArcSpan& span);

/// Arc indices, sorted, that meet the span.
std::vector<int> arc_indices_meeting(const Circle& c, const ArcSpan& span);

/// Component signs of the tangent of c at p oriented into the given side
/// of `other`.  Throws GeometryError("not transversal") at tangencies.
std::pair<int, int> tangent_direction(const Circle& c, const Point& p,
                                      const Circle& other, int required_side);

/// Reflection in the diagonal y = x.
Point swap_axes(const Point& p);
Circle swap_axes(const Circle& c);
/// Arc (j, j+1) maps to arc (1-j) under the diagonal reflection.
int swap_arc_index(int j);
int swap_pole_index(int j);

std::string arc_name(int j);

}  // namespace prg
