#pragma once

// Exact sweep of a region given as a conjunction of strict circle-side
// predicates.  Produces the Poincaré-Reeb digraph of the projection onto
// one axis: vertices sit at components of critical fibers that contain a
// pole or a double point, edges are chains of slab intervals.

#include <optional>
#include <vector>

#include "prg/geometry.hpp"

namespace prg {

class SweepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One boundary curve of a slab interval: circle index and branch sign
/// (across-offset from the center: -1 lower/left, +1 upper/right).
struct BranchTag {
  int circle = -1;
  int branch = 0;
  auto operator<=>(const BranchTag&) const = default;
};

/// Point of a critical fiber.  Exact when it is a pole or a crossing;
/// otherwise a generic point of one circle given by branch.
struct FiberPoint {
  bool exact = false;
  Point point;               // valid when exact
  BranchTag generic;         // valid when !exact
  std::vector<int> circles;  // circles through the point, ascending
  std::vector<int> pole_of;  // circles having an axis pole here

  bool is_anchor() const { return exact; }
  /// The point as seen from one of its circles.
  CirclePoint on(const std::vector<Circle>& circles, int circle, Axis axis,
                 const RadicalExpr& t) const;
};

struct PRVertex {
  int id = 0;
  RadicalExpr value;
  std::vector<FiberPoint> fiber;  // ascending across the axis
  int line = 0;
};

struct PREdge {
  int id = 0;
  int tail = 0, head = 0;
  BranchTag lower, upper;
  Rational sample;  // an along-coordinate strictly inside the edge
};

struct PRGraph {
  Axis axis = Axis::X;
  std::vector<PRVertex> vertices;  // ordered by value, then across
  std::vector<PREdge> edges;

  int degree(int v) const;
  std::vector<int> in_edges(int v) const;
  std::vector<int> out_edges(int v) const;
  int connected_components() const;
  int cycle_rank() const;
};

struct FiberInterval {
  RadicalExpr lo, hi;
  BranchTag lower, upper;
};

/// All event abscissae: axis poles and pairwise crossings of every circle,
/// whether or not they touch the region.
std::vector<RadicalExpr> event_lines(const std::vector<Circle>& circles, Axis axis);

/// Closure-fiber components at a non-event along-coordinate t.
std::vector<FiberInterval> slab_fiber(const std::vector<Circle>& circles,
                                      const std::vector<int>& sides, Axis axis,
                                      const Rational& t);

/// Strict side agreement with every circle at a rational point.
bool in_open_region(const std::vector<Circle>& circles, const std::vector<int>& sides,
                    const Rational& x, const Rational& y);

/// Builds the digraph.  Requires no tangencies and no triple points in the
/// region closure; other degeneracies raise SweepError.
PRGraph sweep_graph(const std::vector<Circle>& circles, const std::vector<int>& sides,
                    Axis axis);

}  // namespace prg
