#pragma once

// Poincaré-Reeb V-digraphs of a validated arrangement for either axis.

#include <string>
#include <vector>

#include "prg/arrangement.hpp"
#include "prg/sweep.hpp"

namespace prg {

struct CriticalAnchor {
  Point point;
  std::vector<int> circles;  // one circle for a pole, two for a crossing
  int pole = -1;             // pole index j when the anchor is an axis pole
};

struct CriticalValue {
  RadicalExpr value;
  std::vector<CriticalAnchor> anchors;  // ascending across the axis
};

/// Axis poles (j = 0, 4 for x; j = 2, 6 for y) and crossings lying in the
/// region closure, grouped by equal abscissa, ascending.
std::vector<CriticalValue> critical_values(const Arrangement& a, Axis axis);

/// Throws SweepError("critical abscissa") when t is a critical value.
std::vector<FiberInterval> fiber_intervals(const Arrangement& a, Axis axis, const Rational& t);

/// Requires a valid arrangement (throws SceneError otherwise).
PRGraph build_pr_graph(const Arrangement& a, Axis axis);

/// Same without re-validating; for callers that already validated.
PRGraph build_pr_graph_unchecked(const Arrangement& a, Axis axis);

const char* axis_name(Axis axis);

}  // namespace prg
