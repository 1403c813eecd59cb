#include "prg/reeb.hpp"

#include <algorithm>

namespace prg {

std::vector<CriticalValue> critical_values(const Arrangement& a, Axis axis) {
  const auto circles = a.circles();
  const auto sides = a.sides();
  std::vector<std::pair<RadicalExpr, CriticalAnchor>> found;
  const int poles[2] = {axis == Axis::X ? 4 : 6, axis == Axis::X ? 0 : 2};
  for (std::size_t i = 0; i < circles.size(); ++i) {
    for (int j : poles) {
      Point p = pole(circles[i], j);
      if (closure_contains(circles, sides, p)) {
        found.push_back({p.along(axis), {p, {static_cast<int>(i)}, j}});
      }
    }
    for (std::size_t k = i + 1; k < circles.size(); ++k) {
      for (const Point& p : intersect(circles[i], circles[k]).points) {
        if (closure_contains(circles, sides, p)) {
          found.push_back({p.along(axis), {p, {static_cast<int>(i), static_cast<int>(k)}, -1}});
        }
      }
    }
  }
  std::sort(found.begin(), found.end(), [&](const auto& l, const auto& r) {
    auto c = compare_cross(l.first, r.first);
    if (c != 0) return c < 0;
    return compare_cross(l.second.point.across(axis), r.second.point.across(axis)) < 0;
  });
  std::vector<CriticalValue> out;
  for (auto& [value, anchor] : found) {
    if (out.empty() || compare_cross(out.back().value, value) != 0) out.push_back({value, {}});
    out.back().anchors.push_back(std::move(anchor));
  }
  return out;
}

std::vector<FiberInterval> fiber_intervals(const Arrangement& a, Axis axis, const Rational& t) {
  for (const auto& cv : critical_values(a, axis)) {
    if (compare_cross(cv.value, RadicalExpr(t)) == 0) throw SweepError("critical abscissa");
  }
  return slab_fiber(a.circles(), a.sides(), axis, t);
}

PRGraph build_pr_graph_unchecked(const Arrangement& a, Axis axis) {
  return sweep_graph(a.circles(), a.sides(), axis);
}

PRGraph build_pr_graph(const Arrangement& a, Axis axis) {
  require_valid(a);
  return build_pr_graph_unchecked(a, axis);
}

const char* axis_name(Axis axis) { return axis == Axis::X ? "x" : "y"; }

}  // namespace prg
