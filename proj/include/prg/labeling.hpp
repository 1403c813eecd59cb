#pragma once

// Octant-arc labels on the vertices and edges of a Poincaré-Reeb digraph,
// and machine checks of the structural statements they satisfy.

#include <string>
#include <vector>

#include "prg/arrangement.hpp"
#include "prg/sweep.hpp"

namespace prg {

/// One finite set of closed octant arcs, sorted by (circle, j).
struct LabelEntry {
  std::vector<OctantArc> arcs;

  std::vector<std::string> circles() const;
  /// Arc indices of one circle, ascending.
  std::vector<int> indices(const std::string& circle) const;
  bool operator==(const LabelEntry&) const = default;
};

using LabelSequence = std::vector<LabelEntry>;

/// Tangent segment pair at a point on exactly two circles: component signs
/// of each circle's tangent oriented toward the region closure.
struct TangentPair {
  Point point;
  int circle1 = -1, circle2 = -1;
  std::pair<int, int> t1, t2;
};

struct LabelMap {
  Axis axis = Axis::X;
  std::vector<LabelSequence> edges;     // indexed by edge id
  std::vector<LabelSequence> vertices;  // indexed by vertex id
  std::vector<TangentPair> tangents;    // every crossing anchor of the graph
};

LabelSequence edge_label(const Arrangement& a, const PRGraph& g, int edge);
LabelSequence vertex_label(const Arrangement& a, const PRGraph& g, int vertex);
LabelMap label_map(const Arrangement& a, const PRGraph& g);

/// Tangent pair at a crossing of circles c1, c2 lying in the closure.
TangentPair tangent_pair(const Arrangement& a, const Point& p, int c1, int c2);

struct PropositionResult {
  std::string name;
  std::string statement;
  int checked = 0;
  std::vector<std::string> failures;

  bool pass() const { return failures.empty(); }
  const char* status() const { return !failures.empty() ? "fail" : checked ? "pass" : "vacuous"; }
};

struct PropositionReport {
  std::vector<PropositionResult> results;
  bool all_pass() const;
  const PropositionResult* find(const std::string& name) const;
};

PropositionReport check_propositions(const Arrangement& a, const PRGraph& g, const LabelMap& m);

/// Label map with every arc index j replaced by (1 - j) mod 8: the labels
/// of the diagonal reflection of the scene.
LabelMap reindex_for_swap(const LabelMap& m);

std::string entry_to_string(const LabelEntry& e);

}  // namespace prg
