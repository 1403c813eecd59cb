#pragma once

// JSON and DOT serialization of graphs and labels, and SVG drawings of
// scenes.

#include <optional>
#include <string>

#include <json.hpp>

#include "prg/arrangement.hpp"
#include "prg/labeling.hpp"
#include "prg/sweep.hpp"

namespace prg {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::json;

/// {"p", "q", "d"} as canonical rational strings, plus "exact" and a
/// 12-digit "approx" for reading.
Json radical_to_json(const RadicalExpr& e);
RadicalExpr radical_from_json(const Json& j);
Json point_to_json(const Point& p);

/// Entries as lists of {circle, arcs, names}.
Json label_sequence_to_json(const LabelSequence& s);
Json labels_to_json(const LabelMap& m);

/// Vertices with value, degree and fiber anchors; edges with tail, head
/// and boundary tags; labels when given.
Json graph_to_json(const Arrangement& a, const PRGraph& g, const LabelMap* labels = nullptr);

struct LoadedGraph {
  PRGraph graph;
  std::optional<LabelMap> labels;
};

/// Reads what graph_to_json writes (fibers are not restored).
LoadedGraph graph_from_json(const Json& j);

/// Nodes ranked by value, left to right.
std::string graph_to_dot(const PRGraph& g, const LabelMap* labels = nullptr);

struct RenderOptions {
  bool overlay = false;  // draw the graph for `axis` over the scene
  Axis axis = Axis::X;
  int shading = 120;     // sample grid per side for the region shading
  int width = 640;       // pixels
};

std::string render_svg(const Arrangement& a, const RenderOptions& opt = {});

}  // namespace prg
