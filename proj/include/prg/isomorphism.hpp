#pragma once

// Isomorphism of Poincaré-Reeb graphs as graphs, digraphs, V-digraphs, or
// labeled V-digraphs, by backtracking.  Graphs here are small.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prg/labeling.hpp"
#include "prg/sweep.hpp"

namespace prg {

class IsoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class IsoMode { Graph, Digraph, VDigraph, Labeled };

IsoMode parse_iso_mode(std::string_view s);
const char* iso_mode_name(IsoMode m);

struct IsoWitness {
  std::vector<int> vertex_map;  // g1 vertex id -> g2 vertex id
  std::vector<int> edge_map;    // g1 edge id -> g2 edge id
  std::map<std::string, std::string> circle_map;  // labeled mode only
};

/// The lexicographically least witness by (vertex_map, edge_map), or none.
/// Labeled mode needs both label maps (IsoError otherwise).  A witness is
/// re-checked by verify_witness before it is returned.
std::optional<IsoWitness> isomorphic(const PRGraph& g1, const PRGraph& g2, IsoMode mode,
                                     const LabelMap* l1 = nullptr, const LabelMap* l2 = nullptr);

/// Same search with an extra vertex compatibility predicate (g1 id, g2 id).
std::optional<IsoWitness> isomorphic_constrained(const PRGraph& g1, const PRGraph& g2, IsoMode mode,
                                                 const std::function<bool(int, int)>& vertex_ok);

/// Independent check of a witness; empty string when valid, else a reason.
std::string verify_witness(const PRGraph& g1, const PRGraph& g2, IsoMode mode,
                           const IsoWitness& w, const LabelMap* l1 = nullptr,
                           const LabelMap* l2 = nullptr);

/// Labeled comparison of the y graph of a scene with the x graph of its
/// diagonal reflection: the second label map is reindexed by j -> (1-j) mod 8.
std::optional<IsoWitness> isomorphic_across_swap(const PRGraph& gy, const LabelMap& ly,
                                                 const PRGraph& gx_swapped,
                                                 const LabelMap& lx_swapped);

std::string witness_to_json(const IsoWitness& w, int indent = 2);

}  // namespace prg
