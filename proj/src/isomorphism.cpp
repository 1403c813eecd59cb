#include "prg/isomorphism.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include <json.hpp>

namespace prg {

namespace {

struct CircleMap {
  std::map<std::string, std::string> fwd, bwd;

  bool bind(const std::string& a, const std::string& b) {
    auto f = fwd.find(a);
    auto r = bwd.find(b);
    if (f != fwd.end() || r != bwd.end()) {
      return f != fwd.end() && r != bwd.end() && f->second == b && r->second == a;
    }
    fwd.emplace(a, b);
    bwd.emplace(b, a);
    return true;
  }
};

using Continue = std::function<bool(const CircleMap&)>;

// Tries every extension of m under which a maps onto b entry by entry with
// identical arc index sets; stops at the first one `next` accepts.
bool match_sequences(const LabelSequence& a, const LabelSequence& b, std::size_t k,
                     const CircleMap& m, const Continue& next) {
  if (a.size() != b.size()) return false;
  if (k == a.size()) return next(m);
  auto ca = a[k].circles(), cb = b[k].circles();
  if (ca.size() != cb.size() || a[k].arcs.size() != b[k].arcs.size()) return false;
  std::vector<std::size_t> perm(cb.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    CircleMap t = m;
    bool ok = true;
    for (std::size_t i = 0; i < ca.size() && ok; ++i) {
      ok = a[k].indices(ca[i]) == b[k].indices(cb[perm[i]]) && t.bind(ca[i], cb[perm[i]]);
    }
    if (ok && match_sequences(a, b, k + 1, t, next)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::vector<int> value_ranks(const PRGraph& g) {
  std::vector<int> order(g.vertices.size());
  std::iota(order.begin(), order.end(), 0);
  auto value = [&](int v) -> const RadicalExpr& { return g.vertices[static_cast<std::size_t>(v)].value; };
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return compare_cross(value(a), value(b)) < 0; });
  std::vector<int> rank(order.size());
  int r = -1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || compare_cross(value(order[i - 1]), value(order[i])) != 0) ++r;
    rank[static_cast<std::size_t>(order[i])] = r;
  }
  return rank;
}

std::vector<std::vector<int>> adjacency(const PRGraph& g) {
  std::vector<std::vector<int>> adj(g.vertices.size(), std::vector<int>(g.vertices.size(), 0));
  for (const auto& e : g.edges) ++adj[static_cast<std::size_t>(e.tail)][static_cast<std::size_t>(e.head)];
  return adj;
}

class Search {
 public:
  Search(const PRGraph& g1, const PRGraph& g2, IsoMode mode, const LabelMap* l1,
         const LabelMap* l2, std::function<bool(int, int)> vertex_ok = {})
      : g1_(g1), g2_(g2), mode_(mode), l1_(l1), l2_(l2), vertex_ok_(std::move(vertex_ok)),
        rank1_(value_ranks(g1)), rank2_(value_ranks(g2)),
        adj1_(adjacency(g1)), adj2_(adjacency(g2)) {}

  std::optional<IsoWitness> run() {
    if (g1_.vertices.size() != g2_.vertices.size() || g1_.edges.size() != g2_.edges.size()) {
      return std::nullopt;
    }
    vmap_.assign(g1_.vertices.size(), -1);
    vused_.assign(g2_.vertices.size(), false);
    emap_.assign(g1_.edges.size(), -1);
    eused_.assign(g2_.edges.size(), false);
    if (!vertex_step(0, CircleMap{})) return std::nullopt;
    return result_;
  }

 private:
  bool directed() const { return mode_ != IsoMode::Graph; }
  bool ordered() const { return mode_ == IsoMode::VDigraph || mode_ == IsoMode::Labeled; }

  int links(const std::vector<std::vector<int>>& adj, int u, int w) const {
    auto su = static_cast<std::size_t>(u), sw = static_cast<std::size_t>(w);
    if (directed() || u == w) return adj[su][sw];
    return adj[su][sw] + adj[sw][su];
  }

  bool compatible(int u, int c) const {
    if (vertex_ok_ && !vertex_ok_(u, c)) return false;
    if (g1_.degree(u) != g2_.degree(c)) return false;
    if (directed() && g1_.out_edges(u).size() != g2_.out_edges(c).size()) return false;
    if (ordered() && rank1_[static_cast<std::size_t>(u)] != rank2_[static_cast<std::size_t>(c)]) return false;
    if (links(adj1_, u, u) != links(adj2_, c, c)) return false;
    for (int w = 0; w < u; ++w) {
      int cw = vmap_[static_cast<std::size_t>(w)];
      if (links(adj1_, u, w) != links(adj2_, c, cw)) return false;
      if (directed() && links(adj1_, w, u) != links(adj2_, cw, c)) return false;
    }
    return true;
  }

  bool vertex_step(int k, const CircleMap& m) {
    if (k == static_cast<int>(g1_.vertices.size())) return edge_step(0, m);
    for (int c = 0; c < static_cast<int>(g2_.vertices.size()); ++c) {
      if (vused_[static_cast<std::size_t>(c)] || !compatible(k, c)) continue;
      vmap_[static_cast<std::size_t>(k)] = c;
      vused_[static_cast<std::size_t>(c)] = true;
      Continue next = [&](const CircleMap& m2) { return vertex_step(k + 1, m2); };
      bool found = mode_ == IsoMode::Labeled
                       ? match_sequences(l1_->vertices[static_cast<std::size_t>(k)],
                                         l2_->vertices[static_cast<std::size_t>(c)], 0, m, next)
                       : next(m);
      if (found) return true;
      vused_[static_cast<std::size_t>(c)] = false;
      vmap_[static_cast<std::size_t>(k)] = -1;
    }
    return false;
  }

  bool endpoints_match(const PREdge& e, const PREdge& f) const {
    int t = vmap_[static_cast<std::size_t>(e.tail)], h = vmap_[static_cast<std::size_t>(e.head)];
    if (f.tail == t && f.head == h) return true;
    return !directed() && f.tail == h && f.head == t;
  }

  bool edge_step(int k, const CircleMap& m) {
    if (k == static_cast<int>(g1_.edges.size())) {
      result_ = IsoWitness{vmap_, emap_, {}};
      if (mode_ == IsoMode::Labeled) result_->circle_map = m.fwd;
      return true;
    }
    const PREdge& e = g1_.edges[static_cast<std::size_t>(k)];
    for (int c = 0; c < static_cast<int>(g2_.edges.size()); ++c) {
      if (eused_[static_cast<std::size_t>(c)] || !endpoints_match(e, g2_.edges[static_cast<std::size_t>(c)])) {
        continue;
      }
      emap_[static_cast<std::size_t>(k)] = c;
      eused_[static_cast<std::size_t>(c)] = true;
      Continue next = [&](const CircleMap& m2) { return edge_step(k + 1, m2); };
      bool found = mode_ == IsoMode::Labeled
                       ? match_sequences(l1_->edges[static_cast<std::size_t>(k)],
                                         l2_->edges[static_cast<std::size_t>(c)], 0, m, next)
                       : next(m);
      if (found) return true;
      eused_[static_cast<std::size_t>(c)] = false;
      emap_[static_cast<std::size_t>(k)] = -1;
    }
    return false;
  }

  const PRGraph& g1_;
  const PRGraph& g2_;
  IsoMode mode_;
  const LabelMap* l1_;
  const LabelMap* l2_;
  std::function<bool(int, int)> vertex_ok_;
  std::vector<int> rank1_, rank2_;
  std::vector<std::vector<int>> adj1_, adj2_;
  std::vector<int> vmap_, emap_;
  std::vector<bool> vused_, eused_;
  std::optional<IsoWitness> result_;
};

void require_labels(const PRGraph& g1, const PRGraph& g2, const LabelMap* l1, const LabelMap* l2) {
  if (!l1 || !l2) throw IsoError("labeled mode needs label maps for both graphs");
  if (l1->vertices.size() != g1.vertices.size() || l1->edges.size() != g1.edges.size() ||
      l2->vertices.size() != g2.vertices.size() || l2->edges.size() != g2.edges.size()) {
    throw IsoError("label map does not match its graph");
  }
}

bool is_permutation_of(const std::vector<int>& m, std::size_t n) {
  if (m.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (int x : m) {
    if (x < 0 || static_cast<std::size_t>(x) >= n || seen[static_cast<std::size_t>(x)]) return false;
    seen[static_cast<std::size_t>(x)] = true;
  }
  return true;
}

}  // namespace

IsoMode parse_iso_mode(std::string_view s) {
  if (s == "graph") return IsoMode::Graph;
  if (s == "digraph") return IsoMode::Digraph;
  if (s == "vdigraph") return IsoMode::VDigraph;
  if (s == "labeled") return IsoMode::Labeled;
  throw IsoError("unknown mode '" + std::string(s) + "'");
}

const char* iso_mode_name(IsoMode m) {
  switch (m) {
    case IsoMode::Graph: return "graph";
    case IsoMode::Digraph: return "digraph";
    case IsoMode::VDigraph: return "vdigraph";
    case IsoMode::Labeled: return "labeled";
  }
  return "?";
}

std::optional<IsoWitness> isomorphic(const PRGraph& g1, const PRGraph& g2, IsoMode mode,
                                     const LabelMap* l1, const LabelMap* l2) {
  if (mode == IsoMode::Labeled) require_labels(g1, g2, l1, l2);
  auto w = Search(g1, g2, mode, l1, l2).run();
  if (w) {
    std::string why = verify_witness(g1, g2, mode, *w, l1, l2);
    if (!why.empty()) throw IsoError("witness failed verification: " + why);
  }
  return w;
}

std::optional<IsoWitness> isomorphic_constrained(const PRGraph& g1, const PRGraph& g2, IsoMode mode,
                                                 const std::function<bool(int, int)>& vertex_ok) {
  if (mode == IsoMode::Labeled) throw IsoError("constrained search does not take labels");
  auto w = Search(g1, g2, mode, nullptr, nullptr, vertex_ok).run();
  if (w) {
    std::string why = verify_witness(g1, g2, mode, *w);
    if (!why.empty()) throw IsoError("witness failed verification: " + why);
    for (std::size_t v = 0; v < w->vertex_map.size(); ++v) {
      if (!vertex_ok(static_cast<int>(v), w->vertex_map[v])) throw IsoError("witness breaks the vertex constraint");
    }
  }
  return w;
}

std::string verify_witness(const PRGraph& g1, const PRGraph& g2, IsoMode mode,
                           const IsoWitness& w, const LabelMap* l1, const LabelMap* l2) {
  if (!is_permutation_of(w.vertex_map, g2.vertices.size()) || g1.vertices.size() != g2.vertices.size()) {
    return "vertex map is not a bijection";
  }
  if (!is_permutation_of(w.edge_map, g2.edges.size()) || g1.edges.size() != g2.edges.size()) {
    return "edge map is not a bijection";
  }
  auto vm = [&](int v) { return w.vertex_map[static_cast<std::size_t>(v)]; };
  for (std::size_t i = 0; i < g1.edges.size(); ++i) {
    const PREdge& e = g1.edges[i];
    const PREdge& f = g2.edges[static_cast<std::size_t>(w.edge_map[i])];
    bool same = f.tail == vm(e.tail) && f.head == vm(e.head);
    bool flipped = f.tail == vm(e.head) && f.head == vm(e.tail);
    if (!(same || (mode == IsoMode::Graph && flipped))) {
      return "edge " + std::to_string(i) + " does not follow its endpoints";
    }
  }
  if (mode == IsoMode::VDigraph || mode == IsoMode::Labeled) {
    for (std::size_t u = 0; u < g1.vertices.size(); ++u) {
      for (std::size_t v = u + 1; v < g1.vertices.size(); ++v) {
        auto before = compare_cross(g1.vertices[u].value, g1.vertices[v].value);
        auto after = compare_cross(g2.vertices[static_cast<std::size_t>(vm(static_cast<int>(u)))].value,
                                   g2.vertices[static_cast<std::size_t>(vm(static_cast<int>(v)))].value);
        if (before != after) {
          return "order of values at vertices " + std::to_string(u) + ", " + std::to_string(v);
        }
      }
    }
  }
  if (mode == IsoMode::Labeled) {
    if (!l1 || !l2) return "labeled mode without label maps";
    std::map<std::string, std::string> inverse;
    for (const auto& [a, b] : w.circle_map) {
      if (!inverse.emplace(b, a).second) return "circle map is not injective";
    }
    auto image = [&](const LabelEntry& e, std::string& err) {
      LabelEntry out;
      for (const auto& arc : e.arcs) {
        auto it = w.circle_map.find(arc.circle);
        if (it == w.circle_map.end()) {
          err = "circle " + arc.circle + " is not mapped";
          return out;
        }
        out.arcs.push_back({it->second, arc.j});
      }
      std::sort(out.arcs.begin(), out.arcs.end());
      return out;
    };
    auto same_label = [&](const LabelSequence& a, const LabelSequence& b) -> std::string {
      if (a.size() != b.size()) return "label lengths differ";
      for (std::size_t k = 0; k < a.size(); ++k) {
        std::string err;
        LabelEntry img = image(a[k], err);
        if (!err.empty()) return err;
        if (!(img == b[k])) return "entry " + std::to_string(k) + " differs";
      }
      return "";
    };
    for (std::size_t v = 0; v < g1.vertices.size(); ++v) {
      std::string err = same_label(l1->vertices.at(v), l2->vertices.at(static_cast<std::size_t>(vm(static_cast<int>(v)))));
      if (!err.empty()) return "vertex " + std::to_string(v) + ": " + err;
    }
    for (std::size_t i = 0; i < g1.edges.size(); ++i) {
      std::string err = same_label(l1->edges.at(i), l2->edges.at(static_cast<std::size_t>(w.edge_map[i])));
      if (!err.empty()) return "edge " + std::to_string(i) + ": " + err;
    }
  }
  return "";
}

std::optional<IsoWitness> isomorphic_across_swap(const PRGraph& gy, const LabelMap& ly,
                                                 const PRGraph& gx_swapped,
                                                 const LabelMap& lx_swapped) {
  LabelMap reindexed = reindex_for_swap(lx_swapped);
  return isomorphic(gy, gx_swapped, IsoMode::Labeled, &ly, &reindexed);
}

std::string witness_to_json(const IsoWitness& w, int indent) {
  nlohmann::ordered_json j;
  j["vertex_map"] = w.vertex_map;
  j["edge_map"] = w.edge_map;
  if (!w.circle_map.empty()) j["circle_map"] = w.circle_map;
  return j.dump(indent);
}

}  // namespace prg
