#include <doctest.h>

#include "prg/isomorphism.hpp"
#include "prg/reeb.hpp"
#include "support/random_scenes.hpp"
#include "support/scenes.hpp"

using namespace prg;
using namespace prg::testing;

namespace {

PRGraph make_graph(std::vector<long> values, std::vector<std::pair<int, int>> edges) {
  PRGraph g;
  for (std::size_t i = 0; i < values.size(); ++i) {
    PRVertex v;
    v.id = static_cast<int>(i);
    v.value = RadicalExpr(Rational(values[i]));
    g.vertices.push_back(v);
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    PREdge e;
    e.id = static_cast<int>(i);
    e.tail = edges[i].first;
    e.head = edges[i].second;
    g.edges.push_back(e);
  }
  return g;
}

std::vector<int> identity(std::size_t n) {
  std::vector<int> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(i);
  return v;
}

const IsoMode kModes[] = {IsoMode::Graph, IsoMode::Digraph, IsoMode::VDigraph, IsoMode::Labeled};

}  // namespace

TEST_CASE("disk and annulus") {
  Arrangement disk = parse_scene(kUnitDisk);
  PRGraph gx = build_pr_graph(disk, Axis::X), gy = build_pr_graph(disk, Axis::Y);
  CHECK(isomorphic(gx, gy, IsoMode::VDigraph).has_value());

  PRGraph ann = build_pr_graph(parse_scene(kAnnulus), Axis::X);
  for (IsoMode m : {IsoMode::Graph, IsoMode::Digraph, IsoMode::VDigraph}) {
    CHECK_FALSE(isomorphic(ann, gx, m).has_value());
  }
  // Same V-digraph, different arc labels.
  LabelMap lx = label_map(disk, gx), ly = label_map(disk, gy);
  CHECK_FALSE(isomorphic(gx, gy, IsoMode::Labeled, &lx, &ly).has_value());
  CHECK_THROWS_AS(isomorphic(gx, gy, IsoMode::Labeled), IsoError);
}

TEST_CASE("labeled mode finds the circle bijection") {
  Arrangement a = parse_scene(kBite);
  Arrangement b = parse_scene(
      R"({"circles":[{"id":"P","cx":"0","cy":"0","r":"1"}],"initial_count":1,
          "additions":[{"id":"Q","cx":"-3/5","cy":"4/5","r":"1/10","side":"exterior"}]})");
  PRGraph ga = build_pr_graph(a, Axis::X), gb = build_pr_graph(b, Axis::X);
  LabelMap la = label_map(a, ga), lb = label_map(b, gb);
  auto w = isomorphic(ga, gb, IsoMode::Labeled, &la, &lb);
  REQUIRE(w.has_value());
  CHECK(w->circle_map == std::map<std::string, std::string>{{"S", "P"}, {"T", "Q"}});
  CHECK(witness_to_json(*w, -1).find("\"circle_map\":{\"S\":\"P\",\"T\":\"Q\"}") != std::string::npos);
}

TEST_CASE("mode distinctions on small digraphs") {
  PRGraph path = make_graph({0, 1, 2}, {{0, 1}, {1, 2}});
  PRGraph vee = make_graph({0, 1, 2}, {{0, 1}, {2, 1}});
  CHECK(isomorphic(path, vee, IsoMode::Graph).has_value());
  CHECK_FALSE(isomorphic(path, vee, IsoMode::Digraph).has_value());

  PRGraph fork = make_graph({0, 1, 2}, {{0, 1}, {0, 2}});
  PRGraph flat = make_graph({0, 1, 1}, {{0, 1}, {0, 2}});
  CHECK(isomorphic(fork, flat, IsoMode::Digraph).has_value());
  CHECK_FALSE(isomorphic(fork, flat, IsoMode::VDigraph).has_value());

  // Values matter by rank only.
  PRGraph shifted = make_graph({10, 20, 30}, {{0, 1}, {1, 2}});
  CHECK(isomorphic(path, shifted, IsoMode::VDigraph).has_value());

  // Parallel edges: a digon against a path with the same degrees.
  PRGraph digon = make_graph({0, 1}, {{0, 1}, {0, 1}});
  PRGraph two = make_graph({0, 1, 2}, {{0, 1}, {1, 2}});
  CHECK_FALSE(isomorphic(digon, two, IsoMode::Graph).has_value());
  auto w = isomorphic(digon, digon, IsoMode::VDigraph);
  REQUIRE(w.has_value());
  CHECK(w->edge_map == std::vector<int>{0, 1});

  // Least witness: the swap of two symmetric leaves is not chosen.
  PRGraph star = make_graph({0, 1, 1}, {{0, 1}, {0, 2}});
  auto ws = isomorphic(star, star, IsoMode::VDigraph);
  REQUIRE(ws.has_value());
  CHECK(ws->vertex_map == std::vector<int>{0, 1, 2});
}

TEST_CASE("verifier rejects broken witnesses") {
  PRGraph path = make_graph({0, 1, 2}, {{0, 1}, {1, 2}});
  IsoWitness bad{{0, 0, 2}, {0, 1}, {}};
  CHECK_FALSE(verify_witness(path, path, IsoMode::Graph, bad).empty());
  IsoWitness reversed{{2, 1, 0}, {1, 0}, {}};
  CHECK(verify_witness(path, path, IsoMode::Graph, reversed).empty());
  CHECK_FALSE(verify_witness(path, path, IsoMode::Digraph, reversed).empty());
  CHECK_THROWS_AS(parse_iso_mode("tree"), IsoError);
  CHECK(parse_iso_mode("labeled") == IsoMode::Labeled);
}

TEST_CASE("random scenes: identity, hierarchy, axis symmetry") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    CAPTURE(seed);
    Arrangement a = random_scene(seed);
    PRGraph gx = build_pr_graph(a, Axis::X);
    LabelMap lx = label_map(a, gx);
    for (IsoMode m : kModes) {
      auto w = isomorphic(gx, gx, m, &lx, &lx);
      REQUIRE(w.has_value());
      CHECK(w->vertex_map == identity(gx.vertices.size()));
      CHECK(w->edge_map == identity(gx.edges.size()));
      // A witness for one mode passes every weaker check.
      for (IsoMode weaker : kModes) {
        if (static_cast<int>(weaker) <= static_cast<int>(m)) {
          CHECK(verify_witness(gx, gx, weaker, *w, &lx, &lx).empty());
        }
      }
    }
    Arrangement sw = swap_axes(a);
    PRGraph gy = build_pr_graph(a, Axis::Y);
    PRGraph gsx = build_pr_graph(sw, Axis::X);
    CHECK(isomorphic(gy, gsx, IsoMode::VDigraph).has_value());
    auto lw = isomorphic_across_swap(gy, label_map(a, gy), gsx, label_map(sw, gsx));
    REQUIRE(lw.has_value());
    for (const auto& [from, to] : lw->circle_map) CHECK(from == to);
  }
}
