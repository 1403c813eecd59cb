#include "prg/sweep.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace prg {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

Point frame_point(Axis axis, const RadicalExpr& along, const RadicalExpr& across) {
  return axis == Axis::X ? Point(along, across) : Point(across, along);
}

struct Branch {
  BranchTag tag;
  RadicalExpr w;
};

std::vector<Branch> branches_at(const std::vector<Circle>& circles, Axis axis,
                                const Rational& t) {
  std::vector<Branch> out;
  for (std::size_t i = 0; i < circles.size(); ++i) {
    const Circle& c = circles[i];
    Rational u = t - c.center_along(axis);
    Rational rem = c.r2 - u * u;
    if (rem <= 0) continue;
    int ci = static_cast<int>(i);
    out.push_back({{ci, -1}, RadicalExpr(c.center_across(axis), -1, rem)});
    out.push_back({{ci, 1}, RadicalExpr(c.center_across(axis), 1, rem)});
  }
  std::sort(out.begin(), out.end(), [](const Branch& a, const Branch& b) {
    auto c = compare_cross(a.w, b.w);
    if (c != 0) return c < 0;
    return a.tag < b.tag;
  });
  return out;
}

std::vector<FiberInterval> intervals_from(const std::vector<Circle>& circles,
                                          const std::vector<int>& sides, Axis axis,
                                          const Rational& t,
                                          const std::vector<Branch>& branches) {
  std::vector<FiberInterval> out;
  for (std::size_t k = 0; k + 1 < branches.size(); ++k) {
    const Branch& lo = branches[k];
    const Branch& hi = branches[k + 1];
    if (compare_cross(lo.w, hi.w) >= 0) continue;
    Rational mid = rational_between(lo.w, hi.w);
    bool inside = axis == Axis::X ? in_open_region(circles, sides, t, mid)
                                  : in_open_region(circles, sides, mid, t);
    if (inside) out.push_back({lo.w, hi.w, lo.tag, hi.tag});
  }
  return out;
}

struct EventPoint {
  Point p;
  RadicalExpr t;
};

std::vector<EventPoint> all_events(const std::vector<Circle>& circles, Axis axis) {
  std::vector<EventPoint> out;
  for (const Circle& c : circles) {
    RadicalExpr r = RadicalExpr::sqrt_of(c.r2);
    for (int s : {-1, 1}) {
      RadicalExpr t = RadicalExpr(c.center_along(axis)) + (s > 0 ? r : -r);
      out.push_back({frame_point(axis, t, c.center_across(axis)), t});
    }
  }
  for (std::size_t i = 0; i < circles.size(); ++i) {
    for (std::size_t j = i + 1; j < circles.size(); ++j) {
      for (const Point& p : intersect(circles[i], circles[j]).points) {
        out.push_back({p, p.along(axis)});
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const EventPoint& a, const EventPoint& b) {
    return compare_cross(a.t, b.t) < 0;
  });
  return out;
}

bool is_axis_pole(const Circle& c, Axis axis, const RadicalExpr& t) {
  RadicalExpr u = t - c.center_along(axis);
  return sign(u * u - c.r2) == 0;
}

// A key of a critical line: an event point or the generic limit of a branch.
struct LineKey {
  int event = -1;  // index into the line's fiber points when exact
  BranchTag tag;
  int lpos = -1, rpos = -1;
};

struct Slab {
  Rational t;
  std::vector<Branch> branches;
  std::vector<FiberInterval> intervals;
};

struct RangeRef {
  int slab;      // slab of the interval
  int index;     // interval index within the slab
  bool left;     // interval lies left of the line
  int lo, hi;    // key positions
};

}  // namespace

CirclePoint FiberPoint::on(const std::vector<Circle>& cs, int circle, Axis axis,
                           const RadicalExpr& t) const {
  if (exact) return CirclePoint::of(cs[static_cast<std::size_t>(circle)], point, axis);
  return {axis, t, generic.branch};
}

int PRGraph::degree(int v) const {
  int d = 0;
  for (const auto& e : edges) d += (e.tail == v) + (e.head == v);
  return d;
}

std::vector<int> PRGraph::in_edges(int v) const {
  std::vector<int> out;
  for (const auto& e : edges) {
    if (e.head == v) out.push_back(e.id);
  }
  return out;
}

std::vector<int> PRGraph::out_edges(int v) const {
  std::vector<int> out;
  for (const auto& e : edges) {
    if (e.tail == v) out.push_back(e.id);
  }
  return out;
}

int PRGraph::connected_components() const {
  UnionFind uf(vertices.size());
  for (const auto& e : edges) uf.unite(e.tail, e.head);
  int n = 0;
  for (std::size_t v = 0; v < vertices.size(); ++v) n += uf.find(static_cast<int>(v)) == static_cast<int>(v);
  return n;
}

int PRGraph::cycle_rank() const {
  return static_cast<int>(edges.size()) - static_cast<int>(vertices.size()) +
         connected_components();
}

bool in_open_region(const std::vector<Circle>& circles, const std::vector<int>& sides,
                    const Rational& x, const Rational& y) {
  for (std::size_t i = 0; i < circles.size(); ++i) {
    const Circle& c = circles[i];
    Rational dx = x - c.cx, dy = y - c.cy;
    if (sgn(Rational(dx * dx + dy * dy - c.r2)) != sides[i]) return false;
  }
  return true;
}

std::vector<RadicalExpr> event_lines(const std::vector<Circle>& circles, Axis axis) {
  std::vector<RadicalExpr> out;
  for (const auto& e : all_events(circles, axis)) {
    if (out.empty() || compare_cross(out.back(), e.t) != 0) out.push_back(e.t);
  }
  return out;
}

std::vector<FiberInterval> slab_fiber(const std::vector<Circle>& circles,
                                      const std::vector<int>& sides, Axis axis,
                                      const Rational& t) {
  return intervals_from(circles, sides, axis, t, branches_at(circles, axis, t));
}

PRGraph sweep_graph(const std::vector<Circle>& circles, const std::vector<int>& sides,
                    Axis axis) {
  PRGraph g;
  g.axis = axis;
  std::vector<EventPoint> events = all_events(circles, axis);
  // Group events into lines.
  std::vector<RadicalExpr> lines;
  std::vector<std::vector<Point>> line_points;
  for (const auto& e : events) {
    if (lines.empty() || compare_cross(lines.back(), e.t) != 0) {
      lines.push_back(e.t);
      line_points.emplace_back();
    }
    auto& pts = line_points.back();
    if (std::none_of(pts.begin(), pts.end(), [&](const Point& q) { return q == e.p; })) {
      pts.push_back(e.p);
    }
  }
  const int m = static_cast<int>(lines.size());
  std::vector<Slab> slabs;
  for (int k = 0; k + 1 < m; ++k) {
    Slab s;
    s.t = rational_between(lines[static_cast<std::size_t>(k)],
                           lines[static_cast<std::size_t>(k + 1)]);
    s.branches = branches_at(circles, axis, s.t);
    s.intervals = intervals_from(circles, sides, axis, s.t, s.branches);
    slabs.push_back(std::move(s));
  }
  // Global interval numbering.
  std::vector<int> first_index(slabs.size() + 1, 0);
  for (std::size_t k = 0; k < slabs.size(); ++k) {
    first_index[k + 1] = first_index[k] + static_cast<int>(slabs[k].intervals.size());
  }
  const int total = first_index.back();
  UnionFind chains(static_cast<std::size_t>(total));
  std::vector<int> left_vertex(static_cast<std::size_t>(total), -1);
  std::vector<int> right_vertex(static_cast<std::size_t>(total), -1);

  for (int k = 0; k < m; ++k) {
    const RadicalExpr& L = lines[static_cast<std::size_t>(k)];
    std::vector<FiberPoint> fps;
    for (const Point& p : line_points[static_cast<std::size_t>(k)]) {
      FiberPoint fp;
      fp.exact = true;
      fp.point = p;
      for (std::size_t i = 0; i < circles.size(); ++i) {
        if (side(circles[i], p) != 0) continue;
        fp.circles.push_back(static_cast<int>(i));
        if (is_axis_pole(circles[i], axis, L)) fp.pole_of.push_back(static_cast<int>(i));
      }
      fps.push_back(std::move(fp));
    }
    std::vector<LineKey> keys;
    for (std::size_t e = 0; e < fps.size(); ++e) keys.push_back({static_cast<int>(e), {}, -1, -1});
    std::map<BranchTag, int> generic;
    auto key_of = [&](const BranchTag& tag) {
      const Circle& c = circles[static_cast<std::size_t>(tag.circle)];
      bool pole_line = is_axis_pole(c, axis, L);
      for (std::size_t e = 0; e < fps.size(); ++e) {
        const auto& fp = fps[e];
        if (pole_line) {
          if (std::count(fp.pole_of.begin(), fp.pole_of.end(), tag.circle)) {
            return static_cast<int>(e);
          }
        } else if (std::count(fp.circles.begin(), fp.circles.end(), tag.circle) &&
                   sign(fp.point.across(axis) - c.center_across(axis)) == tag.branch) {
          return static_cast<int>(e);
        }
      }
      if (pole_line) throw SweepError("missing pole event");
      auto [it, fresh] = generic.try_emplace(tag, static_cast<int>(keys.size()));
      if (fresh) keys.push_back({-1, tag, -1, -1});
      return it->second;
    };
    std::map<BranchTag, int> left_key, right_key;
    if (k >= 1) {
      const auto& br = slabs[static_cast<std::size_t>(k - 1)].branches;
      for (std::size_t b = 0; b < br.size(); ++b) {
        int key = key_of(br[b].tag);
        left_key[br[b].tag] = key;
        auto& pos = keys[static_cast<std::size_t>(key)].lpos;
        if (pos < 0) pos = static_cast<int>(b);
      }
    }
    if (k + 1 < m) {
      const auto& br = slabs[static_cast<std::size_t>(k)].branches;
      for (std::size_t b = 0; b < br.size(); ++b) {
        int key = key_of(br[b].tag);
        right_key[br[b].tag] = key;
        auto& pos = keys[static_cast<std::size_t>(key)].rpos;
        if (pos < 0) pos = static_cast<int>(b);
      }
    }
    std::vector<int> order(keys.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int ia, int ib) {
      const LineKey& a = keys[static_cast<std::size_t>(ia)];
      const LineKey& b = keys[static_cast<std::size_t>(ib)];
      if (a.lpos >= 0 && b.lpos >= 0) return a.lpos < b.lpos;
      if (a.rpos >= 0 && b.rpos >= 0) return a.rpos < b.rpos;
      if (a.event < 0 || b.event < 0) throw SweepError("unordered fiber keys");
      return compare_cross(fps[static_cast<std::size_t>(a.event)].point.across(axis),
                           fps[static_cast<std::size_t>(b.event)].point.across(axis)) < 0;
    });
    std::vector<int> rank(keys.size());
    for (std::size_t r = 0; r < order.size(); ++r) rank[static_cast<std::size_t>(order[r])] = static_cast<int>(r);

    std::vector<RangeRef> ranges;
    auto add_ranges = [&](int slab, bool left, const std::map<BranchTag, int>& km) {
      const auto& iv = slabs[static_cast<std::size_t>(slab)].intervals;
      for (std::size_t i = 0; i < iv.size(); ++i) {
        int lo = rank[static_cast<std::size_t>(km.at(iv[i].lower))];
        int hi = rank[static_cast<std::size_t>(km.at(iv[i].upper))];
        if (lo > hi) throw SweepError("inverted fiber interval");
        ranges.push_back({slab, static_cast<int>(i), left, lo, hi});
      }
    };
    if (k >= 1) add_ranges(k - 1, true, left_key);
    if (k + 1 < m) add_ranges(k, false, right_key);
    std::sort(ranges.begin(), ranges.end(), [](const RangeRef& a, const RangeRef& b) {
      return std::tie(a.lo, a.hi) < std::tie(b.lo, b.hi);
    });
    for (std::size_t start = 0; start < ranges.size();) {
      std::size_t end = start + 1;
      int lo = ranges[start].lo, hi = ranges[start].hi;
      while (end < ranges.size() && ranges[end].lo <= hi) {
        hi = std::max(hi, ranges[end].hi);
        ++end;
      }
      bool anchored = false;
      for (int r = lo; r <= hi; ++r) {
        anchored |= keys[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])].event >= 0;
      }
      std::vector<const RangeRef*> lefts, rights;
      for (std::size_t q = start; q < end; ++q) {
        (ranges[q].left ? lefts : rights).push_back(&ranges[q]);
      }
      auto global = [&](const RangeRef* r) {
        return first_index[static_cast<std::size_t>(r->slab)] + r->index;
      };
      if (anchored) {
        PRVertex v;
        v.id = static_cast<int>(g.vertices.size());
        v.value = L;
        v.line = k;
        for (int r = lo; r <= hi; ++r) {
          const LineKey& key = keys[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])];
          if (key.event >= 0) {
            v.fiber.push_back(fps[static_cast<std::size_t>(key.event)]);
          } else {
            FiberPoint fp;
            fp.generic = key.tag;
            fp.circles = {key.tag.circle};
            v.fiber.push_back(std::move(fp));
          }
        }
        for (const auto* r : lefts) right_vertex[static_cast<std::size_t>(global(r))] = v.id;
        for (const auto* r : rights) left_vertex[static_cast<std::size_t>(global(r))] = v.id;
        g.vertices.push_back(std::move(v));
      } else {
        if (lefts.size() != 1 || rights.size() != 1) {
          throw SweepError("unanchored fiber component changes topology");
        }
        const auto& a = slabs[static_cast<std::size_t>(lefts[0]->slab)].intervals[static_cast<std::size_t>(lefts[0]->index)];
        const auto& b = slabs[static_cast<std::size_t>(rights[0]->slab)].intervals[static_cast<std::size_t>(rights[0]->index)];
        if (a.lower.circle != b.lower.circle || a.lower.branch != b.lower.branch ||
            a.upper.circle != b.upper.circle || a.upper.branch != b.upper.branch) {
          throw SweepError("boundary changes without an anchor");
        }
        chains.unite(global(lefts[0]), global(rights[0]));
      }
      start = end;
    }
  }

  // Each chain of intervals becomes one edge.
  std::map<int, std::vector<int>> members;
  for (int i = 0; i < total; ++i) members[chains.find(i)].push_back(i);
  struct Draft {
    int tail, head, first;
  };
  std::vector<Draft> drafts;
  for (auto& [root, list] : members) {
    std::sort(list.begin(), list.end());
    int tail = -1, head = -1;
    for (int i : list) {
      if (left_vertex[static_cast<std::size_t>(i)] >= 0) tail = left_vertex[static_cast<std::size_t>(i)];
      if (right_vertex[static_cast<std::size_t>(i)] >= 0) head = right_vertex[static_cast<std::size_t>(i)];
    }
    if (tail < 0 || head < 0) throw SweepError("edge without endpoints");
    drafts.push_back({tail, head, list.front()});
  }
  std::sort(drafts.begin(), drafts.end(), [](const Draft& a, const Draft& b) {
    return std::tie(a.tail, a.head, a.first) < std::tie(b.tail, b.head, b.first);
  });
  for (const Draft& d : drafts) {
    auto slab_it = std::upper_bound(first_index.begin(), first_index.end(), d.first);
    std::size_t slab = static_cast<std::size_t>(slab_it - first_index.begin() - 1);
    const auto& iv = slabs[slab].intervals[static_cast<std::size_t>(d.first - first_index[slab])];
    PREdge e;
    e.id = static_cast<int>(g.edges.size());
    e.tail = d.tail;
    e.head = d.head;
    e.lower = iv.lower;
    e.upper = iv.upper;
    e.sample = slabs[slab].t;
    g.edges.push_back(e);
  }
  return g;
}

}  // namespace prg
