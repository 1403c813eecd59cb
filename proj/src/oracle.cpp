#include "prg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "prg/isomorphism.hpp"

namespace prg {

namespace {

struct FloatCircle {
  long double a, b, r2;  // center along the axis, center across, radius squared
};

struct Bound {
  long double y;
  int circle;
  int branch;
};

struct ColumnInterval {
  long double lo, hi;
  std::pair<int, int> lower, upper;  // (circle, branch) tags
};

long double as_ld(const Rational& q) { return static_cast<long double>(q.get_d()); }

std::vector<FloatCircle> float_circles(const Arrangement& a, Axis axis) {
  std::vector<FloatCircle> out;
  for (const auto& c : a.circles()) {
    out.push_back({as_ld(c.center_along(axis)), as_ld(c.center_across(axis)), as_ld(c.r2)});
  }
  return out;
}

bool inside(const std::vector<FloatCircle>& cs, const std::vector<int>& sides, long double t,
            long double y) {
  for (std::size_t i = 0; i < cs.size(); ++i) {
    long double d = (t - cs[i].a) * (t - cs[i].a) + (y - cs[i].b) * (y - cs[i].b) - cs[i].r2;
    if ((d < 0 ? -1 : 1) != sides[i] || d == 0) return false;
  }
  return true;
}

std::vector<ColumnInterval> column(const std::vector<FloatCircle>& cs, const std::vector<int>& sides,
                                   long double t) {
  std::vector<Bound> bounds;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    long double h = cs[i].r2 - (t - cs[i].a) * (t - cs[i].a);
    if (h <= 0) continue;
    long double s = std::sqrt(h);
    bounds.push_back({cs[i].b - s, static_cast<int>(i), -1});
    bounds.push_back({cs[i].b + s, static_cast<int>(i), 1});
  }
  std::sort(bounds.begin(), bounds.end(), [](const Bound& l, const Bound& r) { return l.y < r.y; });
  std::vector<ColumnInterval> out;
  bool open = false;
  for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
    bool in = inside(cs, sides, t, (bounds[k].y + bounds[k + 1].y) / 2);
    if (in && !open) {
      out.push_back({bounds[k].y, 0, {bounds[k].circle, bounds[k].branch}, {}});
      open = true;
    }
    if (!in && open) open = false;
    if (open) {
      out.back().hi = bounds[k + 1].y;
      out.back().upper = {bounds[k + 1].circle, bounds[k + 1].branch};
    }
  }
  return out;
}

// Every pole and pairwise crossing abscissa, whether or not it touches the
// region; sorted.
std::vector<long double> events(const std::vector<FloatCircle>& cs) {
  std::vector<long double> out;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    long double r = std::sqrt(cs[i].r2);
    out.push_back(cs[i].a - r);
    out.push_back(cs[i].a + r);
    for (std::size_t k = i + 1; k < cs.size(); ++k) {
      long double da = cs[k].a - cs[i].a, db = cs[k].b - cs[i].b;
      long double d2 = da * da + db * db;
      if (d2 == 0) continue;
      long double f = (cs[i].r2 - cs[k].r2 + d2) / (2 * d2);
      long double h = cs[i].r2 / d2 - f * f;
      if (h < 0) continue;
      long double s = std::sqrt(h);
      out.push_back(cs[i].a + f * da - s * db);
      out.push_back(cs[i].a + f * da + s * db);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(static_cast<std::size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[static_cast<std::size_t>(x)] != x) x = p[static_cast<std::size_t>(x)] = p[static_cast<std::size_t>(p[static_cast<std::size_t>(x)])];
    return x;
  }
  void unite(int a, int b) { p[static_cast<std::size_t>(find(a))] = find(b); }
};

// Pieces in two nearby columns are linked when they overlap.  Thin slanted
// pieces may miss each other; the same pair of bounding arcs on both sides
// still means one piece.
UnionFind link_columns(const std::vector<ColumnInterval>& a, const std::vector<ColumnInterval>& b) {
  const int na = static_cast<int>(a.size());
  UnionFind uf(na + static_cast<int>(b.size()));
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < static_cast<int>(b.size()); ++j) {
      const auto& p = a[static_cast<std::size_t>(i)];
      const auto& c = b[static_cast<std::size_t>(j)];
      bool same_arcs = p.lower == c.lower && p.upper == c.upper;
      if ((p.lo < c.hi && c.lo < p.hi) || same_arcs) uf.unite(i, na + j);
    }
  }
  return uf;
}

// Every piece continues into exactly one piece with the same bounding arcs.
bool plain_continuation(const std::vector<ColumnInterval>& a, const std::vector<ColumnInterval>& b,
                        UnionFind& uf) {
  if (a.size() != b.size()) return false;
  const int na = static_cast<int>(a.size());
  for (int i = 0; i < na; ++i) {
    int partners = 0;
    for (int j = 0; j < na; ++j) {
      if (uf.find(i) != uf.find(na + j)) continue;
      ++partners;
      const auto& p = a[static_cast<std::size_t>(i)];
      const auto& c = b[static_cast<std::size_t>(j)];
      if (p.lower != c.lower || p.upper != c.upper) return false;
    }
    if (partners != 1) return false;
  }
  return true;
}

constexpr int kRefineDepth = 16;

// Linking across a gap that holds an event is refined by bisection and the
// relations of the halves are composed.
UnionFind relate(const std::vector<FloatCircle>& cs, const std::vector<int>& sides, long double t0,
                 const std::vector<ColumnInterval>& a, long double t1,
                 const std::vector<ColumnInterval>& b, int depth) {
  UnionFind base = link_columns(a, b);
  if (depth == 0 || plain_continuation(a, b, base)) return base;
  // An irrational split keeps the new column off rational events.
  long double tm = t0 + (t1 - t0) * 0.41421356237309504880L;
  auto m = column(cs, sides, tm);
  UnionFind left = relate(cs, sides, t0, a, tm, m, depth - 1);
  UnionFind right = relate(cs, sides, tm, m, t1, b, depth - 1);
  const int na = static_cast<int>(a.size()), nm = static_cast<int>(m.size()),
            nb = static_cast<int>(b.size());
  UnionFind all(na + nm + nb);
  for (int x = 0; x < na + nm; ++x) all.unite(x, left.find(x));
  for (int x = 0; x < nm + nb; ++x) all.unite(na + x, na + right.find(x));
  UnionFind out(na + nb);
  for (int x = 0; x < na + nb; ++x) {
    for (int y = x + 1; y < na + nb; ++y) {
      int gx = x < na ? x : x + nm, gy = y < na ? y : y + nm;
      if (all.find(gx) == all.find(gy)) out.unite(x, y);
    }
  }
  return out;
}

}  // namespace

int OracleGraph::cycle_rank() const {
  UnionFind uf(static_cast<int>(vertices.size()));
  for (const auto& e : edges) uf.unite(e.tail, e.head);
  int comps = 0;
  for (std::size_t v = 0; v < vertices.size(); ++v) comps += uf.find(static_cast<int>(v)) == static_cast<int>(v);
  return static_cast<int>(edges.size()) - static_cast<int>(vertices.size()) + comps;
}

OracleGraph grid_reeb(const Arrangement& a, Axis axis, int n, int max_columns) {
  if (n < 64) throw OracleError("grid_reeb needs at least 64 columns");
  max_columns = std::max(n, max_columns);
  const auto cs = float_circles(a, axis);
  const auto sides = a.sides();
  const FloatCircle& outer = cs[a.outer()];
  const long double r = std::sqrt(outer.r2);
  const long double lo = outer.a - r, width = 2 * r;

  // Distinct events closer than two spacings force a finer grid.
  const auto ev = events(cs);
  const long double same = 1e-12L * (1 + width);
  long double min_gap = width;
  for (std::size_t i = 0; i + 1 < ev.size(); ++i) {
    long double g = ev[i + 1] - ev[i];
    if (g > same) min_gap = std::min(min_gap, g);
  }
  OracleGraph out;
  out.axis = axis;
  while (2 * width / n > min_gap && n < max_columns) n *= 2;
  n = std::min(n, max_columns);
  const long double w = width / n;
  out.columns = n;
  out.width = w;
  out.capped = 2 * w > min_gap;

  for (int k = 0; k < n; ++k) {
    long double t = lo + (k + 0.5L) * w;
    auto it = std::lower_bound(ev.begin(), ev.end(), t - w / 4);
    if (it != ev.end() && *it < t + w / 4) t = *it + (t < *it ? -w / 4 : w / 4);
    out.abscissae.push_back(t);
  }
  // Events still sharing a gap at the cap get a column between them.
  std::vector<long double> distinct;
  for (long double e : ev) {
    if (e < lo - same || e > lo + width + same) continue;
    if (distinct.empty() || e - distinct.back() > same) distinct.push_back(e);
  }
  std::sort(out.abscissae.begin(), out.abscissae.end());
  std::vector<long double> extra;
  for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
    auto it = std::upper_bound(out.abscissae.begin(), out.abscissae.end(), distinct[i]);
    if (it == out.abscissae.end() || *it >= distinct[i + 1]) {
      extra.push_back((distinct[i] + distinct[i + 1]) / 2);
    }
  }
  out.refined = static_cast<int>(extra.size());
  out.abscissae.insert(out.abscissae.end(), extra.begin(), extra.end());
  std::sort(out.abscissae.begin(), out.abscissae.end());
  const int total = static_cast<int>(out.abscissae.size());

  // Sweep the columns, with empty virtual columns on both sides.
  std::vector<ColumnInterval> prev;
  std::vector<int> prev_edge;
  for (int k = 0; k <= total; ++k) {
    std::vector<ColumnInterval> cur;
    if (k < total) cur = column(cs, sides, out.abscissae[static_cast<std::size_t>(k)]);
    out.intervals.emplace_back();
    for (const auto& iv : cur) out.intervals.back().push_back({iv.lo, iv.hi});
    if (k == total) out.intervals.pop_back();

    const int np = static_cast<int>(prev.size()), nc = static_cast<int>(cur.size());
    UnionFind uf = (k == 0 || k == total)
                       ? link_columns(prev, cur)
                       : relate(cs, sides, out.abscissae[static_cast<std::size_t>(k - 1)], prev,
                                out.abscissae[static_cast<std::size_t>(k)], cur, kRefineDepth);
    std::map<int, std::pair<std::vector<int>, std::vector<int>>> groups;
    for (int i = 0; i < np; ++i) groups[uf.find(i)].first.push_back(i);
    for (int j = 0; j < nc; ++j) groups[uf.find(np + j)].second.push_back(j);

    std::vector<int> cur_edge(static_cast<std::size_t>(nc), -1);
    long double mid = k == 0 ? lo : k == total ? lo + width
                                           : (out.abscissae[static_cast<std::size_t>(k - 1)] +
                                              out.abscissae[static_cast<std::size_t>(k)]) / 2;
    for (const auto& [root, lr] : groups) {
      const auto& [left, right] = lr;
      if (left.size() == 1 && right.size() == 1) {
        const auto& p = prev[static_cast<std::size_t>(left[0])];
        const auto& c = cur[static_cast<std::size_t>(right[0])];
        if (p.lower == c.lower && p.upper == c.upper) {
          cur_edge[static_cast<std::size_t>(right[0])] = prev_edge[static_cast<std::size_t>(left[0])];
          continue;
        }
      }
      int v = static_cast<int>(out.vertices.size());
      out.vertices.push_back({v, mid, k});
      for (int i : left) out.edges[static_cast<std::size_t>(prev_edge[static_cast<std::size_t>(i)])].head = v;
      for (int j : right) {
        int e = static_cast<int>(out.edges.size());
        out.edges.push_back({e, v, -1});
        cur_edge[static_cast<std::size_t>(j)] = e;
      }
    }
    prev = std::move(cur);
    prev_edge = std::move(cur_edge);
  }
  return out;
}

Agreement agree(const PRGraph& exact, const OracleGraph& approx) {
  int distinct = 0;
  for (std::size_t i = 0; i < exact.vertices.size(); ++i) {
    if (i == 0 || compare_cross(exact.vertices[i - 1].value, exact.vertices[i].value) != 0) ++distinct;
  }
  if (approx.columns < 4 * distinct) throw OracleError("insufficient resolution");

  Agreement out;
  auto counts = [&] {
    return "exact " + std::to_string(exact.vertices.size()) + " vertices / " +
           std::to_string(exact.edges.size()) + " edges, oracle " +
           std::to_string(approx.vertices.size()) + " / " + std::to_string(approx.edges.size());
  };
  // The oracle as a digraph carrying its floating values.
  PRGraph og;
  og.axis = approx.axis;
  for (const auto& v : approx.vertices) {
    PRVertex pv;
    pv.id = v.id;
    pv.value = RadicalExpr(Rational(static_cast<double>(v.value)));
    og.vertices.push_back(pv);
  }
  for (const auto& e : approx.edges) {
    PREdge pe;
    pe.id = e.id;
    pe.tail = e.tail;
    pe.head = e.head;
    og.edges.push_back(pe);
  }
  for (const auto& e : og.edges) {
    if (e.head < 0) {
      out.diff = "oracle edge " + std::to_string(e.id) + " has no head";
      return out;
    }
  }
  if (!isomorphic(exact, og, IsoMode::Digraph)) {
    out.diff = "not digraph-isomorphic: " + counts();
    return out;
  }
  // Exact values at least two spacings apart land in distinct gaps in the
  // same order, so a value-respecting correspondence preserves rank.
  auto w = isomorphic(exact, og, IsoMode::VDigraph);
  if (!w) {
    out.diff = "no correspondence preserves the order of values: " + counts();
    return out;
  }
  for (std::size_t v = 0; v < exact.vertices.size(); ++v) {
    long double ev = static_cast<long double>(to_double(exact.vertices[v].value));
    long double ov = approx.vertices[static_cast<std::size_t>(w->vertex_map[v])].value;
    if (std::fabs(ev - ov) > approx.width) {
      out.diff = "vertex " + std::to_string(v) + " value " + std::to_string(static_cast<double>(ev)) +
                 " vs oracle " + std::to_string(static_cast<double>(ov));
      return out;
    }
  }
  out.agree = true;
  return out;
}

}  // namespace prg
