#include "prg/surgery.hpp"

#include <algorithm>
#include <cmath>
#include <set>


#include "prg/io.hpp"
#include "prg/isomorphism.hpp"
#include "prg/labeling.hpp"
#include "prg/reeb.hpp"

namespace prg {

namespace {

using json = nlohmann::json;

long exponent(const Rational& q) {
  if (q == 0) return -100000;
  Integer n = abs(q.get_num());
  return static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) -
         static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
}

Rational power_of_two(long k) {
  Integer z = 1;
  if (k >= 0) {
    z <<= static_cast<mp_bitcnt_t>(k);
    return Rational(z);
  }
  z <<= static_cast<mp_bitcnt_t>(-k);
  Rational r(Integer(1), z);
  r.canonicalize();
  return r;
}

Rational snap(const Rational& x, long k) {
  Rational scaled = x * power_of_two(k) + Rational(1, 2);
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational r = Rational(f) / power_of_two(k);
  r.canonicalize();
  return r;
}

Rational sqrt_approx(const Rational& q, unsigned bits) {
  if (q <= 0) return 0;
  return approx_rational(RadicalExpr::sqrt_of(q), bits);
}

bool less(const RadicalExpr& a, const RadicalExpr& b) { return compare_cross(a, b) < 0; }

Point on_circle(const Circle& c, const Rational& m) {
  Rational den = 1 + m * m;
  return Point(RadicalExpr(c.cx, (1 - m * m) / den, c.r2), RadicalExpr(c.cy, 2 * m / den, c.r2));
}

json number_json(const RadicalExpr& e) { return radical_to_json(e); }

json point_json(const Point& p) { return point_to_json(p); }

json change_json(const AxisChange& c, const PRGraph& g_new) {
  json facts = json::array();
  for (const auto& f : c.facts) facts.push_back(json{{"name", f.name}, {"holds", f.holds}});
  json values = json::object();
  auto add = [&](int v) {
    values[std::to_string(v)] = number_json(g_new.vertices[static_cast<std::size_t>(v)].value);
  };
  for (int v : c.subdivision) add(v);
  for (int v : c.leaves) add(v);
  return json{{"axis", axis_name(c.axis)},
              {"type", change_kind_name(c.kind)},
              {"old_edge", c.old_edge},
              {"subdivision", c.subdivision},
              {"leaves", c.leaves},
              {"attach", c.attach},
              {"new_edges", c.new_edges},
              {"values", values},
              {"facts", facts},
              {"detail", c.detail}};
}

struct Pendant {
  int leaf, edge, at;
};

// g_new with the chain a -> u1 -> u2 -> b smoothed into one edge and the
// chosen pendants removed; matched against g_old with values pinned.
bool try_match(const PRGraph& g_old, const PRGraph& g_new, int u1, int u2,
               const std::vector<Pendant>& pendants, AxisChange& out) {
  std::set<int> gone_v{u1, u2}, gone_e;
  for (const auto& p : pendants) {
    gone_v.insert(p.leaf);
    gone_e.insert(p.edge);
  }
  int e_in = -1, e_mid = -1, e_out = -1;
  for (const auto& e : g_new.edges) {
    if (gone_e.count(e.id)) continue;
    bool t = gone_v.count(e.tail) > 0, h = gone_v.count(e.head) > 0;
    if (!t && !h) continue;
    if (e.tail == u1 && e.head == u2 && e_mid < 0) {
      e_mid = e.id;
    } else if (e.head == u1 && !t && e_in < 0) {
      e_in = e.id;
    } else if (e.tail == u2 && !h && e_out < 0) {
      e_out = e.id;
    } else {
      return false;
    }
  }
  if (e_in < 0 || e_mid < 0 || e_out < 0) return false;
  int a = g_new.edges[static_cast<std::size_t>(e_in)].tail;
  int b = g_new.edges[static_cast<std::size_t>(e_out)].head;

  PRGraph h;
  h.axis = g_new.axis;
  std::vector<int> to_h(g_new.vertices.size(), -1), from_h;
  for (const auto& v : g_new.vertices) {
    if (gone_v.count(v.id)) continue;
    to_h[static_cast<std::size_t>(v.id)] = static_cast<int>(h.vertices.size());
    from_h.push_back(v.id);
    PRVertex c = v;
    c.id = static_cast<int>(h.vertices.size());
    h.vertices.push_back(std::move(c));
  }
  for (const auto& e : g_new.edges) {
    if (gone_e.count(e.id) || e.id == e_in || e.id == e_mid || e.id == e_out) continue;
    PREdge c = e;
    c.id = static_cast<int>(h.edges.size());
    c.tail = to_h[static_cast<std::size_t>(e.tail)];
    c.head = to_h[static_cast<std::size_t>(e.head)];
    h.edges.push_back(c);
  }
  PREdge smooth = g_new.edges[static_cast<std::size_t>(e_in)];
  smooth.id = static_cast<int>(h.edges.size());
  smooth.tail = to_h[static_cast<std::size_t>(a)];
  smooth.head = to_h[static_cast<std::size_t>(b)];
  h.edges.push_back(smooth);

  auto same_value = [&](int hv, int ov) {
    return compare_cross(h.vertices[static_cast<std::size_t>(hv)].value,
                         g_old.vertices[static_cast<std::size_t>(ov)].value) == 0;
  };
  auto iso = isomorphic_constrained(h, g_old, IsoMode::VDigraph, same_value);
  if (!iso) return false;

  auto val = [&](int v) -> const RadicalExpr& { return g_new.vertices[static_cast<std::size_t>(v)].value; };
  out.kind = pendants.empty() ? ChangeKind::V2 : pendants.size() == 1 ? ChangeKind::V2P1 : ChangeKind::V2P2;
  out.old_edge = iso->edge_map[static_cast<std::size_t>(smooth.id)];
  // Parallel old edges are interchangeable; prefer the one whose boundary
  // tags the ends of the chain still carry.
  const PREdge& chosen = g_old.edges[static_cast<std::size_t>(out.old_edge)];
  for (const auto& f : g_old.edges) {
    if (f.tail != chosen.tail || f.head != chosen.head) continue;
    const PREdge& ein = g_new.edges[static_cast<std::size_t>(e_in)];
    const PREdge& eout = g_new.edges[static_cast<std::size_t>(e_out)];
    if ((f.lower == ein.lower && f.upper == ein.upper) || (f.lower == eout.lower && f.upper == eout.upper)) {
      out.old_edge = f.id;
      break;
    }
  }
  out.subdivision = {u1, u2};
  out.leaves.clear();
  out.attach.clear();
  out.new_edges = {e_in, e_mid, e_out};
  for (const auto& p : pendants) {
    out.leaves.push_back(p.leaf);
    out.attach.push_back(p.at);
    out.new_edges.push_back(p.edge);
  }
  std::sort(out.new_edges.begin(), out.new_edges.end());
  out.vertex_map.assign(g_old.vertices.size(), -1);
  for (std::size_t hv = 0; hv < iso->vertex_map.size(); ++hv) {
    out.vertex_map[static_cast<std::size_t>(iso->vertex_map[hv])] = from_h[hv];
  }
  out.facts.push_back({"subdivision inside old edge", less(val(a), val(u1)) && less(val(u2), val(b))});
  for (const auto& p : pendants) {
    out.facts.push_back({"leaf " + std::to_string(p.leaf) + " inside old edge",
                         less(val(a), val(p.leaf)) && less(val(p.leaf), val(b))});
  }
  if (pendants.size() == 2) {
    int l1 = pendants[0].at == u1 ? pendants[0].leaf : pendants[1].leaf;
    int l2 = pendants[0].at == u1 ? pendants[1].leaf : pendants[0].leaf;
    out.facts.push_back({"chain u1 < leaf(u1) < leaf(u2) < u2",
                         less(val(u1), val(l1)) && less(val(l1), val(l2)) && less(val(l2), val(u2))});
  }
  out.detail.clear();
  return true;
}

int arc_family(int j) { return (j == 1 || j == 2 || j == 5 || j == 6) ? 1 : 2; }

struct Model {
  Circle circle;
  std::pair<int, int> pendants;  // expected (x, y) pendant counts
};

// New circle through (approximately) the chord endpoints whose part on the
// region side of the chord is the cap of the model circle cut by the line
// at the band's height.
Model model_circle(const Circle& s, int side_s, const Point& a, const Point& b, int band,
                   unsigned bits, long snap_bits) {
  Rational ax = approx_rational(a.x, bits), ay = approx_rational(a.y, bits);
  Rational bx = approx_rational(b.x, bits), by = approx_rational(b.y, bits);
  Rational mx = (ax + bx) / 2, my = (ay + by) / 2;
  Rational dx = bx - ax, dy = by - ay;
  Rational len = sqrt_approx(dx * dx + dy * dy, bits);
  Rational w = len / 2;
  Rational nx = -dy / len, ny = dx / len;
  bool toward_center = (s.cx - mx) * nx + (s.cy - my) * ny > 0;
  if (toward_center != (side_s == Inside)) {
    nx = -nx;
    ny = -ny;
  }
  Rational mu = std::max(abs(nx), abs(ny)), nu = std::min(abs(nx), abs(ny));
  Rational eta;
  switch (band) {
    case 1: eta = (mu + 1) / 2; break;
    case 2: eta = (nu + mu) / 2; break;
    case 3: eta = 0; break;
    case 4: eta = -(nu + mu) / 2; break;
    default: eta = -(mu + 1) / 2; break;
  }
  Rational radius = w / sqrt_approx(1 - eta * eta, bits);
  long k = std::max(0L, -exponent(w)) + snap_bits;
  Model m;
  m.circle.cx = snap(mx - eta * radius * nx, k);
  m.circle.cy = snap(my - eta * radius * ny, k);
  m.circle.r2 = snap(radius * radius, k);

  // Poles enter the cap in decreasing order of n.d over d = +-e_x, +-e_y.
  std::vector<std::pair<Rational, int>> order{{nx, 0}, {-nx, 0}, {ny, 1}, {-ny, 1}};
  std::stable_sort(order.begin(), order.end(), [](const auto& p, const auto& q) { return p.first > q.first; });
  for (int i = 0; i < band - 1; ++i) {
    (order[static_cast<std::size_t>(i)].second == 0 ? m.pendants.first : m.pendants.second) += 1;
  }
  return m;
}

ChangeKind kind_of(int pendants) {
  return pendants == 0 ? ChangeKind::V2 : pendants == 1 ? ChangeKind::V2P1 : ChangeKind::V2P2;
}

std::string fresh_id(const Arrangement& a) {
  for (std::size_t k = a.size();; ++k) {
    std::string id = "n" + std::to_string(k);
    if (a.index_of(id) < 0) return id;
  }
}

// A point of arc j of circle `ci` on the given branch with along-x value
// strictly between lo and hi, if the arc reaches there.
std::optional<Point> point_in_arc(const Circle& c, int j, int branch, const RadicalExpr& lo,
                                  const RadicalExpr& hi) {
  if ((j < 4 ? 1 : -1) != branch) return std::nullopt;
  RadicalExpr p0 = pole(c, j).x, p1 = pole(c, (j + 1) % 8).x;
  if (less(p1, p0)) std::swap(p0, p1);
  RadicalExpr l = less(lo, p0) ? p0 : lo;
  RadicalExpr h = less(p1, hi) ? p1 : hi;
  if (!less(l, h)) return std::nullopt;
  RadicalExpr upper = h;
  for (int tries = 0; tries < 8; ++tries) {
    Rational x = rational_between(l, upper);
    Rational k = c.r2 - (x - c.cx) * (x - c.cx);
    Point p(RadicalExpr(x), RadicalExpr(c.cy, branch, k));
    Octant o = octant_of(c, p);
    if (!o.is_pole && o.j == j) return p;
    upper = RadicalExpr(x);
  }
  return std::nullopt;
}

}  // namespace

const char* change_kind_name(ChangeKind k) {
  switch (k) {
    case ChangeKind::V2: return "V2";
    case ChangeKind::V2P1: return "V2P1";
    case ChangeKind::V2P2: return "V2P2";
    default: return "Unrecognized";
  }
}

int pendant_count(ChangeKind k) {
  switch (k) {
    case ChangeKind::V2: return 0;
    case ChangeKind::V2P1: return 1;
    case ChangeKind::V2P2: return 2;
    default: return -1;
  }
}

bool AxisChange::facts_hold() const {
  return std::all_of(facts.begin(), facts.end(), [](const ValueFact& f) { return f.holds; });
}

AxisChange classify_change(const PRGraph& g_old, const PRGraph& g_new) {
  AxisChange out;
  out.axis = g_new.axis;
  if (g_old.axis != g_new.axis) {
    out.detail = "graphs over different axes";
    return out;
  }
  long dv = static_cast<long>(g_new.vertices.size()) - static_cast<long>(g_old.vertices.size());
  long de = static_cast<long>(g_new.edges.size()) - static_cast<long>(g_old.edges.size());
  if (dv != de || dv < 2 || dv > 4) {
    out.detail = "vertex and edge counts do not fit a subdivision";
    return out;
  }
  std::size_t k = static_cast<std::size_t>(dv - 2);
  int n = static_cast<int>(g_new.vertices.size());
  for (int u1 = 0; u1 < n; ++u1) {
    for (int u2 = 0; u2 < n; ++u2) {
      if (u1 == u2) continue;
      if (!less(g_new.vertices[static_cast<std::size_t>(u1)].value,
                g_new.vertices[static_cast<std::size_t>(u2)].value)) {
        continue;
      }
      std::vector<Pendant> cands;
      for (int at : {u1, u2}) {
        for (const auto& e : g_new.edges) {
          if (e.tail != at && e.head != at) continue;
          int other = e.tail == at ? e.head : e.tail;
          if (other == u1 || other == u2 || g_new.degree(other) != 1) continue;
          cands.push_back({other, e.id, at});
        }
      }
      if (cands.size() < k) continue;
      std::vector<std::vector<Pendant>> choices;
      if (k == 0) {
        choices.push_back({});
      } else if (k == 1) {
        for (const auto& c : cands) choices.push_back({c});
      } else {
        for (std::size_t i = 0; i < cands.size(); ++i) {
          for (std::size_t j = i + 1; j < cands.size(); ++j) {
            if (cands[i].at != cands[j].at) choices.push_back({cands[i], cands[j]});
          }
        }
      }
      for (const auto& choice : choices) {
        if (try_match(g_old, g_new, u1, u2, choice, out)) return out;
      }
    }
  }
  out = AxisChange{};
  out.axis = g_new.axis;
  out.detail = "no subdivided edge matches";
  return out;
}

std::vector<std::pair<ChangeKind, ChangeKind>> family_ladder(int family) {
  using K = ChangeKind;
  std::vector<std::pair<K, K>> first{{K::V2, K::V2},
                                     {K::V2, K::V2P1},
                                     {K::V2P1, K::V2P1},
                                     {K::V2P2, K::V2P1},
                                     {K::V2P2, K::V2P2}};
  if (family == 1) return first;
  if (family != 2) throw SurgeryError("family must be 1 or 2");
  for (auto& p : first) std::swap(p.first, p.second);
  return first;
}

bool admissible_pair(ChangeKind x, ChangeKind y) {
  for (int f : {1, 2}) {
    for (const auto& p : family_ladder(f)) {
      if (p.first == x && p.second == y) return true;
    }
  }
  return false;
}

std::pair<Point, Point> chord_near(const Circle& c, const Point& p, const Rational& closeness) {
  Octant o = octant_of(c, p);
  if (o.is_pole) throw SurgeryError("point at a pole of " + c.id);
  if (closeness <= 0) throw SurgeryError("closeness must be positive");
  Rational r_up = sqrt_approx(c.r2, 16) + 1;
  // Sagitta of the chord is at most 2 r eps^2 for half-angle step eps.
  long k = 0;
  while (2 * r_up * power_of_two(-2 * k) > closeness) ++k;
  unsigned bits = static_cast<unsigned>(2 * k + 64 + std::max(0L, exponent(r_up)));
  Rational r = sqrt_approx(c.r2, bits);
  Rational u = approx_rational(p.x - RadicalExpr(c.cx), bits) / r;
  Rational v = approx_rational(p.y - RadicalExpr(c.cy), bits) / r;
  Rational mp = snap(v / (1 + u), k + 8);
  CirclePoint cp = CirclePoint::of(c, p);
  for (long step = k; step < k + 64; ++step) {
    Rational eps = power_of_two(-step);
    Point a = on_circle(c, mp - eps), b = on_circle(c, mp + eps);
    if (octant_of(c, a) == o && octant_of(c, b) == o &&
        compare_within_octant(c, CirclePoint::of(c, a), cp) < 0 &&
        compare_within_octant(c, cp, CirclePoint::of(c, b)) < 0) {
      return {a, b};
    }
  }
  throw SurgeryError("no chord found inside the arc");
}

Point point_on_arc(const Circle& c, int j, const Rational& lambda) {
  if (j < 0 || j > 7) throw SurgeryError("arc index out of range");
  if (lambda <= 0 || lambda >= 1) throw SurgeryError("arc parameter must lie in (0, 1)");
  long double theta = (static_cast<long double>(j) + static_cast<long double>(lambda.get_d())) *
                      3.14159265358979323846264338327950288L / 4;
  Rational m = snap(Rational(static_cast<double>(std::tan(theta / 2))), 24);
  Point p = on_circle(c, m);
  Octant o = octant_of(c, p);
  if (o.is_pole || o.j != j) throw SurgeryError("arc parameter too close to a pole");
  return p;
}

SurgeryCase SurgeryCase::parse(std::string_view text) {
  if (text == "auto") return {0, 3};
  if (text.size() == 2 && text[0] == 'c' && text[1] >= '1' && text[1] <= '5') return {0, text[1] - '0'};
  if (text.size() == 5 && text.substr(0, 2) == "2." && (text[2] == '1' || text[2] == '2') && text[3] == '.' &&
      text[4] >= '1' && text[4] <= '5') {
    return {text[2] - '0', text[4] - '0'};
  }
  throw SurgeryError("unknown case '" + std::string(text) + "' (auto, c1..c5, 2.1.k, 2.2.k)");
}

std::string SurgeryCase::name() const {
  if (family == 0) return "c" + std::to_string(index);
  return "2." + std::to_string(family) + "." + std::to_string(index);
}

SurgeryResult construct_addition(const Arrangement& a, const SurgerySpec& spec) {
  require_valid(a);
  SurgeryResult res;
  res.old_x = build_pr_graph_unchecked(a, Axis::X);
  res.old_y = build_pr_graph_unchecked(a, Axis::Y);
  if (spec.edge < 0 || spec.edge >= static_cast<int>(res.old_x.edges.size())) {
    throw SurgeryError("edge " + std::to_string(spec.edge) + " not in the x graph");
  }
  if (spec.request.index < 1 || spec.request.index > 5) throw SurgeryError("case index must be 1..5");
  auto circles = a.circles();
  auto sides = a.sides();
  const PREdge& e = res.old_x.edges[static_cast<std::size_t>(spec.edge)];
  const Point& p = spec.point;

  int s = -1;
  for (const BranchTag& tag : {e.lower, e.upper}) {
    const Circle& c = circles[static_cast<std::size_t>(tag.circle)];
    if (side(c, p) == 0 && CirclePoint::of(c, p).branch == tag.branch) s = tag.circle;
  }
  if (s < 0) throw SurgeryError("point is not on a boundary curve of edge " + std::to_string(spec.edge));
  for (std::size_t i = 0; i < circles.size(); ++i) {
    if (static_cast<int>(i) != s && side(circles[i], p) == 0) throw SurgeryError("point lies on two circles");
  }
  const auto& tail = res.old_x.vertices[static_cast<std::size_t>(e.tail)].value;
  const auto& head = res.old_x.vertices[static_cast<std::size_t>(e.head)].value;
  if (!less(tail, p.x) || !less(p.x, head)) throw SurgeryError("point is not over the open edge");
  const Circle& sc = circles[static_cast<std::size_t>(s)];
  Octant o = octant_of(sc, p);
  if (o.is_pole) throw SurgeryError("point at a pole of " + sc.id);
  res.source = sc.id;
  res.arc = o.j;
  res.arc_family = arc_family(o.j);

  auto ladder = family_ladder(res.arc_family);
  if (spec.request.family == 0) {
    res.band = spec.request.index;
  } else {
    auto want = family_ladder(spec.request.family)[static_cast<std::size_t>(spec.request.index - 1)];
    auto it = std::find(ladder.begin(), ladder.end(), want);
    if (it == ladder.end()) throw SurgeryError("case family unavailable, try reversed family");
    res.band = static_cast<int>(it - ladder.begin()) + 1;
  }
  auto expected = ladder[static_cast<std::size_t>(res.band - 1)];

  Rational delta = spec.closeness > 0 ? spec.closeness : sqrt_approx(sc.r2, 32) / 32;
  for (int attempt = 1; attempt <= spec.shrink_budget; ++attempt, delta /= 2) {
    res.attempts = attempt;
    auto [pa, pb] = chord_near(sc, p, delta);
    unsigned bits = static_cast<unsigned>(96 + 2 * std::max(0L, -exponent(delta)));
    // coarse snapping first, for short coordinates
    for (long snap_bits : {6L, 12L, 24L, 40L}) {
      Model m = model_circle(sc, sides[static_cast<std::size_t>(s)], pa, pb, res.band, bits, snap_bits);
      if (kind_of(m.pendants.first) != expected.first || kind_of(m.pendants.second) != expected.second) {
        break;  // chord slope too close to a diagonal to separate the bands
      }
      m.circle.id = fresh_id(a);
      Arrangement b = a;
      b.additions.push_back({m.circle, Outside});
      if (!validate(b).valid) continue;
      PRGraph nx = build_pr_graph_unchecked(b, Axis::X);
      PRGraph ny = build_pr_graph_unchecked(b, Axis::Y);
      AxisChange cx = classify_change(res.old_x, nx);
      AxisChange cy = classify_change(res.old_y, ny);
      if (cx.kind != expected.first || cy.kind != expected.second || cx.old_edge != spec.edge ||
          !cx.facts_hold() || !cy.facts_hold()) {
        continue;
      }
      res.scene = std::move(b);
      res.circle = m.circle;
      res.closeness = delta;
      res.new_x = std::move(nx);
      res.new_y = std::move(ny);
      res.x = std::move(cx);
      res.y = std::move(cy);
      return res;
    }
  }
  throw SurgeryError("no valid circle found");
}

std::string classification_json(const AxisChange& c, const PRGraph& g_new, int indent) {
  return change_json(c, g_new).dump(indent);
}

std::string change_report_json(const SurgeryResult& r, int indent) {
  json circle{{"id", r.circle.id},
              {"cx", to_string(r.circle.cx)},
              {"cy", to_string(r.circle.cy)},
              {"r2", to_string(r.circle.r2)},
              {"side", "exterior"}};
  json j{{"source_circle", r.source},
         {"arc", r.arc},
         {"arc_family", "2." + std::to_string(r.arc_family)},
         {"band", r.band},
         {"attempts", r.attempts},
         {"closeness", to_string(r.closeness)},
         {"circle", circle},
         {"pair", {change_kind_name(r.x.kind), change_kind_name(r.y.kind)}},
         {"x", change_json(r.x, r.new_x)},
         {"y", change_json(r.y, r.new_y)},
         {"old", {{"x", {{"vertices", r.old_x.vertices.size()}, {"edges", r.old_x.edges.size()}}},
                  {"y", {{"vertices", r.old_y.vertices.size()}, {"edges", r.old_y.edges.size()}}}}},
         {"new", {{"x", {{"vertices", r.new_x.vertices.size()}, {"edges", r.new_x.edges.size()}}},
                  {"y", {{"vertices", r.new_y.vertices.size()}, {"edges", r.new_y.edges.size()}}}}}};
  return j.dump(indent);
}

FamilyReport verify_theorem2(const Arrangement& a, int edge, const Point& p) {
  FamilyReport rep;
  rep.point = p;
  std::set<std::pair<ChangeKind, ChangeKind>> seen;
  for (int band = 1; band <= 5; ++band) {
    BandOutcome out;
    out.band = band;
    try {
      SurgeryResult r = construct_addition(a, SurgerySpec{edge, p, SurgeryCase{0, band}});
      out.built = true;
      out.x = r.x.kind;
      out.y = r.y.kind;
      rep.circle = r.source;
      rep.arc = r.arc;
      seen.insert({out.x, out.y});
    } catch (const SurgeryError& err) {
      out.error = err.what();
    }
    rep.bands.push_back(out);
  }
  auto covered = [&](int f) {
    auto l = family_ladder(f);
    return std::all_of(l.begin(), l.end(), [&](const auto& pr) { return seen.count(pr) > 0; });
  };
  rep.family1 = covered(1);
  rep.family2 = covered(2);
  return rep;
}

PairReport verify_theorem3(const Arrangement& a, int edge) {
  require_valid(a);
  PRGraph g = build_pr_graph_unchecked(a, Axis::X);
  if (edge < 0 || edge >= static_cast<int>(g.edges.size())) {
    throw SurgeryError("edge " + std::to_string(edge) + " not in the x graph");
  }
  LabelSequence label = edge_label(a, g, edge);
  const PREdge& e = g.edges[static_cast<std::size_t>(edge)];
  const auto& lo = g.vertices[static_cast<std::size_t>(e.tail)].value;
  const auto& hi = g.vertices[static_cast<std::size_t>(e.head)].value;
  PairReport rep;
  rep.edge = edge;
  bool hypothesis = false;
  // upper entry first
  for (std::size_t k : {std::size_t{1}, std::size_t{0}}) {
    if (k >= label.size()) continue;
    const BranchTag& tag = k == 0 ? e.lower : e.upper;
    const Circle& c = a.circle(static_cast<std::size_t>(tag.circle));
    auto idx = label[k].indices(c.id);
    if (idx.size() < 2) continue;
    hypothesis = true;
    for (int j : idx) {
      auto pt = point_in_arc(c, j, tag.branch, lo, hi);
      if (!pt) continue;
      FamilyReport fr = verify_theorem2(a, edge, *pt);
      rep.tried.push_back(fr);
      if (fr.family1 && !rep.family1) rep.family1 = fr;
      if (fr.family2 && !rep.family2) rep.family2 = fr;
      if (rep.found()) {
        rep.circle = c.id;
        rep.entry = static_cast<int>(k);
        return rep;
      }
    }
  }
  if (!hypothesis) throw SurgeryError("Theorem 3 hypothesis not satisfied");
  return rep;
}

namespace {

json family_json(const FamilyReport& r) {
  json bands = json::array();
  for (const auto& b : r.bands) {
    json o{{"band", b.band}, {"built", b.built}};
    if (b.built) {
      o["pair"] = {change_kind_name(b.x), change_kind_name(b.y)};
    } else {
      o["error"] = b.error;
    }
    bands.push_back(o);
  }
  json fams = json::array();
  if (r.family1) fams.push_back("2.1");
  if (r.family2) fams.push_back("2.2");
  return json{{"point", point_json(r.point)}, {"circle", r.circle}, {"arc", r.arc},
              {"bands", bands}, {"families", fams}, {"holds", r.holds()}};
}

}  // namespace

std::string family_report_json(const FamilyReport& r, int indent) { return family_json(r).dump(indent); }

std::string pair_report_json(const PairReport& r, int indent) {
  json tried = json::array();
  for (const auto& f : r.tried) tried.push_back(family_json(f));
  json j{{"edge", r.edge}, {"circle", r.circle}, {"entry", r.entry}, {"found", r.found()}, {"tried", tried}};
  j["family_2.1"] = r.family1 ? family_json(*r.family1) : json(nullptr);
  j["family_2.2"] = r.family2 ? family_json(*r.family2) : json(nullptr);
  return j.dump(indent);
}

}  // namespace prg
