#pragma once

// Adding one small circle next to a boundary point so that both
// Poincaré-Reeb graphs change in a prescribed local way, and recognizing
// such local changes between two graphs.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prg/arrangement.hpp"
#include "prg/sweep.hpp"

namespace prg {

class SurgeryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two subdivision vertices inside one edge plus 0, 1 or 2 pendant edges.
enum class ChangeKind { V2, V2P1, V2P2, Unrecognized };

const char* change_kind_name(ChangeKind k);
int pendant_count(ChangeKind k);

struct ValueFact {
  std::string name;
  bool holds = false;
};

struct AxisChange {
  Axis axis = Axis::X;
  ChangeKind kind = ChangeKind::Unrecognized;
  int old_edge = -1;             // the subdivided edge of the old graph
  std::vector<int> subdivision;  // new graph ids, ascending value
  std::vector<int> leaves;       // new graph ids; leaves[i] hangs at attach[i]
  std::vector<int> attach;
  std::vector<int> new_edges;    // new graph edges without an old counterpart
  std::vector<int> vertex_map;   // old vertex id -> new vertex id
  std::vector<ValueFact> facts;
  std::string detail;

  bool facts_hold() const;
};

/// Recognizes g_new as g_old with one edge subdivided twice and up to two
/// pendant edges hung at the new vertices; old vertices keep their values.
AxisChange classify_change(const PRGraph& g_old, const PRGraph& g_new);

/// (x, y) pairs reachable by the construction, in either family.
bool admissible_pair(ChangeKind x, ChangeKind y);

/// The families' five (x, y) pairs, listed by increasing line height.
/// Family 1: a y-extreme pole of the new circle enters the cap first;
/// family 2 is the axis-swapped ladder.
std::vector<std::pair<ChangeKind, ChangeKind>> family_ladder(int family);

/// Two exact points of c in the open octant arc of p on either side of it,
/// both at rational half-angle parameters; the chord slope is rational and
/// the chord stays within `closeness` of p.
std::pair<Point, Point> chord_near(const Circle& c, const Point& p, const Rational& closeness);

/// Point of the open arc (j, j+1) at fraction lambda in (0, 1) of its
/// angle, snapped to a rational half-angle parameter.
Point point_on_arc(const Circle& c, int j, const Rational& lambda);

/// "auto" (band 3), "c1".."c5" (line height band), or "2.1.k" / "2.2.k"
/// (step k of a family ladder, refused when this arc cannot produce it).
struct SurgeryCase {
  int family = 0;  // 0: a plain band
  int index = 3;   // band or ladder step, 1..5

  static SurgeryCase parse(std::string_view text);
  std::string name() const;
};

struct SurgerySpec {
  int edge = 0;  // edge id in the axis-x graph
  Point point;
  SurgeryCase request;
  int shrink_budget = 64;
  Rational closeness = 0;  // initial chord distance; 0 picks r/32
};

struct SurgeryResult {
  Arrangement scene;
  Circle circle;
  std::string source;  // circle carrying the point
  int arc = 0;         // octant arc of the point on it
  int band = 0;
  int arc_family = 0;  // family whose ladder this arc produces
  int attempts = 0;
  Rational closeness;
  PRGraph old_x, old_y, new_x, new_y;
  AxisChange x, y;
};

/// Errors: SurgeryError("no valid circle found") when every candidate in
/// the shrink budget fails, SurgeryError("case family unavailable, try
/// reversed family") for a ladder step this arc cannot produce, and
/// SurgeryError for a point that is not on the edge's boundary curves.
SurgeryResult construct_addition(const Arrangement& a, const SurgerySpec& spec);

std::string change_report_json(const SurgeryResult& r, int indent = 2);
std::string classification_json(const AxisChange& c, const PRGraph& g_new, int indent = 2);

struct BandOutcome {
  int band = 0;
  bool built = false;
  ChangeKind x = ChangeKind::Unrecognized, y = ChangeKind::Unrecognized;
  std::string error;
};

struct FamilyReport {
  Point point;
  std::string circle;
  int arc = 0;
  std::vector<BandOutcome> bands;
  bool family1 = false, family2 = false;

  bool holds() const { return family1 || family2; }
};

/// Builds all five bands at p and reports which family ladders appear.
FamilyReport verify_theorem2(const Arrangement& a, int edge, const Point& p);

struct PairReport {
  int edge = 0;
  std::string circle;
  int entry = 0;  // 0 lower, 1 upper
  std::vector<FamilyReport> tried;
  std::optional<FamilyReport> family1, family2;

  bool found() const { return family1 && family2; }
};

/// Searches the label entries of `edge` holding several arcs of one circle
/// for points producing each family.  Throws SurgeryError("Theorem 3
/// hypothesis not satisfied") when no entry holds two arcs of one circle.
PairReport verify_theorem3(const Arrangement& a, int edge);

std::string family_report_json(const FamilyReport& r, int indent = 2);
std::string pair_report_json(const PairReport& r, int indent = 2);

}  // namespace prg
