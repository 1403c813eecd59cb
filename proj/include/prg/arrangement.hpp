#pragma once

// Normally inductive circle arrangements: scene ingestion, replayed
// validation, and region membership / boundary queries.

#include <string>
#include <string_view>
#include <vector>

#include "prg/geometry.hpp"

namespace prg {

class SceneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Region side of one circle: the region lies inside (-1) or outside (+1).
enum RegionSide : int { Inside = -1, Outside = 1 };

struct SceneStep {
  Circle circle;
  RegionSide side = Outside;  // Inside for "interior", Outside for "exterior"
};

struct Arrangement {
  std::vector<Circle> initial;
  std::vector<SceneStep> additions;

  /// Initial circles followed by additions.
  std::vector<Circle> circles() const;
  /// Side table aligned with circles(): outer inside, inner outside, and
  /// the declared choice for additions.
  std::vector<int> sides() const;
  /// Index of the outer initial circle (largest radius).
  int outer() const;
  std::size_t size() const { return initial.size() + additions.size(); }
  const Circle& circle(std::size_t i) const;
  int index_of(const std::string& id) const;
  /// Prefix with the first n circles (n >= initial.size()).
  Arrangement prefix(std::size_t n) const;
};

/// Structural parse of the scene JSON document.
Arrangement parse_scene(std::string_view text);
std::string scene_to_json(const Arrangement& a, int indent = 2);

struct RuleResult {
  std::string rule;
  bool pass = true;
  int step = -1;  // addition index, -1 for the initial family
  std::string detail;
  std::vector<Point> witnesses;
};

struct ValidationReport {
  bool valid = true;
  std::vector<RuleResult> rules;
  const RuleResult* first_failure() const;
};

ValidationReport validate(const Arrangement& a);

/// Throws SceneError naming the first failed rule.
void require_valid(const Arrangement& a);

struct MembershipResult {
  enum class Kind { Interior, Boundary, Exterior };
  Kind kind = Kind::Exterior;
  std::vector<std::string> witnesses;  // circles through a boundary point
};

MembershipResult membership(const Arrangement& a, const Point& p);

/// Whether p lies in the closure of the region cut out by strict side
/// predicates, decided from the local configuration at p.
bool closure_contains(const std::vector<Circle>& circles, const std::vector<int>& sides,
                      const Point& p);

/// A maximal piece of one circle on the region boundary, traversed from
/// `from` to `to` (counter-clockwise on its circle iff ccw).
struct BoundaryPiece {
  std::string circle;
  Point from, to;
  bool ccw = true;
  bool full = false;
};

struct BoundaryComponents {
  int count = 0;
  std::vector<std::vector<BoundaryPiece>> cycles;
};

BoundaryComponents boundary_components(const Arrangement& a);

/// Reflection of every circle in the diagonal.
Arrangement swap_axes(const Arrangement& a);

}  // namespace prg
