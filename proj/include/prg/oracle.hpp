#pragma once

// Brute-force Reeb graph from floating-point column sampling, used only to
// cross-check the exact sweep.

#include <string>
#include <utility>
#include <vector>

#include "prg/arrangement.hpp"
#include "prg/sweep.hpp"

namespace prg {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleVertex {
  int id = 0;
  long double value = 0;
  int gap = 0;  // the vertex sits between columns gap-1 and gap
};

struct OracleEdge {
  int id = 0;
  int tail = 0, head = 0;
};

struct OracleGraph {
  Axis axis = Axis::X;
  int columns = 0;             // after any doubling
  long double width = 0;       // column spacing
  bool capped = false;         // close events remained below the spacing at the cap
  int refined = 0;             // columns added between events sharing a gap
  std::vector<long double> abscissae;
  std::vector<std::vector<std::pair<long double, long double>>> intervals;  // per column
  std::vector<OracleVertex> vertices;
  std::vector<OracleEdge> edges;

  int cycle_rank() const;
};

inline constexpr int kOracleMaxColumns = 1 << 16;

/// Requires n >= 64.  Doubles n while two distinct event abscissae are
/// closer than two column spacings, up to max_columns (never below n);
/// events that still share a gap then get an extra column between them.
OracleGraph grid_reeb(const Arrangement& a, Axis axis, int n, int max_columns = kOracleMaxColumns);

struct Agreement {
  bool agree = false;
  std::string diff;
};

/// Digraph isomorphism ignoring values, then vertex values matched within
/// one column spacing.  Throws OracleError("insufficient resolution") when
/// the oracle has fewer than four columns per exact critical value.
Agreement agree(const PRGraph& exact, const OracleGraph& approx);

}  // namespace prg
