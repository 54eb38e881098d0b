#pragma once

/// \file curves.hpp
/// Non-overlapping curve sets on an embedded trivalent graph and their
/// sign-endowed products.
///
/// Sign of one curve: -1 for every line run against its arrow, -1 for every
/// clockwise vertex passage (leaving through the clockwise successor of the
/// entry half-edge), and one overall -1. A set's product multiplies its
/// curves' products; the empty set contributes 1.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "loopgen/graph.hpp"
#include "loopgen/polynomial.hpp"

namespace loopgen {

/// One pass through a vertex: entered through half-edge `in`, left through `out`.
struct Passage {
  int in = -1;
  int out = -1;
  friend bool operator==(const Passage&, const Passage&) = default;
};

/// A curve as its sequence of vertex passages. Consecutive passages are
/// joined by the internal edge between `out` and the next `in`. A closed
/// walk additionally joins the last `out` to the first `in`. An open walk
/// enters through a leg at its first passage and leaves through a leg at
/// its last.
struct Walk {
  std::vector<Passage> passages;
  bool closed = false;
};

/// Edge-disjoint closed walks plus at most one open walk (listed first).
struct CurveSet {
  std::vector<Walk> walks;
};

/// Sign of one walk; throws GraphError if it uses half-edges not in g or
/// is not a consistent walk.
int sign_of(const Walk& walk, const RecouplingGraph& g);

/// Sign-endowed monomial of a whole set.
std::pair<int, Monomial> product_of(const CurveSet& set, const RecouplingGraph& g);

/// All non-overlapping sets of closed loops, the empty set included.
std::vector<CurveSet> loop_sets(const RecouplingGraph& g);

/// All non-overlapping sets with one open curve from leg `from` to leg `to`
/// (line indices) plus closed loops. Throws std::invalid_argument if
/// from == to or either is not a leg.
std::vector<CurveSet> curve_sets(const RecouplingGraph& g, int from, int to);

/// Sum of P over loop_sets(g).
MultilinearPolynomial loop_polynomial(const RecouplingGraph& g);

/// Sum of P over curve_sets(g, from, to): every monomial carries the
/// unbared start variable and the bared terminal variable.
MultilinearPolynomial curve_polynomial(const RecouplingGraph& g, int from, int to);

struct SetCounts {
  std::size_t loops = 0;
  /// (from, to) leg line indices -> number of curve sets.
  std::map<std::pair<int, int>, std::size_t> curves;
};

/// Counts by enumeration, not by closed form.
SetCounts count_sets(const RecouplingGraph& g);

/// Per-edge degree vector of a closed loop set, indexed by line.
std::vector<int> line_degrees(const CurveSet& set, const RecouplingGraph& g);

}  // namespace loopgen
