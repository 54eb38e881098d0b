#include "loopgen/curves.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace loopgen {

namespace {

using EdgeSubset = std::vector<bool>;  // indexed by position in g.edges()

// Depth-first search over internal-edge subsets whose degree at each vertex
// has the required parity. A vertex is checked as soon as its last incident
// edge has been decided.
std::vector<EdgeSubset> even_subsets(const RecouplingGraph& g, const std::vector<int>& parity) {
  const auto& edges = g.edges();
  const int nv = static_cast<int>(g.vertex_count());
  std::vector<int> last(nv, -1);
  for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
    const Line& l = g.line(edges[k]);
    last[RecouplingGraph::vertex_of(l.tail)] = k;
    last[RecouplingGraph::vertex_of(l.head)] = k;
  }
  for (int v = 0; v < nv; ++v)
    if (last[v] == -1 && parity[v] != 0) return {};

  std::vector<std::vector<int>> closing(edges.size());
  for (int v = 0; v < nv; ++v)
    if (last[v] >= 0) closing[last[v]].push_back(v);

  std::vector<EdgeSubset> out;
  EdgeSubset chosen(edges.size(), false);
  std::vector<int> degree(nv, 0);

  std::function<void(std::size_t)> visit = [&](std::size_t k) {
    if (k == edges.size()) {
      out.push_back(chosen);
      return;
    }
    const Line& l = g.line(edges[k]);
    int vt = RecouplingGraph::vertex_of(l.tail), vh = RecouplingGraph::vertex_of(l.head);
    for (bool take : {false, true}) {
      chosen[k] = take;
      if (take) ++degree[vt], ++degree[vh];
      bool ok = std::all_of(closing[k].begin(), closing[k].end(),
                            [&](int v) { return degree[v] % 2 == parity[v]; });
      if (ok) visit(k + 1);
      if (take) --degree[vt], --degree[vh];
    }
    chosen[k] = false;
  };
  visit(0);
  return out;
}

int other_end(const Line& l, int half) { return l.tail == half ? l.head : l.tail; }

// Decomposes a chosen set of half-edges (degree 0 or 2 at every vertex)
// into walks; an open walk runs from leg half-edge `start` to `end` when
// start >= 0.
CurveSet decompose(const RecouplingGraph& g, const EdgeSubset& subset, int start, int end) {
  std::vector<bool> used(3 * g.vertex_count(), false);
  const auto& edges = g.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (!subset[k]) continue;
    used[g.line(edges[k]).tail] = used[g.line(edges[k]).head] = true;
  }
  if (start >= 0) used[start] = used[end] = true;

  auto exit_from = [&](int in) {
    int base = 3 * RecouplingGraph::vertex_of(in);
    int found = -1;
    for (int h = base; h < base + 3; ++h) {
      if (h == in || !used[h]) continue;
      if (found != -1) throw std::logic_error("vertex with degree above 2 in curve set");
      found = h;
    }
    if (found == -1) throw std::logic_error("curve set ends at an internal vertex");
    return found;
  };

  CurveSet set;
  std::vector<bool> visited(g.line_count(), false);

  if (start >= 0) {
    Walk walk;
    int in = start;
    for (;;) {
      int out = exit_from(in);
      walk.passages.push_back({in, out});
      const Line& l = g.line(g.line_of(out));
      if (l.kind == LineKind::leg) break;
      visited[g.line_of(out)] = true;
      in = other_end(l, out);
    }
    set.walks.push_back(std::move(walk));
  }

  for (;;) {
    int h0 = -1;
    for (int h = 0; h < static_cast<int>(used.size()); ++h) {
      if (!used[h]) continue;
      int line = g.line_of(h);
      if (g.line(line).kind == LineKind::edge && !visited[line]) {
        h0 = h;
        break;
      }
    }
    if (h0 == -1) break;
    Walk walk;
    walk.closed = true;
    int out = h0;
    do {
      const Line& l = g.line(g.line_of(out));
      visited[g.line_of(out)] = true;
      int in = other_end(l, out);
      out = exit_from(in);
      walk.passages.push_back({in, out});
    } while (out != h0);
    set.walks.push_back(std::move(walk));
  }
  return set;
}

void check_half_edge(const RecouplingGraph& g, int h) {
  if (h < 0 || h >= static_cast<int>(3 * g.vertex_count()))
    throw GraphError("walk uses half-edge " + std::to_string(h) + " not in the graph");
}

}  // namespace

int sign_of(const Walk& walk, const RecouplingGraph& g) {
  if (walk.passages.empty()) throw GraphError("empty walk");
  int sign = -1;
  const std::size_t n = walk.passages.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Passage& p = walk.passages[k];
    check_half_edge(g, p.in);
    check_half_edge(g, p.out);
    if (p.in == p.out || RecouplingGraph::vertex_of(p.in) != RecouplingGraph::vertex_of(p.out))
      throw GraphError("passage does not run through a single vertex");
    if (p.out != RecouplingGraph::ccw_next(p.in)) sign = -sign;  // clockwise passage

    bool joined = walk.closed || k + 1 < n;
    if (!joined) continue;
    const Passage& next = walk.passages[(k + 1) % n];
    const Line& l = g.line(g.line_of(p.out));
    if (l.kind != LineKind::edge || other_end(l, p.out) != next.in)
      throw GraphError("consecutive passages are not joined by an internal edge");
    if (p.out == l.head) sign = -sign;  // against the arrow
  }
  if (!walk.closed) {
    if (g.line(g.line_of(walk.passages.front().in)).kind != LineKind::leg ||
        g.line(g.line_of(walk.passages.back().out)).kind != LineKind::leg)
      throw GraphError("open walk must start and end on external legs");
  }
  return sign;
}

std::pair<int, Monomial> product_of(const CurveSet& set, const RecouplingGraph& g) {
  int sign = 1;
  Monomial m;
  for (const Walk& w : set.walks) {
    sign *= sign_of(w, g);
    const std::size_t n = w.passages.size();
    for (std::size_t k = 0; k < n; ++k) {
      if (w.closed || k + 1 < n) m.push_back({g.line(g.line_of(w.passages[k].out)).name, false});
    }
    if (!w.closed) {
      m.push_back({g.line(g.line_of(w.passages.front().in)).name, false});
      m.push_back({g.line(g.line_of(w.passages.back().out)).name, true});
    }
  }
  std::sort(m.begin(), m.end());
  return {sign, std::move(m)};
}

std::vector<CurveSet> loop_sets(const RecouplingGraph& g) {
  std::vector<int> parity(g.vertex_count(), 0);
  std::vector<CurveSet> out;
  for (const auto& subset : even_subsets(g, parity)) out.push_back(decompose(g, subset, -1, -1));
  return out;
}

std::vector<CurveSet> curve_sets(const RecouplingGraph& g, int from, int to) {
  if (from == to) throw std::invalid_argument("open curves need distinct start and end legs");
  for (int l : {from, to}) {
    if (l < 0 || l >= static_cast<int>(g.line_count()) || g.line(l).kind != LineKind::leg)
      throw std::invalid_argument("curve endpoint is not an external leg");
  }
  std::vector<int> parity(g.vertex_count(), 0);
  parity[RecouplingGraph::vertex_of(g.line(from).tail)] ^= 1;
  parity[RecouplingGraph::vertex_of(g.line(to).tail)] ^= 1;

  std::vector<CurveSet> out;
  for (const auto& subset : even_subsets(g, parity))
    out.push_back(decompose(g, subset, g.line(from).tail, g.line(to).tail));
  return out;
}

MultilinearPolynomial loop_polynomial(const RecouplingGraph& g) {
  MultilinearPolynomial p;
  for (const auto& set : loop_sets(g)) {
    auto [sign, m] = product_of(set, g);
    p.add(std::move(m), sign);
  }
  return p;
}

MultilinearPolynomial curve_polynomial(const RecouplingGraph& g, int from, int to) {
  MultilinearPolynomial p;
  for (const auto& set : curve_sets(g, from, to)) {
    auto [sign, m] = product_of(set, g);
    p.add(std::move(m), sign);
  }
  return p;
}

SetCounts count_sets(const RecouplingGraph& g) {
  SetCounts counts;
  counts.loops = loop_sets(g).size();
  for (int i : g.legs())
    for (int j : g.legs())
      if (i != j) counts.curves[{i, j}] = curve_sets(g, i, j).size();
  return counts;
}

std::vector<int> line_degrees(const CurveSet& set, const RecouplingGraph& g) {
  std::vector<int> deg(g.line_count(), 0);
  for (const Walk& w : set.walks) {
    const std::size_t n = w.passages.size();
    for (std::size_t k = 0; k < n; ++k)
      if (w.closed || k + 1 < n) ++deg[g.line_of(w.passages[k].out)];
    if (!w.closed) {
      ++deg[g.line_of(w.passages.front().in)];
      ++deg[g.line_of(w.passages.back().out)];
    }
  }
  return deg;
}

}  // namespace loopgen
