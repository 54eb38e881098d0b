#include "loopgen/oracles.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace loopgen {

namespace {

bool magnetic_ok(int j, int m) { return std::abs(m) <= j && (j + m) % 2 == 0; }

}  // namespace

RootRational racah_3j(int a, int b, int c, int alpha, int beta, int gamma) {
  if (alpha + beta + gamma != 0) return {};
  if (!magnetic_ok(a, alpha) || !magnetic_ok(b, beta) || !magnetic_ok(c, gamma)) return {};
  if (!triangle_ok(a, b, c)) return {};

  const int k1 = (a + b - c) / 2, k2 = (a - alpha) / 2, k3 = (b + beta) / 2;
  const int k4 = (c - b + alpha) / 2, k5 = (c - a - beta) / 2;
  const int lo = std::max({0, -k4, -k5}), hi = std::min({k1, k2, k3});
  Rational sum = 0;
  for (int z = lo; z <= hi; ++z) {
    Integer den = factorial(z) * factorial(k1 - z) * factorial(k2 - z) * factorial(k3 - z) *
                  factorial(k4 + z) * factorial(k5 + z);
    sum += Rational(z % 2 ? -1 : 1, den);
  }
  sum.canonicalize();
  if (sgn(sum) == 0) return {};
  if (((a - b - gamma) / 2) % 2) sum = -sum;

  PrimePowers acc;
  accumulate_delta_squared(acc, a, b, c);
  for (int x : {a + alpha, a - alpha, b + beta, b - beta, c + gamma, c - gamma}) acc.factorial(x / 2);
  return RootRational(sum) * acc.sqrt();
}

RootRational racah_6j(int a, int b, int c, int d, int e, int f) {
  const std::array<std::array<int, 3>, 4> triads{{{a, b, c}, {a, e, f}, {b, d, f}, {c, d, e}}};
  for (const auto& t : triads)
    if (!triangle_ok(t[0], t[1], t[2])) return {};

  std::array<int, 4> lower;
  for (int k = 0; k < 4; ++k) lower[k] = (triads[k][0] + triads[k][1] + triads[k][2]) / 2;
  const std::array<int, 3> upper{(a + b + d + e) / 2, (b + c + e + f) / 2, (a + c + d + f) / 2};
  const int lo = *std::max_element(lower.begin(), lower.end());
  const int hi = *std::min_element(upper.begin(), upper.end());

  Rational sum = 0;
  for (int z = lo; z <= hi; ++z) {
    Integer den = 1;
    for (int x : lower) den *= factorial(z - x);
    for (int x : upper) den *= factorial(x - z);
    sum += Rational(factorial(z + 1) * (z % 2 ? -1 : 1), den);
  }
  sum.canonicalize();
  if (sgn(sum) == 0) return {};

  PrimePowers acc;
  for (const auto& t : triads) accumulate_delta_squared(acc, t[0], t[1], t[2]);
  return RootRational(sum) * acc.sqrt();
}

RootRational contraction_oracle(const RecouplingGraph& g, const QuantumAssignment& q,
                                std::size_t budget, std::size_t* terms) {
  q.validate(g);
  if (terms) *terms = 0;

  double size = 1;
  for (int e : g.edges()) size *= q.twice_j[e] + 1;
  if (size > static_cast<double>(budget))
    throw BudgetExceeded("contraction needs " + std::to_string(static_cast<long long>(size)) +
                         " magnetic configurations, budget is " + std::to_string(budget));

  const int nv = static_cast<int>(g.vertex_count());
  for (int v = 0; v < nv; ++v) {
    auto l = g.vertex_lines(v);
    if (!triangle_ok(q.twice_j[l[0]], q.twice_j[l[1]], q.twice_j[l[2]])) return {};
  }

  std::vector<int> m(3 * nv, 0);
  std::vector<int> known(3 * nv, 0);
  for (int l : g.legs()) {
    m[g.line(l).tail] = q.twice_m[l];
    known[g.line(l).tail] = 1;
  }

  // Edges in breadth-first order so that vertices close early.
  std::vector<int> order;
  {
    std::vector<bool> taken(g.line_count(), false), seen(nv, false);
    for (int start = 0; start < nv; ++start) {
      if (seen[start]) continue;
      std::vector<int> queue{start};
      seen[start] = true;
      for (std::size_t k = 0; k < queue.size(); ++k) {
        for (int line : g.vertex_lines(queue[k])) {
          const Line& l = g.line(line);
          if (l.kind != LineKind::edge || taken[line]) continue;
          taken[line] = true;
          order.push_back(line);
          for (int h : {l.tail, l.head}) {
            int w = RecouplingGraph::vertex_of(h);
            if (!seen[w]) seen[w] = true, queue.push_back(w);
          }
        }
      }
    }
  }

  // Vertices whose half-edges are all fixed after step k.
  std::vector<std::vector<int>> closing(order.size() + 1);
  {
    std::vector<int> step(nv, 0);
    for (int k = 0; k < static_cast<int>(order.size()); ++k) {
      const Line& l = g.line(order[k]);
      for (int h : {l.tail, l.head}) step[RecouplingGraph::vertex_of(h)] = k + 1;
    }
    for (int v = 0; v < nv; ++v) closing[step[v]].push_back(v);
  }
  auto balanced = [&](int v) { return m[3 * v] + m[3 * v + 1] + m[3 * v + 2] == 0; };
  for (int v : closing[0])
    if (!balanced(v)) return {};

  std::vector<std::map<std::array<int, 2>, RootRational>> vertex_cache(nv);
  auto vertex_value = [&](int v) -> const RootRational& {
    std::array<int, 2> key{m[3 * v], m[3 * v + 1]};
    auto it = vertex_cache[v].find(key);
    if (it != vertex_cache[v].end()) return it->second;
    auto l = g.vertex_lines(v);
    RootRational x = racah_3j(q.twice_j[l[0]], q.twice_j[l[1]], q.twice_j[l[2]], m[3 * v],
                              m[3 * v + 1], m[3 * v + 2]);
    return vertex_cache[v].emplace(key, std::move(x)).first->second;
  };

  RootRational sum;
  std::size_t count = 0;
  std::function<void(std::size_t, int)> visit = [&](std::size_t k, int sign) {
    if (k == order.size()) {
      RootRational term(sign);
      for (int v = 0; v < nv && !term.is_zero(); ++v) term *= vertex_value(v);
      if (term.is_zero()) return;
      sum += term;
      ++count;
      return;
    }
    const Line& l = g.line(order[k]);
    const int a = q.twice_j[order[k]];
    for (int mt = -a; mt <= a; mt += 2) {
      m[l.tail] = mt;
      m[l.head] = -mt;
      if (std::all_of(closing[k + 1].begin(), closing[k + 1].end(), balanced))
        visit(k + 1, ((a + mt) / 2) % 2 ? -sign : sign);
    }
  };
  visit(0, 1);
  if (terms) *terms = count;
  return sum;
}

}  // namespace loopgen
