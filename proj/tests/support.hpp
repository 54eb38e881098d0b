#pragma once

// Shared helpers for the test binaries: polynomial literals, random graphs
// and quantum numbers, and naive series arithmetic used as reference.

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "loopgen/graph.hpp"
#include "loopgen/polynomial.hpp"
#include "loopgen/series.hpp"

namespace testing {

using namespace loopgen;

// "1 + A*~B - 2*C" -> polynomial. Terms separated by + or - with spaces.
inline MultilinearPolynomial poly(const std::string& text) {
  MultilinearPolynomial p;
  std::istringstream in(text);
  std::string tok;
  long long sign = 1;
  while (in >> tok) {
    if (tok == "+") { sign = 1; continue; }
    if (tok == "-") { sign = -1; continue; }
    if (tok[0] == '-') { sign = -sign; tok.erase(0, 1); }
    long long coeff = 1;
    Monomial m;
    std::stringstream parts(tok);
    std::string f;
    while (std::getline(parts, f, '*')) {
      if (std::isdigit(static_cast<unsigned char>(f[0]))) coeff *= std::stoll(f);
      else if (f[0] == '~') m.push_back({f.substr(1), true});
      else m.push_back({f, false});
    }
    p.add(m, sign * coeff);
    sign = 1;
  }
  return p;
}

// A connected trivalent graph: `vertices` single vertices with random cyclic
// orders, joined by a random spanning tree, then `extra` further random
// gluings of free legs (self-loops and parallel edges allowed). Arrows are
// random.
inline RecouplingGraph random_graph(std::mt19937_64& rng, int vertices, int extra) {
  GraphDescription d;
  struct Free {
    std::string leg;
    int vertex;
  };
  std::vector<Free> free;
  for (int v = 0; v < vertices; ++v) {
    std::array<std::string, 3> h;
    for (int s = 0; s < 3; ++s) {
      h[s] = "h" + std::to_string(v) + "_" + std::to_string(s);
      d.legs.push_back({"L" + std::to_string(v) + "_" + std::to_string(s), h[s]});
      free.push_back({d.legs.back().name, v});
    }
    std::shuffle(h.begin(), h.end(), rng);
    d.vertices.push_back({"v" + std::to_string(v), h});
  }
  RecouplingGraph g = RecouplingGraph::build(d);
  int edge = 0;
  auto pick = [&](auto pred) {
    std::vector<std::size_t> ok;
    for (std::size_t k = 0; k < free.size(); ++k)
      if (pred(free[k])) ok.push_back(k);
    return ok.at(std::uniform_int_distribution<std::size_t>(0, ok.size() - 1)(rng));
  };
  auto join = [&](std::size_t a, std::size_t b) {
    std::string la = free[a].leg, lb = free[b].leg;
    if (rng() % 2) std::swap(la, lb);
    g = glue_legs(g, la, lb, "E" + std::to_string(edge++));
    if (a < b) std::swap(a, b);
    free.erase(free.begin() + static_cast<long>(a));
    free.erase(free.begin() + static_cast<long>(b));
  };
  for (int v = 1; v < vertices; ++v) {
    std::size_t inside = pick([&](const Free& f) { return f.vertex < v; });
    std::size_t fresh = pick([&](const Free& f) { return f.vertex == v; });
    join(inside, fresh);
  }
  for (int k = 0; k < extra && free.size() >= 2; ++k) {
    std::size_t a = pick([](const Free&) { return true; });
    std::size_t b = a;
    while (b == a) b = pick([](const Free&) { return true; });
    join(a, b);
  }
  return g;
}

// Random assignment with every vertex triangle-admissible and every leg
// parity-valid, 2j <= max2j; falls back to all zeros after many rejections.
inline QuantumAssignment random_admissible(std::mt19937_64& rng, const RecouplingGraph& g,
                                           int max2j) {
  std::uniform_int_distribution<int> dj(0, max2j);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    QuantumAssignment q = QuantumAssignment::zeros(g);
    for (auto& j : q.twice_j) j = dj(rng);
    bool ok = true;
    for (int v = 0; v < static_cast<int>(g.vertex_count()) && ok; ++v) {
      auto l = g.vertex_lines(v);
      ok = triangle_ok(q.twice_j[l[0]], q.twice_j[l[1]], q.twice_j[l[2]]);
    }
    if (!ok) continue;
    for (int l : g.legs()) {
      int j = q.twice_j[l];
      q.twice_m[l] = -j + 2 * std::uniform_int_distribution<int>(0, j)(rng);
    }
    return q;
  }
  return QuantumAssignment::zeros(g);
}

// Random multilinear polynomial with constant term `constant` over `vars`.
inline MultilinearPolynomial random_multilinear(std::mt19937_64& rng,
                                                const std::vector<Variable>& vars, int terms,
                                                long long constant) {
  MultilinearPolynomial p;
  if (constant) p.add({}, constant);
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    for (const Variable& v : vars)
      if (rng() % 3 == 0) m.push_back(v);
    if (m.empty()) continue;
    long long c = static_cast<long long>(rng() % 5) - 2;
    if (c) p.add(m, c);
  }
  return p;
}

inline TruncatedSeries naive_power(const TruncatedSeries& s, int n) {
  TruncatedSeries r = TruncatedSeries::one(s.variables(), s.caps(), s.total_cap());
  for (int k = 0; k < n; ++k) r = r * s;
  return r;
}

// 1/s for constant term 1 as the geometric series in (1 - s), summed until
// the terms vanish under the caps.
inline TruncatedSeries naive_inverse(const TruncatedSeries& s) {
  TruncatedSeries one = TruncatedSeries::one(s.variables(), s.caps(), s.total_cap());
  TruncatedSeries x = one - s;
  TruncatedSeries sum = one, term = one;
  for (;;) {
    term = term * x;
    if (term.size() == 0) return sum;
    sum = sum + term;
  }
}

inline TruncatedSeries naive_exp(const TruncatedSeries& s) {
  TruncatedSeries one = TruncatedSeries::one(s.variables(), s.caps(), s.total_cap());
  TruncatedSeries sum = one, term = one;
  for (int k = 1;; ++k) {
    term = term * s;
    term *= Rational(1, k);
    if (term.size() == 0) return sum;
    sum = sum + term;
  }
}

}  // namespace testing
