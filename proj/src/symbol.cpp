#include "loopgen/symbol.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace loopgen {

MultilinearPolynomial GeneratingFunction::open_part() const {
  MultilinearPolynomial b;
  for (const auto& q : leg_factors) b += q - base;
  return b;
}

GeneratingFunction generating_function(const RecouplingGraph& g) {
  GeneratingFunction gf{g, loop_polynomial(g), {}};
  for (int j : g.legs()) {
    MultilinearPolynomial q = gf.base;
    for (int i : g.legs())
      if (i != j) q += curve_polynomial(g, i, j);
    gf.leg_factors.push_back(std::move(q));
  }
  return gf;
}

std::vector<Variable> expansion_variables(const RecouplingGraph& g) {
  std::vector<Variable> vars;
  for (const Line& l : g.lines()) {
    vars.push_back({l.name, false});
    if (l.kind == LineKind::leg) vars.push_back({l.name, true});
  }
  std::sort(vars.begin(), vars.end());
  return vars;
}

std::vector<int> target_exponents(const RecouplingGraph& g, const QuantumAssignment& q) {
  std::vector<Variable> vars = expansion_variables(g);
  std::vector<int> e(vars.size(), 0);
  for (std::size_t k = 0; k < vars.size(); ++k) {
    int line = g.find_line(vars[k].name);
    int j = q.twice_j.at(line);
    if (g.line(line).kind == LineKind::edge) {
      e[k] = j;
      continue;
    }
    int m = q.twice_m.at(line);
    if ((j + m) % 2) throw std::invalid_argument("j + m is not an integer on leg " + vars[k].name);
    e[k] = vars[k].bar ? (j - m) / 2 : (j + m) / 2;
  }
  return e;
}

Caps Caps::uniform(const RecouplingGraph& g, int cap, int total) {
  return {std::vector<int>(expansion_variables(g).size(), cap), total};
}

Caps Caps::minimal(const RecouplingGraph& g, const QuantumAssignment& q) {
  std::vector<int> e = target_exponents(g, q);
  int total = 0;
  for (int x : e) total += x;
  return {std::move(e), total};
}

namespace {

struct Expansion {
  std::vector<Variable> vars;
  Caps caps;

  TruncatedSeries of(const MultilinearPolynomial& p) const {
    return TruncatedSeries::from_polynomial(p, vars, caps.per_variable, caps.total);
  }
};

Expansion expansion_for(const GeneratingFunction& gf, const Caps& caps) {
  Expansion x{expansion_variables(gf.graph), caps};
  if (caps.per_variable.size() != x.vars.size())
    throw std::invalid_argument("caps do not match the graph's expansion variables");
  return x;
}

}  // namespace

TruncatedSeries expand_eq5(const GeneratingFunction& gf, const Caps& caps) {
  Expansion x = expansion_for(gf, caps);
  const int legs = gf.leg_count();
  TruncatedSeries base = x.of(gf.base);
  TruncatedSeries base_euler = base.euler();
  std::vector<TruncatedSeries> q;
  for (const auto& p : gf.leg_factors) q.push_back(x.of(p));

  // prefix[k] = Q_0 ... Q_{k-1}, suffix[k] = Q_k ... Q_{J-1}
  TruncatedSeries unit = TruncatedSeries::one(x.vars, caps.per_variable, caps.total);
  std::vector<TruncatedSeries> prefix(legs + 1, unit), suffix(legs + 1, unit);
  for (int k = 0; k < legs; ++k) prefix[k + 1] = prefix[k] * q[k];
  for (int k = legs - 1; k >= 0; --k) suffix[k] = q[k] * suffix[k + 1];

  TruncatedSeries w = base * prefix[legs];
  TruncatedSeries m = base_euler * prefix[legs];
  m *= Rational(legs - 2);
  TruncatedSeries others(x.vars, caps.per_variable, caps.total);
  for (int k = 0; k < legs; ++k) others = others + q[k].euler() * prefix[k] * suffix[k + 1];
  m = m - base * others;
  return TruncatedSeries::solve_log_derivative(w, m);
}

TruncatedSeries expand_eq6(const GeneratingFunction& gf, const Caps& caps) {
  Expansion x = expansion_for(gf, caps);
  TruncatedSeries base = x.of(gf.base);
  TruncatedSeries b = x.of(gf.open_part());
  TruncatedSeries base_euler = base.euler();
  TruncatedSeries w = base * base;
  TruncatedSeries m = base * base_euler;
  m *= Rational(-2);
  m = m - b.euler() * base + b * base_euler;
  return TruncatedSeries::solve_log_derivative(w, m);
}

std::string SymbolValue::rule() const {
  if (parity) return "parity";
  if (triangle) return "triangle";
  if (magnetic) return "magnetic";
  return {};
}

std::string SymbolValue::to_string() const {
  if (selected_out()) return "0 (selection rule: " + rule() + ")";
  return value.to_string();
}

SymbolValue selection_rules(const RecouplingGraph& g, const QuantumAssignment& q) {
  q.validate(g);
  SymbolValue s;
  int m_sum = 0;
  for (int l : g.legs()) {
    if ((q.twice_j[l] + q.twice_m[l]) % 2) s.parity = true;
    m_sum += q.twice_m[l];
  }
  s.magnetic = m_sum != 0;
  for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v) {
    auto lines = g.vertex_lines(v);
    if (!triangle_ok(q.twice_j[lines[0]], q.twice_j[lines[1]], q.twice_j[lines[2]]))
      s.triangle = true;
  }
  return s;
}

namespace {

RootRational normalization(const RecouplingGraph& g, const QuantumAssignment& q, int denominator_power) {
  PrimePowers acc;
  for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v) {
    auto lines = g.vertex_lines(v);
    accumulate_delta_squared(acc, q.twice_j[lines[0]], q.twice_j[lines[1]], q.twice_j[lines[2]]);
  }
  for (int l : g.legs()) {
    acc.factorial((q.twice_j[l] + q.twice_m[l]) / 2);
    acc.factorial((q.twice_j[l] - q.twice_m[l]) / 2, denominator_power);
  }
  return acc.sqrt();
}

SymbolValue extract_from(const RecouplingGraph& g, const TruncatedSeries& s,
                         const QuantumAssignment& q, bool eq6) {
  SymbolValue out = selection_rules(g, q);
  if (out.selected_out()) return out;
  Rational c = s.coefficient(target_exponents(g, q));
  if (sgn(c) == 0) return out;
  out.value = RootRational(c) * (eq6 ? eq6_normalization(g, q) : eq5_normalization(g, q));
  return out;
}

}  // namespace

RootRational eq5_normalization(const RecouplingGraph& g, const QuantumAssignment& q) {
  return normalization(g, q, -1);
}

RootRational eq6_normalization(const RecouplingGraph& g, const QuantumAssignment& q) {
  return normalization(g, q, 1);
}

SymbolValue symbol_value(const RecouplingGraph& g, const QuantumAssignment& q) {
  SymbolValue flags = selection_rules(g, q);
  if (flags.selected_out()) return flags;
  return extract_from(g, expand_eq5(generating_function(g), Caps::minimal(g, q)), q, false);
}

SymbolValue symbol_value_eq6(const RecouplingGraph& g, const QuantumAssignment& q) {
  SymbolValue flags = selection_rules(g, q);
  if (flags.selected_out()) return flags;
  return extract_from(g, expand_eq6(generating_function(g), Caps::minimal(g, q)), q, true);
}

SymbolValue symbol_via_layer_sums(const RecouplingGraph& g, const QuantumAssignment& q,
                                  std::size_t* terms) {
  if (g.leg_count() != 0)
    throw std::invalid_argument("layer sums need a closed graph (no external legs)");
  SymbolValue out = selection_rules(g, q);
  if (terms) *terms = 0;
  if (out.selected_out()) return out;

  struct Layer {
    std::vector<int> degree;  // per internal edge position
    int sign;
  };
  const auto& edges = g.edges();
  std::vector<Layer> layers;
  for (const CurveSet& set : loop_sets(g)) {
    if (set.walks.empty()) continue;
    std::vector<int> by_line = line_degrees(set, g);
    Layer layer{{}, product_of(set, g).first};
    for (int e : edges) layer.degree.push_back(by_line[e]);
    layers.push_back(std::move(layer));
  }

  std::vector<int> remaining;
  for (int e : edges) remaining.push_back(q.twice_j[e]);
  // last_use[i]: last layer index covering edge i, or -1
  std::vector<int> last_use(edges.size(), -1);
  for (std::size_t t = 0; t < layers.size(); ++t)
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (layers[t].degree[i]) last_use[i] = static_cast<int>(t);
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (last_use[i] == -1 && remaining[i] != 0) return out;

  Integer sum = 0;
  std::size_t count = 0;
  std::vector<int> k(layers.size(), 0);

  std::function<void(std::size_t)> visit = [&](std::size_t t) {
    if (t == layers.size()) {
      int total = 0, negative = 0;
      for (std::size_t u = 0; u < layers.size(); ++u) {
        total += k[u];
        if (layers[u].sign < 0) negative += k[u];
      }
      Integer term = factorial(total) * (total + 1);
      for (int x : k) term /= factorial(x);
      if ((total + negative) % 2) term = -term;
      sum += term;
      ++count;
      return;
    }
    const Layer& layer = layers[t];
    int most = INT32_MAX;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (layer.degree[i]) most = std::min(most, remaining[i] / layer.degree[i]);
    for (int x = 0; x <= most; ++x) {
      bool ok = true;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        remaining[i] -= x * layer.degree[i];
        if (last_use[i] == static_cast<int>(t) && remaining[i] != 0) ok = false;
      }
      k[t] = x;
      if (ok) visit(t + 1);
      for (std::size_t i = 0; i < edges.size(); ++i) remaining[i] += x * layer.degree[i];
    }
    k[t] = 0;
  };
  visit(0);

  if (terms) *terms = count;
  if (sgn(sum) != 0) out.value = RootRational(Rational(sum)) * eq5_normalization(g, q);
  return out;
}

SymbolEvaluator::SymbolEvaluator(RecouplingGraph g, int max_twice_j)
    : gf_(loopgen::generating_function(g)),
      max_twice_j_(max_twice_j),
      caps_(Caps::uniform(g, max_twice_j)) {
  if (max_twice_j < 0 || max_twice_j > kMaxCap)
    throw std::out_of_range("max 2j out of range");
}

const TruncatedSeries& SymbolEvaluator::eq5_series() const {
  std::call_once(eq5_once_, [&] { eq5_ = std::make_unique<TruncatedSeries>(expand_eq5(gf_, caps_)); });
  return *eq5_;
}

const TruncatedSeries& SymbolEvaluator::eq6_series() const {
  std::call_once(eq6_once_, [&] { eq6_ = std::make_unique<TruncatedSeries>(expand_eq6(gf_, caps_)); });
  return *eq6_;
}

SymbolValue SymbolEvaluator::extract(const TruncatedSeries& s, const QuantumAssignment& q,
                                     bool eq6) const {
  for (int j : q.twice_j)
    if (j > max_twice_j_)
      throw std::out_of_range("2j = " + std::to_string(j) + " exceeds the evaluator's range " +
                              std::to_string(max_twice_j_));
  return extract_from(gf_.graph, s, q, eq6);
}

SymbolValue SymbolEvaluator::value(const QuantumAssignment& q) const {
  SymbolValue flags = selection_rules(gf_.graph, q);
  if (flags.selected_out()) return flags;
  return extract(eq5_series(), q, false);
}

SymbolValue SymbolEvaluator::value_eq6(const QuantumAssignment& q) const {
  SymbolValue flags = selection_rules(gf_.graph, q);
  if (flags.selected_out()) return flags;
  return extract(eq6_series(), q, true);
}

}  // namespace loopgen
