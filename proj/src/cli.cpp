#include "loopgen/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "loopgen/curves.hpp"
#include "loopgen/graph.hpp"
#include "loopgen/oracles.hpp"
#include "loopgen/series.hpp"
#include "loopgen/symbol.hpp"

namespace loopgen {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RecouplingGraph load_graph(const std::string& source) {
  RecouplingGraph g;
  if (!source.empty() && source[0] == '@') {
    if (!standard_graph(source, g))
      throw UsageError("unknown graph alias '" + source + "' (known: @3j @5j @6j @9j)");
    return g;
  }
  std::ifstream in(source);
  if (!in) throw UsageError("cannot read graph file '" + source + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_graph(buf.str());
  } catch (const GraphError& e) {
    throw GraphError(source + ": " + e.what());
  }
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Exact name first, then a unique case-insensitive match.
int resolve_line(const RecouplingGraph& g, const std::string& name) {
  if (int i = g.find_line(name); i >= 0) return i;
  int found = -1;
  for (std::size_t i = 0; i < g.line_count(); ++i) {
    if (lower(g.line(static_cast<int>(i)).name) != lower(name)) continue;
    if (found >= 0) throw UsageError("ambiguous line name '" + name + "'");
    found = static_cast<int>(i);
  }
  if (found < 0) throw UsageError("no line named '" + name + "'");
  return found;
}

int parse_int(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) throw UsageError("malformed " + what + " '" + s + "'");
  return v;
}

QuantumAssignment parse_assignment(const RecouplingGraph& g, const std::vector<std::string>& items,
                                   const std::vector<int>& leg_m) {
  QuantumAssignment q = QuantumAssignment::zeros(g);
  std::vector<bool> given(g.line_count(), false), m_given(g.line_count(), false);
  for (const std::string& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("expected name=2j[,2m], got '" + item + "'");
    int line = resolve_line(g, item.substr(0, eq));
    if (given[line]) throw UsageError("line '" + g.line(line).name + "' assigned twice");
    given[line] = true;
    std::string value = item.substr(eq + 1);
    auto comma = value.find(',');
    q.twice_j[line] = parse_int(value.substr(0, comma), "2j");
    if (comma != std::string::npos) {
      if (g.line(line).kind != LineKind::leg)
        throw UsageError("'" + g.line(line).name + "' is an internal edge and takes no 2m");
      q.twice_m[line] = parse_int(value.substr(comma + 1), "2m");
      m_given[line] = true;
    }
  }
  for (std::size_t i = 0; i < g.line_count(); ++i)
    if (!given[i]) throw UsageError("no value for line '" + g.line(static_cast<int>(i)).name + "'");
  if (!leg_m.empty()) {
    if (leg_m.size() != g.leg_count())
      throw UsageError("--m needs one value per leg (" + std::to_string(g.leg_count()) + ")");
    for (std::size_t k = 0; k < leg_m.size(); ++k) {
      int l = g.legs()[k];
      if (m_given[l]) throw UsageError("2m of '" + g.line(l).name + "' given twice");
      q.twice_m[l] = leg_m[k];
    }
  }
  q.validate(g);
  return q;
}

std::string describe(const RecouplingGraph& g, const QuantumAssignment& q) {
  std::string s;
  for (std::size_t i = 0; i < g.line_count(); ++i) {
    const Line& l = g.line(static_cast<int>(i));
    if (!s.empty()) s += ' ';
    s += l.name + '=' + std::to_string(q.twice_j[i]);
    if (l.kind == LineKind::leg) s += ',' + std::to_string(q.twice_m[i]);
  }
  return s;
}

// Calls f on every assignment with 2j <= max2j on all lines and every
// valid 2m on legs, in odometer order over line indices.
void for_each_case(const RecouplingGraph& g, int max2j,
                   const std::function<void(const QuantumAssignment&)>& f) {
  const std::size_t n = g.line_count();
  QuantumAssignment q = QuantumAssignment::zeros(g);
  std::function<void(std::size_t)> fill_m = [&](std::size_t k) {
    if (k == g.leg_count()) {
      f(q);
      return;
    }
    int l = g.legs()[k];
    for (int m = -q.twice_j[l]; m <= q.twice_j[l]; m += 2) {
      q.twice_m[l] = m;
      fill_m(k + 1);
    }
    q.twice_m[l] = 0;
  };
  std::function<void(std::size_t)> fill_j = [&](std::size_t i) {
    if (i == n) {
      fill_m(0);
      return;
    }
    for (int j = 0; j <= max2j; ++j) {
      q.twice_j[i] = j;
      fill_j(i + 1);
    }
  };
  fill_j(0);
}

enum class Oracle { three_j, six_j, contraction };

Oracle oracle_for(const RecouplingGraph& g) {
  if (g == three_j()) return Oracle::three_j;
  if (g == six_j()) return Oracle::six_j;
  return Oracle::contraction;
}

const char* oracle_name(Oracle o) {
  switch (o) {
    case Oracle::three_j: return "racah_3j";
    case Oracle::six_j: return "racah_6j";
    default: return "contraction";
  }
}

RootRational oracle_value(Oracle o, const RecouplingGraph& g, const QuantumAssignment& q,
                          std::size_t budget) {
  const auto& j = q.twice_j;
  const auto& m = q.twice_m;
  switch (o) {
    case Oracle::three_j: return racah_3j(j[0], j[1], j[2], m[0], m[1], m[2]);
    case Oracle::six_j: return racah_6j(j[0], j[1], j[2], j[3], j[4], j[5]);
    default: return contraction_oracle(g, q, budget);
  }
}

int cmd_gf(const std::string& graph, std::ostream& out) {
  RecouplingGraph g = load_graph(graph);
  GeneratingFunction gf = generating_function(g);
  out << "base: " << gf.base.to_string() << '\n';
  for (int k = 0; k < gf.leg_count(); ++k)
    out << "Q[" << g.line(g.legs()[k]).name << "]: " << gf.leg_factors[k].to_string() << '\n';
  SetCounts counts = count_sets(g);
  out << "loop sets: " << counts.loops << '\n';
  for (const auto& [pair, n] : counts.curves)
    out << "curve sets " << g.line(pair.first).name << " -> " << g.line(pair.second).name << ": "
        << n << '\n';
  return kExitOk;
}

int cmd_count(const std::string& graph, std::ostream& out) {
  RecouplingGraph g = load_graph(graph);
  SetCounts counts = count_sets(g);
  const long exponent = static_cast<long>(g.edge_count()) - static_cast<long>(g.vertex_count()) +
                        g.component_count();
  out << "V=" << g.vertex_count() << " I=" << g.edge_count() << " J=" << g.leg_count() << '\n';
  out << "loop sets: " << counts.loops << " (2^" << exponent << " = " << (1L << exponent) << ")\n";
  bool ok = counts.loops == (std::size_t{1} << exponent);
  for (const auto& [pair, n] : counts.curves) {
    out << "curve sets " << g.line(pair.first).name << " -> " << g.line(pair.second).name << ": "
        << n << '\n';
    if (g.component_count() == 1) ok = ok && n == counts.loops;
  }
  return ok ? kExitOk : kExitVerification;
}

int cmd_symbol(const std::string& graph, const std::vector<std::string>& items,
               const std::vector<int>& leg_m, int cap, std::ostream& out) {
  RecouplingGraph g = load_graph(graph);
  QuantumAssignment q = parse_assignment(g, items, leg_m);
  SymbolValue flags = selection_rules(g, q);
  if (flags.selected_out()) {
    out << flags.to_string() << '\n';
    return kExitOk;
  }
  SymbolValue v;
  if (cap < 0) {
    v = symbol_value(g, q);
  } else {
    std::vector<int> target = target_exponents(g, q);
    int top = *std::max_element(target.begin(), target.end());
    if (top > cap)
      throw UsageError("requested order " + std::to_string(top) + " exceeds --cap " +
                       std::to_string(cap));
    SymbolEvaluator ev(g, cap);
    v = ev.value(q);
  }
  out << v.to_string() << '\n';
  out << "approx " << v.value.to_decimal(15) << '\n';
  return kExitOk;
}

int cmd_check(const std::string& graph, int max2j, std::size_t budget, std::ostream& out) {
  RecouplingGraph g = load_graph(graph);
  SymbolEvaluator ev(g, max2j);
  Oracle oracle = oracle_for(g);
  const bool closed = g.leg_count() == 0;
  if (oracle == Oracle::contraction) {
    // All lines at the largest even 2j is always admissible and is the costliest case.
    const int even = max2j - max2j % 2;
    double size = 1;
    for (std::size_t e = 0; e < g.edge_count(); ++e) size *= even + 1;
    if (size > static_cast<double>(budget))
      throw BudgetExceeded("contraction at 2j = " + std::to_string(even) + " needs " +
                           std::to_string(static_cast<long long>(size)) +
                           " magnetic configurations, budget is " + std::to_string(budget));
  }
  out << "oracle: " << oracle_name(oracle) << (closed ? " (+ eq6, layer sums)" : " (+ eq6)")
      << '\n';
  std::size_t cases = 0, mismatches = 0;
  for_each_case(g, max2j, [&](const QuantumAssignment& q) {
    ++cases;
    RootRational expected = oracle_value(oracle, g, q, budget);
    SymbolValue s = ev.value(q);
    bool ok = s.value == expected && ev.value_eq6(q).value == expected;
    if (closed) ok = ok && symbol_via_layer_sums(g, q).value == expected;
    if (ok) return;
    if (++mismatches <= 10)
      out << "mismatch: " << describe(g, q) << " engine " << s.value << " oracle " << expected
          << '\n';
  });
  out << mismatches << " mismatches / " << cases << " cases\n";
  return mismatches == 0 ? kExitOk : kExitVerification;
}

int cmd_glue(const std::string& graph, const std::string& leg_1, const std::string& leg_2,
             const std::string& name, int cap, std::ostream& out) {
  RecouplingGraph g = load_graph(graph);
  int l1 = resolve_line(g, leg_1), l2 = resolve_line(g, leg_2);
  const std::string n1 = g.line(l1).name, n2 = g.line(l2).name;
  const std::string new_name = name.empty() ? n1 : name;
  RecouplingGraph glued = glue_legs(g, n1, n2, new_name);
  if (cap < 0) cap = 8;
  if (2 * cap > kMaxCap) throw UsageError("--cap too large");

  TruncatedSeries source = expand_eq5(generating_function(g), Caps::uniform(g, cap, 2 * cap));
  TruncatedSeries lhs = glue_series(source, n1, n2, new_name);
  TruncatedSeries rhs = expand_eq5(generating_function(glued), Caps::uniform(glued, cap, cap));
  bool pass = lhs == rhs;
  out << serialize_graph(glued);
  out << "# glue check: " << (pass ? "PASS" : "FAIL") << ", verified to order " << cap << " ("
      << rhs.size() << " coefficients)\n";
  return pass ? kExitOk : kExitVerification;
}

struct BenchRow {
  std::string evaluator;
  int max2j;
  std::size_t cases;
  double wall_ms;
  std::size_t terms;
};

int cmd_bench(const std::string& graph, int max2j, std::size_t budget, bool csv,
              std::ostream& out) {
  RecouplingGraph g = load_graph(graph);
  // Valid cases ordered by largest entry, so every size extends the previous one.
  std::vector<std::pair<int, QuantumAssignment>> ordered;
  for_each_case(g, max2j, [&](const QuantumAssignment& q) {
    if (selection_rules(g, q).selected_out()) return;
    ordered.emplace_back(*std::max_element(q.twice_j.begin(), q.twice_j.end()), q);
  });
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  using clock = std::chrono::steady_clock;
  auto ms_since = [](clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  };
  std::vector<BenchRow> rows;
  for (int n = 0; n <= max2j; ++n) {
    auto end = std::find_if(ordered.begin(), ordered.end(),
                            [n](const auto& c) { return c.first > n; });
    const std::size_t count = static_cast<std::size_t>(end - ordered.begin());

    auto t0 = clock::now();
    SymbolEvaluator ev(g, n);
    for (auto it = ordered.begin(); it != end; ++it) ev.value(it->second);
    rows.push_back({"series", n, count, ms_since(t0), ev.eq5_series().size()});

    if (g.leg_count() == 0) {
      t0 = clock::now();
      std::size_t peak = 0;
      for (auto it = ordered.begin(); it != end; ++it) {
        std::size_t t = 0;
        symbol_via_layer_sums(g, it->second, &t);
        peak = std::max(peak, t);
      }
      rows.push_back({"layer_sums", n, count, ms_since(t0), peak});
    }

    t0 = clock::now();
    std::size_t done = 0, spent = 0, peak = 0;
    for (auto it = ordered.begin(); it != end; ++it) {
      std::size_t size = 1;
      for (int e : g.edges()) size *= static_cast<std::size_t>(it->second.twice_j[e] + 1);
      if (spent + size > budget) break;
      spent += size;
      std::size_t t = 0;
      contraction_oracle(g, it->second, budget, &t);
      peak = std::max(peak, t);
      ++done;
    }
    rows.push_back({"contraction", n, done, ms_since(t0), peak});
  }

  if (csv) {
    out << "evaluator,max2j,cases,wall_ms,terms\n";
    for (const auto& r : rows)
      out << r.evaluator << ',' << r.max2j << ',' << r.cases << ',' << std::fixed
          << std::setprecision(3) << r.wall_ms << ',' << r.terms << '\n';
  } else {
    out << std::left << std::setw(12) << "evaluator" << std::right << std::setw(6) << "max2j"
        << std::setw(10) << "cases" << std::setw(12) << "wall_ms" << std::setw(10) << "terms"
        << '\n';
    for (const auto& r : rows)
      out << std::left << std::setw(12) << r.evaluator << std::right << std::setw(6) << r.max2j
          << std::setw(10) << r.cases << std::setw(12) << std::fixed << std::setprecision(3)
          << r.wall_ms << std::setw(10) << r.terms << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact multi-j symbols from loop generating functions", "loopgen"};
  app.require_subcommand(1);

  std::string graph, leg_1, leg_2, new_name;
  std::vector<std::string> items;
  std::vector<int> leg_m;
  int max2j = 2, cap = -1;
  std::size_t budget = kDefaultBudget;
  bool csv = false;

  auto* gf = app.add_subcommand("gf", "print the loop polynomial and every leg factor");
  gf->add_option("graph", graph, "graph file or @3j/@5j/@6j/@9j")->required();

  auto* count = app.add_subcommand("count", "count loop sets and curve sets");
  count->add_option("graph", graph, "graph file or alias")->required();

  auto* symbol = app.add_subcommand("symbol", "evaluate one symbol exactly");
  symbol->add_option("graph", graph, "graph file or alias")->required();
  symbol->add_option("values", items, "name=2j[,2m] for every line");
  symbol->add_option("--m", leg_m, "2m for every leg, in declaration order")
      ->allow_extra_args(true);
  symbol->add_option("--cap", cap, "expand to this order in every variable");

  auto* check = app.add_subcommand("check", "compare every evaluator against an oracle");
  check->add_option("graph", graph, "graph file or alias")->required();
  check->add_option("--max2j", max2j, "largest doubled momentum")->check(CLI::Range(0, 40));
  check->add_option("--budget", budget, "contraction term budget per case");

  auto* glue = app.add_subcommand("glue", "glue two legs and verify the series transform");
  glue->add_option("graph", graph, "graph file or alias")->required();
  glue->add_option("leg1", leg_1, "leg becoming the tail")->required();
  glue->add_option("leg2", leg_2, "leg becoming the head")->required();
  glue->add_option("--name", new_name, "name of the new edge (default: leg1)");
  glue->add_option("--cap", cap, "total order of the check (default 8)");

  auto* bench = app.add_subcommand("bench", "time the evaluators over growing ranges");
  bench->add_option("graph", graph, "graph file or alias")->required();
  bench->add_option("--max2j", max2j, "largest doubled momentum")->check(CLI::Range(0, 40));
  bench->add_option("--budget", budget, "contraction terms per row");
  bench->add_flag("--csv", csv, "emit CSV");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "loopgen: " << e.what() << '\n';
    if (app.get_subcommands().empty()) err << app.help();
    return kExitUsage;
  }

  try {
    if (gf->parsed()) return cmd_gf(graph, out);
    if (count->parsed()) return cmd_count(graph, out);
    if (symbol->parsed()) return cmd_symbol(graph, items, leg_m, cap, out);
    if (check->parsed()) return cmd_check(graph, max2j, budget, out);
    if (glue->parsed()) return cmd_glue(graph, leg_1, leg_2, new_name, cap, out);
    if (bench->parsed()) return cmd_bench(graph, max2j, budget, csv, out);
  } catch (const BudgetExceeded& e) {
    err << "loopgen: budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "loopgen: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace loopgen
