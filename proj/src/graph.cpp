#include "loopgen/graph.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

namespace loopgen {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::string at_line(const std::vector<int>& lines, std::size_t i) {
  if (i < lines.size() && lines[i] > 0) return " (line " + std::to_string(lines[i]) + ")";
  return {};
}

}  // namespace

RecouplingGraph RecouplingGraph::build(const GraphDescription& d) {
  RecouplingGraph g;
  std::map<std::string, int, std::less<>> half_ids;
  std::set<std::string, std::less<>> vertex_names;

  for (std::size_t v = 0; v < d.vertices.size(); ++v) {
    const auto& vx = d.vertices[v];
    if (!is_identifier(vx.name))
      throw GraphError("invalid vertex name '" + vx.name + "'" + at_line(d.vertex_lines, v));
    if (!vertex_names.insert(vx.name).second)
      throw GraphError("duplicate vertex name '" + vx.name + "'" + at_line(d.vertex_lines, v));
    g.vertex_names_.push_back(vx.name);
    for (int s = 0; s < 3; ++s) {
      const std::string& h = vx.half_edges[s];
      if (!is_identifier(h))
        throw GraphError("invalid half-edge name '" + h + "' at vertex '" + vx.name + "'" +
                         at_line(d.vertex_lines, v));
      if (!half_ids.emplace(h, static_cast<int>(3 * v + s)).second)
        throw GraphError("duplicate half-edge name '" + h + "'" + at_line(d.vertex_lines, v));
      g.half_edge_names_.push_back(h);
    }
  }

  g.line_of_.assign(g.half_edge_names_.size(), -1);
  std::set<std::string, std::less<>> line_names;

  auto attach = [&](const std::string& half, int line, const std::string& where) {
    auto it = half_ids.find(half);
    if (it == half_ids.end()) throw GraphError("unknown half-edge '" + half + "' in " + where);
    if (g.line_of_[it->second] != -1)
      throw GraphError("half-edge '" + half + "' attached twice, again in " + where);
    g.line_of_[it->second] = line;
    return it->second;
  };
  auto claim_name = [&](const std::string& name, const std::string& where) {
    if (!is_identifier(name)) throw GraphError("invalid line name '" + name + "' in " + where);
    if (!line_names.insert(name).second)
      throw GraphError("duplicate variable name '" + name + "' in " + where);
  };

  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    const auto& ed = d.edges[e];
    std::string where = "edge '" + ed.name + "'" + at_line(d.edge_lines, e);
    claim_name(ed.name, where);
    int index = static_cast<int>(g.lines_.size());
    Line line{ed.name, LineKind::edge, -1, -1};
    line.tail = attach(ed.tail, index, where);
    line.head = attach(ed.head, index, where);
    g.lines_.push_back(line);
    g.edges_.push_back(index);
  }
  for (std::size_t l = 0; l < d.legs.size(); ++l) {
    const auto& lg = d.legs[l];
    std::string where = "leg '" + lg.name + "'" + at_line(d.leg_lines, l);
    claim_name(lg.name, where);
    int index = static_cast<int>(g.lines_.size());
    Line line{lg.name, LineKind::leg, -1, -1};
    line.tail = attach(lg.half_edge, index, where);
    g.lines_.push_back(line);
    g.legs_.push_back(index);
  }

  for (std::size_t h = 0; h < g.line_of_.size(); ++h) {
    if (g.line_of_[h] == -1)
      throw GraphError("dangling half-edge '" + g.half_edge_names_[h] + "' at vertex '" +
                       g.vertex_names_[h / 3] + "'");
  }
  return g;
}

GraphDescription RecouplingGraph::describe() const {
  GraphDescription d;
  for (std::size_t v = 0; v < vertex_names_.size(); ++v) {
    d.vertices.push_back({vertex_names_[v],
                          {half_edge_names_[3 * v], half_edge_names_[3 * v + 1],
                           half_edge_names_[3 * v + 2]}});
  }
  for (int e : edges_) {
    const Line& l = lines_[e];
    d.edges.push_back({l.name, half_edge_names_[l.tail], half_edge_names_[l.head]});
  }
  for (int j : legs_) {
    const Line& l = lines_[j];
    d.legs.push_back({l.name, half_edge_names_[l.tail]});
  }
  return d;
}

std::array<int, 3> RecouplingGraph::vertex_lines(int v) const {
  return {line_of_.at(3 * v), line_of_.at(3 * v + 1), line_of_.at(3 * v + 2)};
}

int RecouplingGraph::find_line(std::string_view name) const {
  for (std::size_t i = 0; i < lines_.size(); ++i)
    if (lines_[i].name == name) return static_cast<int>(i);
  return -1;
}

int RecouplingGraph::find_half_edge(std::string_view name) const {
  for (std::size_t i = 0; i < half_edge_names_.size(); ++i)
    if (half_edge_names_[i] == name) return static_cast<int>(i);
  return -1;
}

int RecouplingGraph::find_vertex(std::string_view name) const {
  for (std::size_t i = 0; i < vertex_names_.size(); ++i)
    if (vertex_names_[i] == name) return static_cast<int>(i);
  return -1;
}

int RecouplingGraph::component_count() const {
  std::vector<int> parent(vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int e : edges_) parent[find(vertex_of(lines_[e].tail))] = find(vertex_of(lines_[e].head));
  int count = 0;
  for (std::size_t v = 0; v < parent.size(); ++v) count += find(static_cast<int>(v)) == static_cast<int>(v);
  return count;
}

RecouplingGraph glue_legs(const RecouplingGraph& g, std::string_view leg_1, std::string_view leg_2,
                          std::string_view new_name) {
  if (leg_1 == leg_2) throw GraphError("cannot glue leg '" + std::string(leg_1) + "' to itself");
  int i1 = g.find_line(leg_1), i2 = g.find_line(leg_2);
  for (auto [i, name] : {std::pair{i1, leg_1}, std::pair{i2, leg_2}}) {
    if (i < 0 || g.line(i).kind != LineKind::leg)
      throw GraphError("'" + std::string(name) + "' is not an external leg of the graph");
  }
  GraphDescription d = g.describe();
  std::string tail = g.half_edge_name(g.line(i1).tail);
  std::string head = g.half_edge_name(g.line(i2).tail);
  std::erase_if(d.legs, [&](const auto& l) { return l.name == leg_1 || l.name == leg_2; });
  d.edges.push_back({new_name.empty() ? std::string(leg_1) : std::string(new_name), tail, head});
  return RecouplingGraph::build(d);
}

RecouplingGraph reverse_edge(const RecouplingGraph& g, std::string_view edge) {
  int i = g.find_line(edge);
  if (i < 0) throw GraphError("no line named '" + std::string(edge) + "'");
  if (g.line(i).kind != LineKind::edge)
    throw GraphError("'" + std::string(edge) + "' is a leg, not an internal edge");
  GraphDescription d = g.describe();
  for (auto& e : d.edges)
    if (e.name == edge) std::swap(e.tail, e.head);
  return RecouplingGraph::build(d);
}

RecouplingGraph transpose_slots(const RecouplingGraph& g, std::string_view vertex, int slot_1,
                                int slot_2) {
  int v = g.find_vertex(vertex);
  if (v < 0) throw GraphError("no vertex named '" + std::string(vertex) + "'");
  if (slot_1 < 0 || slot_1 > 2 || slot_2 < 0 || slot_2 > 2 || slot_1 == slot_2)
    throw GraphError("invalid slot pair for transposition");
  GraphDescription d = g.describe();
  std::swap(d.vertices[v].half_edges[slot_1], d.vertices[v].half_edges[slot_2]);
  return RecouplingGraph::build(d);
}

RecouplingGraph disjoint_union(const RecouplingGraph& a, const RecouplingGraph& b) {
  GraphDescription d = a.describe();
  GraphDescription e = b.describe();
  d.vertices.insert(d.vertices.end(), e.vertices.begin(), e.vertices.end());
  d.edges.insert(d.edges.end(), e.edges.begin(), e.edges.end());
  d.legs.insert(d.legs.end(), e.legs.begin(), e.legs.end());
  return RecouplingGraph::build(d);
}

RecouplingGraph three_j() {
  GraphDescription d;
  d.vertices = {{"v", {"a", "b", "c"}}};
  d.legs = {{"A", "a"}, {"B", "b"}, {"C", "c"}};
  return RecouplingGraph::build(d);
}

RecouplingGraph five_j() {
  GraphDescription d;
  d.vertices = {{"v1", {"a1", "b", "c"}}, {"v2", {"a2", "d", "e"}}};
  d.edges = {{"A", "a1", "a2"}};
  d.legs = {{"B", "b"}, {"C", "c"}, {"D", "d"}, {"E", "e"}};
  return RecouplingGraph::build(d);
}

// Vertex triples (a,b,c) (a,e,f) (c,d,e) (b,d,f). Half-edge names are
// <line><vertex>, e.g. `a1` is line A at vertex 1.
RecouplingGraph six_j() {
  GraphDescription d;
  d.vertices = {{"v1", {"a1", "c1", "b1"}},
                {"v2", {"a2", "f2", "e2"}},
                {"v3", {"c3", "e3", "d3"}},
                {"v4", {"b4", "d4", "f4"}}};
  d.edges = {{"A", "a1", "a2"}, {"B", "b1", "b4"}, {"C", "c3", "c1"},
             {"D", "d3", "d4"}, {"E", "e2", "e3"}, {"F", "f2", "f4"}};
  return RecouplingGraph::build(d);
}

// Rows (a,b,c) (d,e,f) (g,h,k) meet columns (a,d,g) (b,e,h) (c,f,k).
RecouplingGraph nine_j() {
  GraphDescription d;
  d.vertices = {{"r1", {"a_r", "b_r", "c_r"}}, {"r2", {"d_r", "e_r", "f_r"}},
                {"r3", {"g_r", "h_r", "k_r"}}, {"c1", {"a_c", "d_c", "g_c"}},
                {"c2", {"b_c", "e_c", "h_c"}}, {"c3", {"c_c", "f_c", "k_c"}}};
  d.edges = {{"A", "a_r", "a_c"}, {"B", "b_r", "b_c"}, {"C", "c_r", "c_c"},
             {"D", "d_r", "d_c"}, {"E", "e_r", "e_c"}, {"F", "f_r", "f_c"},
             {"G", "g_r", "g_c"}, {"H", "h_r", "h_c"}, {"K", "k_r", "k_c"}};
  return RecouplingGraph::build(d);
}

bool standard_graph(std::string_view alias, RecouplingGraph& out) {
  if (alias == "@3j") out = three_j();
  else if (alias == "@5j") out = five_j();
  else if (alias == "@6j") out = six_j();
  else if (alias == "@9j") out = nine_j();
  else return false;
  return true;
}

QuantumAssignment QuantumAssignment::zeros(const RecouplingGraph& g) {
  return {std::vector<int>(g.line_count(), 0), std::vector<int>(g.line_count(), 0)};
}

void QuantumAssignment::validate(const RecouplingGraph& g) const {
  if (twice_j.size() != g.line_count() || twice_m.size() != g.line_count())
    throw std::invalid_argument("quantum assignment does not match the graph's line count");
  for (std::size_t i = 0; i < twice_j.size(); ++i) {
    const std::string& name = g.line(static_cast<int>(i)).name;
    if (twice_j[i] < 0) throw std::invalid_argument("negative angular momentum on " + name);
    if (g.line(static_cast<int>(i)).kind == LineKind::leg && std::abs(twice_m[i]) > twice_j[i])
      throw std::invalid_argument("|m| exceeds j on leg " + name);
  }
}

}  // namespace loopgen
