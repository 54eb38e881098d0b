#include <sstream>

#include "loopgen/graph.hpp"

namespace loopgen {

namespace {

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void fail(int line_no, const std::string& what) {
  throw GraphError("line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

// Grammar, one statement per line, `#` starts a comment:
//   vertex <id>: <half> <half> <half>
//   edge <Name>: <half> -> <half>
//   leg <Name>: <half>
RecouplingGraph parse_graph(std::string_view text) {
  GraphDescription d;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    if (split_ws(raw).empty()) continue;

    auto colon = raw.find(':');
    if (colon == std::string::npos) fail(line_no, "expected ':' in '" + raw + "'");
    auto head = split_ws(std::string_view(raw).substr(0, colon));
    std::string body = raw.substr(colon + 1);
    if (head.size() != 2) fail(line_no, "expected '<keyword> <name>:' before ':'");
    const std::string& keyword = head[0];
    const std::string& name = head[1];

    if (keyword == "vertex") {
      auto halves = split_ws(body);
      if (halves.size() != 3)
        fail(line_no, "non-trivalent vertex '" + name + "' lists " +
                          std::to_string(halves.size()) + " half-edges");
      d.vertices.push_back({name, {halves[0], halves[1], halves[2]}});
      d.vertex_lines.push_back(line_no);
    } else if (keyword == "edge") {
      auto arrow = body.find("->");
      if (arrow == std::string::npos) fail(line_no, "edge '" + name + "' needs '<tail> -> <head>'");
      auto tail = split_ws(std::string_view(body).substr(0, arrow));
      auto rest = split_ws(std::string_view(body).substr(arrow + 2));
      if (tail.size() != 1 || rest.size() != 1)
        fail(line_no, "edge '" + name + "' needs exactly '<tail> -> <head>'");
      d.edges.push_back({name, tail[0], rest[0]});
      d.edge_lines.push_back(line_no);
    } else if (keyword == "leg") {
      auto halves = split_ws(body);
      if (halves.size() != 1) fail(line_no, "leg '" + name + "' needs exactly one half-edge");
      d.legs.push_back({name, halves[0]});
      d.leg_lines.push_back(line_no);
    } else {
      fail(line_no, "unknown statement '" + keyword + "'");
    }
  }
  return RecouplingGraph::build(d);
}

std::string serialize_graph(const RecouplingGraph& g) {
  GraphDescription d = g.describe();
  std::ostringstream out;
  for (const auto& v : d.vertices)
    out << "vertex " << v.name << ": " << v.half_edges[0] << ' ' << v.half_edges[1] << ' '
        << v.half_edges[2] << '\n';
  for (const auto& e : d.edges) out << "edge " << e.name << ": " << e.tail << " -> " << e.head << '\n';
  for (const auto& l : d.legs) out << "leg " << l.name << ": " << l.half_edge << '\n';
  return out.str();
}

}  // namespace loopgen
