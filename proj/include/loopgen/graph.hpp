#pragma once

/// \file graph.hpp
/// Embedded trivalent recoupling graphs. Every vertex stores its three
/// half-edges in counter-clockwise order; internal edges carry an arrow
/// (tail -> head); external legs end freely.

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace loopgen {

/// Raised for structurally invalid graphs, with the offending element named.
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LineKind { edge, leg };

/// A line of the graph. Half-edge ids are 3 * vertex + slot.
struct Line {
  std::string name;
  LineKind kind = LineKind::edge;
  int tail = -1;  // for legs: the attached half-edge
  int head = -1;  // -1 for legs
  friend bool operator==(const Line&, const Line&) = default;
};

/// Unvalidated graph description, as written in a graph file.
struct GraphDescription {
  struct Vertex {
    std::string name;
    std::array<std::string, 3> half_edges;  // counter-clockwise
  };
  struct Edge {
    std::string name;
    std::string tail;
    std::string head;
  };
  struct Leg {
    std::string name;
    std::string half_edge;
  };
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Leg> legs;
  // Optional 1-based source lines for diagnostics, parallel to the vectors above.
  std::vector<int> vertex_lines, edge_lines, leg_lines;
};

class RecouplingGraph {
 public:
  /// Validates the description. Throws GraphError on a non-trivalent vertex,
  /// an unattached or doubly attached half-edge, or a duplicate name.
  static RecouplingGraph build(const GraphDescription& description);

  GraphDescription describe() const;

  std::size_t vertex_count() const { return vertex_names_.size(); }
  std::size_t line_count() const { return lines_.size(); }
  std::size_t leg_count() const { return legs_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<Line>& lines() const { return lines_; }
  const Line& line(int index) const { return lines_.at(index); }
  /// Line indices of external legs, in declaration order.
  const std::vector<int>& legs() const { return legs_; }
  /// Line indices of internal edges, in declaration order.
  const std::vector<int>& edges() const { return edges_; }

  const std::string& vertex_name(int v) const { return vertex_names_.at(v); }
  const std::string& half_edge_name(int h) const { return half_edge_names_.at(h); }

  /// Line attached to half-edge h.
  int line_of(int half_edge) const { return line_of_.at(half_edge); }
  static int vertex_of(int half_edge) { return half_edge / 3; }
  static int slot_of(int half_edge) { return half_edge % 3; }
  /// Counter-clockwise successor of h around its vertex.
  static int ccw_next(int half_edge) { return 3 * (half_edge / 3) + (half_edge % 3 + 1) % 3; }
  /// Lines at vertex v in counter-clockwise order (a line repeats for self-loops).
  std::array<int, 3> vertex_lines(int v) const;

  /// Index of the line with this name, or -1.
  int find_line(std::string_view name) const;
  int find_half_edge(std::string_view name) const;
  int find_vertex(std::string_view name) const;

  /// Number of connected components (vertices joined by internal edges).
  int component_count() const;

  friend bool operator==(const RecouplingGraph&, const RecouplingGraph&) = default;

 private:
  std::vector<std::string> vertex_names_;
  std::vector<std::string> half_edge_names_;
  std::vector<Line> lines_;
  std::vector<int> line_of_;
  std::vector<int> legs_;
  std::vector<int> edges_;
};

/// Joins two legs into one internal edge running from leg_1 (tail) to
/// leg_2 (head). The new edge takes the half-edge slots of the removed legs,
/// so cyclic orders are unchanged. An empty new_name reuses leg_1's name.
RecouplingGraph glue_legs(const RecouplingGraph& g, std::string_view leg_1,
                          std::string_view leg_2, std::string_view new_name = {});

/// Flips the arrow of an internal edge.
RecouplingGraph reverse_edge(const RecouplingGraph& g, std::string_view edge);

/// Exchanges two slots in the cyclic order of one vertex.
RecouplingGraph transpose_slots(const RecouplingGraph& g, std::string_view vertex, int slot_1,
                                int slot_2);

/// Disjoint union; names must not clash.
RecouplingGraph disjoint_union(const RecouplingGraph& a, const RecouplingGraph& b);

/// Graph text format, see README.
RecouplingGraph parse_graph(std::string_view text);
std::string serialize_graph(const RecouplingGraph& g);

/// Built-in graphs. Embeddings and arrows are fixed so that the loop and
/// curve polynomials come out sign-exact against the classical generating
/// functions of the 3-j, 5-j, 6-j and 9-j symbols.
RecouplingGraph three_j();
RecouplingGraph five_j();
RecouplingGraph six_j();
RecouplingGraph nine_j();

/// Resolves `@3j`, `@5j`, `@6j`, `@9j`; returns false for unknown aliases.
bool standard_graph(std::string_view alias, RecouplingGraph& out);

/// Angular momenta per line and magnetic numbers per leg, both doubled.
/// Indexed by line index; twice_m is ignored on internal edges.
struct QuantumAssignment {
  std::vector<int> twice_j;
  std::vector<int> twice_m;

  static QuantumAssignment zeros(const RecouplingGraph& g);
  /// Throws std::invalid_argument on size mismatch, negative j or |m| > j.
  /// Parity is not checked here; it is a selection rule of the value.
  void validate(const RecouplingGraph& g) const;
};

}  // namespace loopgen
