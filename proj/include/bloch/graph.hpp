#pragma once

#include "bloch/symbolic.hpp"

namespace bloch {

// One translation orbit of edges: endpoint vertex indices plus the cell shift.
// Stored canonically oriented so (from, to, shift) is lexicographically
// minimal among the pair {(u,v,s), (v,u,-s)}.
struct Edge {
  int from, to;
  std::vector<int> shift;
  std::string weight;
};

struct PeriodicGraph {
  int d = 1;
  std::vector<std::string> vertices;
  std::vector<std::string> potentials;  // per vertex, defaults to V_<name>
  std::vector<Edge> edges;              // canonical order

  int vertex_index(const std::string& name) const;
};

// Parses and validates the input document. Rejects: d outside 1..3, duplicate
// or empty vertex names, unknown endpoints, shift arity mismatches, zero-shift
// self loops, duplicate edges (same unordered pair and shift), and parameter
// symbols used twice. nlohmann parse errors (with line/column) pass through.
PeriodicGraph parse_graph(const std::string& json_text);
PeriodicGraph parse_graph_file(const std::string& path);

// Canonical re-serialization of the parsed graph, used to echo the input in
// reports and to make golden tests independent of input formatting.
std::string graph_json(const PeriodicGraph& g);

enum class LabelKind { Lambda, Potential, Hop };

// Directed edge of the quotient multigraph. A directed edge from u to v
// contributes its label to matrix entry (v, u).
struct QEdge {
  int from, to;
  LabelKind kind;
  int graph_edge = -1;     // index into PeriodicGraph::edges for hops
  std::vector<int> shift;  // momentum exponent of a hop, length d
  std::string symbol;      // weight or potential symbol, empty for lambda loops
};

struct QuotientGraph {
  int d;
  std::vector<std::string> vertices;
  std::vector<std::string> potentials;
  // Per vertex a lambda loop and a potential loop, then all hops sorted by
  // (from, to, shift). Every periodic-graph edge spawns two directed hops.
  std::vector<QEdge> edges;
};

QuotientGraph build_quotient_graph(const PeriodicGraph& g);

// The label as a Laurent polynomial in d+1 variables: lambda for lambda
// loops, -V for potential loops, w*z^shift for hops.
LaurentPoly qedge_label(const QuotientGraph& q, const QEdge& e);

// lambda*I - H(z) entrywise: entry (v, u) is the sum of labels of directed
// edges from u to v.
SymbolicMatrix adjacency_matrix(const QuotientGraph& q);

}  // namespace bloch
