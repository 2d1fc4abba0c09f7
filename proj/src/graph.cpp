#include "bloch/graph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace bloch {

using nlohmann::json;
using nlohmann::ordered_json;

int PeriodicGraph::vertex_index(const std::string& name) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == name) return (int)i;
  return -1;
}

namespace {

std::tuple<int, int, std::vector<int>> edge_key(const Edge& e) {
  return {e.from, e.to, e.shift};
}

void canonicalize_edge(Edge& e) {
  Edge rev{e.to, e.from, e.shift, e.weight};
  for (auto& s : rev.shift) s = -s;
  if (edge_key(rev) < edge_key(e)) e = rev;
}

}  // namespace

PeriodicGraph parse_graph(const std::string& json_text) {
  json j = json::parse(json_text);  // parse_error carries line/column
  if (!j.is_object()) throw error("top-level document must be an object");

  PeriodicGraph g;
  if (!j.contains("d") || !j["d"].is_number_integer())
    throw error("field 'd' must be an integer");
  g.d = j["d"].get<int>();
  if (g.d < 1 || g.d > 3) throw error("d must be 1, 2 or 3");

  if (!j.contains("vertices") || !j["vertices"].is_array() || j["vertices"].empty())
    throw error("field 'vertices' must be a nonempty array");
  std::set<std::string> seen;
  for (auto& v : j["vertices"]) {
    if (!v.is_string() || v.get<std::string>().empty())
      throw error("vertex names must be nonempty strings");
    if (!seen.insert(v.get<std::string>()).second)
      throw error("duplicate vertex name '" + v.get<std::string>() + "'");
    g.vertices.push_back(v.get<std::string>());
  }

  g.potentials.resize(g.vertices.size());
  for (size_t i = 0; i < g.vertices.size(); ++i) g.potentials[i] = "V_" + g.vertices[i];
  if (j.contains("potentials")) {
    if (!j["potentials"].is_object()) throw error("field 'potentials' must be an object");
    for (auto& [name, sym] : j["potentials"].items()) {
      int vi = g.vertex_index(name);
      if (vi < 0) throw error("potentials entry for unknown vertex '" + name + "'");
      if (!sym.is_string() || sym.get<std::string>().empty())
        throw error("potential symbol for '" + name + "' must be a nonempty string");
      g.potentials[vi] = sym.get<std::string>();
    }
  }

  if (!j.contains("edges") || !j["edges"].is_array())
    throw error("field 'edges' must be an array");
  int idx = 0;
  for (auto& je : j["edges"]) {
    std::string where = "edge " + std::to_string(idx++);
    if (!je.is_object()) throw error(where + ": must be an object");
    for (const char* k : {"from", "to", "shift", "weight"})
      if (!je.contains(k)) throw error(where + ": missing field '" + k + "'");
    Edge e;
    e.from = g.vertex_index(je["from"].get<std::string>());
    e.to = g.vertex_index(je["to"].get<std::string>());
    if (e.from < 0) throw error(where + ": unknown vertex '" + je["from"].get<std::string>() + "'");
    if (e.to < 0) throw error(where + ": unknown vertex '" + je["to"].get<std::string>() + "'");
    if (!je["shift"].is_array() || (int)je["shift"].size() != g.d)
      throw error(where + ": shift must be an array of length d");
    for (auto& s : je["shift"]) {
      if (!s.is_number_integer()) throw error(where + ": shift entries must be integers");
      e.shift.push_back(s.get<int>());
    }
    if (!je["weight"].is_string() || je["weight"].get<std::string>().empty())
      throw error(where + ": weight must be a nonempty string");
    e.weight = je["weight"].get<std::string>();
    bool zero = std::all_of(e.shift.begin(), e.shift.end(), [](int s) { return s == 0; });
    if (e.from == e.to && zero) throw error(where + ": self loop with zero shift");
    canonicalize_edge(e);
    g.edges.push_back(e);
  }

  std::stable_sort(g.edges.begin(), g.edges.end(),
                   [](const Edge& a, const Edge& b) { return edge_key(a) < edge_key(b); });
  for (size_t i = 1; i < g.edges.size(); ++i)
    if (edge_key(g.edges[i - 1]) == edge_key(g.edges[i]))
      throw error("duplicate edge between '" + g.vertices[g.edges[i].from] + "' and '" +
                  g.vertices[g.edges[i].to] + "'");

  std::set<std::string> symbols(g.potentials.begin(), g.potentials.end());
  if (symbols.size() != g.potentials.size()) throw error("duplicate potential symbol");
  for (auto& e : g.edges)
    if (!symbols.insert(e.weight).second)
      throw error("parameter symbol '" + e.weight + "' used more than once");
  return g;
}

PeriodicGraph parse_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open input file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

std::string graph_json(const PeriodicGraph& g) {
  ordered_json j;
  j["d"] = g.d;
  j["vertices"] = g.vertices;
  j["edges"] = ordered_json::array();
  for (auto& e : g.edges) {
    ordered_json je;
    je["from"] = g.vertices[e.from];
    je["to"] = g.vertices[e.to];
    je["shift"] = e.shift;
    je["weight"] = e.weight;
    j["edges"].push_back(je);
  }
  j["potentials"] = ordered_json::object();
  for (size_t i = 0; i < g.vertices.size(); ++i) j["potentials"][g.vertices[i]] = g.potentials[i];
  return j.dump();
}

QuotientGraph build_quotient_graph(const PeriodicGraph& g) {
  QuotientGraph q;
  q.d = g.d;
  q.vertices = g.vertices;
  q.potentials = g.potentials;
  for (int v = 0; v < (int)g.vertices.size(); ++v) {
    q.edges.push_back({v, v, LabelKind::Lambda, -1, {}, ""});
    q.edges.push_back({v, v, LabelKind::Potential, -1, {}, g.potentials[v]});
  }
  std::vector<QEdge> hops;
  for (int k = 0; k < (int)g.edges.size(); ++k) {
    const Edge& e = g.edges[k];
    // e.from is adjacent to shift + e.to, so matrix entry (from, to) picks up
    // w*z^shift: a directed edge from e.to into e.from. The reverse direction
    // carries z^-shift.
    hops.push_back({e.to, e.from, LabelKind::Hop, k, e.shift, e.weight});
    std::vector<int> neg = e.shift;
    for (auto& s : neg) s = -s;
    hops.push_back({e.from, e.to, LabelKind::Hop, k, neg, e.weight});
  }
  std::stable_sort(hops.begin(), hops.end(), [](const QEdge& a, const QEdge& b) {
    return std::tie(a.from, a.to, a.shift) < std::tie(b.from, b.to, b.shift);
  });
  q.edges.insert(q.edges.end(), hops.begin(), hops.end());
  return q;
}

LaurentPoly qedge_label(const QuotientGraph& q, const QEdge& e) {
  int nvars = q.d + 1;
  ExpVec ex(nvars, 0);
  switch (e.kind) {
    case LabelKind::Lambda:
      ex[nvars - 1] = 1;
      return LaurentPoly::term(ex, ParamPoly::one());
    case LabelKind::Potential:
      return LaurentPoly::term(ex, -ParamPoly::symbol(e.symbol));
    case LabelKind::Hop:
      for (int i = 0; i < q.d; ++i) ex[i] = e.shift[i];
      return LaurentPoly::term(ex, ParamPoly::symbol(e.symbol));
  }
  throw error("unreachable label kind");
}

SymbolicMatrix adjacency_matrix(const QuotientGraph& q) {
  int n = (int)q.vertices.size();
  SymbolicMatrix m(n, q.d + 1);
  for (auto& e : q.edges) m.at(e.to, e.from) = m.at(e.to, e.from) + qedge_label(q, e);
  return m;
}

}  // namespace bloch
