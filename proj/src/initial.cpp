#include "bloch/initial.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace bloch {

InitialGraph initial_graph(const QuotientGraph& q, const std::vector<int>& eta) {
  if ((int)eta.size() != q.d + 1) throw error("initial_graph: direction arity mismatch");
  auto covers = cycle_covers(q);
  if (covers.empty()) throw error("quotient graph has no cycle cover");
  std::vector<long long> score(covers.size());
  long long best = 0;
  for (size_t i = 0; i < covers.size(); ++i) {
    LaurentPoly w = cover_weight(q, covers[i]);
    score[i] = exp_dot(eta, w.support().front());
    if (i == 0 || score[i] < best) best = score[i];
  }
  InitialGraph ig;
  ig.min_score = best;
  std::set<int> kept;
  for (size_t i = 0; i < covers.size(); ++i)
    if (score[i] == best) {
      ig.cover_ids.push_back((int)i);
      for (int e : covers[i].edges) kept.insert(e);
    }
  ig.edges.assign(kept.begin(), kept.end());
  return ig;
}

SymbolicMatrix initial_matrix(const QuotientGraph& q, const InitialGraph& ig) {
  int n = (int)q.vertices.size();
  SymbolicMatrix m(n, q.d + 1);
  for (int e : ig.edges) {
    const QEdge& qe = q.edges[e];
    m.at(qe.to, qe.from) = m.at(qe.to, qe.from) + qedge_label(q, qe);
  }
  return m;
}

bool detect_vertical_by_loops(const QuotientGraph& q, const InitialGraph& ig) {
  int n = (int)q.vertices.size();
  std::vector<bool> lam(n, false), pot(n, false);
  for (int e : ig.edges) {
    const QEdge& qe = q.edges[e];
    if (qe.kind == LabelKind::Lambda) lam[qe.from] = true;
    if (qe.kind == LabelKind::Potential) pot[qe.from] = true;
  }
  for (int v = 0; v < n; ++v)
    if (lam[v] && pot[v]) return true;
  return false;
}

InitialFactorization components_and_factor(const QuotientGraph& q, const InitialGraph& ig,
                                           const Sublattice& face_lattice) {
  int n = (int)q.vertices.size();
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int e : ig.edges) {
    int a = find(q.edges[e].from), b = find(q.edges[e].to);
    if (a != b) parent[a] = b;
  }

  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < n; ++v) groups[find(v)].push_back(v);

  SymbolicMatrix full = initial_matrix(q, ig);
  InitialFactorization out;
  out.monomial_part = LaurentPoly::term(ExpVec(q.d + 1, 0), ParamPoly::one());
  for (auto& [_, vs] : groups) {
    InitialComponent comp;
    comp.vertices = vs;
    SymbolicMatrix block((int)vs.size(), q.d + 1);
    for (size_t i = 0; i < vs.size(); ++i)
      for (size_t j = 0; j < vs.size(); ++j) block.at((int)i, (int)j) = full.at(vs[i], vs[j]);
    comp.factor = leibniz_det(block);
    if (comp.factor.is_zero()) throw error("initial component with vanishing determinant");
    comp.monomial = comp.factor.num_terms() == 1;
    if (comp.monomial) {
      out.monomial_part = out.monomial_part * comp.factor;
    } else {
      ++out.nonmonomial_count;
      auto supp = comp.factor.support();
      IVec base(supp[0].begin(), supp[0].end());
      for (auto& e : supp) {
        IVec pt(e.begin(), e.end());
        comp.polygon.push_back(face_lattice.coords_in_basis(ivec_sub(pt, base)));
      }
    }
    out.components.push_back(std::move(comp));
  }
  out.asymptotically_disconnected = out.nonmonomial_count >= 2;
  return out;
}

std::string initial_graph_dot(const QuotientGraph& q, const InitialGraph& ig) {
  std::ostringstream os;
  os << "digraph initial_graph {\n";
  for (auto& v : q.vertices) os << "  \"" << v << "\";\n";
  for (int e : ig.edges) {
    const QEdge& qe = q.edges[e];
    os << "  \"" << q.vertices[qe.from] << "\" -> \"" << q.vertices[qe.to] << "\" [label=\""
       << qedge_label(q, qe).str() << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace bloch
