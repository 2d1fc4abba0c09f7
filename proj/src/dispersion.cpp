#include "bloch/dispersion.hpp"

#include <algorithm>

namespace bloch {

std::vector<CycleCover> cycle_covers(const QuotientGraph& q) {
  int n = (int)q.vertices.size();
  // entry_edges[i][j]: quotient edges from j to i (matrix position (i, j))
  std::vector<std::vector<std::vector<int>>> entry_edges(
      n, std::vector<std::vector<int>>(n));
  for (int e = 0; e < (int)q.edges.size(); ++e)
    entry_edges[q.edges[e].to][q.edges[e].from].push_back(e);

  std::vector<CycleCover> out;
  std::vector<int> perm(n, -1), chosen(n, -1);
  std::vector<bool> used(n, false);
  auto sign_of = [&](const std::vector<int>& p) {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
  };
  // Row by row pick a source column and one of its parallel edges.
  auto rec = [&](auto&& self, int row) -> void {
    if (row == n) {
      out.push_back({perm, chosen, sign_of(perm)});
      return;
    }
    for (int col = 0; col < n; ++col) {
      if (used[col] || entry_edges[row][col].empty()) continue;
      used[col] = true;
      perm[row] = col;
      for (int e : entry_edges[row][col]) {
        chosen[row] = e;
        self(self, row + 1);
      }
      used[col] = false;
    }
  };
  rec(rec, 0);
  return out;
}

LaurentPoly cover_weight(const QuotientGraph& q, const CycleCover& c) {
  LaurentPoly w = LaurentPoly::term(ExpVec(q.d + 1, 0), ParamPoly::one());
  for (int e : c.edges) w = w * qedge_label(q, q.edges[e]);
  return w;
}

LaurentPoly dispersion_polynomial(const QuotientGraph& q) {
  LaurentPoly phi(q.d + 1);
  for (auto& c : cycle_covers(q)) {
    LaurentPoly w = cover_weight(q, c);
    phi = (c.sign > 0) ? phi + w : phi - w;
  }
  return phi;
}

std::vector<LaurentPoly> critical_point_system(const LaurentPoly& phi) {
  std::vector<LaurentPoly> sys{phi};
  for (int i = 0; i + 1 < phi.nvars(); ++i) sys.push_back(phi.log_derivative(i));
  return sys;
}

Eigen::MatrixXcd floquet_matrix_numeric(const PeriodicGraph& g,
                                        const std::map<std::string, Rat>& params,
                                        const std::vector<Cplx>& z) {
  if ((int)z.size() != g.d) throw error("floquet matrix needs d momentum values");
  int n = (int)g.vertices.size();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (int v = 0; v < n; ++v) {
    auto it = params.find(g.potentials[v]);
    if (it == params.end()) throw error("unknown parameter symbol '" + g.potentials[v] + "'");
    h(v, v) += Cplx(it->second.get_d(), 0.0);
  }
  for (auto& e : g.edges) {
    auto it = params.find(e.weight);
    if (it == params.end()) throw error("unknown parameter symbol '" + e.weight + "'");
    Cplx w(it->second.get_d(), 0.0);
    Cplx zs{1.0, 0.0};
    for (int i = 0; i < g.d; ++i) zs *= cpow(z[i], e.shift[i]);
    // edge (from, to, s): from is adjacent to s + to
    h(e.from, e.to) -= w * zs;
    h(e.to, e.from) -= w / zs;
  }
  return h;
}

}  // namespace bloch
