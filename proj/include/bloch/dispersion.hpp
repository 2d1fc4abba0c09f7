#pragma once

#include <Eigen/Dense>

#include "bloch/graph.hpp"

namespace bloch {

// A directed cycle cover of the quotient graph: for every row i a directed
// edge from perm[i] to i, the perm forming a permutation of the vertices.
struct CycleCover {
  std::vector<int> perm;   // perm[i] = source vertex feeding row i
  std::vector<int> edges;  // quotient edge index used in row i
  int sign = 1;            // sign of perm
};

std::vector<CycleCover> cycle_covers(const QuotientGraph& q);

// Product of the labels of the cover's edges: a single Laurent term (the
// permutation sign is not included here).
LaurentPoly cover_weight(const QuotientGraph& q, const CycleCover& c);

// Sum over covers of sign * weight. Agrees exactly with leibniz_det of the
// adjacency matrix; the cover route is the production path.
LaurentPoly dispersion_polynomial(const QuotientGraph& q);

// {Phi, z_1 dPhi/dz_1, ..., z_d dPhi/dz_d}
std::vector<LaurentPoly> critical_point_system(const LaurentPoly& phi);

// H(z) with numeric parameters; z entries must be nonzero. Hermitian on the
// unit torus when parameters are real.
Eigen::MatrixXcd floquet_matrix_numeric(const PeriodicGraph& g,
                                        const std::map<std::string, Rat>& params,
                                        const std::vector<Cplx>& z);

}  // namespace bloch
