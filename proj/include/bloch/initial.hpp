#pragma once

#include "bloch/dispersion.hpp"
#include "bloch/polytope.hpp"

namespace bloch {

// Subgraph of the quotient graph spanned by the covers whose weight exponent
// minimizes the pairing with an exposing vector eta.
struct InitialGraph {
  std::vector<int> edges;      // kept quotient edge ids, sorted
  long long min_score = 0;     // minimal <eta, weight exponent>
  std::vector<int> cover_ids;  // minimal covers, as indices into cycle_covers
};

InitialGraph initial_graph(const QuotientGraph& q, const std::vector<int>& eta);

// Adjacency matrix of the initial graph. Entries where the initial graph has
// an edge carry the initial form of the full matrix entry, others are zero.
SymbolicMatrix initial_matrix(const QuotientGraph& q, const InitialGraph& ig);

// A vertex keeping both of its loops (lambda and potential) characterizes
// vertical faces; this is the loop side of that criterion.
bool detect_vertical_by_loops(const QuotientGraph& q, const InitialGraph& ig);

struct InitialComponent {
  std::vector<int> vertices;
  LaurentPoly factor;  // determinant of the block
  bool monomial;       // support is a single (z, lambda) exponent
  IMat polygon;        // factor support in face-lattice basis coordinates
};

struct InitialFactorization {
  std::vector<InitialComponent> components;
  LaurentPoly monomial_part;  // product over monomial components
  int nonmonomial_count = 0;
  bool asymptotically_disconnected = false;  // >= 2 non-monomial components
};

// Weak connectivity on the initial graph; the full initial form factors as
// monomial_part times the non-monomial component determinants.
InitialFactorization components_and_factor(const QuotientGraph& q, const InitialGraph& ig,
                                           const Sublattice& face_lattice);

std::string initial_graph_dot(const QuotientGraph& q, const InitialGraph& ig);

}  // namespace bloch
