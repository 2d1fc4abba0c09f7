#pragma once

#include "bloch/initial.hpp"
#include "bloch/numeric.hpp"

namespace bloch {

struct FaceSummary {
  int id = -1;
  int dim = 0;
  FaceClass cls = FaceClass::Whole;
  std::vector<int> normal;
  Int nvol = 0;
  long long sat_index = 1;     // [Sat(F) : ZF]
  bool has_mu = false;         // subdiagram volume computed for this face
  Int mu = 0;
  bool disconnected = false;   // asymptotically disconnected (2-dim oblique)
  int nonmonomial_components = 0;
};

struct VertContribution {
  int face_id = -1;
  int dim = 0;
  Int mu = 0;
  long long sat_index = 1;
  bool facet_path = true;       // mu * nvol(F); otherwise mu * index * solutions
  Int face_nvol = 0;
  long long solutions = 0;
  unsigned long long seed = 0;  // first draw seed, orbit path only
  Int contribution = 0;
};

struct DiscContribution {
  int face_id = -1;
  Int mu = 0;
  long long sat_index = 1;
  Int ma_sum = 0;  // sum over factor pairs of mixed areas
  Int contribution = 0;
};

struct RefinePoint {
  Cplx p1, p2;
  int mult = 0;
  bool certified = false;
};

struct FaceRefinement {
  int face_id = -1;
  bool applicable = false;
  std::string note;
  std::vector<RefinePoint> points;
  Int total = 0;  // certified multiplicity sum, else the unrefined contribution
};

struct BoundsReport {
  int d = 1;
  Int nvol = 0;
  long long ambient_index = 1;
  bool facet_only = true;  // every vertical face is a facet
  Int n_vert = 0;
  Int n_disc = 0;
  Int cpdeg_upper = 0;   // nvol - ambient_index * (n_vert + n_disc)
  Int corner_lower = 0;  // 2^d * |W|
  bool bound_valid = true;
  std::vector<FaceSummary> face_summaries;
  std::vector<VertContribution> vert;
  std::vector<DiscContribution> disc;
  std::vector<std::string> flags;
  bool refined = false;
  Int refined_disc = 0;
  Int cpdeg_upper_refined = 0;
  std::vector<FaceRefinement> refinements;
};

struct OrbitCount {
  bool degenerate = true;
  long long count = 0;
};

// Solutions of the face-restricted critical point system on the orbit torus,
// in face-lattice coordinates, for vertical faces of dimension 1 or 2.
OrbitCount count_orbit_solutions(const LaurentPoly& phi, const NewtonPolytope& poly,
                                 const Face& f, const std::map<std::string, Rat>& params);

Int corner_lower_bound(const PeriodicGraph& g);

// The full certified pipeline: dispersion, polytope, face classification,
// subdiagram volumes, the two correction terms, and the resulting upper and
// lower bounds. draws controls how many independent parameter draws must
// agree on each orbit count.
BoundsReport compute_bounds(const PeriodicGraph& g, unsigned long long seed,
                            int draws = 10, bool refine = false);

}  // namespace bloch
