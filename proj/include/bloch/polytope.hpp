#pragma once

#include "bloch/lattice.hpp"
#include "bloch/symbolic.hpp"

namespace bloch {

enum class FaceClass { Base, Vertical, Oblique, Whole };
std::string face_class_name(FaceClass c);

// A face of the Newton polytope, carried as the set of support points lying
// on it (not just the polytope vertices).
struct Face {
  int id = -1;
  int dim = 0;
  std::vector<int> points;         // indices into NewtonPolytope::points()
  std::vector<int> vertex_points;  // subset that are polytope vertices
  std::vector<int> normal;         // primitive exposing vector, minimizing; zero for the whole face
  IMat facet_normals;              // normals of all facets containing this face
};

// Exact convex hull and face lattice of a finite set of lattice points in
// dimension <= 4. Faces are exposed by minimizing inner normals. Works for
// polytopes that are not full dimensional in the ambient space; volumes are
// always normalized against the lattice induced on the affine span.
class NewtonPolytope {
 public:
  explicit NewtonPolytope(const std::vector<ExpVec>& support);

  int ambient_dim() const { return n_; }
  int dim() const { return dim_; }
  const std::vector<IVec>& points() const { return pts_; }
  const std::vector<int>& vertices() const { return verts_; }
  const std::vector<Face>& faces() const { return faces_; }
  const Face& whole() const { return faces_.back(); }
  const Face& face(int id) const { return faces_.at(id); }
  std::vector<int> facet_ids() const;
  int base_face_id() const;  // the face exposed by (0,...,0,1)

  bool is_vertical(const Face& f) const;
  FaceClass classify(const Face& f) const;

  Sublattice face_lattice_data(const Face& f) const;  // differences of f's points
  Sublattice ambient_lattice_data() const;            // ZA
  // [Z^n : ZA]; 0 when ZA has deficient rank.
  long long ambient_index() const;

  // dim! times euclidean volume measured in the saturated lattice of the
  // affine span. apex_choice rotates the triangulation apex (the value is
  // provably independent of it, which tests exercise).
  Int normalized_volume(const Face& f, int apex_choice = 0) const;
  Int nvol() const { return normalized_volume(whole()); }

  long long euler_sum() const;  // sum of (-1)^dim over all faces; always 1

 private:
  int n_ = 0, dim_ = 0;
  std::vector<IVec> pts_;
  std::vector<int> verts_;
  std::vector<Face> faces_;
};

// Lattice length of a 1-dimensional face: number of lattice points minus one.
long long lattice_length(const NewtonPolytope& p, const Face& f);

// Subdiagram volume mu_F: the normalized volume of the region of the cone
// spanned by the projected shifted support that is cut off by the convex hull
// of the nonzero projected monoid points. Requires codim(F) in {1,2,3} and a
// full-dimensional polytope.
Int subdiagram_volume(const NewtonPolytope& p, const Face& f);

// area(P+Q) - area(P) - area(Q) for lattice polygons given by their point
// sets (hulls are taken internally; degenerate inputs are fine).
Int mixed_area(const IMat& p, const IMat& q);

// Convex hull of 2d lattice points, counterclockwise, no three collinear
// output points. Exposed for tests and the mixed-area bilinearity checks.
IMat hull2d(IMat pts);
Int polygon_area2(const IMat& hull);  // twice the euclidean area

// OFF mesh of a 3-dimensional polytope in ambient dimension 3 (d = 2 input
// graphs). Faces are emitted with outward orientation.
std::string off_string(const NewtonPolytope& p);

}  // namespace bloch
