#include "doctest.h"

#include "helpers.hpp"

using namespace bloch;

namespace {

IMat mat_mul(const IMat& a, const IMat& b) {
  IMat r(a.size(), IVec(b[0].size(), 0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k)
      for (size_t j = 0; j < b[0].size(); ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

NewtonPolytope fixture_polytope(const std::string& name) {
  PeriodicGraph g = testutil::load_fixture(name);
  return NewtonPolytope(dispersion_polynomial(build_quotient_graph(g)).support());
}

// Face made of exactly the given points, by coordinates.
const Face& find_face(const NewtonPolytope& p, std::vector<IVec> want) {
  std::sort(want.begin(), want.end());
  for (const Face& f : p.faces()) {
    std::vector<IVec> got;
    for (int i : f.points) got.push_back(p.points()[i]);
    std::sort(got.begin(), got.end());
    if (got == want) return f;
  }
  throw error("no face with the requested point set");
}

}  // namespace

TEST_CASE("integer vector helpers") {
  CHECK(ivec_dot({1, 2, 3}, {4, 5, 6}) == 32);
  CHECK(ivec_sub({4, 5}, {1, 7}) == IVec{3, -2});
  CHECK(ivec_add({1, 1}, {2, 3}) == IVec{3, 4});
  CHECK(ivec_scale({2, -1}, -3) == IVec{-6, 3});
  CHECK(ivec_gcd({6, -9, 0}) == 3);
  CHECK(ivec_gcd({0, 0}) == 0);
  CHECK(primitive({6, -9, 0}) == IVec{2, -3, 0});
  CHECK(primitive({0, 0}) == IVec{0, 0});
  CHECK(imat_apply(imat_identity(2), {5, 7}) == IVec{5, 7});
}

TEST_CASE("smith normal form invariants") {
  std::vector<IMat> samples = {
      {{2, 0}, {0, 2}},
      {{2, 4}, {6, 8}},
      {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}},
      {{0, 0}, {0, 0}},
      {{3, 1}, {1, 3}},
  };
  for (const IMat& a : samples) {
    SmithResult s = smith_normal_form(a);
    CHECK(mat_mul(mat_mul(s.u, a), s.v) == s.d);
    CHECK(mat_mul(s.uinv, s.u) == imat_identity((int)a.size()));
    int n = (int)std::min(s.d.size(), s.d[0].size());
    for (int i = 0; i < n; ++i) {
      CHECK(s.d[i][i] >= 0);
      for (size_t j = 0; j < s.d[i].size(); ++j)
        if ((int)j != i) CHECK(s.d[i][j] == 0);
      if (i + 1 < n && s.d[i][i] != 0 && s.d[i + 1][i + 1] != 0)
        CHECK(s.d[i + 1][i + 1] % s.d[i][i] == 0);
    }
    int rank_by_diag = 0;
    for (int i = 0; i < n; ++i) rank_by_diag += s.d[i][i] != 0;
    CHECK(s.rank == rank_by_diag);
  }
  CHECK(smith_normal_form({{2, 4}, {6, 8}}).d[1][1] == 4);  // det 8 = 2 * 4
}

TEST_CASE("sublattice saturation and index") {
  SUBCASE("full rank with index") {
    Sublattice l = Sublattice::from_generators({{2, 0}, {0, 2}}, 2);
    CHECK(l.rank() == 2);
    CHECK(l.sat_index() == 4);
    CHECK(l.contains({2, 2}));
    CHECK_FALSE(l.contains({1, 0}));
    CHECK(l.sat_contains({1, 0}));
    CHECK(l.projection().empty());
  }
  SUBCASE("rank one saturation") {
    Sublattice l = Sublattice::from_generators({{2, 4}}, 2);
    CHECK(l.rank() == 1);
    CHECK(l.sat_index() == 2);
    CHECK(l.sat_contains({1, 2}));
    CHECK_FALSE(l.contains({1, 2}));
    CHECK(l.coords_in_basis({2, 4}) == IVec{1});
    CHECK(l.coords_in_sat({2, 4}) == IVec{2});
    CHECK(l.from_sat_coords(l.coords_in_sat({4, 8})) == IVec{4, 8});
    CHECK_THROWS_AS(l.coords_in_basis({1, 2}), error);
    // projection kernel is exactly the saturation
    REQUIRE(l.projection().size() == 1);
    CHECK(ivec_dot(l.projection()[0], {1, 2}) == 0);
    CHECK(ivec_dot(l.projection()[0], {0, 1}) != 0);
    // integer section: projection of section is the identity
    REQUIRE(l.section().size() == 1);
    CHECK(ivec_dot(l.projection()[0], l.section()[0]) == 1);
  }
  SUBCASE("zero lattice") {
    Sublattice l = Sublattice::from_generators({}, 3);
    CHECK(l.rank() == 0);
    CHECK(l.sat_index() == 1);
    CHECK(l.projection().size() == 3);
  }
}

TEST_CASE("hexagonal polytope shape") {
  NewtonPolytope p = fixture_polytope("hexagonal.json");
  CHECK(p.ambient_dim() == 3);
  CHECK(p.dim() == 3);
  CHECK(p.points().size() == 9);
  CHECK(p.vertices().size() == 7);
  CHECK(p.nvol() == 12);
  CHECK(p.ambient_index() == 1);
  CHECK(p.euler_sum() == 1);
  int vertical = 0;
  for (const Face& f : p.faces()) vertical += p.classify(f) == FaceClass::Vertical;
  CHECK(vertical == 0);
  const Face& base = p.face(p.base_face_id());
  CHECK(p.classify(base) == FaceClass::Base);
  CHECK(base.dim == 2);
  CHECK(base.normal == std::vector<int>{0, 0, 1});
  CHECK(p.normalized_volume(base) == 6);
  CHECK(p.classify(p.whole()) == FaceClass::Whole);
}

TEST_CASE("singular house polytope shape") {
  NewtonPolytope p = fixture_polytope("singular_house.json");
  CHECK(p.nvol() == 16);
  CHECK(p.ambient_index() == 1);
  int vfacets = 0, vedges = 0;
  for (const Face& f : p.faces()) {
    if (p.classify(f) != FaceClass::Vertical) continue;
    if (f.dim == 2) {
      ++vfacets;
      CHECK(p.normalized_volume(f) == 2);
      CHECK(subdiagram_volume(p, f) == 1);
    } else {
      REQUIRE(f.dim == 1);
      ++vedges;
      CHECK(lattice_length(p, f) == 1);
      CHECK(subdiagram_volume(p, f) == 2);
    }
  }
  CHECK(vfacets == 4);
  CHECK(vedges == 4);
}

TEST_CASE("hex plus polytope shape") {
  NewtonPolytope p = fixture_polytope("hex_plus.json");
  CHECK(p.nvol() == 54);
  int vfacets = 0;
  for (const Face& f : p.faces())
    if (p.classify(f) == FaceClass::Vertical) {
      CHECK(f.dim == 2);
      CHECK(p.normalized_volume(f) == 4);
      ++vfacets;
    }
  CHECK(vfacets == 2);
}

TEST_CASE("one dimensional fixtures") {
  CHECK(fixture_polytope("chain.json").nvol() == 2);
  CHECK(fixture_polytope("diatomic_chain.json").nvol() == 4);
  CHECK(fixture_polytope("decoupled_pair.json").nvol() == 6);
}

TEST_CASE("normalized volume is apex independent") {
  NewtonPolytope p = fixture_polytope("singular_house.json");
  Int v0 = p.normalized_volume(p.whole(), 0);
  for (int apex = 1; apex < 5; ++apex) CHECK(p.normalized_volume(p.whole(), apex) == v0);
}

TEST_CASE("degenerate and low dimensional supports") {
  NewtonPolytope pt({{2, 3}});
  CHECK(pt.dim() == 0);
  CHECK(pt.nvol() == 1);
  CHECK(pt.euler_sum() == 1);

  NewtonPolytope seg({{0, 0}, {2, 0}, {1, 0}});
  CHECK(seg.dim() == 1);
  CHECK(seg.nvol() == 2);
  CHECK(seg.vertices().size() == 2);
  CHECK(lattice_length(seg, seg.whole()) == 2);
  for (const Face& f : seg.faces())
    if (f.dim == 0) CHECK_THROWS_AS(lattice_length(seg, f), error);
}

TEST_CASE("hull and areas") {
  IMat square{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}};
  IMat h = hull2d(square);
  CHECK(h.size() == 4);
  CHECK(polygon_area2(h) == 2);
  // collinear points collapse
  CHECK(hull2d({{0, 0}, {1, 1}, {2, 2}}).size() == 2);
  CHECK(polygon_area2(hull2d({{0, 0}, {1, 1}, {2, 2}})) == 0);
}

TEST_CASE("mixed area golden value") {
  IMat p{{0, 0}, {1, 0}, {2, 3}, {0, 1}};
  IMat q{{0, 0}, {1, 3}, {0, 3}};
  CHECK(mixed_area(p, q) == 6);
  CHECK(mixed_area(q, p) == 6);
  // a point adds nothing
  CHECK(mixed_area(p, {{5, 5}}) == 0);
  // unit square against itself: area(2P) - 2 area(P) = 4 - 2 = 2... doubled
  IMat sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(mixed_area(sq, sq) == 2);
}

TEST_CASE("subdiagram volume fixtures") {
  SUBCASE("pinched planar cone") {
    NewtonPolytope p({{0, 0}, {1, 0}, {2, 1}, {3, 2}, {2, -1}, {3, -2}});
    const Face& v = find_face(p, {{0, 0}});
    CHECK(v.dim == 0);
    CHECK(subdiagram_volume(p, v) == 4);
  }
  SUBCASE("quadratic cone") {
    NewtonPolytope p({{0, 0}, {1, 1}, {1, 0}, {1, -1}});
    const Face& v = find_face(p, {{0, 0}});
    CHECK(subdiagram_volume(p, v) == 2);
  }
  SUBCASE("smooth vertex") {
    NewtonPolytope p({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    const Face& v = find_face(p, {{0, 0}});
    CHECK(subdiagram_volume(p, v) == 1);
  }
}

TEST_CASE("off mesh output") {
  NewtonPolytope p = fixture_polytope("hexagonal.json");
  std::string off = off_string(p);
  CHECK(off.substr(0, 4) == "OFF\n");
  CHECK(off.substr(4, 2) == "7 ");
  NewtonPolytope low = fixture_polytope("chain.json");
  CHECK_THROWS_AS(off_string(low), error);
}
