#include "doctest.h"

#include "helpers.hpp"

using namespace bloch;

namespace {

constexpr unsigned long long kSeed = 12345;

const Face& face_with_normal(const NewtonPolytope& p, const std::vector<int>& eta) {
  for (const Face& f : p.faces())
    if (f.normal == eta) return f;
  throw error("no face with the requested normal");
}

}  // namespace

TEST_CASE("corner lower bounds") {
  CHECK(corner_lower_bound(testutil::load_fixture("chain.json")) == 2);
  CHECK(corner_lower_bound(testutil::load_fixture("diatomic_chain.json")) == 4);
  CHECK(corner_lower_bound(testutil::load_fixture("hexagonal.json")) == 8);
  CHECK(corner_lower_bound(testutil::load_fixture("singular_house.json")) == 8);
  CHECK(corner_lower_bound(testutil::load_fixture("hex_plus.json")) == 12);
}

TEST_CASE("orbit solution counting on vertical faces") {
  Pipeline pl(testutil::load_fixture("singular_house.json"));
  std::set<std::string> syms;
  pl.phi.collect_symbols(syms);
  auto params = draw_params(syms, 99);

  int edge_faces = 0, facet_faces = 0;
  for (const Face& f : pl.poly.faces()) {
    if (pl.poly.classify(f) != FaceClass::Vertical) continue;
    OrbitCount oc = count_orbit_solutions(pl.phi, pl.poly, f, params);
    REQUIRE_FALSE(oc.degenerate);
    if (f.dim == 1) {
      // edge orbit carries one simple critical point
      CHECK(oc.count == 1);
      ++edge_faces;
    } else {
      // facet orbits carry none for this graph
      CHECK(oc.count == 0);
      ++facet_faces;
    }
  }
  CHECK(edge_faces == 4);
  CHECK(facet_faces == 4);

  const Face& base = pl.poly.face(pl.poly.base_face_id());
  CHECK_THROWS_AS(count_orbit_solutions(pl.phi, pl.poly, base, params), error);
}

TEST_CASE("hexagonal bounds") {
  BoundsReport rep = compute_bounds(testutil::load_fixture("hexagonal.json"), kSeed);
  CHECK(rep.bound_valid);
  CHECK(rep.flags.empty());
  CHECK(rep.nvol == 12);
  CHECK(rep.ambient_index == 1);
  CHECK(rep.facet_only);
  CHECK(rep.n_vert == 0);
  CHECK(rep.n_disc == 0);
  CHECK(rep.vert.empty());
  CHECK(rep.disc.empty());
  CHECK(rep.cpdeg_upper == 12);
  CHECK(rep.corner_lower == 8);
  // no two-dimensional oblique face is asymptotically disconnected
  for (const FaceSummary& fs : rep.face_summaries) CHECK_FALSE(fs.disconnected);
}

TEST_CASE("singular house bounds use the orbit path") {
  BoundsReport rep = compute_bounds(testutil::load_fixture("singular_house.json"), kSeed, 10);
  CHECK(rep.bound_valid);
  CHECK(rep.flags.empty());
  CHECK(rep.nvol == 16);
  CHECK_FALSE(rep.facet_only);  // four vertical edges are not facets
  REQUIRE(rep.vert.size() == 8);
  Int edge_total = 0, facet_total = 0;
  for (const VertContribution& vc : rep.vert) {
    CHECK_FALSE(vc.facet_path);
    CHECK(vc.sat_index == 1);
    if (vc.dim == 1) {
      CHECK(vc.mu == 2);
      CHECK(vc.solutions == 1);
      edge_total += vc.contribution;
    } else {
      CHECK(vc.mu == 1);
      CHECK(vc.solutions == 0);
      facet_total += vc.contribution;
    }
  }
  CHECK(edge_total == 8);
  CHECK(facet_total == 0);
  CHECK(rep.n_vert == 8);
  CHECK(rep.n_disc == 0);
  CHECK(rep.cpdeg_upper == 8);
  CHECK(rep.corner_lower == 8);
}

TEST_CASE("hex plus bounds and refinement") {
  BoundsReport rep = compute_bounds(testutil::load_fixture("hex_plus.json"), kSeed, 10, true);
  CHECK(rep.bound_valid);
  CHECK(rep.flags.empty());
  CHECK(rep.nvol == 54);
  CHECK(rep.facet_only);
  REQUIRE(rep.vert.size() == 2);
  for (const VertContribution& vc : rep.vert) {
    CHECK(vc.facet_path);
    CHECK(vc.mu == 1);
    CHECK(vc.face_nvol == 4);
    CHECK(vc.contribution == 4);
  }
  CHECK(rep.n_vert == 8);
  REQUIRE(rep.disc.size() == 4);
  for (const DiscContribution& dc : rep.disc) {
    CHECK(dc.mu == 1);
    CHECK(dc.sat_index == 1);
    CHECK(dc.ma_sum == 1);
    CHECK(dc.contribution == 1);
  }
  CHECK(rep.n_disc == 4);
  CHECK(rep.cpdeg_upper == 42);
  CHECK(rep.corner_lower == 12);

  // refinement certifies the boundary multiplicities face by face
  CHECK(rep.refined);
  REQUIRE(rep.refinements.size() == 4);
  Pipeline pl(testutil::load_fixture("hex_plus.json"));
  std::map<std::vector<int>, Int> by_normal;
  for (const FaceRefinement& fr : rep.refinements) {
    CHECK(fr.applicable);
    REQUIRE(fr.points.size() == 1);
    CHECK(fr.points[0].certified);
    CHECK(fr.points[0].mult == fr.total);
    by_normal[pl.poly.face(fr.face_id).normal] = fr.total;
  }
  CHECK(by_normal[{-2, -1, -1}] == 1);
  CHECK(by_normal[{-1, 1, -1}] == 2);
  // reflected faces match their mirror images
  CHECK(by_normal[{2, 1, -1}] == 1);
  CHECK(by_normal[{1, -1, -1}] == 2);
  CHECK(rep.refined_disc == 6);
  CHECK(rep.cpdeg_upper_refined == 40);
}

TEST_CASE("facet path fixtures") {
  BoundsReport rep = compute_bounds(testutil::load_fixture("decoupled_pair.json"), kSeed);
  CHECK(rep.bound_valid);
  CHECK(rep.facet_only);
  CHECK(rep.nvol == 6);
  REQUIRE(rep.vert.size() == 2);
  for (const VertContribution& vc : rep.vert) {
    CHECK(vc.facet_path);
    CHECK(vc.contribution == 1);
  }
  CHECK(rep.n_vert == 2);
  CHECK(rep.cpdeg_upper == 4);

  BoundsReport chain = compute_bounds(testutil::load_fixture("chain.json"), kSeed);
  CHECK(chain.cpdeg_upper == 2);
  CHECK(chain.cpdeg_upper == chain.nvol);
  CHECK(chain.corner_lower == 2);

  BoundsReport diatomic = compute_bounds(testutil::load_fixture("diatomic_chain.json"), kSeed);
  CHECK(diatomic.cpdeg_upper == 4);
  CHECK(diatomic.n_vert == 0);
  CHECK(diatomic.n_disc == 0);
}

TEST_CASE("bounds are deterministic in the seed") {
  PeriodicGraph g = testutil::load_fixture("singular_house.json");
  BoundsReport a = compute_bounds(g, 777, 3);
  BoundsReport b = compute_bounds(g, 777, 3);
  CHECK(a.n_vert == b.n_vert);
  CHECK(a.cpdeg_upper == b.cpdeg_upper);
  REQUIRE(a.vert.size() == b.vert.size());
  for (size_t i = 0; i < a.vert.size(); ++i) {
    CHECK(a.vert[i].seed == b.vert[i].seed);
    CHECK(a.vert[i].solutions == b.vert[i].solutions);
  }
  // a single draw reaches the same stable count
  BoundsReport c = compute_bounds(g, 777, 1);
  CHECK(c.n_vert == a.n_vert);
}

TEST_CASE("face summaries carry the classification data") {
  BoundsReport rep = compute_bounds(testutil::load_fixture("hex_plus.json"), kSeed);
  Pipeline pl(testutil::load_fixture("hex_plus.json"));
  REQUIRE(rep.face_summaries.size() == pl.poly.faces().size());
  int disc = 0;
  for (const FaceSummary& fs : rep.face_summaries) {
    const Face& f = pl.poly.face(fs.id);
    CHECK(fs.dim == f.dim);
    CHECK(fs.normal == f.normal);
    CHECK(fs.cls == pl.poly.classify(f));
    CHECK(fs.nvol == pl.poly.normalized_volume(f));
    if (fs.disconnected) {
      ++disc;
      CHECK(fs.dim == 2);
      CHECK(fs.cls == FaceClass::Oblique);
      CHECK(fs.nonmonomial_components == 2);
      CHECK(fs.has_mu);
    }
  }
  CHECK(disc == 4);
  // the two displayed facets really are among the disconnected ones
  CHECK(face_with_normal(pl.poly, {-2, -1, -1}).dim == 2);
  CHECK(face_with_normal(pl.poly, {-1, 1, -1}).dim == 2);
}
