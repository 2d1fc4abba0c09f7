#include "bloch/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace bloch {

std::string face_class_name(FaceClass c) {
  switch (c) {
    case FaceClass::Base: return "base";
    case FaceClass::Vertical: return "vertical";
    case FaceClass::Oblique: return "oblique";
    case FaceClass::Whole: return "whole";
  }
  return "?";
}

namespace {

long long det_ll(IMat m) {
  int n = (int)m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  long long det = 0;
  for (int j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    IMat minor;
    for (int i = 1; i < n; ++i) {
      IVec row;
      for (int k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    long long c = m[0][j] * det_ll(minor);
    det += (j % 2) ? -c : c;
  }
  return det;
}

// Integer vector orthogonal to the span of the given rows in Z^k (the rows
// must have rank k-1). Components are signed cofactors.
IVec cross_normal(const IMat& rows, int k) {
  IVec nrm(k, 0);
  for (int drop = 0; drop < k; ++drop) {
    IMat minor;
    for (auto& r : rows) {
      IVec mr;
      for (int c = 0; c < k; ++c)
        if (c != drop) mr.push_back(r[c]);
      minor.push_back(mr);
    }
    long long d = minor.empty() ? 1 : det_ll(minor);
    nrm[drop] = (drop % 2) ? -d : d;
  }
  return nrm;
}

// Points of a full-dimensional configuration in their affine span's
// saturated lattice coordinates.
struct Frame {
  IVec base;
  Sublattice lat;
  int dim = 0;
  std::vector<IVec> coords;
};

Frame make_frame(const std::vector<IVec>& pts) {
  Frame f;
  f.base = pts[0];
  IMat diffs;
  for (auto& p : pts) diffs.push_back(ivec_sub(p, f.base));
  f.lat = Sublattice::from_generators(diffs, (int)f.base.size());
  f.dim = f.lat.rank();
  for (auto& p : pts) f.coords.push_back(f.lat.coords_in_sat(ivec_sub(p, f.base)));
  return f;
}

struct HullFacet {
  IVec normal;  // primitive, inward (face minimizes)
  long long offset = 0;
  std::vector<int> pts;
};

// Facets of the convex hull of a full-dimensional point set in Z^k via
// candidate hyperplanes spanned by k-subsets. Desk-scale exact; guarded.
std::vector<HullFacet> hull_facets_fulldim(const std::vector<IVec>& pts, int k) {
  int n = (int)pts.size();
  if (k == 0) throw error("hull of a zero-dimensional configuration");
  double combos = 1;
  for (int i = 0; i < k; ++i) combos *= (double)(n - i) / (i + 1);
  if (n > 200 || combos > 2e6) throw error("support too large for exact hull");

  std::map<IVec, HullFacet> found;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  auto consider = [&](IVec nrm) {
    nrm = primitive(std::move(nrm));
    if (ivec_gcd(nrm) == 0 || found.count(nrm)) return;
    long long m = ivec_dot(nrm, pts[0]);
    for (auto& p : pts) m = std::min(m, ivec_dot(nrm, p));
    HullFacet f;
    f.normal = nrm;
    f.offset = m;
    for (int i = 0; i < n; ++i)
      if (ivec_dot(nrm, pts[i]) == m) f.pts.push_back(i);
    // A genuine facet's points span the hyperplane.
    IMat diffs;
    for (auto& i : f.pts) diffs.push_back(ivec_sub(pts[i], pts[f.pts[0]]));
    if (lattice_rank(diffs) == k - 1) found.emplace(f.normal, std::move(f));
  };
  for (;;) {
    IMat diffs;
    for (int i = 1; i < k; ++i) diffs.push_back(ivec_sub(pts[idx[i]], pts[idx[0]]));
    IVec nrm = cross_normal(diffs, k);
    if (ivec_gcd(nrm) != 0) {
      consider(nrm);
      IVec neg = nrm;
      for (auto& v : neg) v = -v;
      consider(neg);
    }
    // next k-combination
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  std::vector<HullFacet> out;
  for (auto& [_, f] : found) out.push_back(f);
  return out;
}

// Recursive boundary-fan triangulation. cpts must be full dimensional in
// Z^m; simplices come back as index tuples into cpts.
void triangulate_rec(const std::vector<IVec>& cpts, int m, int apex_choice,
                     std::vector<std::vector<int>>& out) {
  if (m == 0) {
    out.push_back({0});
    return;
  }
  auto facets = hull_facets_fulldim(cpts, m);
  // Hull vertices: points whose containing-facet normals span R^m.
  std::vector<int> verts;
  for (int i = 0; i < (int)cpts.size(); ++i) {
    IMat nrms;
    for (auto& f : facets)
      if (std::find(f.pts.begin(), f.pts.end(), i) != f.pts.end()) nrms.push_back(f.normal);
    if (!nrms.empty() && lattice_rank(nrms) == m) verts.push_back(i);
  }
  std::sort(verts.begin(), verts.end(),
            [&](int a, int b) { return cpts[a] < cpts[b]; });
  int apex = verts[apex_choice % verts.size()];
  for (auto& f : facets) {
    if (std::find(f.pts.begin(), f.pts.end(), apex) != f.pts.end()) continue;
    std::vector<IVec> sub;
    for (int i : f.pts) sub.push_back(cpts[i]);
    Frame sf = make_frame(sub);
    std::vector<std::vector<int>> subsimps;
    triangulate_rec(sf.coords, sf.dim, 0, subsimps);
    for (auto& s : subsimps) {
      std::vector<int> simp{apex};
      for (int i : s) simp.push_back(f.pts[i]);
      out.push_back(simp);
    }
  }
}

Int nvol_points(const std::vector<IVec>& raw, int apex_choice = 0) {
  std::set<IVec> dd(raw.begin(), raw.end());
  std::vector<IVec> pts(dd.begin(), dd.end());
  Frame fr = make_frame(pts);
  if (fr.dim == 0) return 1;
  std::vector<std::vector<int>> simps;
  triangulate_rec(fr.coords, fr.dim, apex_choice, simps);
  Int total = 0;
  for (auto& s : simps) {
    IMat edges;
    for (size_t i = 1; i < s.size(); ++i)
      edges.push_back(ivec_sub(fr.coords[s[i]], fr.coords[s[0]]));
    Int d = (long)det_ll(edges);
    total += abs(d);
  }
  return total;
}

}  // namespace

NewtonPolytope::NewtonPolytope(const std::vector<ExpVec>& support) {
  if (support.empty()) throw error("polytope needs at least one point");
  n_ = (int)support[0].size();
  std::set<IVec> dd;
  for (auto& e : support) {
    if ((int)e.size() != n_) throw error("support point arity mismatch");
    dd.insert(IVec(e.begin(), e.end()));
  }
  pts_.assign(dd.begin(), dd.end());

  Frame fr = make_frame(pts_);
  dim_ = fr.dim;

  std::set<std::vector<int>> sets;
  std::vector<HullFacet> facets;
  if (dim_ > 0) {
    facets = hull_facets_fulldim(fr.coords, dim_);
    // Lift facet normals from frame coordinates back to the ambient lattice.
    IMat coord_rows = fr.lat.sat_coord_rows();
    for (auto& f : facets) {
      IVec lifted(n_, 0);
      for (int i = 0; i < dim_; ++i)
        for (int kk = 0; kk < n_; ++kk) lifted[kk] += f.normal[i] * coord_rows[i][kk];
      f.normal = primitive(lifted);
      f.offset = ivec_dot(f.normal, pts_[f.pts[0]]);
      sets.insert(f.pts);
    }
    // Close the facet point sets under intersection to get every face.
    for (;;) {
      std::set<std::vector<int>> fresh;
      for (auto& a : sets)
        for (auto& b : sets) {
          std::vector<int> c;
          std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c));
          if (!c.empty() && !sets.count(c)) fresh.insert(c);
        }
      if (fresh.empty()) break;
      sets.insert(fresh.begin(), fresh.end());
    }
  }
  std::vector<int> all(pts_.size());
  std::iota(all.begin(), all.end(), 0);
  sets.insert(all);

  for (auto& s : sets) {
    Face f;
    f.points = s;
    IMat diffs;
    for (int i : s) diffs.push_back(ivec_sub(pts_[i], pts_[s[0]]));
    f.dim = s.size() == 1 ? 0 : lattice_rank(diffs);
    if (s != all) {
      IVec sum(n_, 0);
      for (auto& hf : facets)
        if (std::includes(hf.pts.begin(), hf.pts.end(), s.begin(), s.end())) {
          f.facet_normals.push_back(hf.normal);
          sum = ivec_add(sum, hf.normal);
        }
      IVec nrm = primitive(sum);
      f.normal.assign(nrm.begin(), nrm.end());
    } else {
      f.normal.assign(n_, 0);
    }
    faces_.push_back(std::move(f));
  }
  std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.points < b.points;
  });
  for (int i = 0; i < (int)faces_.size(); ++i) faces_[i].id = i;

  for (auto& f : faces_)
    if (f.dim == 0 && (int)f.points.size() == 1 && f.points != all) verts_.push_back(f.points[0]);
  if (dim_ == 0) verts_.push_back(0);
  std::sort(verts_.begin(), verts_.end());
  for (auto& f : faces_) {
    std::set_intersection(f.points.begin(), f.points.end(), verts_.begin(), verts_.end(),
                          std::back_inserter(f.vertex_points));
  }
}

std::vector<int> NewtonPolytope::facet_ids() const {
  std::vector<int> out;
  for (auto& f : faces_)
    if (f.dim == dim_ - 1) out.push_back(f.id);
  return out;
}

int NewtonPolytope::base_face_id() const {
  IVec elam(n_, 0);
  elam[n_ - 1] = 1;
  long long m = ivec_dot(elam, pts_[0]);
  for (auto& p : pts_) m = std::min(m, ivec_dot(elam, p));
  std::vector<int> s;
  for (int i = 0; i < (int)pts_.size(); ++i)
    if (pts_[i][n_ - 1] == m) s.push_back(i);
  for (auto& f : faces_)
    if (f.points == s) return f.id;
  throw error("base face is not a face (support not a polytope face set)");
}

bool NewtonPolytope::is_vertical(const Face& f) const {
  if (f.dim == 0) return false;
  IVec elam(n_, 0);
  elam[n_ - 1] = 1;
  return face_lattice_data(f).sat_contains(elam);
}

FaceClass NewtonPolytope::classify(const Face& f) const {
  if ((int)f.points.size() == (int)pts_.size()) return FaceClass::Whole;
  if (f.id == base_face_id()) return FaceClass::Base;
  if (is_vertical(f)) return FaceClass::Vertical;
  return FaceClass::Oblique;
}

Sublattice NewtonPolytope::face_lattice_data(const Face& f) const {
  IMat diffs;
  for (int i : f.points) diffs.push_back(ivec_sub(pts_[i], pts_[f.points[0]]));
  return Sublattice::from_generators(diffs, n_);
}

Sublattice NewtonPolytope::ambient_lattice_data() const {
  IMat diffs;
  for (auto& p : pts_) diffs.push_back(ivec_sub(p, pts_[0]));
  return Sublattice::from_generators(diffs, n_);
}

long long NewtonPolytope::ambient_index() const {
  Sublattice za = ambient_lattice_data();
  if (za.rank() < n_) return 0;
  return za.sat_index();
}

Int NewtonPolytope::normalized_volume(const Face& f, int apex_choice) const {
  std::vector<IVec> sub;
  for (int i : f.points) sub.push_back(pts_[i]);
  return nvol_points(sub, apex_choice);
}

long long NewtonPolytope::euler_sum() const {
  long long s = 0;
  for (auto& f : faces_) s += (f.dim % 2) ? -1 : 1;
  return s;
}

long long lattice_length(const NewtonPolytope& p, const Face& f) {
  if (f.dim != 1) throw error("lattice_length needs a 1-dimensional face");
  if (f.vertex_points.size() != 2) throw error("edge without two endpoints");
  IVec d = ivec_sub(p.points()[f.vertex_points[1]], p.points()[f.vertex_points[0]]);
  return ivec_gcd(d);
}

namespace {

// Pointed rational cone spanned by integer generators, with exact membership.
struct Cone {
  Sublattice span;
  int r = 0;
  IMat coord_normals;  // facet normals in span coordinates
  std::vector<IVec> gen_coords;

  static Cone from_gens(const IMat& gens, int c) {
    Cone k;
    k.span = Sublattice::from_generators(gens, c);
    k.r = k.span.rank();
    for (auto& g : gens) k.gen_coords.push_back(k.span.coords_in_sat(g));
    if (k.r == 1) {
      long long s = 0;
      for (auto& gc : k.gen_coords) {
        if (s == 0) s = gc[0] > 0 ? 1 : -1;
        if (gc[0] * s < 0) throw error("cone is a full line, not pointed");
      }
      k.coord_normals.push_back({s});
    } else if (k.r >= 2) {
      std::set<IVec> seen;
      int m = (int)k.gen_coords.size();
      std::vector<int> idx(k.r - 1);
      std::iota(idx.begin(), idx.end(), 0);
      if (m >= k.r - 1) for (;;) {
        IMat rows;
        for (int i : idx) rows.push_back(k.gen_coords[i]);
        IVec nrm = primitive(cross_normal(rows, k.r));
        if (ivec_gcd(nrm) != 0) {
          for (int sgn = 0; sgn < 2; ++sgn) {
            IVec cand = nrm;
            if (sgn) for (auto& v : cand) v = -v;
            bool ok = true;
            for (auto& gc : k.gen_coords)
              if (ivec_dot(cand, gc) < 0) { ok = false; break; }
            if (ok && !seen.count(cand)) {
              seen.insert(cand);
              k.coord_normals.push_back(cand);
            }
          }
        }
        int i = k.r - 2;
        while (i >= 0 && idx[i] == m - (k.r - 1) + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k.r - 1; ++j) idx[j] = idx[j - 1] + 1;
      }
      if (k.coord_normals.empty()) throw error("cone has no facets (not pointed?)");
    }
    return k;
  }

  bool contains(const IVec& x) const {
    if (!span.sat_contains(x)) return false;
    if (k_is_zero(x)) return true;
    if (r == 0) return false;
    IVec c = span.coords_in_sat(x);
    for (auto& nrm : coord_normals)
      if (ivec_dot(nrm, c) < 0) return false;
    return true;
  }

  static bool k_is_zero(const IVec& x) {
    return ivec_gcd(x) == 0;
  }
};

}  // namespace

Int subdiagram_volume(const NewtonPolytope& p, const Face& f) {
  int n = p.ambient_dim();
  if (p.dim() != n) throw error("subdiagram volume needs a full-dimensional polytope");
  if ((int)f.points.size() == (int)p.points().size())
    throw error("subdiagram volume of the whole polytope");
  int codim = n - f.dim;
  if (codim < 1 || codim > 3) throw error("subdiagram volume supports codimension 1..3");

  Sublattice L = p.face_lattice_data(f);
  const IMat& proj = L.projection();
  const IMat& sec = L.section();
  IVec eta(f.normal.begin(), f.normal.end());
  // The exposing functional descends to the quotient; express it there.
  IVec lbar(codim);
  for (int i = 0; i < codim; ++i) lbar[i] = ivec_dot(eta, sec[i]);

  std::set<IVec> gset;
  IVec pb = imat_apply(proj, p.points()[f.points[0]]);
  for (auto& a : p.points()) {
    IVec g = ivec_sub(imat_apply(proj, a), pb);
    if (ivec_gcd(g) != 0) gset.insert(g);
  }
  IMat gens(gset.begin(), gset.end());
  if (gens.empty()) throw error("empty shifted support (face equals polytope?)");
  for (auto& g : gens)
    if (ivec_dot(lbar, g) <= 0)
      throw error("exposing functional not positive on shifted support");
  Cone cone = Cone::from_gens(gens, codim);
  if (cone.r != codim) throw error("shifted support does not span the quotient");

  // Enumerate monoid elements by generator-count level; certify completeness
  // of the minimal set once the whole frontier is dominated.
  std::set<IVec> pool;
  std::vector<IVec> frontier;
  bool certified = false;
  for (int budget = 4; budget <= 256 && !certified; budget *= 2) {
    pool.clear();
    pool.insert(IVec(codim, 0));
    std::vector<IVec> level{IVec(codim, 0)};
    for (int t = 1; t <= budget; ++t) {
      std::vector<IVec> next;
      for (auto& v : level)
        for (auto& g : gens) {
          IVec w = ivec_add(v, g);
          if (pool.insert(w).second) next.push_back(w);
        }
      level = std::move(next);
      if (level.empty()) break;
    }
    frontier = level;
    certified = true;
    for (auto& v : frontier) {
      bool dominated = false;
      for (auto& u : pool) {
        if (ivec_gcd(u) == 0 || u == v) continue;
        if (cone.contains(ivec_sub(v, u))) { dominated = true; break; }
      }
      if (!dominated) { certified = false; break; }
    }
  }
  if (!certified) throw error("monoid minimal set did not stabilize");

  std::vector<IVec> minimal;
  for (auto& v : pool) {
    if (ivec_gcd(v) == 0) continue;
    bool dom = false;
    for (auto& u : pool) {
      if (ivec_gcd(u) == 0 || u == v) continue;
      if (cone.contains(ivec_sub(v, u))) { dom = true; break; }
    }
    if (!dom) minimal.push_back(v);
  }

  long long T = 1;
  for (auto& h : minimal) T += ivec_dot(lbar, h);
  long long s = 1;
  for (auto& g : gens) s = std::lcm(s, ivec_dot(lbar, g));

  // Truncate cone and hull(minimal)+cone at level T, scaled by s so the cut
  // vertices stay integral.
  std::vector<IVec> p1{IVec(codim, 0)};
  for (auto& g : gens) p1.push_back(ivec_scale(g, (s / ivec_dot(lbar, g)) * T));
  std::vector<IVec> p2;
  for (auto& h : minimal) {
    p2.push_back(ivec_scale(h, s));
    long long rest = T - ivec_dot(lbar, h);
    for (auto& g : gens)
      p2.push_back(ivec_add(ivec_scale(h, s), ivec_scale(g, (s / ivec_dot(lbar, g)) * rest)));
  }
  Int v1 = nvol_points(p1);
  Int v2 = nvol_points(p2);
  Int scale = 1;
  for (int i = 0; i < codim; ++i) scale *= (long)s;
  Int diff = v1 - v2;
  if (diff <= 0 || diff % scale != 0)
    throw error("subdiagram volume is not a positive lattice multiple");
  return diff / scale;
}

IMat hull2d(IMat pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  int n = (int)pts.size();
  if (n <= 2) return pts;
  auto cross = [](const IVec& o, const IVec& a, const IVec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  IMat h(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (int i = n - 2, lo = k + 1; i >= 0; --i) {
    while (k >= lo && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

Int polygon_area2(const IMat& hull) {
  if (hull.size() < 3) return 0;
  long long a2 = 0;
  for (size_t i = 0; i < hull.size(); ++i) {
    const IVec& p = hull[i];
    const IVec& q = hull[(i + 1) % hull.size()];
    a2 += p[0] * q[1] - q[0] * p[1];
  }
  return Int((long)std::llabs(a2));
}

Int mixed_area(const IMat& p, const IMat& q) {
  if (p.empty() || q.empty()) throw error("mixed_area needs nonempty point sets");
  IMat sum;
  for (auto& a : p)
    for (auto& b : q) sum.push_back(ivec_add(a, b));
  Int m2 = polygon_area2(hull2d(sum)) - polygon_area2(hull2d(p)) - polygon_area2(hull2d(q));
  if (m2 < 0 || m2 % 2 != 0) throw error("mixed area is not a nonnegative integer");
  return m2 / 2;
}

std::string off_string(const NewtonPolytope& p) {
  if (p.ambient_dim() != 3 || p.dim() != 3)
    throw error("OFF output needs a full-dimensional 3-polytope");
  const auto& pts = p.points();
  const auto& verts = p.vertices();
  std::map<int, int> vid;
  for (int i = 0; i < (int)verts.size(); ++i) vid[verts[i]] = i;

  int edges = 0;
  for (auto& f : p.faces())
    if (f.dim == 1) ++edges;

  std::ostringstream os;
  os << "OFF\n" << verts.size() << " " << p.facet_ids().size() << " " << edges << "\n";
  for (int v : verts)
    os << pts[v][0] << " " << pts[v][1] << " " << pts[v][2] << "\n";
  for (int fid : p.facet_ids()) {
    const Face& f = p.face(fid);
    std::vector<IVec> fp;
    for (int i : f.vertex_points) fp.push_back(pts[i]);
    Frame fr = make_frame(fp);
    double cx = 0, cy = 0;
    for (auto& c : fr.coords) cx += c[0], cy += c[1];
    cx /= fr.coords.size(), cy /= fr.coords.size();
    std::vector<int> order(f.vertex_points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::atan2(fr.coords[a][1] - cy, fr.coords[a][0] - cx) <
             std::atan2(fr.coords[b][1] - cy, fr.coords[b][0] - cx);
    });
    // Flip if the in-plane orientation disagrees with the outward normal.
    IMat m{fr.lat.sat_basis()[0], fr.lat.sat_basis()[1],
           {-f.normal[0], -f.normal[1], -f.normal[2]}};
    if (det_ll(m) < 0) std::reverse(order.begin(), order.end());
    os << f.vertex_points.size();
    for (int i : order) os << " " << vid[f.vertex_points[i]];
    os << "\n";
  }
  return os.str();
}

}  // namespace bloch
