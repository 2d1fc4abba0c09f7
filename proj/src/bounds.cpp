#include "bloch/bounds.hpp"

#include <algorithm>

namespace bloch {

namespace {

constexpr double kResidTol = 1e-9;
constexpr double kZeroTol = 1e-10;

IVec exp_to_ivec(const ExpVec& e) { return IVec(e.begin(), e.end()); }

IVec normal_to_ivec(const std::vector<int>& v) { return IVec(v.begin(), v.end()); }

unsigned long long mix_seed(unsigned long long a, unsigned long long b) {
  a ^= b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2);
  return a * 0xff51afd7ed558ccdull + 1;
}

long long ext_gcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return a >= 0 ? a : -a;
  }
  long long x1, y1;
  long long g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

// Coordinates on a rank-2 face lattice, rotated so the second coordinate is
// the lambda direction whenever e_lambda lies in the lattice. The resultant
// then eliminates lambda, matching the hand computations.
struct FaceCoords {
  const Sublattice* lat = nullptr;
  bool rotated = false;
  long long a = 0, b = 0, p = 0, q = 0;

  explicit FaceCoords(const Sublattice& lt) : lat(&lt) {
    if (lt.rank() != 2) return;
    IVec elam(lt.ambient(), 0);
    elam[lt.ambient() - 1] = 1;
    if (!lt.contains(elam)) return;
    IVec c = lt.coords_in_basis(elam);
    p = c[0];
    q = c[1];
    long long g = ext_gcd(p, q, a, b);
    if (g != 1) throw error("lambda direction is imprimitive in the face lattice");
    rotated = true;
  }

  std::pair<int, int> map2(const IVec& c) const {
    if (!rotated) return {(int)c[0], (int)c[1]};
    return {(int)(c[0] * q - c[1] * p), (int)(c[0] * a + c[1] * b)};
  }
};

void prune_bivar(Bivar& f) {
  for (auto it = f.begin(); it != f.end();)
    it = it->second == 0 ? f.erase(it) : std::next(it);
}

Bivar laurent_to_face_bivar(const LaurentPoly& f, const Sublattice& lat, const FaceCoords& fc,
                            const IVec& base, const std::map<std::string, Rat>& params) {
  Bivar out;
  for (auto& [e, c] : f.terms()) {
    Rat v = c.eval(params);
    if (v == 0) continue;
    IVec cd = lat.coords_in_basis(ivec_sub(exp_to_ivec(e), base));
    out[fc.map2(cd)] += v;
  }
  prune_bivar(out);
  return out;
}

void add_flag(std::vector<std::string>& flags, const std::string& f) {
  if (std::find(flags.begin(), flags.end(), f) == flags.end()) flags.push_back(f);
}

Bivar bivar_d(const Bivar& f, int which) { return which == 0 ? bivar_dx(f) : bivar_dy(f); }

}  // namespace

OrbitCount count_orbit_solutions(const LaurentPoly& phi, const NewtonPolytope& poly,
                                 const Face& f, const std::map<std::string, Rat>& params) {
  OrbitCount oc;
  if (!poly.is_vertical(f)) throw error("orbit counting expects a vertical face");
  if (f.dim < 1 || f.dim > 2) throw error("orbit counting supports dimensions 1 and 2");
  Sublattice lat = poly.face_lattice_data(f);
  LaurentPoly inphi = phi.initial_form(f.normal).first;
  IVec base = poly.points()[f.points[0]];

  if (f.dim == 1) {
    // The restricted system reduces to the restricted initial form: every
    // momentum log-derivative is a constant multiple of it on a vertical
    // edge, because the momentum exponent is constant along the face.
    std::map<long long, Rat> uni;
    for (auto& [e, c] : inphi.terms()) {
      Rat v = c.eval(params);
      if (v == 0) continue;
      uni[lat.coords_in_basis(ivec_sub(exp_to_ivec(e), base))[0]] += v;
    }
    for (auto it = uni.begin(); it != uni.end();)
      it = it->second == 0 ? uni.erase(it) : std::next(it);
    if (uni.empty()) return oc;
    oc.degenerate = false;
    oc.count = uni.rbegin()->first - uni.begin()->first;
    return oc;
  }

  FaceCoords fc(lat);
  Bivar f0 = laurent_to_face_bivar(inphi, lat, fc, base, params);
  if (f0.empty()) return oc;
  std::vector<Bivar> eqs = {f0};
  int d = poly.ambient_dim() - 1;
  for (int i = 0; i < d; ++i) {
    LaurentPoly di = inphi.log_derivative(i);
    if (di.is_zero()) continue;
    Bivar bi = laurent_to_face_bivar(di, lat, fc, base, params);
    if (!bi.empty()) eqs.push_back(bi);
  }
  if (eqs.size() < 2) return oc;
  for (size_t k = 1; k < eqs.size(); ++k) {
    BivarRoots br = solve_bivariate(eqs[0], eqs[k]);
    if (br.degenerate) continue;
    long long cnt = 0;
    for (auto& p : br.roots) {
      bool ok = true;
      for (auto& eq : eqs)
        if (std::abs(bivar_eval(eq, p[0], p[1])) > kResidTol * bivar_scale(eq, p[0], p[1])) {
          ok = false;
          break;
        }
      if (ok) ++cnt;
    }
    oc.degenerate = false;
    oc.count = cnt;
    return oc;
  }
  return oc;
}

Int corner_lower_bound(const PeriodicGraph& g) {
  Int r = (long)g.vertices.size();
  for (int i = 0; i < g.d; ++i) r *= 2;
  return r;
}

namespace {

// Slices of t^{-b} Phi by the level of a splitting vector transverse to the
// face: level m holds the coefficient of rho^m as a polynomial on the face.
struct RhoSlices {
  std::vector<Bivar> levels;

  RhoSlices(const LaurentPoly& phi, const NewtonPolytope& poly, const Face& f,
            const Sublattice& lat, const IVec& v, const std::map<std::string, Rat>& params) {
    IVec eta = normal_to_ivec(f.normal);
    long long rmin = phi.initial_form(f.normal).second;
    IVec base = poly.points()[f.points[0]];
    for (auto& [e, c] : phi.terms()) {
      Rat val = c.eval(params);
      if (val == 0) continue;
      IVec ev = exp_to_ivec(e);
      long long m = ivec_dot(eta, ev) - rmin;
      if (m < 0) throw error("negative level in face splitting");
      IVec w = ivec_sub(ivec_sub(ev, base), ivec_scale(v, m));
      IVec cd = lat.coords_in_basis(w);
      if ((size_t)m >= levels.size()) levels.resize(m + 1);
      levels[m][{(int)cd[0], (int)cd[1]}] += val;
    }
    for (auto& l : levels) prune_bivar(l);
  }

  const Bivar& at(size_t m) const {
    static const Bivar empty;
    return m < levels.size() ? levels[m] : empty;
  }
};

Cplx det3(const std::array<std::array<Cplx, 3>, 3>& h) {
  return h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) -
         h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
         h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
}

// Multiplicity of the compactified critical set at a torus intersection
// point p of two boundary factors: 1 when the rho-derivative of the slice
// expansion survives, 2 when it vanishes but the full Hessian is regular.
RefinePoint classify_point(const RhoSlices& sl, const Cplx& s1, const Cplx& s2) {
  RefinePoint rp;
  rp.p1 = s1;
  rp.p2 = s2;
  const Bivar& f1 = sl.at(1);
  double v1 = std::abs(bivar_eval(f1, s1, s2));
  double sc1 = bivar_scale(f1, s1, s2);
  if (v1 > 1e-6 * sc1) {
    rp.mult = 1;
    rp.certified = true;
    return rp;
  }
  if (v1 > 1e-9 * sc1) return rp;  // gray zone, refuse to certify
  const Bivar& f0 = sl.at(0);
  const Bivar& f2 = sl.at(2);
  std::array<std::array<Cplx, 3>, 3> h;
  Bivar f0a = bivar_d(f0, 0), f0b = bivar_d(f0, 1);
  h[0][0] = bivar_eval(bivar_d(f0a, 0), s1, s2);
  h[0][1] = h[1][0] = bivar_eval(bivar_d(f0a, 1), s1, s2);
  h[1][1] = bivar_eval(bivar_d(f0b, 1), s1, s2);
  h[0][2] = h[2][0] = bivar_eval(bivar_d(f1, 0), s1, s2);
  h[1][2] = h[2][1] = bivar_eval(bivar_d(f1, 1), s1, s2);
  h[2][2] = 2.0 * bivar_eval(f2, s1, s2);
  // Row sums differ by orders of magnitude when the face coordinates are
  // unbalanced, so scale the determinant by their product, not the cube of
  // the largest one.
  double scale = 1.0;
  for (int i = 0; i < 3; ++i) {
    double row = 0;
    for (int j = 0; j < 3; ++j) row += std::abs(h[i][j]);
    scale *= std::max(row, 1e-100);
  }
  if (std::abs(det3(h)) > 1e-8 * scale) {
    rp.mult = 2;
    rp.certified = true;
  }
  return rp;
}

}  // namespace

BoundsReport compute_bounds(const PeriodicGraph& g, unsigned long long seed, int draws,
                            bool refine) {
  BoundsReport rep;
  rep.d = g.d;
  QuotientGraph q = build_quotient_graph(g);
  LaurentPoly phi = dispersion_polynomial(q);
  NewtonPolytope poly(phi.support());
  rep.corner_lower = corner_lower_bound(g);
  rep.nvol = poly.nvol();
  rep.ambient_index = poly.ambient_index();
  std::set<std::string> symbols;
  phi.collect_symbols(symbols);

  if (poly.dim() != poly.ambient_dim() || rep.ambient_index == 0) {
    add_flag(rep.flags, "ambient-lattice-deficient");
    rep.bound_valid = false;
  }

  int facet_dim = poly.dim() - 1;
  std::vector<int> vertical_ids, disc_ids;
  for (const Face& f : poly.faces()) {
    FaceSummary fs;
    fs.id = f.id;
    fs.dim = f.dim;
    fs.cls = poly.classify(f);
    fs.normal = f.normal;
    fs.nvol = poly.normalized_volume(f);
    fs.sat_index = poly.face_lattice_data(f).sat_index();
    if (rep.bound_valid && fs.cls == FaceClass::Vertical) {
      fs.mu = subdiagram_volume(poly, f);
      fs.has_mu = true;
      vertical_ids.push_back(f.id);
      if (f.dim != facet_dim) rep.facet_only = false;
    }
    if (rep.bound_valid && fs.cls == FaceClass::Oblique && f.dim == 2) {
      InitialGraph ig = initial_graph(q, f.normal);
      InitialFactorization fact =
          components_and_factor(q, ig, poly.face_lattice_data(f));
      fs.nonmonomial_components = fact.nonmonomial_count;
      fs.disconnected = fact.asymptotically_disconnected;
      if (fact.asymptotically_disconnected) {
        fs.mu = subdiagram_volume(poly, f);
        fs.has_mu = true;
        disc_ids.push_back(f.id);
      }
    }
    rep.face_summaries.push_back(std::move(fs));
  }

  if (rep.bound_valid) {
    for (int id : vertical_ids) {
      const Face& f = poly.face(id);
      const FaceSummary& fs = rep.face_summaries[id];
      VertContribution vc;
      vc.face_id = id;
      vc.dim = f.dim;
      vc.mu = fs.mu;
      vc.sat_index = fs.sat_index;
      vc.face_nvol = fs.nvol;
      if (rep.facet_only) {
        vc.facet_path = true;
        vc.contribution = vc.mu * vc.face_nvol;
      } else {
        vc.facet_path = false;
        if (f.dim > 2) {
          add_flag(rep.flags, "unsupported-orbit-dim");
          rep.bound_valid = false;
          rep.vert.push_back(std::move(vc));
          continue;
        }
        unsigned long long fseed = mix_seed(seed, (unsigned long long)(id + 1));
        bool stable = true;
        long long agreed = 0;
        for (int t = 0; t < draws; ++t) {
          unsigned long long tseed = mix_seed(fseed, (unsigned long long)t);
          OrbitCount oc;
          for (int attempt = 0; attempt < 5 && oc.degenerate; ++attempt) {
            auto params = draw_params(symbols, mix_seed(tseed, 1000 + attempt));
            oc = count_orbit_solutions(phi, poly, f, params);
          }
          if (t == 0) vc.seed = tseed;
          if (oc.degenerate) {
            add_flag(rep.flags, "orbit-count-degenerate");
            stable = false;
            break;
          }
          if (t == 0)
            agreed = oc.count;
          else if (oc.count != agreed) {
            add_flag(rep.flags, "orbit-count-unstable");
            stable = false;
            break;
          }
        }
        if (!stable) {
          rep.bound_valid = false;
          rep.vert.push_back(std::move(vc));
          continue;
        }
        vc.solutions = agreed;
        vc.contribution = vc.mu * Int((long)vc.sat_index) * Int((long)agreed);
      }
      rep.n_vert += vc.contribution;
      rep.vert.push_back(std::move(vc));
    }

    for (int id : disc_ids) {
      const Face& f = poly.face(id);
      const FaceSummary& fs = rep.face_summaries[id];
      InitialGraph ig = initial_graph(q, f.normal);
      Sublattice lat = poly.face_lattice_data(f);
      InitialFactorization fact = components_and_factor(q, ig, lat);
      std::vector<IMat> polys;
      for (auto& comp : fact.components)
        if (!comp.monomial) polys.push_back(comp.polygon);
      DiscContribution dc;
      dc.face_id = id;
      dc.mu = fs.mu;
      dc.sat_index = fs.sat_index;
      for (size_t i = 0; i < polys.size(); ++i)
        for (size_t j = i + 1; j < polys.size(); ++j)
          dc.ma_sum += mixed_area(polys[i], polys[j]);
      dc.contribution = dc.mu * Int((long)dc.sat_index) * dc.ma_sum;
      rep.n_disc += dc.contribution;
      rep.disc.push_back(std::move(dc));
    }
  }

  rep.cpdeg_upper = rep.nvol - Int((long)rep.ambient_index) * (rep.n_vert + rep.n_disc);

  if (refine && rep.bound_valid) {
    rep.refined = true;
    auto params = draw_params(symbols, mix_seed(seed, 0x5eedull));
    for (const DiscContribution& dc : rep.disc) {
      const Face& f = poly.face(dc.face_id);
      FaceRefinement fr;
      fr.face_id = dc.face_id;
      fr.total = dc.contribution;
      if (dc.mu != 1 || dc.sat_index != 1) {
        fr.note = "needs subdiagram volume 1 and a saturated face lattice";
      } else if (poly.ambient_dim() != 3 || f.facet_normals.size() != 1) {
        fr.note = "needs a facet in ambient dimension 3";
      } else {
        Sublattice lat = poly.face_lattice_data(f);
        IVec sec = lat.section().at(0);
        long long sig = ivec_dot(normal_to_ivec(f.normal), sec);
        if (sig != 1 && sig != -1) {
          fr.note = "no unimodular splitting transverse to the face";
        } else {
          IVec v = sig > 0 ? sec : ivec_scale(sec, -1);
          RhoSlices slices(phi, poly, f, lat, v, params);
          InitialGraph ig = initial_graph(q, f.normal);
          InitialFactorization fact = components_and_factor(q, ig, lat);
          std::vector<Bivar> gs;
          for (auto& comp : fact.components) {
            if (comp.monomial) continue;
            IVec fbase = exp_to_ivec(comp.factor.terms().begin()->first);
            Bivar b;
            for (auto& [e, c] : comp.factor.terms()) {
              Rat val = c.eval(params);
              if (val == 0) continue;
              IVec cd = lat.coords_in_basis(ivec_sub(exp_to_ivec(e), fbase));
              b[{(int)cd[0], (int)cd[1]}] += val;
            }
            prune_bivar(b);
            gs.push_back(std::move(b));
          }
          bool ok = true;
          Int total = 0;
          for (size_t i = 0; i < gs.size() && ok; ++i)
            for (size_t j = i + 1; j < gs.size() && ok; ++j) {
              BivarRoots br = solve_bivariate(gs[i], gs[j]);
              if (br.degenerate) {
                fr.note = "factor pair system is degenerate";
                ok = false;
                break;
              }
              for (auto& p : br.roots) {
                if (std::abs(p[0]) < kZeroTol || std::abs(p[1]) < kZeroTol) continue;
                RefinePoint rp = classify_point(slices, p[0], p[1]);
                fr.points.push_back(rp);
                if (!rp.certified) {
                  add_flag(rep.flags, "refine-uncertified");
                  ok = false;
                  break;
                }
                total += rp.mult;
              }
            }
          if (ok) {
            fr.applicable = true;
            fr.total = total;
          }
        }
      }
      rep.refined_disc += fr.total;
      rep.refinements.push_back(std::move(fr));
    }
    rep.cpdeg_upper_refined =
        rep.nvol - Int((long)rep.ambient_index) * (rep.n_vert + rep.refined_disc);
  }

  return rep;
}

}  // namespace bloch
