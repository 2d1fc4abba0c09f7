#include "bloch/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace bloch {

namespace {

// Tolerances for the numeric layer. Residuals are always compared against a
// coefficient-magnitude scale, never absolutely.
constexpr double kPairTol = 1e-6;    // lambda-candidate pairing
constexpr double kResidTol = 1e-9;   // final residual acceptance
constexpr double kJacTol = 1e-8;     // Jacobian certificate
constexpr double kSepTol = 1e-6;     // minimal distance between counted points
constexpr double kZeroTol = 1e-10;   // torus membership

std::vector<Cplx> y_coeffs_at(const Bivar& f, const Cplx& x0) {
  int dy = bivar_ydeg(f);
  std::vector<Cplx> cs(std::max(dy + 1, 0), Cplx(0, 0));
  for (auto& [e, c] : f) cs[e.second] += c.get_d() * cpow(x0, e.first);
  return cs;
}

struct Pair2 {
  Bivar f, g, fx, fy, gx, gy;
  explicit Pair2(const Bivar& f_, const Bivar& g_)
      : f(f_), g(g_), fx(bivar_dx(f_)), fy(bivar_dy(f_)), gx(bivar_dx(g_)), gy(bivar_dy(g_)) {}

  void refine(Cplx& x, Cplx& y) const {
    for (int it = 0; it < 60; ++it) {
      Cplx fv = bivar_eval(f, x, y), gv = bivar_eval(g, x, y);
      Cplx a = bivar_eval(fx, x, y), b = bivar_eval(fy, x, y);
      Cplx c = bivar_eval(gx, x, y), d = bivar_eval(gy, x, y);
      Cplx det = a * d - b * c;
      if (std::abs(det) < 1e-300) return;
      Cplx dx = (fv * d - gv * b) / det, dy = (a * gv - c * fv) / det;
      x -= dx;
      y -= dy;
      if (std::abs(dx) + std::abs(dy) < 1e-15 * (1 + std::abs(x) + std::abs(y))) return;
    }
  }

  bool residual_ok(const Cplx& x, const Cplx& y) const {
    return std::abs(bivar_eval(f, x, y)) <= kResidTol * bivar_scale(f, x, y) &&
           std::abs(bivar_eval(g, x, y)) <= kResidTol * bivar_scale(g, x, y);
  }

  // |det J| against the product of the row magnitudes.
  bool jacobian_ok(const Cplx& x, const Cplx& y) const {
    Cplx a = bivar_eval(fx, x, y), b = bivar_eval(fy, x, y);
    Cplx c = bivar_eval(gx, x, y), d = bivar_eval(gy, x, y);
    double r1 = std::abs(a) + std::abs(b), r2 = std::abs(c) + std::abs(d);
    double s = r1 * r2;
    if (s < 1e-300) return false;
    return std::abs(a * d - b * c) > kJacTol * s;
  }
};

bool push_deduped(std::vector<std::array<Cplx, 2>>& pts, const std::array<Cplx, 2>& p) {
  for (auto& q : pts) {
    double d = std::abs(q[0] - p[0]) + std::abs(q[1] - p[1]);
    if (d < 1e-7 * (1 + std::abs(p[0]) + std::abs(p[1]))) return false;
  }
  pts.push_back(p);
  return true;
}

}  // namespace

std::map<std::string, Rat> draw_params(const std::set<std::string>& symbols,
                                       unsigned long long seed) {
  std::mt19937_64 gen(seed);
  std::map<std::string, Rat> out;
  for (const auto& s : symbols) {
    // 101..9999 over 100: values in (1, 100), two decimal digits. No reliance
    // on std::uniform_int_distribution, which is not portable across stdlibs.
    long long num = 101 + (long long)(gen() % 9899ull);
    Rat r((long)num, 100);
    r.canonicalize();
    out[s] = r;
  }
  return out;
}

double system_residual(const std::vector<LaurentPoly>& sys,
                       const std::map<std::string, Rat>& params,
                       const std::vector<Cplx>& point) {
  double r = 0;
  for (const auto& f : sys) r = std::max(r, std::abs(f.eval(params, point)));
  return r;
}

double system_scale(const std::vector<LaurentPoly>& sys,
                    const std::map<std::string, Rat>& params,
                    const std::vector<Cplx>& point) {
  double s = 1.0;
  for (const auto& f : sys) {
    double t = 0;
    for (auto& [e, c] : f.terms()) {
      double term = std::abs(c.eval(params).get_d());
      for (size_t i = 0; i < e.size(); ++i) term *= std::pow(std::abs(point[i]), e[i]);
      t += term;
    }
    s = std::max(s, t);
  }
  return s;
}

std::vector<CornerPoint> corner_critical_points(const PeriodicGraph& g,
                                                const std::map<std::string, Rat>& params) {
  QuotientGraph q = build_quotient_graph(g);
  LaurentPoly phi = dispersion_polynomial(q);
  std::vector<LaurentPoly> sys = critical_point_system(phi);
  std::vector<CornerPoint> out;
  int n = (int)g.vertices.size();
  for (int mask = 0; mask < (1 << g.d); ++mask) {
    std::vector<Cplx> z(g.d);
    std::vector<double> zr(g.d);
    for (int i = 0; i < g.d; ++i) {
      zr[i] = (mask >> i) & 1 ? -1.0 : 1.0;
      z[i] = Cplx(zr[i], 0);
    }
    Eigen::MatrixXcd h = floquet_matrix_numeric(g, params, z);
    double hscale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if (h.imag().cwiseAbs().maxCoeff() > 1e-12 * hscale)
      throw error("corner operator is not real");
    Eigen::MatrixXd hr = h.real();
    if ((hr - hr.transpose()).cwiseAbs().maxCoeff() > 1e-12 * hscale)
      throw error("corner operator is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hr);
    for (int k = 0; k < n; ++k) {
      CornerPoint cp;
      cp.z = zr;
      cp.lambda = es.eigenvalues()(k);
      std::vector<Cplx> pt(z);
      pt.push_back(Cplx(cp.lambda, 0));
      cp.residual = system_residual(sys, params, pt);
      out.push_back(std::move(cp));
    }
  }
  return out;
}

BivarRoots solve_bivariate(const Bivar& f_laurent, const Bivar& g_laurent) {
  BivarRoots res;
  Bivar f = bivar_clear(f_laurent), g = bivar_clear(g_laurent);
  if (f.empty() || g.empty()) {
    res.degenerate = true;
    return res;
  }
  if (bivar_ydeg(f) == 0 && bivar_ydeg(g) == 0) {
    // Neither constrains the second coordinate: nothing isolated to count.
    res.degenerate = true;
    return res;
  }
  QPoly r = resultant_y(f, g);
  if (r.is_zero()) {
    res.degenerate = true;
    return res;
  }
  QPoly s = r.strip_low().squarefree_part();
  if (s.degree() < 1) return res;  // no torus candidates
  Pair2 sys(f, g);
  const Bivar& lead = bivar_ydeg(f) > 0 ? f : g;
  for (const Cplx& x0 : s.roots()) {
    if (std::abs(x0) < kZeroTol) continue;
    std::vector<Cplx> ys = croots(y_coeffs_at(lead, x0));
    if (ys.empty()) ys = croots(y_coeffs_at(bivar_ydeg(f) > 0 ? g : f, x0));
    for (const Cplx& y0 : ys) {
      if (std::abs(y0) < kZeroTol) continue;
      Cplx x = x0, y = y0;
      const Bivar& other = bivar_ydeg(f) > 0 ? g : f;
      if (std::abs(bivar_eval(other, x, y)) > kPairTol * bivar_scale(other, x, y)) continue;
      sys.refine(x, y);
      if (std::abs(x) < kZeroTol || std::abs(y) < kZeroTol) continue;
      if (!sys.residual_ok(x, y)) continue;
      push_deduped(res.roots, {x, y});
    }
  }
  return res;
}

OracleResult cpdeg_oracle_d1(const PeriodicGraph& g,
                             const std::map<std::string, Rat>& params) {
  if (g.d != 1) throw error("critical point oracle requires d = 1");
  QuotientGraph q = build_quotient_graph(g);
  LaurentPoly phi = dispersion_polynomial(q);
  LaurentPoly dsym = phi.log_derivative(0);
  auto to_bivar = [&](const LaurentPoly& p) {
    Bivar b;
    for (auto& [e, c] : p.terms()) {
      Rat v = c.eval(params);
      if (v != 0) b[{e[0], e[1]}] = v;
    }
    return b;
  };
  Bivar fmap = to_bivar(phi), dmap = to_bivar(dsym);
  OracleResult out;
  if (dmap.empty()) {
    out.degenerate = true;  // no momentum dependence: nothing isolated
    return out;
  }
  Bivar f = bivar_clear(fmap), dm = bivar_clear(dmap);
  QPoly r = resultant_y(f, dm);
  if (r.is_zero()) {
    out.degenerate = true;  // shared factor: positive dimensional solution set
    return out;
  }
  QPoly s = r.strip_low().squarefree_part();
  std::vector<std::array<Cplx, 2>> pts;
  Pair2 sys(f, dm);
  if (s.degree() >= 1) {
    for (const Cplx& x0 : s.roots()) {
      if (std::abs(x0) < kZeroTol) continue;
      // phi is monic in lambda, so the cleared leading coefficient is a pure
      // power of x: degrees never drop at x0 != 0.
      for (const Cplx& l0 : croots(y_coeffs_at(f, x0))) {
        if (std::abs(bivar_eval(dm, x0, l0)) > kPairTol * bivar_scale(dm, x0, l0)) continue;
        Cplx x = x0, l = l0;
        sys.refine(x, l);
        if (std::abs(x) < kZeroTol) continue;
        if (!sys.residual_ok(x, l)) continue;
        push_deduped(pts, {x, l});
      }
    }
  }
  // Certify: pairwise separation and a nonsingular Jacobian at every point.
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) {
      double d = std::abs(pts[i][0] - pts[j][0]) + std::abs(pts[i][1] - pts[j][1]);
      if (d < kSepTol * (1 + std::abs(pts[i][0]) + std::abs(pts[i][1]))) {
        out.degenerate = true;
        return out;
      }
    }
  for (auto& p : pts)
    if (!sys.jacobian_ok(p[0], p[1])) {
      out.degenerate = true;
      return out;
    }
  out.count = (long long)pts.size();
  return out;
}

}  // namespace bloch
