#include "bloch/qpoly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace bloch {

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly::QPoly(std::vector<Rat> cs) : c_(std::move(cs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

QPoly QPoly::constant(const Rat& c) { return QPoly(std::vector<Rat>{c}); }

QPoly QPoly::monomial(int deg, const Rat& c) {
  std::vector<Rat> cs(deg + 1, Rat(0));
  cs[deg] = c;
  return QPoly(std::move(cs));
}

Rat QPoly::coeff(int i) const {
  if (i < 0 || i >= (int)c_.size()) return Rat(0);
  return c_[i];
}

const Rat& QPoly::lc() const {
  if (c_.empty()) throw error("lc of zero polynomial");
  return c_.back();
}

QPoly QPoly::operator+(const QPoly& o) const {
  std::vector<Rat> cs(std::max(c_.size(), o.c_.size()), Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) cs[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) cs[i] += o.c_[i];
  return QPoly(std::move(cs));
}

QPoly QPoly::operator-(const QPoly& o) const {
  std::vector<Rat> cs(std::max(c_.size(), o.c_.size()), Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) cs[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) cs[i] -= o.c_[i];
  return QPoly(std::move(cs));
}

QPoly QPoly::operator*(const QPoly& o) const {
  if (is_zero() || o.is_zero()) return QPoly();
  std::vector<Rat> cs(c_.size() + o.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) cs[i + j] += c_[i] * o.c_[j];
  return QPoly(std::move(cs));
}

QPoly QPoly::scale(const Rat& s) const {
  std::vector<Rat> cs(c_);
  for (auto& c : cs) c *= s;
  return QPoly(std::move(cs));
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw error("division by zero polynomial");
  if (a.degree() < b.degree()) return {QPoly(), a};
  std::vector<Rat> rem(a.c_);
  std::vector<Rat> quo(a.degree() - b.degree() + 1, Rat(0));
  for (int i = a.degree(); i >= b.degree(); --i) {
    Rat q = rem[i] / b.lc();
    if (q == 0) continue;
    quo[i - b.degree()] = q;
    for (int j = 0; j <= b.degree(); ++j) rem[i - b.degree() + j] -= q * b.c_[j];
  }
  return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

QPoly QPoly::derivative() const {
  if (degree() <= 0) return QPoly();
  std::vector<Rat> cs(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) cs[i - 1] = c_[i] * Rat((long)i);
  return QPoly(std::move(cs));
}

QPoly QPoly::monic() const {
  if (is_zero()) return QPoly();
  return scale(Rat(1) / lc());
}

QPoly QPoly::gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

QPoly QPoly::squarefree_part() const {
  if (is_zero()) return QPoly();
  if (degree() == 0) return QPoly::constant(Rat(1));
  QPoly g = gcd(*this, derivative());
  auto [q, r] = divmod(*this, g);
  if (!r.is_zero()) throw error("squarefree division not exact");
  return q;
}

int QPoly::trailing() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return (int)i;
  return -1;
}

QPoly QPoly::strip_low() const {
  int t = trailing();
  if (t <= 0) return *this;
  return QPoly(std::vector<Rat>(c_.begin() + t, c_.end()));
}

Rat QPoly::eval(const Rat& x) const {
  Rat v(0);
  for (int i = degree(); i >= 0; --i) v = v * x + c_[i];
  return v;
}

Cplx QPoly::eval(const Cplx& x) const {
  Cplx v(0.0, 0.0);
  for (int i = degree(); i >= 0; --i) v = v * x + Cplx(c_[i].get_d(), 0.0);
  return v;
}

std::vector<Cplx> QPoly::roots() const {
  int n = degree();
  if (n < 1) return {};
  QPoly m = monic();
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -m.coeff(i).get_d();
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
  std::vector<Cplx> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

Rat rat_pow(Rat base, int e) {
  if (e < 0) throw error("rat_pow: negative exponent");
  Rat r(1);
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

Rat resultant_univ(QPoly a, QPoly b) {
  if (a.is_zero() || b.is_zero()) return Rat(0);
  int da = a.degree(), db = b.degree();
  if (da == 0 && db == 0) return Rat(1);
  if (da == 0) return rat_pow(a.lc(), db);
  if (db == 0) return rat_pow(b.lc(), da);
  int sign = ((long long)da * db) % 2 ? -1 : 1;
  QPoly r = QPoly::divmod(a, b).second;
  if (r.is_zero()) return Rat(0);
  Rat res = rat_pow(b.lc(), da - r.degree()) * resultant_univ(b, r);
  return sign < 0 ? Rat(-res) : res;
}

double bivar_scale(const Bivar& f, const Cplx& x, const Cplx& y) {
  double s = 1.0;
  for (auto& [e, c] : f)
    s += std::abs(c.get_d()) * std::pow(std::abs(x), e.first) * std::pow(std::abs(y), e.second);
  return s;
}

int bivar_xdeg(const Bivar& f) {
  int d = -1;
  for (auto& [e, c] : f)
    if (c != 0) d = std::max(d, e.first);
  return d;
}

int bivar_ydeg(const Bivar& f) {
  int d = -1;
  for (auto& [e, c] : f)
    if (c != 0) d = std::max(d, e.second);
  return d;
}

Bivar bivar_clear(const Bivar& laurent) {
  Bivar out;
  int minx = 0, miny = 0;
  bool first = true;
  for (auto& [e, c] : laurent) {
    if (c == 0) continue;
    if (first) {
      minx = e.first;
      miny = e.second;
      first = false;
    } else {
      minx = std::min(minx, e.first);
      miny = std::min(miny, e.second);
    }
  }
  for (auto& [e, c] : laurent) {
    if (c == 0) continue;
    out[{e.first - minx, e.second - miny}] = c;
  }
  return out;
}

QPoly bivar_specialize_x(const Bivar& f, const Rat& x0) {
  int dy = bivar_ydeg(f);
  if (dy < 0) return QPoly();
  std::vector<Rat> cs(dy + 1, Rat(0));
  for (auto& [e, c] : f) {
    if (c == 0) continue;
    cs[e.second] += c * rat_pow(x0, e.first);
  }
  return QPoly(std::move(cs));
}

Cplx bivar_eval(const Bivar& f, const Cplx& x, const Cplx& y) {
  Cplx v(0.0, 0.0);
  for (auto& [e, c] : f) {
    if (c == 0) continue;
    v += Cplx(c.get_d(), 0.0) * cpow(x, e.first) * cpow(y, e.second);
  }
  return v;
}

Bivar bivar_dx(const Bivar& f) {
  Bivar out;
  for (auto& [e, c] : f) {
    if (e.first == 0 || c == 0) continue;
    out[{e.first - 1, e.second}] += c * Rat(e.first);
  }
  return out;
}

Bivar bivar_dy(const Bivar& f) {
  Bivar out;
  for (auto& [e, c] : f) {
    if (e.second == 0 || c == 0) continue;
    out[{e.first, e.second - 1}] += c * Rat(e.second);
  }
  return out;
}

QPoly bivar_ycoeff(const Bivar& f, int j) {
  int dx = bivar_xdeg(f);
  if (dx < 0) return QPoly();
  std::vector<Rat> cs(dx + 1, Rat(0));
  for (auto& [e, c] : f)
    if (e.second == j) cs[e.first] += c;
  return QPoly(std::move(cs));
}

QPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& vs) {
  size_t n = xs.size();
  if (n == 0 || n != vs.size()) throw error("interpolate: bad input");
  // Divided differences.
  std::vector<Rat> dd(vs);
  for (size_t level = 1; level < n; ++level)
    for (size_t i = n - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
  // Horner expansion of the Newton form.
  QPoly p = QPoly::constant(dd[n - 1]);
  for (int i = (int)n - 2; i >= 0; --i) {
    QPoly lin(std::vector<Rat>{-xs[i], Rat(1)});
    p = p * lin + QPoly::constant(dd[i]);
  }
  return p;
}

QPoly resultant_y(const Bivar& f, const Bivar& g) {
  int m = bivar_ydeg(f), n = bivar_ydeg(g);
  if (m < 0 || n < 0) return QPoly();
  int pf = std::max(bivar_xdeg(f), 0), pg = std::max(bivar_xdeg(g), 0);
  if (m == 0) {
    // f does not involve y; Res_y(f, g) = f(x)^n.
    QPoly fx = bivar_ycoeff(f, 0), r = QPoly::constant(Rat(1));
    for (int i = 0; i < n; ++i) r = r * fx;
    return r;
  }
  if (n == 0) {
    QPoly gx = bivar_ycoeff(g, 0), r = QPoly::constant(Rat(1));
    for (int i = 0; i < m; ++i) r = r * gx;
    return r;
  }
  QPoly lcf = bivar_ycoeff(f, m), lcg = bivar_ycoeff(g, n);
  int bound = m * pg + n * pf;  // x-degree bound for the resultant
  std::vector<Rat> xs, vs;
  long long s = 0;
  while ((int)xs.size() < bound + 1) {
    Rat x0((long)s);
    ++s;
    if (s > 100000) throw error("resultant_y: sample points exhausted");
    // Only specialize where both y-degrees are preserved.
    if (lcf.eval(x0) == 0 || lcg.eval(x0) == 0) continue;
    QPoly fy = bivar_specialize_x(f, x0);
    QPoly gy = bivar_specialize_x(g, x0);
    xs.push_back(x0);
    vs.push_back(resultant_univ(fy, gy));
  }
  return interpolate(xs, vs);
}

std::vector<Cplx> croots(std::vector<Cplx> coeffs) {
  double mx = 0;
  for (auto& c : coeffs) mx = std::max(mx, std::abs(c));
  if (mx == 0) return {};
  while (!coeffs.empty() && std::abs(coeffs.back()) < 1e-12 * mx) coeffs.pop_back();
  int n = (int)coeffs.size() - 1;
  if (n < 1) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -coeffs[i] / coeffs[n];
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
  std::vector<Cplx> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

}  // namespace bloch
