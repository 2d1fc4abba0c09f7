#include "bloch/lattice.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "bloch/symbolic.hpp"

namespace bloch {

IMat imat_identity(int n) {
  IMat m(n, IVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IVec imat_apply(const IMat& a, const IVec& x) {
  IVec r(a.size(), 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) r[i] += a[i][j] * x[j];
  return r;
}

long long ivec_dot(const IVec& a, const IVec& b) {
  long long s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IVec ivec_sub(const IVec& a, const IVec& b) {
  IVec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

IVec ivec_add(const IVec& a, const IVec& b) {
  IVec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

IVec ivec_scale(const IVec& a, long long s) {
  IVec r = a;
  for (auto& v : r) v *= s;
  return r;
}

long long ivec_gcd(const IVec& v) {
  long long g = 0;
  for (auto x : v) g = std::gcd(g, std::llabs(x));
  return g;
}

IVec primitive(IVec v) {
  long long g = ivec_gcd(v);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

namespace {

struct SnfWork {
  IMat a, u, uinv, v;
  int r, c;

  void row_swap(int i, int j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
    for (int k = 0; k < r; ++k) std::swap(uinv[k][i], uinv[k][j]);
  }
  void row_negate(int i) {
    for (auto& x : a[i]) x = -x;
    for (auto& x : u[i]) x = -x;
    for (int k = 0; k < r; ++k) uinv[k][i] = -uinv[k][i];
  }
  // row_i += q * row_j
  void row_addmul(int i, int j, long long q) {
    for (int k = 0; k < c; ++k) a[i][k] += q * a[j][k];
    for (int k = 0; k < r; ++k) u[i][k] += q * u[j][k];
    for (int k = 0; k < r; ++k) uinv[k][j] -= q * uinv[k][i];
  }
  void col_swap(int i, int j) {
    for (int k = 0; k < r; ++k) std::swap(a[k][i], a[k][j]);
    for (int k = 0; k < c; ++k) std::swap(v[k][i], v[k][j]);
  }
  void col_negate(int i) {
    for (int k = 0; k < r; ++k) a[k][i] = -a[k][i];
    for (int k = 0; k < c; ++k) v[k][i] = -v[k][i];
  }
  // col_i += q * col_j
  void col_addmul(int i, int j, long long q) {
    for (int k = 0; k < r; ++k) a[k][i] += q * a[k][j];
    for (int k = 0; k < c; ++k) v[k][i] += q * v[k][j];
  }
};

}  // namespace

SmithResult smith_normal_form(IMat a0) {
  int r = (int)a0.size();
  int c = r ? (int)a0[0].size() : 0;
  if (r == 0 || c == 0) throw error("smith_normal_form: empty matrix");
  SnfWork w{std::move(a0), imat_identity(r), imat_identity(r), imat_identity(c), r, c};

  int t = 0;
  while (t < r && t < c) {
    // Bring the absolutely smallest nonzero entry of the trailing block to
    // the pivot position.
    int pi = -1, pj = -1;
    for (int i = t; i < r; ++i)
      for (int j = t; j < c; ++j)
        if (w.a[i][j] != 0 &&
            (pi < 0 || std::llabs(w.a[i][j]) < std::llabs(w.a[pi][pj])))
          pi = i, pj = j;
    if (pi < 0) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);

    for (;;) {
      bool touched = false;
      for (int i = t + 1; i < r; ++i)
        while (w.a[i][t] != 0) {
          long long q = w.a[i][t] / w.a[t][t];
          w.row_addmul(i, t, -q);
          if (w.a[i][t] != 0) {
            w.row_swap(i, t);
            touched = true;
          }
        }
      for (int j = t + 1; j < c; ++j)
        while (w.a[t][j] != 0) {
          long long q = w.a[t][j] / w.a[t][t];
          w.col_addmul(j, t, -q);
          if (w.a[t][j] != 0) {
            w.col_swap(j, t);
            touched = true;
          }
        }
      if (touched) continue;
      // Enforce the divisibility chain before moving on.
      bool fixed = false;
      for (int i = t + 1; i < r && !fixed; ++i)
        for (int j = t + 1; j < c && !fixed; ++j)
          if (w.a[i][j] % w.a[t][t] != 0) {
            w.row_addmul(t, i, 1);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (w.a[t][t] < 0) {
      w.row_negate(t);
    }
    ++t;
  }

  SmithResult res{std::move(w.a), std::move(w.u), std::move(w.uinv), std::move(w.v), 0};
  for (int i = 0; i < std::min(r, c); ++i)
    if (res.d[i][i] != 0) ++res.rank;
  return res;
}

int lattice_rank(const IMat& gens) {
  if (gens.empty()) return 0;
  return smith_normal_form(gens).rank;
}

Sublattice Sublattice::from_generators(const IMat& gens, int n) {
  Sublattice s;
  s.n_ = n;
  IMat cols(n, IVec(std::max<size_t>(gens.size(), 1), 0));  // generators as columns
  for (size_t g = 0; g < gens.size(); ++g) {
    if ((int)gens[g].size() != n) throw error("sublattice generator arity mismatch");
    for (int i = 0; i < n; ++i) cols[i][g] = gens[g][i];
  }
  SmithResult snf = smith_normal_form(cols);
  s.rank_ = snf.rank;
  s.u_ = snf.u;
  for (int i = 0; i < s.rank_; ++i) {
    s.diag_.push_back(snf.d[i][i]);
    s.index_ *= snf.d[i][i];
    IVec sat(n), bas(n);
    for (int k = 0; k < n; ++k) {
      sat[k] = snf.uinv[k][i];
      bas[k] = snf.uinv[k][i] * snf.d[i][i];
    }
    s.satbasis_.push_back(sat);
    s.basis_.push_back(bas);
  }
  for (int i = s.rank_; i < n; ++i) {
    s.proj_.push_back(snf.u[i]);
    IVec sec(n);
    for (int k = 0; k < n; ++k) sec[k] = snf.uinv[k][i];
    s.sec_.push_back(sec);
  }
  return s;
}

bool Sublattice::contains(const IVec& v) const {
  IVec y = imat_apply(u_, v);
  for (int i = 0; i < rank_; ++i)
    if (y[i] % diag_[i] != 0) return false;
  for (int i = rank_; i < n_; ++i)
    if (y[i] != 0) return false;
  return true;
}

bool Sublattice::sat_contains(const IVec& v) const {
  IVec y = imat_apply(u_, v);
  for (int i = rank_; i < n_; ++i)
    if (y[i] != 0) return false;
  return true;
}

IVec Sublattice::coords_in_basis(const IVec& v) const {
  if (!contains(v)) throw error("vector outside sublattice");
  IVec y = imat_apply(u_, v);
  IVec c(rank_);
  for (int i = 0; i < rank_; ++i) c[i] = y[i] / diag_[i];
  return c;
}

IVec Sublattice::coords_in_sat(const IVec& v) const {
  if (!sat_contains(v)) throw error("vector outside saturation");
  IVec y = imat_apply(u_, v);
  return IVec(y.begin(), y.begin() + rank_);
}

IMat Sublattice::sat_coord_rows() const {
  return IMat(u_.begin(), u_.begin() + rank_);
}

IVec Sublattice::from_sat_coords(const IVec& c) const {
  IVec v(n_, 0);
  for (int i = 0; i < rank_; ++i)
    for (int k = 0; k < n_; ++k) v[k] += c[i] * satbasis_[i][k];
  return v;
}

}  // namespace bloch
