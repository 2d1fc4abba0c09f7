#pragma once

#include <cstdint>
#include <vector>

namespace bloch {

using IVec = std::vector<long long>;
using IMat = std::vector<IVec>;  // row major

IMat imat_identity(int n);
IVec imat_apply(const IMat& a, const IVec& x);
long long ivec_dot(const IVec& a, const IVec& b);
IVec ivec_sub(const IVec& a, const IVec& b);
IVec ivec_add(const IVec& a, const IVec& b);
IVec ivec_scale(const IVec& a, long long s);
long long ivec_gcd(const IVec& v);
// Divides by the gcd of the entries; the zero vector stays zero.
IVec primitive(IVec v);

// u * a * v = d with u, v unimodular and d diagonal, d_1 | d_2 | ..., all
// d_i >= 0. uinv is maintained alongside so callers get integer sections
// without a separate inversion.
struct SmithResult {
  IMat d, u, uinv, v;
  int rank = 0;
};
SmithResult smith_normal_form(IMat a);

int lattice_rank(const IMat& gens);

// The subgroup of Z^n spanned by integer generators, together with its
// saturation Sat(L) = span_R(L) intersect Z^n, the index [Sat(L) : L], and a
// projection Z^n -> Z^(n-rank) whose kernel is exactly Sat(L).
class Sublattice {
 public:
  Sublattice() = default;
  static Sublattice from_generators(const IMat& gens, int n);

  int ambient() const { return n_; }
  int rank() const { return rank_; }
  const IMat& basis() const { return basis_; }          // rank rows
  const IMat& sat_basis() const { return satbasis_; }   // rank rows
  const IMat& projection() const { return proj_; }      // (n-rank) x n rows
  // Integer right inverse of the projection, one column per quotient
  // coordinate (stored as rows here, each of length n).
  const IMat& section() const { return sec_; }
  // The linear map v -> coords_in_sat(v) as rank rows of length n.
  IMat sat_coord_rows() const;
  long long sat_index() const { return index_; }

  bool contains(const IVec& v) const;
  bool sat_contains(const IVec& v) const;
  // Coordinates of v in basis() / sat_basis(); throws if v is outside.
  IVec coords_in_basis(const IVec& v) const;
  IVec coords_in_sat(const IVec& v) const;
  // sum_i c_i * sat_basis_i
  IVec from_sat_coords(const IVec& c) const;

 private:
  int n_ = 0, rank_ = 0;
  IMat basis_, satbasis_, proj_, sec_;
  IMat u_;                 // SNF row transform of the generator column matrix
  std::vector<long long> diag_;
  long long index_ = 1;
};

}  // namespace bloch
