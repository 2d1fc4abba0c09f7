#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bloch {

using Int = mpz_class;
using Rat = mpq_class;
using Cplx = std::complex<double>;

// Contract violations: malformed input, unsupported sizes, missing symbols.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Squarefree-or-not product of named symbols, e.g. a^2*b. All exponents >= 1;
// the empty product is 1.
class ParamMonomial {
 public:
  ParamMonomial() = default;
  static ParamMonomial symbol(const std::string& name);

  ParamMonomial operator*(const ParamMonomial& o) const;
  bool operator<(const ParamMonomial& o) const { return fac_ < o.fac_; }
  bool operator==(const ParamMonomial& o) const { return fac_ == o.fac_; }

  bool is_one() const { return fac_.empty(); }
  int degree() const;
  const std::vector<std::pair<std::string, int>>& factors() const { return fac_; }

  Rat eval(const std::map<std::string, Rat>& vals) const;
  void collect_symbols(std::set<std::string>& out) const;
  std::string str() const;

 private:
  std::vector<std::pair<std::string, int>> fac_;  // sorted by symbol name
};

// Integer-coefficient polynomial in the parameter symbols (edge weights and
// potentials). These are the scalars of the Laurent layer: they never carry
// z or lambda exponents.
class ParamPoly {
 public:
  ParamPoly() = default;
  static ParamPoly constant(Int c);
  static ParamPoly one() { return constant(1); }
  static ParamPoly symbol(const std::string& name);
  static ParamPoly term(const ParamMonomial& m, Int c);

  ParamPoly operator+(const ParamPoly& o) const;
  ParamPoly operator-(const ParamPoly& o) const;
  ParamPoly operator*(const ParamPoly& o) const;
  ParamPoly operator-() const;
  ParamPoly operator*(const Int& c) const;
  bool operator==(const ParamPoly& o) const { return terms_ == o.terms_; }
  bool operator<(const ParamPoly& o) const { return terms_ < o.terms_; }

  bool is_zero() const { return terms_.empty(); }
  size_t num_terms() const { return terms_.size(); }
  // The (monomial, coefficient) pair when the polynomial has exactly one term.
  std::optional<std::pair<ParamMonomial, Int>> single_term() const;
  const std::map<ParamMonomial, Int>& terms() const { return terms_; }

  Rat eval(const std::map<std::string, Rat>& vals) const;
  void collect_symbols(std::set<std::string>& out) const;
  std::string str() const;

 private:
  std::map<ParamMonomial, Int> terms_;  // zero coefficients never stored
};

// Exponent vector (alpha_1..alpha_d, j): the momentum exponents followed by
// the lambda exponent. Length is always nvars = d+1.
using ExpVec = std::vector<int>;

ExpVec exp_add(const ExpVec& a, const ExpVec& b);
ExpVec exp_neg(const ExpVec& a);
long long exp_dot(const std::vector<int>& eta, const ExpVec& e);

// Laurent polynomial in z_1..z_d and lambda with ParamPoly coefficients.
// lambda exponents are allowed to be negative by the type; the dispersion
// pipeline only ever produces j >= 0.
class LaurentPoly {
 public:
  explicit LaurentPoly(int nvars = 1);
  static LaurentPoly term(const ExpVec& e, const ParamPoly& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  size_t num_terms() const { return terms_.size(); }
  const std::map<ExpVec, ParamPoly>& terms() const { return terms_; }
  std::vector<ExpVec> support() const;
  ParamPoly coeff(const ExpVec& e) const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  bool operator==(const LaurentPoly& o) const;

  // z_i * d/dz_i (index nvars-1 gives lambda * d/dlambda).
  LaurentPoly log_derivative(int var) const;
  // Terms minimizing <eta, exponent>, plus the minimum value itself.
  std::pair<LaurentPoly, long long> initial_form(const std::vector<int>& eta) const;
  // f(z^-1, lambda): negates the momentum exponents, keeps lambda.
  LaurentPoly invert_z() const;
  // Shift all exponents by -base (divide by the monomial z^base).
  LaurentPoly shift(const ExpVec& base) const;

  Cplx eval(const std::map<std::string, Rat>& params, const std::vector<Cplx>& point) const;
  void collect_symbols(std::set<std::string>& out) const;

  // Canonical rendering: lambda-degree descending, then momentum exponents
  // ascending. Variable names are x, y, z (first nvars-1) and lambda.
  std::string str() const;

 private:
  int nvars_;
  std::map<ExpVec, ParamPoly> terms_;
  void insert(const ExpVec& e, const ParamPoly& c);
  friend class SymbolicMatrix;
};

// Dense square matrix of Laurent polynomials (the symbolic Floquet matrix and
// its initial-form truncations).
class SymbolicMatrix {
 public:
  SymbolicMatrix(int n, int nvars);
  int size() const { return n_; }
  int nvars() const { return nvars_; }
  LaurentPoly& at(int i, int j);
  const LaurentPoly& at(int i, int j) const;

 private:
  int n_, nvars_;
  std::vector<LaurentPoly> e_;
};

// Sum over all permutations of signed entry products. Guarded to n <= 8;
// the cycle-cover route is the production path, this is the cross-check.
LaurentPoly leibniz_det(const SymbolicMatrix& m);

// sum_i eta_i * (z_i df/dz_i) + a * (lambda df/dlambda) - r * f, where r is
// the minimum of <(eta, a), e> over the support of f. Vanishes identically
// when f equals its own initial form for (eta, a).
LaurentPoly euler_pairing(const LaurentPoly& f, const std::vector<int>& eta_a);

// Complex integer power with negative exponents; throws on 0^negative.
Cplx cpow(Cplx base, int e);

std::string rat_str(const Rat& r);

}  // namespace bloch
