#pragma once

#include "bloch/dispersion.hpp"
#include "bloch/qpoly.hpp"

#include <set>

namespace bloch {

// Deterministic parameter draw: each symbol gets a rational in (1, 100)
// with denominator 100. Iteration order of the set fixes the assignment.
std::map<std::string, Rat> draw_params(const std::set<std::string>& symbols,
                                       unsigned long long seed);

struct CornerPoint {
  std::vector<double> z;  // entries in {+1, -1}
  double lambda = 0;
  double residual = 0;  // max |f| over the critical point system
};

// Spectrum of the operator at every corner of the Brillouin zone, with the
// residual of each (z, lambda) against the critical point system.
std::vector<CornerPoint> corner_critical_points(const PeriodicGraph& g,
                                                const std::map<std::string, Rat>& params);

double system_residual(const std::vector<LaurentPoly>& sys,
                       const std::map<std::string, Rat>& params,
                       const std::vector<Cplx>& point);

// Coefficient-magnitude scale of the system at a point, for relative
// residual comparisons.
double system_scale(const std::vector<LaurentPoly>& sys,
                    const std::map<std::string, Rat>& params,
                    const std::vector<Cplx>& point);

struct BivarRoots {
  bool degenerate = false;
  std::vector<std::array<Cplx, 2>> roots;  // both coordinates nonzero
};

// Common roots in the torus of two rational-coefficient Laurent polynomials
// in two variables, keyed by exponent pairs. Exact resultant in the second
// variable, numeric back substitution, Newton polish, residual filter.
BivarRoots solve_bivariate(const Bivar& f_laurent, const Bivar& g_laurent);

struct OracleResult {
  bool degenerate = false;
  long long count = 0;
};

// Critical point count for d = 1 graphs: exact resultant eliminating lambda,
// squarefree reduction, numeric roots, and a Jacobian certificate that every
// solution is simple. Reports degenerate instead of guessing.
OracleResult cpdeg_oracle_d1(const PeriodicGraph& g,
                             const std::map<std::string, Rat>& params);

}  // namespace bloch
