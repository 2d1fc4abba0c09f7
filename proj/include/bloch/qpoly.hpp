#pragma once

#include "bloch/symbolic.hpp"

namespace bloch {

// Dense univariate polynomial over Q, coefficient of degree i at index i.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rat> cs);
  static QPoly constant(const Rat& c);
  static QPoly monomial(int deg, const Rat& c);

  int degree() const { return (int)c_.size() - 1; }  // zero polynomial: -1
  bool is_zero() const { return c_.empty(); }
  Rat coeff(int i) const;
  const Rat& lc() const;

  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator*(const QPoly& o) const;
  QPoly scale(const Rat& s) const;
  bool operator==(const QPoly& o) const { return c_ == o.c_; }

  // Quotient and remainder; exact field division.
  static std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
  QPoly derivative() const;
  QPoly monic() const;
  static QPoly gcd(QPoly a, QPoly b);  // monic
  QPoly squarefree_part() const;

  int trailing() const;    // lowest degree with nonzero coefficient
  QPoly strip_low() const; // divide by x^trailing

  Rat eval(const Rat& x) const;
  Cplx eval(const Cplx& x) const;
  // Roots via the companion matrix; requires degree >= 1.
  std::vector<Cplx> roots() const;

 private:
  std::vector<Rat> c_;
  void trim();
};

Rat rat_pow(Rat base, int e);
Rat resultant_univ(QPoly a, QPoly b);

// Bivariate polynomial with rational coefficients, exponents >= 0.
using Bivar = std::map<std::pair<int, int>, Rat>;

int bivar_xdeg(const Bivar& f);
int bivar_ydeg(const Bivar& f);
// Coefficient-magnitude scale for relative residual tests.
double bivar_scale(const Bivar& f, const Cplx& x, const Cplx& y);
// Shift a Laurent support into the positive quadrant and strip common powers
// of both variables (legitimate when only torus points matter).
Bivar bivar_clear(const Bivar& laurent);
QPoly bivar_specialize_x(const Bivar& f, const Rat& x0);  // polynomial in y
Cplx bivar_eval(const Bivar& f, const Cplx& x, const Cplx& y);
Bivar bivar_dx(const Bivar& f);
Bivar bivar_dy(const Bivar& f);
// Coefficient of y^j as a polynomial in x.
QPoly bivar_ycoeff(const Bivar& f, int j);

// Res_y(f, g), exact, via specialization at rational points where neither
// leading y-coefficient vanishes, plus Newton interpolation.
QPoly resultant_y(const Bivar& f, const Bivar& g);

// Roots of a complex-coefficient polynomial (ascending coefficients).
std::vector<Cplx> croots(std::vector<Cplx> coeffs);

// Newton interpolation through (x_i, v_i).
QPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& vs);

}  // namespace bloch
