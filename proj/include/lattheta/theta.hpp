#pragma once

#include <vector>

#include "lattheta/lattice.hpp"
#include "lattheta/polyalg.hpp"
#include "lattheta/qseries.hpp"

namespace lattheta {

// Weighted sum of products of harmonic polynomials. Each term contributes
// coefficient * prod_i <h_i, f_t> to the lattice invariant, and the matching
// product of spherical theta functions to the invariant modular form. All
// terms must share the same multiset of factor degrees, so the total degree
// and factor count are well defined.
struct HarmonicDatum {
  struct Term {
    Rational coefficient;
    std::vector<Polynomial> factors;
  };

  std::vector<Term> terms;
  int degree = 0;        // sum of factor degrees within a term
  int factor_count = 0;  // m

  // Validates harmonicity, homogeneity and the shared degree profile.
  static HarmonicDatum make(std::vector<Term> terms);
};

// Classical theta series: a_m = #{gamma : ||gamma||^2 = m}, a_0 = 1.
QExpansion theta_series(const GramLattice& lattice, long precision);

// O(n)-invariant form of weight n+4 from the degree-2 harmonic system:
// a_m = sum over pairs with ||gamma||^2 + ||delta||^2 = m of
//       n^2 <gamma,delta>^2 - n ||gamma||^2 ||delta||^2,
// computed purely from Gram inner products.
QExpansion theta11(const GramLattice& lattice, long precision);

// Dimension-2 invariant of weight 2+4n:
// a_m = sum over pairs of cos(2n angle) ||gamma||^{2n} ||delta||^{2n},
// evaluated exactly as t_{2n}(b1, b2)/2 per pair with b1 = 2<gamma,delta>,
// b2 = ||gamma||^2 ||delta||^2.
QExpansion theta_nn(const GramLattice& lattice, int n, long precision);

// t_k = x^k + y^k for the roots of X^2 - b1 X + b2 = 0:
// t_0 = 2, t_1 = b1, t_k = b1 t_{k-1} - b2 t_{k-2}.
Rational trace_power(const Rational& b1, const Rational& b2, int k);

// Spherical theta function Theta_{h,Lambda}: per-shell sums of h over the
// embedded vectors. Coefficients are floats; entries with |c| <= tol are
// clamped to zero.
FloatSeries spherical_theta(const Embedding& embedding, const GramLattice& lattice,
                            const Polynomial& h, long precision, double tol = 0.0);

// Theta_{p,Lambda} = sum_j c_j prod_i Theta_{h_ij,Lambda}.
FloatSeries theta_datum(const Embedding& embedding, const GramLattice& lattice,
                        const HarmonicDatum& datum, long precision);

// Degree-4 system for E^n: 2n^2 (x_i x_j)^2 terms for i < j plus
// (n x_i^2 - sum_j x_j^2)^2 for each i.
HarmonicDatum builtin_datum_p11(int n);

// Dimension-2 system of degree 4n: squares of Re((x+iy)^{2n}) and
// Im((x+iy)^{2n}).
HarmonicDatum builtin_datum_nn(int n);

}  // namespace lattheta
