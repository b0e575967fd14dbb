#pragma once

#include <span>

#include "lattheta/polyalg.hpp"

namespace lattheta {

// Integrals over the unit sphere in R^v (v = number of variables = ambient
// dimension) against the normalized invariant measure with total mass 1.
// Only the normalized measure is exposed; unnormalized volume factors cancel
// in every downstream use.

// Integral of x^I. Zero when any exponent is odd; otherwise
//   (prod_k i_k! / (i_k/2)!) * prod_{m=1}^{d/2} 1 / (2(v + 2m - 2)).
Rational monomial_sphere_integral(std::span<const int> exps);

// Integral of a homogeneous polynomial: 0 for odd degree, alpha_d Delta^{d/2} P
// for even degree d, with alpha_{2k} = 1 / ((-2)^k k! prod_{m=1}^k (v + 2m - 2)).
Rational homogeneous_sphere_integral(const Polynomial& p);

// Integral of an arbitrary polynomial: sum over homogeneous parts.
Rational sphere_integral(const Polynomial& p);

}  // namespace lattheta
