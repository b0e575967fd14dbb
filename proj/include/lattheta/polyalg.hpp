#pragma once

#include <span>
#include <utility>
#include <vector>

#include "lattheta/polynomial.hpp"

namespace lattheta {

// Sign convention: Delta is the NEGATIVE of the coordinate Laplacian,
// Delta P = -sum_i d^2 P / dx_i^2. Every identity in this library (harmonic
// decomposition scaling constants, sphere integrals, the Gaussian formula)
// assumes this sign.
Polynomial laplacian(const Polynomial& p);

// <P, Q> = P(d/dx_1, ..., d/dx_n) Q evaluated at 0. Bilinear, symmetric,
// positive definite; monomials are orthogonal with <x^I, x^I> = I!.
Rational pairing(const Polynomial& p, const Polynomial& q);

bool is_harmonic(const Polynomial& p);

// Unique decomposition P = sum_l rsq^l h_{d-2l} of a homogeneous P with each
// h harmonic homogeneous. Returns (l, h) pairs with h nonzero, ascending l.
// Solved degree-by-degree: the parts of Delta P determine the l >= 1 parts of
// P through the invertible constants of Delta(rsq^l h), and the top harmonic
// part is the remainder.
std::vector<std::pair<int, Polynomial>> harmonic_decompose(const Polynomial& p);

// Value at x = 0 of P(d/dx) applied to x -> exp((a/2) * ||x - shift||^2).
// For homogeneous P of degree d this is
//   a^d * [sum_k (-1/2a)^k (1/k!) (Delta^k P)(-shift)] * exp((a/2)||shift||^2);
// inhomogeneous P is summed over its homogeneous parts.
double gaussian_apply(const Polynomial& p, double a, std::span<const double> shift);

}  // namespace lattheta
