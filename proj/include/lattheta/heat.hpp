#pragma once

#include <span>
#include <string>
#include <vector>

#include "lattheta/lattice.hpp"
#include "lattheta/polyalg.hpp"
#include "lattheta/polynomial.hpp"

namespace lattheta {

// Immutable evaluation context for the heat flux
//   f_t(x) = (4 pi t)^{-n/2} sum_gamma exp(-||x - gamma||^2 / 4t).
// The lattice sum is truncated at norm^2 <= B with
//   B = 4t (ln(1/eps) + n ln(1 + 1/t) + 20),
// a heuristic validated by doubling tests. Vectors are enumerated once, with
// one extra unit of radius so evaluation points |x| <= 1 stay covered.
class HeatContext {
 public:
  HeatContext(GramLattice lattice, double t, double epsilon);
  HeatContext(GramLattice lattice, Embedding embedding, double t, double epsilon);

  const GramLattice& lattice() const { return lattice_; }
  const Embedding& embedding() const { return embedding_; }
  double t() const { return t_; }
  double epsilon() const { return epsilon_; }
  const Rational& truncation_bound() const { return bound_; }

  struct Shell {
    Rational norm2;
    double norm2_d;
    std::vector<std::vector<double>> points;  // embedded vectors
  };
  const std::vector<Shell>& shells() const { return shells_; }  // excludes gamma = 0

 private:
  GramLattice lattice_;
  Embedding embedding_;
  double t_;
  double epsilon_;
  Rational bound_;
  std::vector<Shell> shells_;
};

// f_t at x (|x| <= 1 within the stated truncation error).
double f_eval(const HeatContext& ctx, std::span<const double> x);

// <P, f_t>: P as a constant-coefficient differential operator applied to f_t
// at the origin, via the Gaussian formula summed over lattice points.
double heat_pair(const HeatContext& ctx, const Polynomial& p);

// k-th t-derivative of f_t(0), built analytically per shell: each summand
// differentiates to (polynomial in 1/t) times itself. Supported for k <= 6.
double dt_f0(const HeatContext& ctx, int k);

// Homogeneous degree-2k Taylor part of f_t at 0: coefficient of x^I is
// <x^I, f_t> / I!. Coefficients are exact rational images of the computed
// doubles so the result can feed the exact sphere integrator.
Polynomial taylor_part(const HeatContext& ctx, int k);

// c_{k_1...k_m} = integral over S^{n-1} of f_{k_1} ... f_{k_m}; requires
// sum 2 k_i <= 8.
double c_invariant(const HeatContext& ctx, std::span<const int> ks);

// p11 = 2n^2 sum_{i<j} <x_i x_j, f_t>^2 + sum_i <n x_i^2 - rsq, f_t>^2.
double p11_value(const HeatContext& ctx);

// p22 = <x0^4 - 6 x0^2 x1^2 + x1^4, f_t>^2 + 16 <x0 x1 (x0^2 - x1^2), f_t>^2
// (dimension 2 only).
double p22_value(const HeatContext& ctx);

// One row of the heat identity report: an identity's two sides, the relative
// error, and the tolerance it must meet. An identity whose both sides are
// numerically zero passes on the absolute fallback.
struct IdentityResult {
  std::string name;
  double lhs;
  double rhs;
  double error;  // |lhs-rhs| / max(|lhs|, |rhs|), or |lhs-rhs| when both tiny
  double tolerance;
  bool pass;
};

// Runs every heat identity supported by the lattice dimension (<= 4):
// <r^{2k}, f_t> = d^k/dt^k f_t(0); the harmonic pairing identity; the
// c_1, c_2, c_3 derivative patterns; the c_22 decomposition and the
// theta scaling identity (dimension 2); p11 scaling for all dimensions.
std::vector<IdentityResult> heat_identities(const HeatContext& ctx);

}  // namespace lattheta
