#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "lattheta/rational.hpp"

namespace lattheta {

// Exponent vector: one entry per variable.
using Exponents = std::vector<int>;

// Sparse multivariate polynomial over the rationals. The variable count is
// fixed per value; zero coefficients are never stored. Immutable in spirit:
// operations return fresh values.
class Polynomial {
 public:
  explicit Polynomial(int variable_count);

  static Polynomial constant(int variable_count, const Rational& c);
  static Polynomial variable(int variable_count, int index);
  static Polynomial monomial(int variable_count, Exponents exps, const Rational& c);

  int variable_count() const { return vars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  // Degree of the zero polynomial is -1 by convention (stands in for -inf).
  int degree() const;
  bool is_homogeneous() const;
  Rational coeff(const Exponents& exps) const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial scaled(const Rational& c) const;

  bool operator==(const Polynomial& other) const = default;

  Polynomial derivative(int var) const;
  Polynomial homogeneous_part(int d) const;
  std::map<int, Polynomial> homogeneous_parts() const;

  double eval(std::span<const double> point) const;
  Rational eval_exact(std::span<const Rational> point) const;

  // Appends a term, combining with any existing one. Internal normalization
  // drops the key when the sum is zero.
  void add_term(const Exponents& exps, const Rational& c);

  std::string to_text() const;

 private:
  int vars_;
  std::map<Exponents, Rational> terms_;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return p.scaled(c); }

// The squared radius: sum of x_i^2 over all variables.
Polynomial rsq(int variable_count);

// Term format: `c x0^a x1^b ...` joined by `+`; rationals as `p/q`.
Polynomial parse_polynomial(std::string_view text, int variable_count);

}  // namespace lattheta
