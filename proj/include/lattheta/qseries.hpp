#pragma once

#include <map>
#include <optional>
#include <string>

#include "lattheta/rational.hpp"

namespace lattheta {

// Truncated q-expansion with exact rational coefficients. `precision` means
// the stored coefficients are correct for every exponent m <= precision
// (inclusive); arithmetic never claims more than the weaker operand allows.
struct QExpansion {
  std::map<long, Rational> coeffs;  // nonzero entries only, exponent -> a_m
  long precision = 0;
  std::optional<Rational> weight;
  std::optional<long long> level;

  QExpansion() = default;
  explicit QExpansion(long precision_in) : precision(precision_in) {}

  Rational at(long m) const;
  void set(long m, const Rational& value);  // drops zeros and exponents > precision

  bool is_zero() const { return coeffs.empty(); }

  QExpansion operator+(const QExpansion& other) const;
  QExpansion operator*(const QExpansion& other) const;  // Cauchy product, truncated
  QExpansion scaled(const Rational& c) const;

  // Coefficient-wise equality through min precision plus equal precision;
  // metadata is ignored.
  bool operator==(const QExpansion& other) const;

  // Sum over stored exponents at 0 < x < 1, plus a heuristic tail bound
  // 4 * max|a_m| * x^(M+1) / (1-x).
  struct Eval {
    double value;
    double tail_bound;
  };
  Eval eval(double x) const;
};

inline QExpansion operator*(const Rational& c, const QExpansion& a) { return a.scaled(c); }

// First exponent (<= min precision) where the two series differ; nullopt when
// they agree through min(a.precision, b.precision).
std::optional<long> first_difference(const QExpansion& a, const QExpansion& b);

// Text format: line "precision M", then "m a_m" per nonzero coefficient in
// ascending m. Exact decimal integers/rationals only.
std::string to_text(const QExpansion& series);
QExpansion qexpansion_from_text(std::string_view text);

// Float-coefficient companion used by the spherical theta engines. Same
// layout, coefficients are doubles printed with 17 significant digits under
// a leading "float" header line.
struct FloatSeries {
  std::map<long, double> coeffs;
  long precision = 0;
  std::optional<Rational> weight;
  std::optional<long long> level;

  FloatSeries() = default;
  explicit FloatSeries(long precision_in) : precision(precision_in) {}

  double at(long m) const;
  void set(long m, double value);

  FloatSeries operator+(const FloatSeries& other) const;
  FloatSeries operator*(const FloatSeries& other) const;
  FloatSeries scaled(double c) const;

  double eval(double x) const;  // plain truncated evaluation
};

std::string to_text(const FloatSeries& series);

}  // namespace lattheta
