#include "lattheta/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace lattheta {

namespace {

template <typename S>
void merge_add(S& out, const S& a, const S& b) {
  out.precision = std::min(a.precision, b.precision);
  for (const auto& [m, c] : a.coeffs) out.set(m, c);
  for (const auto& [m, c] : b.coeffs) out.set(m, out.at(m) + c);
  if (a.weight && b.weight && *a.weight == *b.weight) out.weight = a.weight;
  if (a.level && b.level && *a.level == *b.level) out.level = a.level;
}

template <typename S>
void merge_mul(S& out, const S& a, const S& b) {
  out.precision = std::min(a.precision, b.precision);
  for (const auto& [ma, ca] : a.coeffs) {
    if (ma > out.precision) break;
    for (const auto& [mb, cb] : b.coeffs) {
      if (ma + mb > out.precision) break;
      out.set(ma + mb, out.at(ma + mb) + ca * cb);
    }
  }
  if (a.weight && b.weight) out.weight = *a.weight + *b.weight;
  if (a.level && b.level && *a.level == *b.level) out.level = a.level;
}

}  // namespace

Rational QExpansion::at(long m) const {
  auto it = coeffs.find(m);
  return it == coeffs.end() ? Rational(0) : it->second;
}

void QExpansion::set(long m, const Rational& value) {
  if (m < 0) throw std::invalid_argument("QExpansion: negative exponent");
  if (value == 0 || m > precision) {
    coeffs.erase(m);
    return;
  }
  coeffs[m] = value;
}

QExpansion QExpansion::operator+(const QExpansion& other) const {
  QExpansion out;
  merge_add(out, *this, other);
  return out;
}

QExpansion QExpansion::operator*(const QExpansion& other) const {
  QExpansion out;
  merge_mul(out, *this, other);
  return out;
}

QExpansion QExpansion::scaled(const Rational& c) const {
  QExpansion out(precision);
  out.weight = weight;
  out.level = level;
  if (c == 0) return out;
  for (const auto& [m, v] : coeffs) out.coeffs.emplace(m, v * c);
  return out;
}

bool QExpansion::operator==(const QExpansion& other) const {
  return precision == other.precision && !first_difference(*this, other);
}

QExpansion::Eval QExpansion::eval(double x) const {
  if (!(x > 0.0 && x < 1.0)) throw std::domain_error("QExpansion::eval: x must lie in (0,1)");
  // Horner over the sparse exponent list, highest power first.
  double value = 0.0;
  long last = coeffs.empty() ? 0 : coeffs.rbegin()->first;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    value = value * std::pow(x, static_cast<double>(last - it->first)) + to_double(it->second);
    last = it->first;
  }
  value *= std::pow(x, static_cast<double>(last));

  double max_abs = 0.0;
  for (const auto& [m, c] : coeffs) max_abs = std::max(max_abs, std::fabs(to_double(c)));
  double tail = 4.0 * max_abs * std::pow(x, static_cast<double>(precision + 1)) / (1.0 - x);
  return {value, tail};
}

std::optional<long> first_difference(const QExpansion& a, const QExpansion& b) {
  long limit = std::min(a.precision, b.precision);
  std::optional<long> first;
  for (const auto& [m, c] : a.coeffs)
    if (m <= limit && c != b.at(m) && (!first || m < *first)) first = m;
  for (const auto& [m, c] : b.coeffs)
    if (m <= limit && c != a.at(m) && (!first || m < *first)) first = m;
  return first;
}

std::string to_text(const QExpansion& series) {
  std::ostringstream out;
  out << "precision " << series.precision << "\n";
  for (const auto& [m, c] : series.coeffs) out << m << " " << rat_str(c) << "\n";
  return out.str();
}

QExpansion qexpansion_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tag;
  long precision = 0;
  if (!(in >> tag >> precision) || tag != "precision")
    throw std::invalid_argument("qexpansion_from_text: missing precision header");
  QExpansion series(precision);
  long m = 0;
  std::string value;
  while (in >> m >> value) series.set(m, parse_rational(value));
  return series;
}

double FloatSeries::at(long m) const {
  auto it = coeffs.find(m);
  return it == coeffs.end() ? 0.0 : it->second;
}

void FloatSeries::set(long m, double value) {
  if (m < 0) throw std::invalid_argument("FloatSeries: negative exponent");
  if (value == 0.0 || m > precision) {
    coeffs.erase(m);
    return;
  }
  coeffs[m] = value;
}

FloatSeries FloatSeries::operator+(const FloatSeries& other) const {
  FloatSeries out;
  merge_add(out, *this, other);
  return out;
}

FloatSeries FloatSeries::operator*(const FloatSeries& other) const {
  FloatSeries out;
  merge_mul(out, *this, other);
  return out;
}

FloatSeries FloatSeries::scaled(double c) const {
  FloatSeries out(precision);
  out.weight = weight;
  out.level = level;
  if (c == 0.0) return out;
  for (const auto& [m, v] : coeffs) out.coeffs.emplace(m, v * c);
  return out;
}

double FloatSeries::eval(double x) const {
  double value = 0.0;
  long last = coeffs.empty() ? 0 : coeffs.rbegin()->first;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    value = value * std::pow(x, static_cast<double>(last - it->first)) + it->second;
    last = it->first;
  }
  return value * std::pow(x, static_cast<double>(last));
}

std::string to_text(const FloatSeries& series) {
  std::ostringstream out;
  out << "float\nprecision " << series.precision << "\n";
  char buf[64];
  for (const auto& [m, c] : series.coeffs) {
    std::snprintf(buf, sizeof(buf), "%.17g", c);
    out << m << " " << buf << "\n";
  }
  return out.str();
}

}  // namespace lattheta
