#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace lattheta {

// All exact arithmetic in this library runs on arbitrary-precision
// rationals; floating point appears only in embeddings and heat sums.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rational& r) { return numerator(r); }
inline Int rat_den(const Rational& r) { return denominator(r); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Exact: every double is a dyadic rational.
inline Rational rational_of_double(double x) { return Rational(x); }

inline Int floor_rat(const Rational& r) {
  Int q = numerator(r) / denominator(r);
  if (numerator(r) < 0 && q * denominator(r) != numerator(r)) --q;
  return q;
}

inline Int ceil_rat(const Rational& r) { return -floor_rat(-r); }

// Nearest integer, halves round up.
inline Int round_rat(const Rational& r) { return floor_rat(r + Rational(1, 2)); }

inline Rational abs_rat(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Rational pow_rat(const Rational& base, int exp) {
  if (exp < 0) throw std::invalid_argument("pow_rat: negative exponent");
  Rational acc = 1, b = base;
  for (int e = exp; e > 0; e >>= 1) {
    if (e & 1) acc *= b;
    b *= b;
  }
  return acc;
}

inline Int factorial(int n) {
  Int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Canonical form: "p" when the denominator is 1, else "p/q".
inline std::string rat_str(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

// Accepts "p", "-p", "p/q" with optional surrounding whitespace.
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  };
  std::string_view t = trim(text);
  if (t.empty()) throw std::invalid_argument("parse_rational: empty input");
  auto check_digits = [&](std::string_view v) {
    if (!v.empty() && (v.front() == '+' || v.front() == '-')) v.remove_prefix(1);
    if (v.empty()) throw std::invalid_argument("parse_rational: bad number: " + std::string(text));
    for (char c : v)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("parse_rational: bad number: " + std::string(text));
  };
  auto slash = t.find('/');
  if (slash == std::string_view::npos) {
    check_digits(t);
    return Rational(Int(std::string(t)));
  }
  std::string_view num = trim(t.substr(0, slash));
  std::string_view den = trim(t.substr(slash + 1));
  check_digits(num);
  check_digits(den);
  Int d{std::string(den)};
  if (d == 0) throw std::invalid_argument("parse_rational: zero denominator");
  return Rational(Int(std::string(num)), d);
}

}  // namespace lattheta
