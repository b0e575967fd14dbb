#include "lattheta/polyalg.hpp"

#include <cmath>
#include <stdexcept>

namespace lattheta {

Polynomial laplacian(const Polynomial& p) {
  const int n = p.variable_count();
  Polynomial out(n);
  for (const auto& [e, c] : p.terms()) {
    for (int i = 0; i < n; ++i) {
      if (e[i] < 2) continue;
      Exponents d = e;
      d[i] -= 2;
      out.add_term(d, -c * e[i] * (e[i] - 1));
    }
  }
  return out;
}

Rational pairing(const Polynomial& p, const Polynomial& q) {
  if (p.variable_count() != q.variable_count())
    throw std::invalid_argument("pairing: variable count mismatch");
  Rational total = 0;
  for (const auto& [e, c] : p.terms()) {
    Rational qc = q.coeff(e);
    if (qc == 0) continue;
    Rational fact = 1;
    for (int exp : e) fact *= factorial(exp);
    total += c * qc * fact;
  }
  return total;
}

bool is_harmonic(const Polynomial& p) { return laplacian(p).is_zero(); }

std::vector<std::pair<int, Polynomial>> harmonic_decompose(const Polynomial& p) {
  if (!p.is_homogeneous())
    throw std::invalid_argument("harmonic_decompose: input must be homogeneous");
  if (p.is_zero()) return {};

  const int v = p.variable_count();
  const int d = p.degree();
  Polynomial lap = laplacian(p);
  if (lap.is_zero()) return {{0, p}};

  // Delta P = sum_{l>=1} lambda_l rsq^{l-1} h_{d-2l} with
  // lambda_l = (-2l)(v + 2l + 2(d-2l) - 2), nonzero for all valid l.
  auto sub = harmonic_decompose(lap);
  std::vector<std::pair<int, Polynomial>> result;
  Polynomial top = p;
  const Polynomial r = rsq(v);
  for (const auto& [j, u] : sub) {
    int l = j + 1;
    Rational lambda = Rational(-2 * l) * (v + 2 * l + 2 * (d - 2 * l) - 2);
    Polynomial h = u.scaled(1 / lambda);
    Polynomial r_pow = Polynomial::constant(v, 1);
    for (int k = 0; k < l; ++k) r_pow = r_pow * r;
    top = top - r_pow * h;
    result.emplace_back(l, std::move(h));
  }
  if (!top.is_zero()) result.insert(result.begin(), {0, std::move(top)});
  return result;
}

double gaussian_apply(const Polynomial& p, double a, std::span<const double> shift) {
  if (a == 0.0) throw std::invalid_argument("gaussian_apply: a must be nonzero");
  if (static_cast<int>(shift.size()) != p.variable_count())
    throw std::invalid_argument("gaussian_apply: shift dimension mismatch");

  std::vector<double> neg_shift(shift.size());
  double norm2 = 0.0;
  for (size_t i = 0; i < shift.size(); ++i) {
    neg_shift[i] = -shift[i];
    norm2 += shift[i] * shift[i];
  }

  double total = 0.0;
  for (const auto& [d, part] : p.homogeneous_parts()) {
    Polynomial q = part;
    double acc = 0.0;
    double w = 1.0;  // (-1/2a)^k / k!
    for (int k = 0; !q.is_zero(); ++k) {
      if (k > 0) w *= -1.0 / (2.0 * a) / k;
      acc += w * q.eval(neg_shift);
      q = laplacian(q);
    }
    total += std::pow(a, d) * acc;
  }
  return total * std::exp(0.5 * a * norm2);
}

}  // namespace lattheta
