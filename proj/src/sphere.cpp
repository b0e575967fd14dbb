#include "lattheta/sphere.hpp"

#include <numeric>
#include <stdexcept>

namespace lattheta {

Rational monomial_sphere_integral(std::span<const int> exps) {
  const int v = static_cast<int>(exps.size());
  if (v < 1) throw std::invalid_argument("monomial_sphere_integral: empty exponent vector");
  int d = 0;
  for (int e : exps) {
    if (e < 0) throw std::invalid_argument("monomial_sphere_integral: negative exponent");
    if (e % 2 != 0) return 0;
    d += e;
  }
  Rational result = 1;
  for (int e : exps) result *= Rational(factorial(e), factorial(e / 2));
  for (int m = 1; m <= d / 2; ++m) result /= 2 * (v + 2 * m - 2);
  return result;
}

Rational homogeneous_sphere_integral(const Polynomial& p) {
  if (!p.is_homogeneous())
    throw std::invalid_argument("homogeneous_sphere_integral: input must be homogeneous");
  if (p.is_zero()) return 0;
  const int v = p.variable_count();
  const int d = p.degree();
  if (d % 2 != 0) return 0;
  const int k = d / 2;

  Polynomial iterated = p;
  for (int i = 0; i < k; ++i) iterated = laplacian(iterated);
  Rational scalar = iterated.coeff(Exponents(v, 0));

  Rational inv_alpha = factorial(k);  // (-2)^k k! prod_m (v + 2m - 2)
  for (int m = 1; m <= k; ++m) inv_alpha *= Rational(-2) * (v + 2 * m - 2);
  return scalar / inv_alpha;
}

Rational sphere_integral(const Polynomial& p) {
  Rational total = 0;
  for (const auto& [d, part] : p.homogeneous_parts()) total += homogeneous_sphere_integral(part);
  return total;
}

}  // namespace lattheta
