#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lattheta/sphere.hpp"
#include "test_util.hpp"

using namespace lattheta;
using testutil::random_polynomial;

namespace {

Rational mono(std::initializer_list<int> exps) {
  std::vector<int> e(exps);
  return monomial_sphere_integral(e);
}

}  // namespace

TEST_CASE("the eight S^1 table values") {
  CHECK(mono({2, 0}) == Rational(1, 2));
  CHECK(mono({2, 2}) == Rational(1, 8));
  CHECK(mono({4, 0}) == Rational(3, 8));
  CHECK(mono({4, 2}) == Rational(1, 16));
  CHECK(mono({6, 0}) == Rational(5, 16));
  CHECK(mono({4, 4}) == Rational(3, 128));
  CHECK(mono({6, 2}) == Rational(5, 128));
  CHECK(mono({8, 0}) == Rational(35, 128));
}

TEST_CASE("odd exponents give zero") {
  CHECK(mono({1, 2}) == 0);
  CHECK(mono({3, 0}) == 0);
  CHECK(mono({1, 1, 1}) == 0);
}

TEST_CASE("second-moment formulas on S^{n-1}") {
  for (int n = 2; n <= 6; ++n) {
    std::vector<int> sq(n, 0), cross(n, 0), quad(n, 0);
    sq[0] = 2;
    cross[0] = 2;
    cross[n - 1] = 2;
    quad[0] = 4;
    CHECK(monomial_sphere_integral(sq) == Rational(1, n));
    CHECK(monomial_sphere_integral(cross) == Rational(1, Int(n) * (n + 2)));
    CHECK(monomial_sphere_integral(quad) == Rational(3, Int(n) * (n + 2)));
  }
}

TEST_CASE("homogeneous integral: basics and the Laplacian route") {
  CHECK(homogeneous_sphere_integral(rsq(2)) == 1);  // constant 1 on the sphere
  // x0^2 on S^1: Delta gives -2, alpha_2 = -1/4, integral 1/2.
  auto x0sq = Polynomial::monomial(2, {2, 0}, 1);
  CHECK(laplacian(x0sq) == Polynomial::constant(2, -2));
  CHECK(homogeneous_sphere_integral(x0sq) == Rational(1, 2));
  CHECK(homogeneous_sphere_integral(Polynomial::variable(2, 0)) == 0);
  CHECK_THROWS(homogeneous_sphere_integral(parse_polynomial("1 x0^2 + 1 x0^1", 2)));
}

TEST_CASE("monomial and homogeneous integrals agree through degree 8") {
  for (int vars = 2; vars <= 5; ++vars) {
    std::vector<Exponents> all;
    Exponents cur(vars, 0);
    // enumerate all exponent vectors of degree <= 8
    auto rec = [&](auto&& self, int idx, int remaining) -> void {
      if (idx == vars) {
        all.push_back(cur);
        return;
      }
      for (int e = 0; e <= remaining; ++e) {
        cur[idx] = e;
        self(self, idx + 1, remaining - e);
      }
      cur[idx] = 0;
    };
    rec(rec, 0, 8);
    for (const auto& exps : all) {
      auto m = Polynomial::monomial(vars, exps, 1);
      CHECK(homogeneous_sphere_integral(m) == monomial_sphere_integral(exps));
    }
  }
}

TEST_CASE("random degree-6 polynomials integrate term-wise") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    auto p = random_polynomial(rng, 4, 6, true);
    Rational termwise = 0;
    for (const auto& [e, c] : p.terms()) termwise += c * monomial_sphere_integral(e);
    CHECK(homogeneous_sphere_integral(p) == termwise);
  }
}

TEST_CASE("general polynomials sum over homogeneous parts") {
  CHECK(sphere_integral(Polynomial::constant(3, 7)) == 7);

  std::mt19937 rng(37);
  std::uniform_int_distribution<int> pick(-9, 9);
  for (int trial = 0; trial < 10; ++trial) {
    Rational a20(pick(rng), 2), a11(pick(rng), 3), a02(pick(rng), 2);
    // f = a20 x^2/2 + a11 xy + a02 y^2/2 integrates to (a20 + a02)/4.
    Polynomial f = Polynomial::monomial(2, {2, 0}, a20 / 2) +
                   Polynomial::monomial(2, {1, 1}, a11) +
                   Polynomial::monomial(2, {0, 2}, a02 / 2);
    CHECK(sphere_integral(f) == (a20 + a02) / 4);
    // and its square to (3 a20^2 + 3 a02^2 + 4 a11^2 + 2 a20 a02)/32.
    Rational expect = (3 * a20 * a20 + 3 * a02 * a02 + 4 * a11 * a11 + 2 * a20 * a02) / 32;
    CHECK(sphere_integral(f * f) == expect);
  }
}

TEST_CASE("Monte-Carlo rotation sanity check") {
  std::mt19937 rng(40);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int samples = 400000;
  for (int trial = 0; trial < 3; ++trial) {
    auto p = random_polynomial(rng, 3, 4, false);
    auto rot = testutil::random_orthogonal(rng, 3);
    double exact = to_double(sphere_integral(p));

    double sum = 0, sum_rot = 0, sumsq = 0, sumsq_rot = 0;
    for (int i = 0; i < samples; ++i) {
      double x = gauss(rng), y = gauss(rng), z = gauss(rng);
      double norm = std::sqrt(x * x + y * y + z * z);
      std::vector<double> pt{x / norm, y / norm, z / norm};
      double v = p.eval(pt);
      std::vector<double> rpt(3, 0.0);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) rpt[r] += rot[r][c] * pt[c];
      double vr = p.eval(rpt);
      sum += v;
      sumsq += v * v;
      sum_rot += vr;
      sumsq_rot += vr * vr;
    }
    auto stderr_of = [&](double s, double sq) {
      double mean = s / samples;
      double var = sq / samples - mean * mean;
      return std::sqrt(std::max(var, 1e-30) / samples);
    };
    double mean = sum / samples;
    double mean_rot = sum_rot / samples;
    CHECK(std::fabs(mean - exact) <= 3.0 * stderr_of(sum, sumsq) + 1e-12);
    CHECK(std::fabs(mean_rot - exact) <= 3.0 * stderr_of(sum_rot, sumsq_rot) + 1e-12);
  }
}
