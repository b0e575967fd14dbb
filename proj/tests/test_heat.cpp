#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lattheta/heat.hpp"
#include "lattheta/qseries.hpp"
#include "lattheta/theta.hpp"
#include "test_util.hpp"

using namespace lattheta;
using testutil::fixture;
using testutil::rel_err;

namespace {

const double kPi = std::numbers::pi;

GramLattice skew_lattice() {
  // dim-2 integral lattice without the symmetries that zero out the
  // degree-2 pairings
  RationalMatrix g{{1, Rational(1, 2)}, {Rational(1, 2), 3}};
  return GramLattice::from_gram(g);
}

}  // namespace

TEST_CASE("f_eval matches the theta series along the imaginary axis") {
  auto z2 = fixture("z2.gram");
  HeatContext ctx(z2, 0.1, 1e-13);
  std::vector<double> origin{0.0, 0.0};
  double f0 = f_eval(ctx, origin);

  auto series = theta_series(z2, 40);
  double q = std::exp(-1.0 / 0.4);
  double theta_val = series.eval(q).value;
  CHECK(rel_err(4.0 * kPi * 0.1 * f0, theta_val) < 1e-10);
}

TEST_CASE("truncation self-consistency and the small-t limit") {
  auto hex = fixture("hex.gram");
  for (double t : {0.05, 0.3}) {
    HeatContext coarse(hex, t, 1e-8);
    HeatContext fine(hex, t, 1e-14);
    std::vector<double> x{0.21, -0.13};
    CHECK(std::fabs(f_eval(coarse, x) - f_eval(fine, x)) < 1e-8);
  }

  auto z2 = fixture("z2.gram");
  HeatContext tiny(z2, 0.01, 1e-10);
  std::vector<double> origin{0.0, 0.0};
  CHECK(rel_err(f_eval(tiny, origin), 1.0 / (4.0 * kPi * 0.01)) < 1e-10);
  CHECK_THROWS(HeatContext(z2, 0.0, 1e-10));
  CHECK_THROWS(HeatContext(z2, 0.1, 0.0));
}

TEST_CASE("heat_pair of 1 is f_t(0)") {
  auto hex = fixture("hex.gram");
  HeatContext ctx(hex, 0.2, 1e-12);
  std::vector<double> origin{0.0, 0.0};
  CHECK(rel_err(heat_pair(ctx, Polynomial::constant(2, 1)), f_eval(ctx, origin)) < 1e-14);
}

TEST_CASE("pairing r^2 equals the t-derivative of f_t(0)") {
  for (const char* name : {"z2.gram", "hex.gram"}) {
    auto lattice = fixture(name);
    for (double t : {0.05, 0.1, 0.3}) {
      HeatContext ctx(lattice, t, 1e-12);
      CHECK(rel_err(heat_pair(ctx, rsq(2)), dt_f0(ctx, 1)) < 1e-8);
    }
  }
}

TEST_CASE("dt_f0: finite-difference oracle and the k=2 pairing") {
  auto z2 = fixture("z2.gram");
  HeatContext ctx(z2, 0.1, 1e-12);
  std::vector<double> origin{0.0, 0.0};
  CHECK(dt_f0(ctx, 0) == doctest::Approx(f_eval(ctx, origin)).epsilon(1e-14));

  const double h = 1e-5;
  HeatContext up(z2, 0.1 + h, 1e-12);
  HeatContext down(z2, 0.1 - h, 1e-12);
  std::vector<double> at0{0.0, 0.0};
  double fd = (f_eval(up, at0) - f_eval(down, at0)) / (2 * h);
  CHECK(rel_err(dt_f0(ctx, 1), fd) < 1e-6);

  CHECK(rel_err(dt_f0(ctx, 2), heat_pair(ctx, rsq(2) * rsq(2))) < 1e-7);
  CHECK_THROWS(dt_f0(ctx, 7));
}

TEST_CASE("harmonic pairing identity") {
  // (2t)^d <h, f_t> = (4 pi t)^{-n/2} sum h(gamma) exp(-||gamma||^2 / 4t).
  // Checked on a skew lattice where both sides are genuinely nonzero.
  auto lattice = skew_lattice();
  auto emb = lattice.embed();
  for (double t : {0.1, 0.3}) {
    HeatContext ctx(lattice, t, 1e-12);
    for (const char* text : {"1 x0^1 x1^1", "1 x0^2 + -1 x1^2",
                             "1 x0^4 + -6 x0^2 x1^2 + 1 x1^4"}) {
      Polynomial h = parse_polynomial(text, 2);
      double lhs = std::pow(2 * t, h.degree()) * heat_pair(ctx, h);
      double rhs = 0.0;
      for (const auto& sv : lattice.short_vectors(ctx.truncation_bound())) {
        auto p = emb.map(sv.vector);
        rhs += h.eval(p) * std::exp(-to_double(sv.norm2) / (4 * t));
      }
      rhs /= 4 * kPi * t;
      CHECK(rel_err(lhs, rhs) < 1e-8);
    }
  }

  // on Z^2 the degree-2 pairings vanish by symmetry
  HeatContext ctx(fixture("z2.gram"), 0.1, 1e-12);
  CHECK(std::fabs(heat_pair(ctx, parse_polynomial("1 x0^1 x1^1", 2))) < 1e-12);
}

TEST_CASE("odd pairings vanish on symmetric lattices") {
  auto hex = fixture("hex.gram");
  HeatContext ctx(hex, 0.15, 1e-10);
  CHECK(std::fabs(heat_pair(ctx, Polynomial::variable(2, 0))) < 1e-10);
  CHECK(std::fabs(heat_pair(ctx, Polynomial::monomial(2, {2, 1}, 1))) < 1e-10);
}

TEST_CASE("taylor parts") {
  auto lattice = skew_lattice();
  HeatContext ctx(lattice, 0.2, 1e-12);
  auto f0 = taylor_part(ctx, 0);
  CHECK(to_double(f0.coeff({0, 0})) ==
        doctest::Approx(f_eval(ctx, std::vector<double>{0.0, 0.0})).epsilon(1e-12));

  auto f1 = taylor_part(ctx, 1);
  CHECK(f1.is_homogeneous());
  CHECK(f1.degree() == 2);
  double a11 = heat_pair(ctx, parse_polynomial("1 x0^1 x1^1", 2));
  double a20 = heat_pair(ctx, Polynomial::monomial(2, {2, 0}, 1));
  CHECK(to_double(f1.coeff({1, 1})) == doctest::Approx(a11).epsilon(1e-12));
  CHECK(to_double(f1.coeff({2, 0})) == doctest::Approx(a20 / 2).epsilon(1e-12));
  CHECK_THROWS(taylor_part(ctx, 5));
}

TEST_CASE("c invariants: derivative patterns") {
  for (const char* name : {"z2.gram", "hex.gram"}) {
    auto lattice = fixture(name);
    for (double t : {0.05, 0.1, 0.3}) {
      HeatContext ctx(lattice, t, 1e-12);
      const int one[] = {1}, two[] = {2}, three[] = {3};
      CHECK(rel_err(c_invariant(ctx, one), dt_f0(ctx, 1) / 4.0) < 1e-7);
      CHECK(rel_err(c_invariant(ctx, two), dt_f0(ctx, 2) / 64.0) < 1e-6);
      CHECK(rel_err(c_invariant(ctx, three), dt_f0(ctx, 3) / 2304.0) < 1e-6);
    }
  }
}

TEST_CASE("p11 equals 32 c11 - 32 c1^2 up to the dimension-2 factor") {
  for (auto lattice : {skew_lattice(), fixture("z2.gram")}) {
    HeatContext ctx(lattice, 0.1, 1e-12);
    const int one[] = {1}, oneone[] = {1, 1};
    double c1 = c_invariant(ctx, one);
    double c11 = c_invariant(ctx, oneone);
    double lhs = 32 * c11 - 32 * c1 * c1;
    Polynomial xy = parse_polynomial("1 x0^1 x1^1", 2);
    Polynomial d2 = parse_polynomial("1 x0^2 + -1 x1^2", 2);
    double rhs = 4 * std::pow(heat_pair(ctx, xy), 2) + std::pow(heat_pair(ctx, d2), 2);
    CHECK(rel_err(lhs, rhs) < 1e-8);
    CHECK(rel_err(p11_value(ctx) / 2.0, rhs) < 1e-8);
  }
}

TEST_CASE("c22 decomposition") {
  for (const char* name : {"z2.gram", "hex.gram"}) {
    HeatContext ctx(fixture(name), 0.1, 1e-12);
    const int two[] = {2}, twotwo[] = {2, 2};
    double c2 = c_invariant(ctx, two);
    double c22 = c_invariant(ctx, twotwo);
    Polynomial xy = parse_polynomial("1 x0^1 x1^1", 2);
    Polynomial d2 = parse_polynomial("1 x0^2 + -1 x1^2", 2);
    double s2 = 16 * (4 * std::pow(heat_pair(ctx, xy * rsq(2)), 2) +
                      std::pow(heat_pair(ctx, d2 * rsq(2)), 2));
    double s1 = 73728 * c2 * c2;
    CHECK(rel_err(73728 * c22, p22_value(ctx) + s1 + s2) < 1e-7);
  }
}

TEST_CASE("c invariants and p values are embedding independent") {
  std::mt19937 rng(97);
  auto lattice = skew_lattice();
  HeatContext base(lattice, 0.15, 1e-12);
  const int oneone[] = {1, 1};
  double base_c11 = c_invariant(base, oneone);
  double base_p11 = p11_value(base);
  double base_p22 = p22_value(base);
  for (int trial = 0; trial < 4; ++trial) {
    auto rot = lattice.embed().rotated(testutil::random_orthogonal(rng, 2));
    HeatContext ctx(lattice, rot, 0.15, 1e-12);
    CHECK(std::fabs(c_invariant(ctx, oneone) - base_c11) < 1e-9 * std::max(1.0, base_c11));
    CHECK(std::fabs(p11_value(ctx) - base_p11) < 1e-9 * std::max(1.0, base_p11));
    CHECK(std::fabs(p22_value(ctx) - base_p22) < 1e-9 * std::max(1.0, base_p22));
  }
}

TEST_CASE("scaling identity for the trivial and p22 data") {
  auto z2 = fixture("z2.gram");
  for (double t : {0.05, 0.1, 0.3}) {
    HeatContext ctx(z2, t, 1e-12);
    // degree 0: (4 pi t)^{n/2} f_t(0) = Theta(exp(-1/4t))
    double lhs = 4 * kPi * t * f_eval(ctx, std::vector<double>{0.0, 0.0});
    double q = std::exp(-1.0 / (4 * t));
    double rhs = theta_series(z2, 90).eval(q).value;
    CHECK(rel_err(lhs, rhs) < 1e-9);

    // p22: (2t)^8 (4 pi t)^2 p22 = Theta_22(exp(-1/4t))
    double lhs22 = std::pow(2 * t, 8) * std::pow(4 * kPi * t, 2) * p22_value(ctx);
    double rhs22 = theta_nn(z2, 2, 90).eval(q).value;
    CHECK(rel_err(lhs22, rhs22) < 1e-7);
  }
}

TEST_CASE("the full identity report passes on the fixture lattices") {
  for (const char* name : {"z2.gram", "hex.gram"}) {
    for (double t : {0.05, 0.1, 0.3}) {
      HeatContext ctx(fixture(name), t, 1e-10);
      for (const auto& r : heat_identities(ctx)) {
        INFO(name, " t=", t, " ", r.name, " err=", r.error);
        CHECK(r.pass);
        CHECK(r.error <= 1e-6);
      }
    }
  }
}
