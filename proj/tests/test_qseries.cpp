#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lattheta/qseries.hpp"
#include "test_util.hpp"

using namespace lattheta;

namespace {

QExpansion series_of(long precision, std::initializer_list<std::pair<long, Rational>> coeffs) {
  QExpansion s(precision);
  for (const auto& [m, c] : coeffs) s.set(m, c);
  return s;
}

// Independent oracle: theta coefficients of an explicit binary quadratic form
// by direct counting over a box.
std::map<long, long> count_by_norm(long a, long b, long c, long den, long max_norm) {
  std::map<long, long> counts;
  for (long x = -20; x <= 20; ++x)
    for (long y = -20; y <= 20; ++y) {
      long num = a * x * x + b * x * y + c * y * y;
      REQUIRE(num % den == 0);
      long q = num / den;
      if (q <= max_norm) counts[q] += 1;
    }
  return counts;
}

QExpansion random_series(std::mt19937& rng, long precision) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<long> exp(0, precision);
  QExpansion s(precision);
  for (int i = 0; i < 6; ++i) s.set(exp(rng), Rational(num(rng), den(rng)));
  return s;
}

}  // namespace

TEST_CASE("addition: identity, cancellation, precision") {
  auto a = series_of(1, {{0, 1}, {1, 4}});
  auto zero = QExpansion(1);
  CHECK(a + zero == a);

  auto q2 = series_of(3, {{2, 1}});
  auto mq2 = series_of(3, {{2, -1}});
  CHECK((q2 + mq2).is_zero());

  auto shorter = series_of(2, {{0, 1}});
  CHECK((a + shorter).precision == 1);
}

TEST_CASE("addition of the two example theta series") {
  // Oracle: direct lattice-point counts for x^2+y^2 and x^2+xy+y^2.
  auto sq = count_by_norm(1, 0, 1, 1, 4);
  auto hex = count_by_norm(1, 1, 1, 1, 4);
  QExpansion a(4), b(4);
  for (auto [m, c] : sq) a.set(m, c);
  for (auto [m, c] : hex) b.set(m, c);
  auto expected = series_of(4, {{0, 2}, {1, 10}, {2, 4}, {3, 6}, {4, 10}});
  CHECK(a + b == expected);
}

TEST_CASE("multiplication truncates at min precision") {
  auto one_plus_q = series_of(2, {{0, 1}, {1, 1}});
  auto one_minus_q = series_of(2, {{0, 1}, {1, -1}});
  CHECK(one_plus_q * one_minus_q == series_of(2, {{0, 1}, {2, -1}}));

  // (12q^2 - 8q^4)^2 at M=4: the q^6, q^8 products fall outside precision.
  auto s = series_of(4, {{2, 12}, {4, -8}});
  CHECK(s * s == series_of(4, {{4, 144}}));
}

TEST_CASE("square of the Z^2 theta series against a pair-count oracle") {
  auto counts = count_by_norm(1, 0, 1, 1, 2);
  QExpansion theta(2);
  for (auto [m, c] : counts) theta.set(m, c);

  std::map<long, long> pair_counts;
  for (long x1 = -3; x1 <= 3; ++x1)
    for (long y1 = -3; y1 <= 3; ++y1)
      for (long x2 = -3; x2 <= 3; ++x2)
        for (long y2 = -3; y2 <= 3; ++y2) {
          long m = x1 * x1 + y1 * y1 + x2 * x2 + y2 * y2;
          if (m <= 2) pair_counts[m] += 1;
        }
  auto expected = series_of(2, {{0, 1}, {1, 8}, {2, 24}});
  QExpansion oracle(2);
  for (auto [m, c] : pair_counts) oracle.set(m, c);
  CHECK(oracle == expected);
  CHECK(theta * theta == expected);
}

TEST_CASE("scaling") {
  auto s = series_of(3, {{2, 1}, {3, -8}});
  CHECK(s.scaled(16) == series_of(3, {{2, 16}, {3, -128}}));
  CHECK(s.scaled(0).is_zero());
  auto q = series_of(1, {{1, 4}});
  CHECK(q.scaled(Rational(1, 4)) == series_of(1, {{1, 1}}));
}

TEST_CASE("weight and level metadata propagation") {
  auto a = series_of(5, {{1, 1}});
  auto b = series_of(5, {{2, 1}});
  a.weight = Rational(3);
  b.weight = Rational(3);
  a.level = 4;
  b.level = 4;
  CHECK((a + b).weight == Rational(3));
  CHECK((a + b).level == 4);
  CHECK((a * b).weight == Rational(6));

  b.weight = Rational(5);
  CHECK_FALSE((a + b).weight.has_value());
  CHECK((a * b).weight == Rational(8));
  b.level = 9;
  CHECK_FALSE((a + b).level.has_value());
  CHECK_FALSE((a * b).level.has_value());
}

TEST_CASE("evaluation basics") {
  auto one = series_of(10, {{0, 1}});
  CHECK(one.eval(0.3).value == doctest::Approx(1.0));
  auto q = series_of(1, {{1, 1}});
  CHECK(q.eval(0.5).value == doctest::Approx(0.5));
  CHECK_THROWS_AS(q.eval(0.0), std::domain_error);
  CHECK_THROWS_AS(q.eval(1.0), std::domain_error);
  CHECK_THROWS_AS(q.eval(-0.25), std::domain_error);
}

TEST_CASE("tail bound validated by doubling the precision") {
  // Theta-like series with slowly growing coefficients.
  for (long m_base : {10L, 20L}) {
    QExpansion small(m_base), big(2 * m_base);
    for (long m = 0; m <= 2 * m_base; ++m) {
      Rational c = Rational(4 * ((m % 3) + 1));
      if (m <= m_base) small.set(m, c);
      big.set(m, c);
    }
    for (double x : {0.2, 0.43, 0.6}) {
      auto lo = small.eval(x);
      auto hi = big.eval(x);
      CHECK(std::fabs(lo.value - hi.value) <= lo.tail_bound);
    }
  }
}

TEST_CASE("ring laws hold up to the precision contract") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = random_series(rng, 8);
    auto b = random_series(rng, 8);
    auto c = random_series(rng, 8);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);

    double x = 0.37;
    CHECK((a + b).eval(x).value ==
          doctest::Approx(a.eval(x).value + b.eval(x).value).epsilon(1e-12));
  }
}

TEST_CASE("text format round-trips and is canonical") {
  auto s = series_of(15, {{0, 1}, {2, Rational(-3, 2)}, {15, 7}});
  std::string text = to_text(s);
  CHECK(text == "precision 15\n0 1\n2 -3/2\n15 7\n");
  CHECK(qexpansion_from_text(text) == s);
}
