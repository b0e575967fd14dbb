#include "lattheta/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lattheta {

namespace {

struct Shell {
  long norm2 = 0;
  std::vector<LatticeVector> vectors;
};

// Nonzero vectors with integer norm^2 <= bound, grouped by shell.
std::vector<Shell> shells_up_to(const GramLattice& lattice, long bound) {
  std::vector<Shell> shells;
  if (bound < 1) return shells;
  for (const auto& sv : lattice.short_vectors(Rational(bound))) {
    if (!is_integer(sv.norm2))
      throw LatticeError(LatticeErrorCode::NotIntegral, "theta: non-integer norm encountered");
    long m = rat_num(sv.norm2).convert_to<long>();
    if (shells.empty() || shells.back().norm2 != m) shells.push_back({m, {}});
    shells.back().vectors.push_back(sv.vector);
  }
  return shells;
}

void require_integral(const GramLattice& lattice, const char* who) {
  if (!lattice.is_integral())
    throw LatticeError(LatticeErrorCode::NotIntegral,
                       std::string(who) + ": lattice must be integral");
}

void attach_level(const GramLattice& lattice, QExpansion& series) {
  Int level = lattice.level_and_discriminant().level;
  if (level <= std::numeric_limits<long long>::max())
    series.level = level.convert_to<long long>();
}

// Accumulates sum of term(gamma, delta) over shell pairs with
// norm2(gamma) + norm2(delta) <= precision into the series coefficients.
// term must be symmetric in its arguments.
template <typename PairTerm>
void accumulate_pairs(const GramLattice& lattice, long precision, QExpansion& out,
                      PairTerm&& term) {
  long k = 1;
  {
    Rational mn = lattice.minimum();
    k = std::max<long>(1, floor_rat(mn).convert_to<long>());
  }
  if (precision < 2 * k) return;
  auto shells = shells_up_to(lattice, precision - k);
  for (size_t a = 0; a < shells.size(); ++a) {
    for (size_t b = a; b < shells.size(); ++b) {
      long m = shells[a].norm2 + shells[b].norm2;
      if (m > precision) break;
      Rational sum = 0;
      for (const auto& u : shells[a].vectors)
        for (const auto& v : shells[b].vectors) sum += term(u, v);
      if (a != b) sum *= 2;
      out.set(m, out.at(m) + sum);
    }
  }
}

}  // namespace

Rational trace_power(const Rational& b1, const Rational& b2, int k) {
  if (k < 0) throw std::invalid_argument("trace_power: k must be >= 0");
  if (k == 0) return 2;
  Rational prev = 2, cur = b1;
  for (int i = 2; i <= k; ++i) {
    Rational next = b1 * cur - b2 * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

QExpansion theta_series(const GramLattice& lattice, long precision) {
  require_integral(lattice, "theta_series");
  if (precision < 0) throw std::invalid_argument("theta_series: precision must be >= 0");
  QExpansion series(precision);
  series.set(0, 1);
  for (const auto& shell : shells_up_to(lattice, precision))
    series.set(shell.norm2, Rational(shell.vectors.size()));
  series.weight = Rational(lattice.dim(), 2);
  attach_level(lattice, series);
  return series;
}

QExpansion theta11(const GramLattice& lattice, long precision) {
  require_integral(lattice, "theta11");
  if (precision < 0) throw std::invalid_argument("theta11: precision must be >= 0");
  const int n = lattice.dim();
  QExpansion series(precision);
  accumulate_pairs(lattice, precision, series,
                   [&](const LatticeVector& u, const LatticeVector& v) {
                     Rational ip = lattice.inner(u, v);
                     return Rational(n) * n * ip * ip -
                            Rational(n) * lattice.norm2(u) * lattice.norm2(v);
                   });
  series.weight = Rational(n + 4);
  attach_level(lattice, series);
  return series;
}

QExpansion theta_nn(const GramLattice& lattice, int n, long precision) {
  if (lattice.dim() != 2)
    throw LatticeError(LatticeErrorCode::BadDimension, "theta_nn: defined only in dimension 2");
  require_integral(lattice, "theta_nn");
  if (n < 1) throw std::invalid_argument("theta_nn: n must be >= 1");
  if (precision < 0) throw std::invalid_argument("theta_nn: precision must be >= 0");
  QExpansion series(precision);
  accumulate_pairs(lattice, precision, series,
                   [&](const LatticeVector& u, const LatticeVector& v) {
                     Rational b1 = 2 * lattice.inner(u, v);
                     Rational b2 = lattice.norm2(u) * lattice.norm2(v);
                     return trace_power(b1, b2, 2 * n) / 2;
                   });
  series.weight = Rational(2 + 4 * n);
  attach_level(lattice, series);
  return series;
}

namespace {

// Shared-enumeration core: shells are embedded once and reused for every
// polynomial evaluated against them.
struct EmbeddedShells {
  std::vector<long> norms;
  std::vector<std::vector<std::vector<double>>> points;
};

EmbeddedShells embed_shells(const Embedding& embedding, const GramLattice& lattice,
                            long precision) {
  EmbeddedShells out;
  for (const auto& shell : shells_up_to(lattice, precision)) {
    out.norms.push_back(shell.norm2);
    out.points.emplace_back();
    for (const auto& v : shell.vectors) out.points.back().push_back(embedding.map(v));
  }
  return out;
}

FloatSeries spherical_from_shells(const EmbeddedShells& shells, const GramLattice& lattice,
                                  const Polynomial& h, long precision, double tol) {
  if (h.variable_count() != lattice.dim())
    throw std::invalid_argument("spherical_theta: polynomial dimension mismatch");
  if (!h.is_homogeneous() || !is_harmonic(h))
    throw std::invalid_argument("spherical_theta: polynomial must be homogeneous harmonic");

  FloatSeries series(precision);
  if (h.degree() <= 0) series.set(0, h.eval(std::vector<double>(lattice.dim(), 0.0)));
  for (size_t i = 0; i < shells.norms.size(); ++i) {
    double sum = 0.0;
    for (const auto& p : shells.points[i]) sum += h.eval(p);
    if (std::fabs(sum) > tol) series.set(shells.norms[i], sum);
  }
  series.weight = Rational(lattice.dim(), 2) + h.degree();
  return series;
}

}  // namespace

FloatSeries spherical_theta(const Embedding& embedding, const GramLattice& lattice,
                            const Polynomial& h, long precision, double tol) {
  require_integral(lattice, "spherical_theta");
  return spherical_from_shells(embed_shells(embedding, lattice, precision), lattice, h,
                               precision, tol);
}

FloatSeries theta_datum(const Embedding& embedding, const GramLattice& lattice,
                        const HarmonicDatum& datum, long precision) {
  require_integral(lattice, "theta_datum");
  const EmbeddedShells shells = embed_shells(embedding, lattice, precision);
  FloatSeries total(precision);
  for (const auto& term : datum.terms) {
    FloatSeries product(precision);
    product.set(0, 1.0);
    for (const auto& factor : term.factors)
      product = product * spherical_from_shells(shells, lattice, factor, precision, 0.0);
    total = total + product.scaled(to_double(term.coefficient));
  }
  total.weight = Rational(lattice.dim() * datum.factor_count, 2) + datum.degree;
  return total;
}

HarmonicDatum HarmonicDatum::make(std::vector<Term> terms) {
  if (terms.empty()) throw std::invalid_argument("HarmonicDatum: no terms");
  HarmonicDatum datum;
  std::vector<int> profile;
  for (const auto& term : terms) {
    if (term.factors.empty()) throw std::invalid_argument("HarmonicDatum: term without factors");
    std::vector<int> degrees;
    for (const auto& factor : term.factors) {
      if (!factor.is_homogeneous() || !is_harmonic(factor))
        throw std::invalid_argument("HarmonicDatum: factors must be homogeneous harmonic");
      degrees.push_back(std::max(0, factor.degree()));
    }
    std::sort(degrees.begin(), degrees.end());
    if (profile.empty())
      profile = degrees;
    else if (profile != degrees)
      throw std::invalid_argument("HarmonicDatum: terms must share one degree profile");
  }
  datum.terms = std::move(terms);
  datum.factor_count = static_cast<int>(profile.size());
  for (int d : profile) datum.degree += d;
  return datum;
}

HarmonicDatum builtin_datum_p11(int n) {
  if (n < 2) throw std::invalid_argument("builtin_datum_p11: n must be >= 2");
  std::vector<HarmonicDatum::Term> terms;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Polynomial xij = Polynomial::variable(n, i) * Polynomial::variable(n, j);
      terms.push_back({Rational(2) * n * n, {xij, xij}});
    }
  }
  for (int i = 0; i < n; ++i) {
    Polynomial xi2 = Polynomial::variable(n, i) * Polynomial::variable(n, i);
    Polynomial hi = xi2.scaled(n) - rsq(n);
    terms.push_back({1, {hi, hi}});
  }
  return HarmonicDatum::make(std::move(terms));
}

HarmonicDatum builtin_datum_nn(int n) {
  if (n < 1) throw std::invalid_argument("builtin_datum_nn: n must be >= 1");
  // Re and Im of (x + iy)^{2n} via the binomial expansion.
  Polynomial re(2), im(2);
  for (int j = 0; j <= 2 * n; ++j) {
    Rational c(factorial(2 * n), factorial(j) * factorial(2 * n - j));
    int quarter = j % 4;  // i^j cycle: 1, i, -1, -i
    if (quarter >= 2) c = -c;
    Exponents e{2 * n - j, j};
    if (quarter % 2 == 0)
      re.add_term(e, c);
    else
      im.add_term(e, c);
  }
  return HarmonicDatum::make({{1, {re, re}}, {1, {im, im}}});
}

}  // namespace lattheta
