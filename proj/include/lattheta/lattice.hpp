#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "lattheta/rational.hpp"

namespace lattheta {

enum class LatticeErrorCode {
  NotSquare,
  NotSymmetric,
  NotPositiveDefinite,
  NotIntegral,
  BadDimension,
  BadFormat,
  EmbeddingFailure,
};

class LatticeError : public std::runtime_error {
 public:
  LatticeError(LatticeErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  LatticeErrorCode code() const { return code_; }

 private:
  LatticeErrorCode code_;
};

using RationalMatrix = std::vector<std::vector<Rational>>;

// Integer coordinate vector in the lattice basis.
struct LatticeVector {
  std::vector<long long> coords;

  LatticeVector operator-() const {
    LatticeVector v = *this;
    for (auto& c : v.coords) c = -c;
    return v;
  }
  bool operator==(const LatticeVector&) const = default;
  auto operator<=>(const LatticeVector&) const = default;
};

struct ShortVector {
  LatticeVector vector;
  Rational norm2;
};

// Floating embedding of the lattice: an n x n matrix whose columns are the
// embedded basis vectors, with s^T s ~ G within `tolerance` (relative to
// max |G|). embed() produces the upper-triangular Cholesky factor; rotated()
// yields the other admissible embeddings Q*s used by the invariance checks.
struct Embedding {
  std::vector<std::vector<double>> s;
  double tolerance = 1e-12;

  int dim() const { return static_cast<int>(s.size()); }
  std::vector<double> map(const LatticeVector& v) const;
  Embedding rotated(const std::vector<std::vector<double>>& q) const;
};

struct LevelDisc {
  Int level;
  Int discriminant;
};

// Lattice given by a symmetric positive definite rational Gram matrix.
// Immutable after validation.
class GramLattice {
 public:
  static GramLattice from_gram(RationalMatrix gram);

  int dim() const { return dim_; }
  const RationalMatrix& gram() const { return gram_; }
  bool is_integral() const { return integral_; }

  Rational inner(const LatticeVector& u, const LatticeVector& v) const;
  Rational norm2(const LatticeVector& v) const { return inner(v, v); }

  // Smallest nonzero norm^2 (the first minimal length k).
  Rational minimum() const;

  // Every nonzero vector with norm^2 <= bound, both signs, each exactly once,
  // sorted by (norm^2, lexicographic coords). Exact Fincke-Pohst enumeration
  // over a rational LDL^T decomposition; no floating point decides any bound.
  std::vector<ShortVector> short_vectors(const Rational& bound) const;

  // Level N and discriminant D of an integral lattice: with M = 2G,
  // N = min{N > 0 : N M^{-1} integral with even diagonal} and
  // D = (-1)^floor(n/2) det(M).
  LevelDisc level_and_discriminant() const;

  // Upper-triangular Cholesky factor with positive diagonal.
  Embedding embed() const;

 private:
  GramLattice(int dim, RationalMatrix gram, bool integral)
      : dim_(dim), gram_(std::move(gram)), integral_(integral) {}

  int dim_;
  RationalMatrix gram_;
  bool integral_;
};

// Gram file format: line "dim n", then n rows of n rationals; '#' starts a
// comment.
GramLattice parse_gram(std::string_view text);
GramLattice read_gram_file(const std::filesystem::path& path);
std::string gram_to_text(const GramLattice& lattice);

}  // namespace lattheta
