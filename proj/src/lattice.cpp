#include "lattheta/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace lattheta {

namespace {

// G = R^T D R with R unit upper triangular. Exists with all d_i > 0 exactly
// when G is positive definite, which doubles as the validation test.
struct LDLT {
  std::vector<Rational> d;
  RationalMatrix r;  // r[i][j] for j > i
  bool positive = true;
};

LDLT ldlt(const RationalMatrix& g) {
  const int n = static_cast<int>(g.size());
  LDLT out;
  out.d.assign(n, 0);
  out.r.assign(n, std::vector<Rational>(n, 0));
  for (int i = 0; i < n; ++i) {
    Rational di = g[i][i];
    for (int k = 0; k < i; ++k) di -= out.d[k] * out.r[k][i] * out.r[k][i];
    if (di <= 0) {
      out.positive = false;
      return out;
    }
    out.d[i] = di;
    out.r[i][i] = 1;
    for (int j = i + 1; j < n; ++j) {
      Rational v = g[i][j];
      for (int k = 0; k < i; ++k) v -= out.d[k] * out.r[k][i] * out.r[k][j];
      out.r[i][j] = v / di;
    }
  }
  return out;
}

// Exact inverse via Gauss-Jordan; input must be nonsingular.
RationalMatrix invert(RationalMatrix m) {
  const int n = static_cast<int>(m.size());
  RationalMatrix inv(n, std::vector<Rational>(n, 0));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row)
      if (m[row][col] != 0) {
        pivot = row;
        break;
      }
    if (pivot < 0) throw std::logic_error("invert: singular matrix");
    std::swap(m[col], m[pivot]);
    std::swap(inv[col], inv[pivot]);
    Rational p = m[col][col];
    for (int j = 0; j < n; ++j) {
      m[col][j] /= p;
      inv[col][j] /= p;
    }
    for (int row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      Rational f = m[row][col];
      for (int j = 0; j < n; ++j) {
        m[row][j] -= f * m[col][j];
        inv[row][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

std::vector<double> Embedding::map(const LatticeVector& v) const {
  const int n = dim();
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i] += s[i][j] * static_cast<double>(v.coords[j]);
  return out;
}

Embedding Embedding::rotated(const std::vector<std::vector<double>>& q) const {
  const int n = dim();
  Embedding out;
  out.tolerance = tolerance;
  out.s.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out.s[i][j] += q[i][k] * s[k][j];
  return out;
}

GramLattice GramLattice::from_gram(RationalMatrix gram) {
  const int n = static_cast<int>(gram.size());
  if (n < 1) throw LatticeError(LatticeErrorCode::BadDimension, "Gram matrix must be nonempty");
  for (const auto& row : gram)
    if (static_cast<int>(row.size()) != n)
      throw LatticeError(LatticeErrorCode::NotSquare, "Gram matrix must be square");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (gram[i][j] != gram[j][i])
        throw LatticeError(LatticeErrorCode::NotSymmetric, "Gram matrix must be symmetric");
  if (!ldlt(gram).positive)
    throw LatticeError(LatticeErrorCode::NotPositiveDefinite,
                       "Gram matrix must be positive definite");

  bool integral = true;
  for (int i = 0; i < n && integral; ++i)
    for (int j = 0; j < n && integral; ++j) {
      if (i == j && !is_integer(gram[i][i])) integral = false;
      if (i != j && !is_integer(2 * gram[i][j])) integral = false;
    }
  return GramLattice(n, std::move(gram), integral);
}

Rational GramLattice::inner(const LatticeVector& u, const LatticeVector& v) const {
  if (static_cast<int>(u.coords.size()) != dim_ || static_cast<int>(v.coords.size()) != dim_)
    throw LatticeError(LatticeErrorCode::BadDimension, "inner: coordinate length mismatch");
  Rational total = 0;
  for (int i = 0; i < dim_; ++i) {
    if (u.coords[i] == 0) continue;
    Rational row = 0;
    for (int j = 0; j < dim_; ++j)
      if (v.coords[j] != 0) row += gram_[i][j] * v.coords[j];
    total += row * u.coords[i];
  }
  return total;
}

Rational GramLattice::minimum() const {
  Rational bound = gram_[0][0];
  for (int i = 1; i < dim_; ++i) bound = std::min(bound, gram_[i][i]);
  Rational best = bound;
  for (const auto& sv : short_vectors(bound)) best = std::min(best, sv.norm2);
  return best;
}

std::vector<ShortVector> GramLattice::short_vectors(const Rational& bound) const {
  std::vector<ShortVector> found;
  if (bound < 0) return found;

  const LDLT decomp = ldlt(gram_);
  const int n = dim_;
  std::vector<long long> x(n, 0);

  // Depth-first over coordinates n-1 .. 0. At level i the constraint is
  // d_i (x_i + c_i)^2 <= rem with c_i = sum_{j>i} r_ij x_j; the admissible
  // x_i form a contiguous interval around -c_i, so we start at the nearest
  // integer and scan outward with exact comparisons only.
  auto admissible = [&](int i, const Rational& center, long long xi, const Rational& rem) {
    Rational y = Rational(xi) + center;
    return decomp.d[i] * y * y <= rem;
  };

  auto dfs = [&](auto&& self, int i, const Rational& rem) -> void {
    if (i < 0) {
      bool zero = std::all_of(x.begin(), x.end(), [](long long c) { return c == 0; });
      if (!zero) {
        LatticeVector v{x};
        found.push_back({v, norm2(v)});
      }
      return;
    }
    Rational center = 0;
    for (int j = i + 1; j < n; ++j)
      if (x[j] != 0) center += decomp.r[i][j] * x[j];

    long long start = round_rat(-center).convert_to<long long>();
    if (!admissible(i, center, start, rem)) return;
    for (long long xi = start; admissible(i, center, xi, rem); ++xi) {
      x[i] = xi;
      Rational y = Rational(xi) + center;
      self(self, i - 1, rem - decomp.d[i] * y * y);
    }
    for (long long xi = start - 1; admissible(i, center, xi, rem); --xi) {
      x[i] = xi;
      Rational y = Rational(xi) + center;
      self(self, i - 1, rem - decomp.d[i] * y * y);
    }
    x[i] = 0;
  };
  dfs(dfs, n - 1, bound);

  std::sort(found.begin(), found.end(), [](const ShortVector& a, const ShortVector& b) {
    if (a.norm2 != b.norm2) return a.norm2 < b.norm2;
    return a.vector < b.vector;
  });
  return found;
}

LevelDisc GramLattice::level_and_discriminant() const {
  if (!integral_)
    throw LatticeError(LatticeErrorCode::NotIntegral,
                       "level_and_discriminant: lattice must be integral");
  const int n = dim_;
  RationalMatrix m(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = 2 * gram_[i][j];

  RationalMatrix inv = invert(m);
  Int l = 1;
  for (const auto& row : inv)
    for (const auto& entry : row) l = lcm(l, rat_den(entry));
  // N in {L, 2L}: L clears all denominators, and doubling fixes any odd
  // diagonal entry.
  Int level = l;
  for (int i = 0; i < n; ++i) {
    Rational scaled = Rational(l) * inv[i][i];
    if (rat_num(scaled) % 2 != 0) {
      level = 2 * l;
      break;
    }
  }

  Rational det = 1;
  for (const Rational& di : ldlt(m).d) det *= di;
  Int disc = rat_num(det);  // det of an integer matrix is an integer
  if ((n / 2) % 2 != 0) disc = -disc;
  return {level, disc};
}

Embedding GramLattice::embed() const {
  const int n = dim_;
  Embedding e;
  e.tolerance = 1e-12;
  e.s.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    double diag = to_double(gram_[i][i]);
    for (int k = 0; k < i; ++k) diag -= e.s[k][i] * e.s[k][i];
    if (!(diag > 0.0))
      throw LatticeError(LatticeErrorCode::EmbeddingFailure,
                         "embed: Cholesky pivot not positive");
    e.s[i][i] = std::sqrt(diag);
    for (int j = i + 1; j < n; ++j) {
      double v = to_double(gram_[i][j]);
      for (int k = 0; k < i; ++k) v -= e.s[k][i] * e.s[k][j];
      e.s[i][j] = v / e.s[i][i];
    }
  }

  double max_g = 0.0, max_resid = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double g = to_double(gram_[i][j]);
      max_g = std::max(max_g, std::fabs(g));
      double dot = 0.0;
      for (int k = 0; k < n; ++k) dot += e.s[k][i] * e.s[k][j];
      max_resid = std::max(max_resid, std::fabs(dot - g));
    }
  if (max_resid > e.tolerance * max_g)
    throw LatticeError(LatticeErrorCode::EmbeddingFailure, "embed: residual exceeds tolerance");
  return e;
}

GramLattice parse_gram(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  auto next_content_line = [&](std::string& out) {
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      bool blank = line.find_first_not_of(" \t\r\n") == std::string::npos;
      if (!blank) {
        out = line;
        return true;
      }
    }
    return false;
  };

  std::string header;
  if (!next_content_line(header))
    throw LatticeError(LatticeErrorCode::BadFormat, "gram file: empty input");
  std::istringstream hs(header);
  std::string tag;
  int n = 0;
  if (!(hs >> tag >> n) || tag != "dim" || n < 1)
    throw LatticeError(LatticeErrorCode::BadFormat, "gram file: expected 'dim n' header");

  RationalMatrix gram;
  for (int i = 0; i < n; ++i) {
    std::string row_line;
    if (!next_content_line(row_line))
      throw LatticeError(LatticeErrorCode::BadFormat, "gram file: missing matrix row");
    std::istringstream rs(row_line);
    std::vector<Rational> row;
    std::string tok;
    while (rs >> tok) {
      try {
        row.push_back(parse_rational(tok));
      } catch (const std::invalid_argument& ex) {
        throw LatticeError(LatticeErrorCode::BadFormat, std::string("gram file: ") + ex.what());
      }
    }
    if (static_cast<int>(row.size()) != n)
      throw LatticeError(LatticeErrorCode::BadFormat, "gram file: wrong row length");
    gram.push_back(std::move(row));
  }
  return GramLattice::from_gram(std::move(gram));
}

GramLattice read_gram_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LatticeError(LatticeErrorCode::BadFormat, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_gram(buf.str());
}

std::string gram_to_text(const GramLattice& lattice) {
  std::ostringstream out;
  out << "dim " << lattice.dim() << "\n";
  for (const auto& row : lattice.gram()) {
    for (size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << rat_str(row[j]);
    out << "\n";
  }
  return out.str();
}

}  // namespace lattheta
