#include "lattheta/polynomial.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace lattheta {

namespace {

int exps_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

}  // namespace

Polynomial::Polynomial(int variable_count) : vars_(variable_count) {
  if (variable_count < 1) throw std::invalid_argument("Polynomial: variable count must be >= 1");
}

Polynomial Polynomial::constant(int variable_count, const Rational& c) {
  Polynomial p(variable_count);
  p.add_term(Exponents(variable_count, 0), c);
  return p;
}

Polynomial Polynomial::variable(int variable_count, int index) {
  if (index < 0 || index >= variable_count)
    throw std::invalid_argument("Polynomial::variable: index out of range");
  Exponents e(variable_count, 0);
  e[index] = 1;
  return monomial(variable_count, std::move(e), 1);
}

Polynomial Polynomial::monomial(int variable_count, Exponents exps, const Rational& c) {
  if (static_cast<int>(exps.size()) != variable_count)
    throw std::invalid_argument("Polynomial::monomial: exponent length mismatch");
  for (int e : exps)
    if (e < 0) throw std::invalid_argument("Polynomial::monomial: negative exponent");
  Polynomial p(variable_count);
  p.add_term(exps, c);
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, exps_degree(e));
  return d;
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = exps_degree(terms_.begin()->first);
  for (const auto& [e, c] : terms_)
    if (exps_degree(e) != d) return false;
  return true;
}

Rational Polynomial::coeff(const Exponents& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponents& exps, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  if (vars_ != other.vars_) throw std::invalid_argument("Polynomial: variable count mismatch");
  Polynomial r = *this;
  for (const auto& [e, c] : other.terms_) r.add_term(e, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& other) const { return *this + (-other); }

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (vars_ != other.vars_) throw std::invalid_argument("Polynomial: variable count mismatch");
  Polynomial r(vars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) {
      Exponents e(vars_);
      for (int i = 0; i < vars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial r(vars_);
  if (c == 0) return r;
  for (const auto& [e, t] : terms_) r.terms_.emplace(e, t * c);
  return r;
}

Polynomial Polynomial::derivative(int var) const {
  if (var < 0 || var >= vars_) throw std::invalid_argument("Polynomial::derivative: bad variable");
  Polynomial r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    r.add_term(d, c * e[var]);
  }
  return r;
}

Polynomial Polynomial::homogeneous_part(int d) const {
  Polynomial r(vars_);
  for (const auto& [e, c] : terms_)
    if (exps_degree(e) == d) r.terms_.emplace(e, c);
  return r;
}

std::map<int, Polynomial> Polynomial::homogeneous_parts() const {
  std::map<int, Polynomial> parts;
  for (const auto& [e, c] : terms_) {
    int d = exps_degree(e);
    auto it = parts.find(d);
    if (it == parts.end()) it = parts.emplace(d, Polynomial(vars_)).first;
    it->second.add_term(e, c);
  }
  return parts;
}

double Polynomial::eval(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != vars_)
    throw std::invalid_argument("Polynomial::eval: point dimension mismatch");
  double total = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = to_double(c);
    for (int i = 0; i < vars_; ++i)
      for (int k = 0; k < e[i]; ++k) m *= point[i];
    total += m;
  }
  return total;
}

Rational Polynomial::eval_exact(std::span<const Rational> point) const {
  if (static_cast<int>(point.size()) != vars_)
    throw std::invalid_argument("Polynomial::eval_exact: point dimension mismatch");
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    Rational m = c;
    for (int i = 0; i < vars_; ++i)
      for (int k = 0; k < e[i]; ++k) m *= point[i];
    total += m;
  }
  return total;
}

std::string Polynomial::to_text() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << rat_str(c);
    for (int i = 0; i < vars_; ++i)
      if (e[i] > 0) out << " x" << i << "^" << e[i];
  }
  return out.str();
}

Polynomial rsq(int variable_count) {
  Polynomial r(variable_count);
  for (int i = 0; i < variable_count; ++i) {
    Exponents e(variable_count, 0);
    e[i] = 2;
    r.add_term(e, 1);
  }
  return r;
}

Polynomial parse_polynomial(std::string_view text, int variable_count) {
  Polynomial result(variable_count);
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t next = text.find('+', pos);
    std::string_view term =
        text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    pos = next == std::string_view::npos ? text.size() + 1 : next + 1;

    std::istringstream in{std::string(term)};
    std::string tok;
    if (!(in >> tok)) {
      if (result.is_zero() && pos > text.size()) break;
      throw std::invalid_argument("parse_polynomial: empty term");
    }
    Rational c;
    Exponents e(variable_count, 0);
    if (tok[0] == 'x') {
      c = 1;  // coefficient omitted
    } else {
      c = parse_rational(tok);
      if (!(in >> tok)) tok.clear();
    }
    while (!tok.empty()) {
      if (tok[0] != 'x') throw std::invalid_argument("parse_polynomial: expected variable: " + tok);
      size_t caret = tok.find('^');
      int var = std::stoi(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
      int exp = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
      if (var < 0 || var >= variable_count)
        throw std::invalid_argument("parse_polynomial: variable out of range: " + tok);
      if (exp < 0) throw std::invalid_argument("parse_polynomial: negative exponent: " + tok);
      e[var] += exp;
      if (!(in >> tok)) tok.clear();
    }
    result.add_term(e, c);
    if (next == std::string_view::npos) break;
  }
  return result;
}

}  // namespace lattheta
