#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kummer/lattice/matrix.hpp"

namespace kummer::lattice {

/// Integer polynomial in T, coefficients in ascending degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(IntVector ascending) : c_(std::move(ascending)) { trim(); }

  static Polynomial monomial(std::size_t degree, const Integer& coeff = 1) {
    IntVector c(degree + 1, Integer(0));
    c[degree] = coeff;
    return Polynomial(std::move(c));
  }
  /// T - r
  static Polynomial linear(const Integer& root) { return Polynomial({Integer(-root), Integer(1)}); }

  const IntVector& coefficients() const noexcept { return c_; }
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  Integer coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }
  Integer leading() const { return c_.empty() ? Integer(0) : c_.back(); }

  Integer operator()(const Integer& x) const {
    Integer v = 0;
    for (std::size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
    return v;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    IntVector c(a.c_.size() + b.c_.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }

  Polynomial pow(unsigned e) const {
    Polynomial r({Integer(1)});
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  /// Exact division by a monic polynomial; nullopt-like failure reported via the bool.
  std::pair<Polynomial, bool> divide_monic(const Polynomial& divisor) const {
    if (divisor.leading() != 1) throw std::invalid_argument("divisor must be monic");
    if (degree() < divisor.degree()) return {Polynomial(), is_zero()};
    IntVector rem = c_;
    const std::size_t dd = static_cast<std::size_t>(divisor.degree());
    IntVector quot(rem.size() - dd, Integer(0));
    for (std::size_t i = quot.size(); i-- > 0;) {
      Integer q = rem[i + dd];
      quot[i] = q;
      if (q == 0) continue;
      for (std::size_t j = 0; j <= dd; ++j) rem[i + j] -= q * divisor.c_[j];
    }
    bool exact = true;
    for (const auto& r : rem)
      if (r != 0) exact = false;
    return {Polynomial(std::move(quot)), exact};
  }

  /// Multiplicity of the root 1 and the cofactor.
  std::pair<unsigned, Polynomial> strip_root_one() const {
    unsigned e = 0;
    Polynomial p = *this;
    const Polynomial t1 = linear(Integer(1));
    while (!p.is_zero() && p(Integer(1)) == 0) {
      p = p.divide_monic(t1).first;
      ++e;
    }
    return {e, p};
  }

  /// Descending form such as "T^2-14T+1".
  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      const Integer& a = c_[i];
      if (a == 0) continue;
      Integer mag = abs(a);
      if (a < 0)
        s += "-";
      else if (!s.empty())
        s += "+";
      if (i == 0 || mag != 1) s += mag.get_str();
      if (i >= 1) s += "T";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  IntVector c_;
};

/// Characteristic polynomial det(T I - M) by Berkowitz's division-free scheme.
inline std::vector<Rational> characteristic_coefficients(const RatMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  // Descending coefficients of the leading r x r block.
  std::vector<Rational> vect{Rational(1)};
  for (std::size_t r = 0; r < n; ++r) {
    // Toeplitz column: 1, -a_rr, -R C, -R A C, ..., -R A^{r-1} C
    std::vector<Rational> q(r + 2, Rational(0));
    q[0] = 1;
    q[1] = -m(r, r);
    std::vector<Rational> col(r);
    for (std::size_t i = 0; i < r; ++i) col[i] = m(i, r);
    for (std::size_t p = 0; p < r; ++p) {
      Rational s = 0;
      for (std::size_t i = 0; i < r; ++i) s += m(r, i) * col[i];
      q[p + 2] = -s;
      std::vector<Rational> next(r, Rational(0));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) next[i] += m(i, j) * col[j];
      col = std::move(next);
    }
    std::vector<Rational> out(r + 2, Rational(0));
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) out[i] += q[i - j] * vect[j];
    vect = std::move(out);
  }
  return vect;
}

inline Polynomial characteristic_polynomial(const RatMatrix& m) {
  std::vector<Rational> desc = characteristic_coefficients(m);
  IntVector asc(desc.size());
  for (std::size_t i = 0; i < desc.size(); ++i) {
    if (!is_integral(desc[i])) throw std::domain_error("matrix not integral-similar");
    asc[desc.size() - 1 - i] = desc[i].get_num();
  }
  return Polynomial(std::move(asc));
}

inline Polynomial characteristic_polynomial(const IntMatrix& m) { return characteristic_polynomial(to_rational(m)); }

enum class QuadraticClass { salem, unipotent, finite_order, other };

inline const char* to_string(QuadraticClass c) {
  switch (c) {
    case QuadraticClass::salem: return "salem";
    case QuadraticClass::unipotent: return "unipotent";
    case QuadraticClass::finite_order: return "finite-order";
    case QuadraticClass::other: return "other";
  }
  return "other";
}

/// Classifies T^2 - s T + 1 by its trace s.
inline QuadraticClass quadratic_salem_check(const Polynomial& p) {
  if (p.degree() != 2 || p.leading() != 1) throw std::invalid_argument("expected a monic quadratic");
  if (p.coeff(0) != 1) throw std::domain_error("not reciprocal");
  const Integer trace = -p.coeff(1);
  if (trace > 2) return QuadraticClass::salem;
  if (trace == 2) return QuadraticClass::unipotent;
  if (trace >= -2) return QuadraticClass::finite_order;
  return QuadraticClass::other;
}

/// T^2 + (2 - 4k^2) T + 1
inline Polynomial salem_factor(long k) {
  return Polynomial({Integer(1), Integer(2 - 4 * k * k), Integer(1)});
}

}  // namespace kummer::lattice
