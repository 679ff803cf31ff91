#pragma once

#include <array>
#include <string>

#include "kummer/lattice/matrix.hpp"
#include "kummer/ns/context.hpp"

namespace kummer::ns {

/// The class alpha L - sum beta_i A_i.
struct NsClass {
  Rational alpha = 0;
  std::array<Rational, kNumCurves> beta{};

  static NsClass L() {
    NsClass c;
    c.alpha = 1;
    return c;
  }

  /// The curve A_i, i in 1..16.
  static NsClass A(int i) {
    check_curve_index(i);
    NsClass c;
    c.beta[i - 1] = -1;
    return c;
  }

  Rational& beta_at(int i) { return beta[i - 1]; }
  const Rational& beta_at(int i) const { return beta[i - 1]; }

  /// Coefficients on (L, A_1, ..., A_16).
  RatVector la_coordinates() const {
    RatVector v(kNumCurves + 1);
    v[0] = alpha;
    for (int i = 0; i < kNumCurves; ++i) v[i + 1] = -beta[i];
    return v;
  }

  static NsClass from_la(const RatVector& v) {
    NsClass c;
    c.alpha = v.at(0);
    for (int i = 0; i < kNumCurves; ++i) c.beta[i] = -v.at(i + 1);
    return c;
  }

  NsClass& operator+=(const NsClass& o) {
    alpha += o.alpha;
    for (int i = 0; i < kNumCurves; ++i) beta[i] += o.beta[i];
    return *this;
  }
  NsClass& operator-=(const NsClass& o) {
    alpha -= o.alpha;
    for (int i = 0; i < kNumCurves; ++i) beta[i] -= o.beta[i];
    return *this;
  }
  friend NsClass operator+(NsClass a, const NsClass& b) { return a += b; }
  friend NsClass operator-(NsClass a, const NsClass& b) { return a -= b; }
  friend NsClass operator*(const Rational& s, NsClass a) {
    a.alpha *= s;
    for (auto& b : a.beta) b *= s;
    return a;
  }
  friend NsClass operator-(const NsClass& a) { return Rational(-1) * a; }

  friend bool operator==(const NsClass& a, const NsClass& b) { return a.alpha == b.alpha && a.beta == b.beta; }
  friend bool operator!=(const NsClass& a, const NsClass& b) { return !(a == b); }
  /// Lexicographic on (alpha, beta_1, ..., beta_16).
  friend bool operator<(const NsClass& a, const NsClass& b) {
    if (a.alpha != b.alpha) return a.alpha < b.alpha;
    return a.beta < b.beta;
  }

  /// e.g. "2L-5A1", "A3", "1/2L+1/2A1+1/2A2"
  std::string to_string() const {
    std::string s;
    auto term = [&s](const Rational& c, const std::string& name) {
      if (c == 0) return;
      Rational mag = abs(c);
      if (c < 0)
        s += "-";
      else if (!s.empty())
        s += "+";
      if (mag != 1) s += mag.get_str();
      s += name;
    };
    term(alpha, "L");
    for (int i = 0; i < kNumCurves; ++i) term(-beta[i], "A" + std::to_string(i + 1));
    return s.empty() ? "0" : s;
  }
};

/// 2k(k+1) a1 a2 - 2 sum b1_i b2_i
inline Rational intersect(const NsClass& x, const NsClass& y, const KummerContext& ctx) {
  Rational s = Rational(ctx.l_square()) * x.alpha * y.alpha;
  for (int i = 0; i < kNumCurves; ++i) s -= 2 * x.beta[i] * y.beta[i];
  return s;
}

inline Rational self_intersection(const NsClass& x, const KummerContext& ctx) { return intersect(x, x, ctx); }

/// Intersection form in (L, A_1, ..., A_16) coordinates: diag(4d, -2, ..., -2).
inline IntMatrix la_gram(const KummerContext& ctx) {
  IntVector diag(kNumCurves + 1, Integer(-2));
  diag[0] = ctx.l_square();
  return IntMatrix::diagonal(diag);
}

}  // namespace kummer::ns
