#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "kummer/lattice/matrix.hpp"
#include "kummer/nikulin/configuration.hpp"
#include "kummer/ns/context.hpp"
#include "kummer/report.hpp"

namespace kummer::isometry {

/// a^2 - N b^2 = 1
struct PellSolution {
  Integer a;
  Integer b;
  Integer n;

  bool satisfies() const { return a * a - n * b * b == 1; }
  friend bool operator==(const PellSolution&, const PellSolution&) = default;
};

inline bool is_square(const Integer& v) { return v >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0; }

/// (2k+1, 2); minimality is checked by searching b = 1.
inline PellSolution pell_fundamental(const ns::KummerContext& ctx) {
  PellSolution s{Integer(2 * ctx.k + 1), Integer(2), ctx.m_square};
  if (!s.satisfies()) throw std::logic_error("(2k+1, 2) does not solve the Pell equation");
  if (is_square(ctx.m_square + 1)) throw std::logic_error("Pell solution with b = 1 exists");
  return s;
}

/// a_{m+1} + b_{m+1} sqrt N = (2k+1 + 2 sqrt N)(a_m + b_m sqrt N), for m = 1..m_max.
inline std::vector<PellSolution> pell_solutions(const ns::KummerContext& ctx, int m_max) {
  if (m_max < 1) throw std::invalid_argument("m_max must be at least 1");
  const PellSolution f = pell_fundamental(ctx);
  std::vector<PellSolution> out{f};
  while (static_cast<int>(out.size()) < m_max) {
    const PellSolution& p = out.back();
    PellSolution next{f.a * p.a + f.n * f.b * p.b, f.b * p.a + f.a * p.b, f.n};
    if (!next.satisfies()) throw std::logic_error("Pell recurrence left the solution set");
    out.push_back(next);
  }
  return out;
}

/// b_m L - a_m A_1 = u_m A_1' + v_m A_1 with u_m = b_m/2, v_m = (2k+1) b_m/2 - a_m.
inline VerificationReport neg2_in_rank2(const ns::KummerContext& ctx, int m_max) {
  VerificationReport r;
  r.k = ctx.k;
  const std::string cite = "rank-2 (-2)-class lemma";
  bool ok = true;
  std::string bad;
  for (const auto& s : pell_solutions(ctx, m_max)) {
    const bool even = mpz_even_p(s.b.get_mpz_t()) != 0;
    const Integer u = s.b / 2;
    const Integer v = Integer(2 * ctx.k + 1) * u - s.a;
    const ns::NsClass lhs = Rational(s.b) * ns::NsClass::L() - Rational(s.a) * ns::NsClass::A(1);
    const ns::NsClass rhs = Rational(u) * nikulin::a_prime(ctx, 1) + Rational(v) * ns::NsClass::A(1);
    const bool good = s.satisfies() && even && u >= 0 && v >= 0 && lhs == rhs;
    if (!good && bad.empty()) bad = "(" + s.a.get_str() + "," + s.b.get_str() + ")";
    ok = ok && good;
  }
  r.expect("pell_decomposition_u_v_natural", "all m <= " + std::to_string(m_max),
           ok ? "all m <= " + std::to_string(m_max) : "fails at " + bad, cite);
  return r;
}

}  // namespace kummer::isometry
