#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <future>
#include <stdexcept>
#include <string>
#include <vector>

#include "kummer/lattice/matrix.hpp"
#include "kummer/ns/ns_basis.hpp"
#include "kummer/report.hpp"

namespace kummer::nikulin {

using ns::KummerContext;
using ns::NsBasis;
using ns::NsClass;

enum class Relation { negative, zero };

inline const char* to_string(Relation r) { return r == Relation::negative ? "<0" : "=0"; }

inline Relation relation_from_string(const std::string& s) {
  if (s == "<0") return Relation::negative;
  if (s == "=0") return Relation::zero;
  throw std::invalid_argument("relation must be \"<0\" or \"=0\"");
}

/// D = x L - y A_t
struct SpanDivisor {
  Rational x;
  Rational y;
  int t;
};

/// Reads x, y, t from a class in span{L, A_t} with x, y > 0.
inline SpanDivisor as_span_divisor(const NsClass& d) {
  int t = 0;
  for (int i = 1; i <= ns::kNumCurves; ++i) {
    if (d.beta_at(i) == 0) continue;
    if (t != 0) throw std::invalid_argument("divisor not in span{L, A_t}");
    t = i;
  }
  if (t == 0 || d.alpha <= 0 || d.beta_at(t) <= 0) throw std::invalid_argument("divisor must be x L - y A_t with x, y > 0");
  return {d.alpha, d.beta_at(t), t};
}

struct EnumerationOptions {
  unsigned threads = 1;
  /// Extra half-steps scanned past every derived bound.
  unsigned margin_steps = 1;
  std::uint64_t budget = kDefaultBudget;
};

struct Neg2Enumeration {
  std::vector<NsClass> classes;  // canonical order
  Rational alpha_sq_bound;       // alpha^2 <= y^2 / (N (N x^2 - y^2))
  Rational alpha_scanned_max;
  std::uint64_t candidates = 0;
  std::uint64_t anti_effective_excluded = 0;
};

namespace detail {

inline Integer isqrt_floor(const Integer& n) {
  if (n < 0) return -1;
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// ceil(q) for rational q
inline Integer ceil_of(const Rational& q) { return -floor_of(-q); }

// All length-n tuples of non-negative integers with sum of squares equal to target.
inline void sum_of_squares(std::size_t n, const Integer& target, std::vector<Integer>& cur,
                           const std::function<void(const std::vector<Integer>&)>& emit) {
  if (cur.size() == n) {
    if (target == 0) emit(cur);
    return;
  }
  const std::size_t left = n - cur.size();
  for (Integer c = isqrt_floor(target); c >= 0; --c) {
    Integer rest = target - c * c;
    if (left == 1 && rest != 0) continue;
    cur.push_back(c);
    sum_of_squares(n, rest, cur, emit);
    cur.pop_back();
  }
}

}  // namespace detail

/// All (-2)-classes G in NS with G.D in the given relation, under the
/// effectivity constraints alpha >= 0 and beta_i >= 0 (i != t), plus the
/// curves A_j tested separately. Classes with alpha = 0 found by the grid
/// are -A_j and are counted as anti-effective instead of returned.
inline Neg2Enumeration enumerate_neg2(const NsBasis& basis, const NsClass& divisor, Relation relation,
                                      const EnumerationOptions& opt = {}) {
  const KummerContext& ctx = basis.context();
  const SpanDivisor dv = as_span_divisor(divisor);
  const Rational n(ctx.m_square);
  const Rational disc = n * dv.x * dv.x - dv.y * dv.y;
  if (disc <= 0) throw std::domain_error("bounds unbounded");

  Neg2Enumeration out;
  out.alpha_sq_bound = dv.y * dv.y / (n * disc);
  // alpha = a/2 with a^2 <= 4 * bound, then the margin
  const Integer a_max = detail::isqrt_floor(floor_of(4 * out.alpha_sq_bound)) + opt.margin_steps;
  out.alpha_scanned_max = make_rational(a_max, Integer(2));
  const int t = dv.t;

  auto relation_holds = [&](const Rational& dg) { return relation == Relation::negative ? dg < 0 : dg == 0; };

  struct Partial {
    std::vector<NsClass> found;
    std::uint64_t candidates = 0;
    std::uint64_t anti = 0;
  };
  std::atomic<std::uint64_t> total{0};

  auto scan_alpha = [&](const Integer& a) {
    Partial p;
    const Rational alpha = make_rational(a, Integer(2));
    const Rational lower = n * dv.x * alpha / dv.y;  // beta_t >= lower
    // beta_t = b/2
    Integer b_lo = detail::ceil_of(2 * lower);
    if (relation == Relation::negative && Rational(b_lo) == 2 * lower) b_lo += 1;
    const Integer four_norm = Integer(ctx.m_square * a * a) + 4;  // 4 (N alpha^2 + 1)
    Integer b_hi = detail::isqrt_floor(four_norm) + opt.margin_steps;
    if (relation == Relation::zero) {
      if (!is_integral(2 * lower)) return p;
      b_hi = std::min(b_hi, b_lo);
    }
    for (Integer b = b_lo; b <= b_hi; ++b) {
      const Integer rest = four_norm - b * b;  // sum over i != t of (2 beta_i)^2
      if (rest < 0) continue;
      std::vector<Integer> cur;
      detail::sum_of_squares(ns::kNumCurves - 1, rest, cur, [&](const std::vector<Integer>& c) {
        if (++total > opt.budget) throw BudgetExceeded("(-2)-class enumeration", total.load(), opt.budget);
        ++p.candidates;
        NsClass g;
        g.alpha = alpha;
        g.beta_at(t) = make_rational(b, Integer(2));
        std::size_t pos = 0;
        for (int i = 1; i <= ns::kNumCurves; ++i)
          if (i != t) g.beta_at(i) = make_rational(c[pos++], Integer(2));
        if (ns::self_intersection(g, ctx) != -2) throw std::logic_error("enumeration produced a non-(-2) class");
        if (!relation_holds(ns::intersect(divisor, g, ctx))) return;
        if (!basis.contains(g)) return;
        if (alpha == 0) {
          ++p.anti;
          return;
        }
        p.found.push_back(g);
      });
    }
    return p;
  };

  std::vector<Partial> parts;
  const unsigned threads = std::max(1u, opt.threads);
  if (threads == 1) {
    for (Integer a = 0; a <= a_max; ++a) parts.push_back(scan_alpha(a));
  } else {
    // alpha values dealt round-robin to workers
    std::vector<std::future<std::vector<Partial>>> futures;
    for (unsigned w = 0; w < threads; ++w)
      futures.push_back(std::async(std::launch::async, [&, w] {
        std::vector<Partial> mine;
        for (Integer a = w; a <= a_max; a += threads) mine.push_back(scan_alpha(a));
        return mine;
      }));
    for (auto& f : futures)
      for (auto& p : f.get()) parts.push_back(std::move(p));
  }
  for (auto& p : parts) {
    out.candidates += p.candidates;
    out.anti_effective_excluded += p.anti;
    out.classes.insert(out.classes.end(), p.found.begin(), p.found.end());
  }
  for (int j = 1; j <= ns::kNumCurves; ++j) {
    ++out.candidates;
    if (relation_holds(ns::intersect(divisor, NsClass::A(j), ctx))) out.classes.push_back(NsClass::A(j));
  }
  std::sort(out.classes.begin(), out.classes.end());
  return out;
}

}  // namespace kummer::nikulin
