#pragma once

#include <stdexcept>
#include <string>

#include "kummer/lattice/matrix.hpp"
#include "kummer/ns/ns_basis.hpp"
#include "kummer/report.hpp"

namespace kummer::nikulin {

using ns::KummerContext;
using ns::NsBasis;
using ns::NsClass;

/// A_t' = 2L - (2k+1) A_t
inline NsClass a_prime(const KummerContext& ctx, int t) {
  ns::check_curve_index(t);
  return Rational(2) * NsClass::L() - Rational(2 * ctx.k + 1) * NsClass::A(t);
}

/// L_t' = (2k+1) L - 2k(k+1) A_t
inline NsClass l_prime(const KummerContext& ctx, int t) {
  ns::check_curve_index(t);
  return Rational(2 * ctx.k + 1) * NsClass::L() - Rational(Integer(2 * ctx.m_square)) * NsClass::A(t);
}

/// L - k A_t
inline NsClass l_minus_k_a(const KummerContext& ctx, int t) {
  ns::check_curve_index(t);
  return NsClass::L() - Rational(ctx.k) * NsClass::A(t);
}

/// The second Nikulin configuration {A_t', A_j (j != t)} and L_t'.
///
/// `a_t` overrides A_t' (used to seed faults in the harness).
inline VerificationReport verify_configuration(const NsBasis& basis, int t, const NsClass* a_t = nullptr) {
  const KummerContext& ctx = basis.context();
  VerificationReport r;
  r.k = ctx.k;
  r.t = t;
  const std::string cite = "second Nikulin configuration theorem";
  const NsClass ap = a_t ? *a_t : a_prime(ctx, t);
  const NsClass lp = l_prime(ctx, t);
  const NsClass at = NsClass::A(t);
  const std::string tn = std::to_string(t);

  r.expect("A" + tn + "'^2", "-2", ns::self_intersection(ap, ctx).get_str(), cite);
  r.expect("A" + tn + ".A" + tn + "'", Integer(2 * (2 * ctx.k + 1)).get_str(), ns::intersect(at, ap, ctx).get_str(),
           "configuration table");
  r.expect_true("A" + tn + "'_in_NS", basis.contains(ap), cite);
  bool orth = true;
  bool lp_orth = true;
  for (int j = 1; j <= ns::kNumCurves; ++j) {
    if (j == t) continue;
    orth = orth && ns::intersect(ap, NsClass::A(j), ctx) == 0;
    lp_orth = lp_orth && ns::intersect(lp, NsClass::A(j), ctx) == 0;
  }
  r.expect_true("A" + tn + "'_orthogonal_to_other_A", orth, cite);
  r.expect("L'^2", ctx.l_square().get_str(), ns::self_intersection(lp, ctx).get_str(), cite);
  r.expect("L'.A" + tn + "'", "0", ns::intersect(lp, ap, ctx).get_str(), cite);
  r.expect_true("L'_orthogonal_to_other_A", lp_orth, cite);
  r.expect("L'.A" + tn, Integer(4 * ctx.m_square).get_str(), ns::intersect(lp, at, ctx).get_str(),
           "L.A1' = L'.A1 remark");
  r.expect_true("L'_in_NS", basis.contains(lp), cite);
  return r;
}

}  // namespace kummer::nikulin
