#pragma once

#include <algorithm>
#include <chrono>
#include <future>
#include <regex>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "kummer/covers/covers.hpp"
#include "kummer/isometry/involution.hpp"
#include "kummer/isometry/obstruction.hpp"
#include "kummer/isometry/pell.hpp"
#include "kummer/nikulin/certificates.hpp"
#include "kummer/nikulin/configuration.hpp"
#include "kummer/ns/beta_patterns.hpp"
#include "kummer/ns/disc_structure.hpp"
#include "kummer/report.hpp"

namespace kummer {

/// Largest k the harness accepts: the explicit form-isometry witness
/// (and hence the gluing) needs |NS^v/NS| = 32 k (k+1) <= 2^12.
inline constexpr long kMaxK = 10;
inline constexpr int kPellDepth = 10;

enum class Suite { ns, nikulin, isometry, pell, glue, covers };

inline const std::vector<std::pair<std::string, Suite>>& suite_names() {
  static const std::vector<std::pair<std::string, Suite>> names = {
      {"ns", Suite::ns},     {"nikulin", Suite::nikulin}, {"isometry", Suite::isometry},
      {"pell", Suite::pell}, {"glue", Suite::glue},       {"covers", Suite::covers}};
  return names;
}

inline Suite suite_from_string(const std::string& s) {
  for (const auto& [name, suite] : suite_names())
    if (name == s) return suite;
  throw std::invalid_argument("unknown suite '" + s + "'");
}

inline std::set<Suite> all_suites() {
  std::set<Suite> s;
  for (const auto& [name, suite] : suite_names()) s.insert(suite);
  return s;
}

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct VerifyOptions {
  int t = 1;
  std::set<Suite> suites = all_suites();
  std::uint64_t budget = kDefaultBudget;
  unsigned threads = 1;
  /// Replaces A_t' by A_t' + A_j in the configuration check.
  bool inject_fault = false;
};

struct VerifyOutcome {
  VerificationReport report;
  bool budget_exceeded = false;
  std::string error;
};

inline void validate(long k, int t) {
  if (k < 1 || k > kMaxK) throw UsageError("k must be in 1.." + std::to_string(kMaxK));
  if (t < 1 || t > ns::kNumCurves) throw UsageError("t must be in 1..16");
}

namespace detail {

inline int other_index(int t) { return t == 1 ? 2 : 1; }

/// L^2; A_t.A_t' is part of the configuration check.
inline void table_checks(VerificationReport& r, const ns::KummerContext& ctx) {
  const std::string cite = "configuration table";
  r.expect("L^2", Integer(2 * ctx.m_square).get_str(), ns::self_intersection(ns::NsClass::L(), ctx).get_str(), cite);
}

inline void ns_suite(VerificationReport& r, const ns::NsBasis& basis, const VerifyOptions& opt) {
  r.append(ns::disc_structure_ns(basis).report);
  r.append(ns::verify_beta_patterns(basis, Rational(1), opt.budget));
}

inline void nikulin_suite(VerificationReport& r, const ns::NsBasis& basis, const VerifyOptions& opt) {
  const auto& ctx = basis.context();
  const int t = opt.t;
  std::optional<ns::NsClass> fault;
  if (opt.inject_fault) fault = nikulin::a_prime(ctx, t) + ns::NsClass::A(other_index(t));
  r.append(nikulin::verify_configuration(basis, t, fault ? &*fault : nullptr));

  nikulin::EnumerationOptions eo;
  eo.threads = opt.threads;
  eo.budget = opt.budget;
  for (auto which : {nikulin::Divisor::l_prime, nikulin::Divisor::l_minus_k_a}) {
    const std::string name = nikulin::to_string(which);
    if (which == nikulin::Divisor::l_minus_k_a && ctx.k < 2) {
      r.note(name + "_nef_big", "k > 1", "k = 1", "projective model theorem", Status::not_applicable);
    } else {
      r.append(nikulin::verify_nef_big(basis, which, t, eo).report);
    }
    r.append(nikulin::verify_no_base_component(basis, which, t));
    r.append(nikulin::verify_not_hyperelliptic(basis, which, t, eo));
  }

  const auto s = nikulin::projective_model_stats(ctx, t);
  const std::string cite = "projective model theorem";
  const std::string tn = std::to_string(t);
  r.expect("dim_Lprime_target", Integer(ctx.m_square + 1).get_str(), s.dim_lprime_target.get_str(),
           "L' birational proposition");
  if (s.k_one_flag) {
    r.note("dim_D_target", std::to_string(ctx.k + 1), s.dim_d_target.get_str(), cite, Status::not_applicable);
  } else {
    r.expect("dim_D_target", std::to_string(ctx.k + 1), s.dim_d_target.get_str(), cite);
  }
  r.expect("deg_A" + tn + "_image", std::to_string(2 * ctx.k), s.deg_a1_image.get_str(), cite);
  r.expect("deg_A" + tn + "'_image", std::to_string(2 * ctx.k), s.deg_a1prime_image.get_str(), cite);
  r.expect("A" + tn + "+A" + tn + "'=2(L-kA" + tn + ")", "true", s.two_divisible_sum ? "true" : "false", cite);
  r.note("kummer_structure_count", "2^s", nikulin::kummer_structure_count(ctx).get_str(), "Kummer structure count",
         Status::pass);
}

inline void isometry_suite(VerificationReport& r, const ns::NsBasis& basis, const VerifyOptions& opt) {
  const auto& ctx = basis.context();
  const long k = ctx.k;
  const int t = opt.t;
  const std::string cite = "involution lemma";
  const auto th = isometry::theta(basis, t);
  const auto ph = isometry::phi(basis, other_index(t), t);
  const IntMatrix id = IntMatrix::identity(ns::kNsRank);
  r.expect_true("theta_integral_isometry", lattice::is_isometry(basis.gram(), th.matrix_v), cite);
  r.expect_true("theta^2=id", th.matrix_v * th.matrix_v == id, cite);
  r.expect_true("phi_integral_isometry", lattice::is_isometry(basis.gram(), ph.matrix_v), cite);
  r.expect("phi_det", "1", determinant(ph.matrix_v).get_str(), cite);

  const auto sp = isometry::phi_spectrum(ph);
  const std::string scite = "Salem factor of phi";
  r.expect("charpoly_divisible_by_(T-1)^15", "true", sp.divisible ? "true" : "false", scite);
  r.expect("salem_factor", lattice::salem_factor(k).to_string(), sp.quadratic.to_string(), scite);
  r.expect("salem_class", k >= 2 ? "salem" : "unipotent", lattice::to_string(sp.kind), scite);
  r.expect_true("phi_not_identity", !sp.is_identity, scite);
  r.expect("salem_trace", std::to_string(4 * k * k - 2), Integer(-sp.quadratic.coeff(1)).get_str(), scite);

  const auto group = lattice::discriminant_group(basis.gram());
  const std::string dcite = "gluing lemma";
  const Integer scalar = Integer(1 - 2 * k * k);
  r.expect_true("theta_disc_action_is_1-2k^2",
                isometry::is_scalar_action(group, isometry::disc_action(group, th.matrix_v), scalar), dcite);
  r.expect_true("phi_disc_action_is_identity",
                isometry::is_scalar_action(group, isometry::disc_action(group, ph.matrix_v), Integer(1)), dcite);
  const auto form = lattice::disc_form(basis.gram());
  r.expect_true("theta_preserves_disc_form", isometry::preserves_form(form, isometry::disc_action(group, th.matrix_v)),
                dcite);
}

inline void glue_suite(VerificationReport& r, const ns::NsBasis& basis, const VerifyOptions& opt) {
  const auto& ctx = basis.context();
  const long k = ctx.k;
  const int t = opt.t;
  const std::string cite = "gluing lemma";
  const auto th = isometry::theta(basis, t);
  const auto ph = isometry::phi(basis, detail::other_index(t), t);
  const auto pv = isometry::extension_check(basis, ph, 1);
  r.expect("phi_extension", "extends", pv.extends ? "extends" : "fails: " + pv.witness, cite);
  if (pv.glued) {
    const auto& g = *pv.glued;
    r.expect("glued_rank", "22", std::to_string(g.rank()), cite);
    r.expect("glued_abs_det", "1", Integer(abs(g.determinant())).get_str(), cite);
    r.expect("glued_signature", "(3,19)",
             "(" + std::to_string(g.signature().positive) + "," + std::to_string(g.signature().negative) + ")", cite);
    r.expect_true("glued_even", g.is_even(), cite);
  }
  for (int sign : {-1, 1}) {
    const auto tv = isometry::extension_check(basis, th, sign);
    const bool want = k == 1 && sign == -1;
    r.expect("theta_extension_sign_" + std::string(sign < 0 ? "-1" : "+1"), want ? "extends" : "does not extend",
             tv.extends ? "extends" : "does not extend", "theta extension remark");
  }
  const Integer lef = isometry::lefschetz_number(basis);
  r.expect("lefschetz_number", isometry::expected_lefschetz(ctx).get_str(), lef.get_str(), "Lefschetz number");
  r.note("phi_effective", "effective Hodge isometry", "not re-verified", "extension theorem",
         Status::paper_established);
}

inline void pell_suite(VerificationReport& r, const ns::NsBasis& basis) {
  const auto& ctx = basis.context();
  const std::string cite = "Pell-Fermat equation";
  const auto f = isometry::pell_fundamental(ctx);
  r.expect("pell_fundamental", "(" + std::to_string(2 * ctx.k + 1) + ",2)",
           "(" + f.a.get_str() + "," + f.b.get_str() + ")", cite);
  r.expect_true("pell_no_solution_with_b=1", !isometry::is_square(ctx.m_square + 1), cite);
  r.append(isometry::neg2_in_rank2(ctx, kPellDepth));
  if (ctx.k >= 2) {
    r.append(isometry::obstruction_report(basis));
  } else {
    r.note("obstruction", "k >= 2", "k = 1", "no automorphism theorem", Status::not_applicable);
  }
}

}  // namespace detail

/// Runs the selected suites for one k. Budget overruns return the partial report.
inline VerifyOutcome cmd_verify(long k, const VerifyOptions& opt = {}) {
  validate(k, opt.t);
  const auto start = std::chrono::steady_clock::now();
  VerifyOutcome out;
  VerificationReport& r = out.report;
  r.k = k;
  r.t = opt.t;
  try {
    if (!opt.suites.empty()) {
      const ns::KummerContext ctx(k);
      const ns::NsBasis basis(ctx);
      detail::table_checks(r, ctx);
      if (opt.suites.count(Suite::ns)) detail::ns_suite(r, basis, opt);
      if (opt.suites.count(Suite::nikulin)) detail::nikulin_suite(r, basis, opt);
      if (opt.suites.count(Suite::isometry)) detail::isometry_suite(r, basis, opt);
      if (opt.suites.count(Suite::glue)) detail::glue_suite(r, basis, opt);
      if (opt.suites.count(Suite::pell)) detail::pell_suite(r, basis);
      if (opt.suites.count(Suite::covers)) r.append(covers::covers_report(ctx));
    }
  } catch (const BudgetExceeded& e) {
    out.budget_exceeded = true;
    out.error = e.what();
    r.note("budget", "within budget", e.what(), "enumeration budget", Status::fail);
  }
  r.runtime_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return out;
}

/// Runs t = 1..16 and merges the reports, prefixing check names with "t=N:".
inline VerifyOutcome cmd_verify_all_t(long k, VerifyOptions opt = {}) {
  validate(k, 1);
  VerifyOutcome out;
  out.report.k = k;
  out.report.t.reset();
  for (int t = 1; t <= ns::kNumCurves; ++t) {
    opt.t = t;
    VerifyOutcome one = cmd_verify(k, opt);
    out.report.append(one.report, "t=" + std::to_string(t) + ":");
    out.report.runtime_ms += one.report.runtime_ms;
    if (one.budget_exceeded) {
      out.budget_exceeded = true;
      out.error = one.error;
      break;
    }
  }
  return out;
}

/// Reports for k_min..k_max in ascending k, computed concurrently.
inline std::vector<VerifyOutcome> cmd_sweep(long k_min, long k_max, const VerifyOptions& opt = {}) {
  if (k_min > k_max) throw UsageError("k_min must not exceed k_max");
  validate(k_min, opt.t);
  validate(k_max, opt.t);
  std::vector<std::future<VerifyOutcome>> futures;
  for (long k = k_min; k <= k_max; ++k)
    futures.push_back(std::async(std::launch::async, [k, opt] { return cmd_verify(k, opt); }));
  std::vector<VerifyOutcome> out;
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

/// Applies the transposition (a b) to every curve index A<i> in a string.
inline std::string swap_curve_labels(const std::string& s, int a, int b) {
  static const std::regex curve("A(\\d+)");
  std::string out;
  auto it = std::sregex_iterator(s.begin(), s.end(), curve);
  std::size_t last = 0;
  for (; it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    out.append(s, last, m.position() - last);
    int i = std::stoi(m[1].str());
    if (i == a)
      i = b;
    else if (i == b)
      i = a;
    out += "A" + std::to_string(i);
    last = m.position() + m.length();
  }
  out.append(s, last, std::string::npos);
  return out;
}

/// Sorts the items of a "[x, y, ...]" list string; other strings pass through.
inline std::string sort_list_string(const std::string& s) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']' || s.find(", ") == std::string::npos) return s;
  std::vector<std::string> items;
  const std::string body = s.substr(1, s.size() - 2);
  std::size_t pos = 0;
  for (std::size_t next; (next = body.find(", ", pos)) != std::string::npos; pos = next + 2)
    items.push_back(body.substr(pos, next - pos));
  items.push_back(body.substr(pos));
  std::sort(items.begin(), items.end());
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  return out + "]";
}

/// The report with curve labels relabelled by (a b), class lists sorted and
/// runtime cleared, for comparing runs that differ by a relabelling.
inline VerificationReport relabel(VerificationReport r, int a, int b) {
  for (auto& c : r.checks) {
    c.name = swap_curve_labels(c.name, a, b);
    c.expected = sort_list_string(swap_curve_labels(c.expected, a, b));
    c.actual = sort_list_string(swap_curve_labels(c.actual, a, b));
  }
  if (r.t) r.t = *r.t == a ? b : (*r.t == b ? a : *r.t);
  r.runtime_ms = 0;
  return r;
}

}  // namespace kummer
