// Acceptance suite: one line per criterion, exit status 0 iff all pass.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kummer/covers/covers.hpp"
#include "kummer/isometry/involution.hpp"
#include "kummer/isometry/obstruction.hpp"
#include "kummer/isometry/pell.hpp"
#include "kummer/lattice/discriminant.hpp"
#include "kummer/nikulin/certificates.hpp"
#include "kummer/nikulin/configuration.hpp"
#include "kummer/nikulin/enumerate.hpp"
#include "kummer/ns/disc_structure.hpp"
#include "kummer/report_io.hpp"
#include "kummer/verify.hpp"

using namespace kummer;
using ns::KummerContext;
using ns::NsBasis;
using ns::NsClass;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects the first failure; later ones are counted.
struct Verdict {
  bool ok = true;
  std::string first;
  int failures = 0;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (ok) first = what;
    ok = false;
    ++failures;
  }
  std::string detail() const {
    if (ok) return "";
    return first + (failures > 1 ? " (+" + std::to_string(failures - 1) + " more)" : "");
  }
};

std::string kstr(long k) { return "k=" + std::to_string(k); }

bool check_passes(const VerificationReport& r, const std::string& name) {
  const Check* c = r.find(name);
  return c && c->status == Status::pass;
}

IntMatrix int_identity(std::size_t n) { return IntMatrix::identity(n); }

bool is_isometry(const IntMatrix& m, const IntMatrix& g) { return m.transpose() * g * m == g; }

int cli_exit(const std::string& args) {
  const std::string cmd = std::string(KUMMER_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Verdict criterion_1() {
  Verdict v;
  const auto start = Clock::now();
  const int dot[] = {6, 10, 14, 18};
  const int l2[] = {4, 12, 24, 40};
  for (long k = 1; k <= 4; ++k) {
    KummerContext ctx(k);
    v.require(ns::intersect(NsClass::A(1), nikulin::a_prime(ctx, 1), ctx) == dot[k - 1], kstr(k) + " A1.A1'");
    v.require(ns::self_intersection(NsClass::L(), ctx) == l2[k - 1], kstr(k) + " L^2");
  }
  v.require(seconds_since(start) < 1.0, "over 1 s");
  return v;
}

Verdict criterion_2() {
  Verdict v;
  for (long k = 1; k <= 6; ++k) {
    const auto start = Clock::now();
    KummerContext ctx(k);
    NsBasis b(ctx);
    const NsClass lp = nikulin::l_prime(ctx, 1);
    v.require(nikulin::enumerate_neg2(b, lp, nikulin::Relation::negative).classes.empty(), kstr(k) + " <0 nonempty");
    const auto zero = nikulin::enumerate_neg2(b, lp, nikulin::Relation::zero).classes;
    std::set<NsClass> want{nikulin::a_prime(ctx, 1)};
    for (int j = 2; j <= 16; ++j) want.insert(NsClass::A(j));
    v.require(std::set<NsClass>(zero.begin(), zero.end()) == want && zero.size() == 16, kstr(k) + " =0 list");
    for (std::size_t i = 0; i < zero.size(); ++i) {
      v.require(ns::self_intersection(zero[i], ctx) == -2, kstr(k) + " not a (-2)-class");
      for (std::size_t j = i + 1; j < zero.size(); ++j)
        v.require(ns::intersect(zero[i], zero[j], ctx) == 0, kstr(k) + " not orthogonal");
    }
    v.require(seconds_since(start) < 60.0, kstr(k) + " over 60 s");
  }
  return v;
}

Verdict criterion_3() {
  Verdict v;
  for (long k = 2; k <= 6; ++k) {
    const auto start = Clock::now();
    KummerContext ctx(k);
    NsBasis b(ctx);
    const auto cert = nikulin::verify_nef_big(b, nikulin::Divisor::l_minus_k_a, 1);
    v.require(cert.report.passed(), kstr(k) + " nef/big certificate");
    v.require(cert.violators.empty(), kstr(k) + " violators");
    v.require(cert.zero_classes.size() == 15, kstr(k) + " contracted classes");
    const auto s = nikulin::projective_model_stats(ctx, 1);
    v.require(s.dim_d_target == k + 1, kstr(k) + " model dimension");
    v.require(s.deg_a1_image == 2 * k && s.deg_a1prime_image == 2 * k, kstr(k) + " image degrees");
    v.require(seconds_since(start) < 60.0, kstr(k) + " over 60 s");
  }
  return v;
}

Verdict criterion_4() {
  Verdict v;
  for (long k = 1; k <= 8; ++k) {
    const auto start = Clock::now();
    KummerContext ctx(k);
    NsBasis b(ctx);
    const auto form = lattice::disc_form(b.gram());
    const IntVector want{2, 2, 2, 2, Integer(2 * ctx.m_square)};
    v.require(form.group().invariant_factors() == want, kstr(k) + " NS invariant factors");
    const auto model = lattice::disc_form(ns::ns_form_model(ctx));
    v.require(lattice::form_histogram(form) == lattice::form_histogram(model), kstr(k) + " form histogram");
    const auto kummer = lattice::discriminant_group(ns::build_kummer_gram(ctx));
    v.require(kummer.invariant_factors() == IntVector(6, Integer(2)), kstr(k) + " Kummer discriminant");
    v.require(seconds_since(start) < 30.0, kstr(k) + " over 30 s");
  }
  return v;
}

Verdict criterion_5() {
  Verdict v;
  for (long k = 1; k <= 8; ++k) {
    NsBasis b{KummerContext(k)};
    const auto pv = isometry::extension_check(b, isometry::phi(b, 2, 1), 1);
    v.require(pv.extends && pv.extended && pv.glued, kstr(k) + " phi does not extend");
    if (!pv.glued) continue;
    v.require(pv.glued->rank() == 22, kstr(k) + " rank");
    v.require(abs(pv.glued->determinant()) == 1, kstr(k) + " |det|");
    v.require(pv.glued->signature() == lattice::Signature{3, 19}, kstr(k) + " signature");
    if (pv.extended) v.require(is_isometry(*pv.extended, pv.glued->gram()), kstr(k) + " extension not an isometry");
    const bool minus = isometry::extension_check(b, isometry::theta(b, 1), -1).extends;
    const bool plus = isometry::extension_check(b, isometry::theta(b, 1), 1).extends;
    v.require(minus == (k == 1) && !plus, kstr(k) + " theta extension");
  }
  return v;
}

Verdict criterion_6() {
  Verdict v;
  for (long k = 1; k <= 8; ++k) {
    NsBasis b{KummerContext(k)};
    const auto s = isometry::phi_spectrum(isometry::phi(b, 2, 1));
    const auto want = lattice::Polynomial::linear(Integer(1)).pow(15) *
                      lattice::Polynomial({Integer(1), Integer(2 - 4 * k * k), Integer(1)});
    v.require(s.charpoly == want, kstr(k) + " characteristic polynomial");
    const auto kind = k >= 2 ? lattice::QuadraticClass::salem : lattice::QuadraticClass::unipotent;
    v.require(s.kind == kind && !s.is_identity, kstr(k) + " classification");
    v.require(isometry::lefschetz_number(b) == 20 + 4 * k * k, kstr(k) + " Lefschetz number");
  }
  v.require(isometry::lefschetz_number(NsBasis{KummerContext(1)}) == 24, "k=1 Lefschetz number");
  return v;
}

Verdict criterion_7() {
  Verdict v;
  for (long k = 1; k <= 8; ++k) {
    KummerContext ctx(k);
    try {
      const auto f = isometry::pell_fundamental(ctx);
      v.require(f.a == 2 * k + 1 && f.b == 2, kstr(k) + " fundamental solution");
    } catch (const std::exception& e) {
      v.require(false, kstr(k) + " " + e.what());
    }
    v.require(isometry::neg2_in_rank2(ctx, 10).passed(), kstr(k) + " rank-2 (-2)-classes");
  }
  for (long k = 3; k <= 6; ++k) {
    const auto r = isometry::obstruction_report(NsBasis{KummerContext(k)});
    v.require(check_passes(r, "no_2_elementary_fixed_lattice"), kstr(k) + " 2-elementary fixed lattice");
    v.require(check_passes(r, "involution_trace_exceeds_6") && check_passes(r, "square_trace_exceeds_6"),
              kstr(k) + " traces");
  }
  return v;
}

Verdict criterion_8() {
  Verdict v;
  const std::pair<long, int> table[] = {{1, 1}, {2, 2}, {3, 4}};
  for (auto [k, n] : table)
    v.require(nikulin::kummer_structure_count(KummerContext(k)) == n, kstr(k) + " structure count");
  return v;
}

Verdict criterion_9() {
  Verdict v;
  for (long k = 1; k <= 8; ++k) {
    const auto c = covers::cover_invariants(KummerContext(k));
    v.require(c.chi == k && c.k_v_sq == 8 * k - 30 && c.p_g_v == k + 3 && c.k_z_sq == 8 * k, kstr(k) + " invariants");
  }
  const auto two = covers::cover_invariants(KummerContext(2));
  v.require(two.p_g_z == 5 && two.k_z_sq == 16, "k=2 p_g, K^2");
  return v;
}

Verdict criterion_10() {
  Verdict v;
  const auto start = Clock::now();
  const std::vector<std::set<std::string>> want = {
      {"6a1"}, {"10a1", "8a1+a3", "7a1+a5"}, {"14a1", "12a1+a3", "10a1+2a3", "11a1+a5", "10a1+a7"}};
  for (long k = 1; k <= 3; ++k) {
    std::set<std::string> got;
    for (const auto& c : covers::sing_configs(KummerContext(k))) got.insert(c.to_string());
    v.require(got == want[k - 1], kstr(k) + " configurations");
  }
  v.require(seconds_since(start) < 1.0, "over 1 s");
  return v;
}

Verdict criterion_11() {
  Verdict v;
  for (long k = 1; k <= 20; ++k)
    v.require(covers::gamma_invariants(KummerContext(k)).h_constant == -4, kstr(k) + " h_constant");
  return v;
}

Verdict criterion_12() {
  Verdict v;
  const auto start = Clock::now();
  for (long k = 1; k <= 6; ++k) {
    KummerContext ctx(k);
    NsBasis b(ctx);
    const IntMatrix& g = b.gram().gram();
    const IntMatrix id = int_identity(17);
    // closure: involutions square to the identity, products and inverses stay isometries
    for (int t = 1; t <= 16; ++t) {
      const auto th = isometry::theta(b, t);
      v.require(th.matrix_v * th.matrix_v == id && is_isometry(th.matrix_v, g), kstr(k) + " theta");
    }
    const auto p = isometry::phi(b, 2, 1);
    const auto q = isometry::phi(b, 1, 2);
    v.require(p.matrix_v * q.matrix_v == id, kstr(k) + " phi inverse");
    v.require(is_isometry(p.matrix_v * isometry::theta(b, 5).matrix_v, g), kstr(k) + " product");

    // label equivariance
    VerifyOptions one;
    one.suites = {Suite::nikulin, Suite::isometry, Suite::glue};
    VerifyOptions seven = one;
    seven.t = 7;
    v.require(serialize_json(relabel(cmd_verify(k, one).report, 1, 1)) ==
                  serialize_json(relabel(cmd_verify(k, seven).report, 1, 7)),
              kstr(k) + " t=1 vs t=7");

    // determinism under parallelism, and margin scans past the derived bound
    for (const NsClass& d : {nikulin::l_prime(ctx, 1), nikulin::l_minus_k_a(ctx, 1)}) {
      for (auto rel : {nikulin::Relation::negative, nikulin::Relation::zero}) {
        nikulin::EnumerationOptions base, par, wide;
        par.threads = 4;
        wide.margin_steps = 8;
        const auto a = nikulin::enumerate_neg2(b, d, rel, base);
        v.require(a.classes == nikulin::enumerate_neg2(b, d, rel, par).classes, kstr(k) + " thread dependence");
        const auto w = nikulin::enumerate_neg2(b, d, rel, wide);
        v.require(w.classes == a.classes && w.alpha_scanned_max > a.alpha_scanned_max, kstr(k) + " margin scan");
      }
    }
  }
  // fault injection flips the exit code
  v.require(cli_exit("verify --k 2") == 0, "clean run exit code");
  v.require(cli_exit("verify --k 2 --inject-fault") == 1, "fault run exit code");
  v.require(seconds_since(start) < 600.0, "over 10 min");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"configuration table: A1.A1' and L^2 for k = 1..4", criterion_1},
      {"L' nef: no negative (-2)-classes, 16 orthogonal contracted classes, k = 1..6", criterion_2},
      {"L - kA1 nef and big, 15 contracted classes, model in P^{k+1} of degree 2k, k = 2..6", criterion_3},
      {"NS discriminant group and form, Kummer discriminant, k = 1..8", criterion_4},
      {"gluing with T_X is unimodular of signature (3,19), phi extends, theta iff k = 1, k = 1..8", criterion_5},
      {"characteristic polynomial of phi, Salem classification, Lefschetz number, k = 1..8", criterion_6},
      {"Pell solutions, rank-2 (-2)-classes, obstruction for k = 3..6", criterion_7},
      {"Kummer structure counts for k = 1, 2, 3", criterion_8},
      {"bidouble cover invariants, k = 1..8", criterion_9},
      {"singularity configurations for k = 1, 2, 3", criterion_10},
      {"H-constant of Gamma is -4, k = 1..20", criterion_11},
      {"properties: closure, label equivariance, determinism, margin, fault injection", criterion_12},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    std::ostringstream ms;
    ms << static_cast<long>(seconds_since(start) * 1000) << " ms";
    std::cout << "criterion " << (i + 1) << ": " << (v.ok ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ["
              << ms.str() << "]";
    if (!v.ok) std::cout << "  " << v.detail();
    std::cout << std::endl;
    failed += v.ok ? 0 : 1;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
