#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kummer/lattice/matrix.hpp"
#include "kummer/nikulin/configuration.hpp"
#include "kummer/ns/context.hpp"
#include "kummer/ns/ns_class.hpp"
#include "kummer/report.hpp"

namespace kummer::covers {

using ns::KummerContext;
using ns::NsClass;

/// Branch data D_1 = A_1, D_2 = A_1', D_3 = A_2 + ... + A_16 and 2 L_i = D_j + D_k.
struct BranchData {
  std::array<NsClass, 3> d;
  std::array<NsClass, 3> l;
};

inline BranchData branch_data(const KummerContext& ctx) {
  BranchData b;
  b.d[0] = NsClass::A(1);
  b.d[1] = nikulin::a_prime(ctx, 1);
  for (int j = 2; j <= ns::kNumCurves; ++j) b.d[2] = b.d[2] + NsClass::A(j);
  const Rational half(1, 2);
  b.l[0] = half * (b.d[1] + b.d[2]);
  b.l[1] = half * (b.d[0] + b.d[2]);
  b.l[2] = half * (b.d[0] + b.d[1]);
  return b;
}

struct CoverInvariants {
  Integer chi;
  Integer k_v_sq;
  Integer p_g_v;
  Integer k_z_sq;
  Integer p_g_z;
  Integer q;
  std::array<Integer, 3> l_squares;
};

inline Integer as_integer(const Rational& r) {
  if (!is_integral(r)) throw std::logic_error("expected an integral intersection number");
  return r.get_num();
}

/// Invariants of the bidouble cover V -> X and of Z (V with the 30 (-1)-curves contracted).
inline CoverInvariants cover_invariants(const KummerContext& ctx) {
  const BranchData b = branch_data(ctx);
  CoverInvariants c;
  for (int i = 0; i < 3; ++i) c.l_squares[i] = as_integer(ns::self_intersection(b.l[i], ctx));
  // chi(O_V) = 4 chi(O_X) + (1/2) sum L_i^2 with chi(O_X) = 2
  c.chi = 4 * 2 + (c.l_squares[0] + c.l_squares[1] + c.l_squares[2]) / 2;
  c.k_v_sq = as_integer(ns::self_intersection(b.l[0] + b.l[1] + b.l[2], ctx));
  // p_g(V) = p_g(X) + sum h^0(L_i); h^0(L_1) = h^0(L_2) = 0, h^0(L_3) = L_3^2/2 + 2
  c.p_g_v = 1 + c.l_squares[2] / 2 + 2;
  c.k_z_sq = c.k_v_sq + 30;
  c.p_g_z = c.p_g_v;
  c.q = 4;
  return c;
}

struct GammaInvariants {
  Integer class_multiple_of_m = 4;
  Integer self_intersection;
  Integer singular_multiplicity;
  Integer genus_bound;
  Integer h_constant;
  Integer strict_transform_dot_exceptional;
};

/// Gamma in |4M| on B with a single point of multiplicity 4k+2.
inline GammaInvariants gamma_invariants(const KummerContext& ctx) {
  GammaInvariants g;
  g.self_intersection = g.class_multiple_of_m * g.class_multiple_of_m * ctx.m_square;
  g.strict_transform_dot_exceptional = as_integer(ns::intersect(NsClass::A(1), nikulin::a_prime(ctx, 1), ctx));
  g.singular_multiplicity = g.strict_transform_dot_exceptional;
  // 2g - 2 = 2 (-2) + sum_{m odd} alpha_m <= -4 + (4k+2)
  const Integer two_g_minus_2 = Integer(-4) + g.singular_multiplicity;
  g.genus_bound = (two_g_minus_2 + 2) / 2;
  g.h_constant = g.self_intersection - g.singular_multiplicity * g.singular_multiplicity;
  return g;
}

/// alpha[m] = number of a_{2m-1} singularities on A_1 + A_1'.
struct SingConfig {
  std::map<int, int> alpha;

  int count(int m) const {
    auto it = alpha.find(m);
    return it == alpha.end() ? 0 : it->second;
  }
  Integer weight() const {
    Integer s = 0;
    for (auto [m, a] : alpha) s += Integer(m) * a;
    return s;
  }
  Rational miyaoka_sum() const {
    Rational s = 0;
    for (auto [m, a] : alpha) s += (Rational(m) - Rational(1, m)) * a;
    return s;
  }
  /// e.g. "8a1+a3"
  std::string to_string() const {
    std::string s;
    for (auto [m, a] : alpha) {
      if (!s.empty()) s += "+";
      if (a != 1) s += std::to_string(a);
      s += "a" + std::to_string(2 * m - 1);
    }
    return s;
  }
  friend bool operator==(const SingConfig&, const SingConfig&) = default;
};

inline constexpr long kSingConfigMaxK = 50;

/// Configurations with sum m alpha_m = 4k+2 and sum (m - 1/m) alpha_m <= 4k/3,
/// sorted by decreasing alpha_1, then decreasing alpha_2, ...
inline std::vector<SingConfig> sing_configs(const KummerContext& ctx) {
  if (ctx.k > kSingConfigMaxK) throw std::invalid_argument("k above the configuration cap");
  const int total = static_cast<int>(4 * ctx.k + 2);
  const Rational bound = make_rational(Integer(4 * ctx.k), Integer(3));
  std::vector<SingConfig> out;
  SingConfig cur;
  // parts m >= 2 are chosen in decreasing order; the rest are a_1 points
  std::function<void(int, int, Rational)> rec = [&](int max_part, int left, Rational used) {
    SingConfig c = cur;
    if (left > 0) c.alpha[1] = left;
    out.push_back(c);
    for (int m = std::min(max_part, left); m >= 2; --m) {
      const Rational cost = Rational(m) - Rational(1, m);
      if (used + cost > bound) continue;
      ++cur.alpha[m];
      rec(m, left - m, used + cost);
      if (--cur.alpha[m] == 0) cur.alpha.erase(m);
    }
  };
  rec(total, total, Rational(0));
  std::sort(out.begin(), out.end(), [total](const SingConfig& a, const SingConfig& b) {
    for (int m = 1; m <= total; ++m)
      if (a.count(m) != b.count(m)) return a.count(m) > b.count(m);
    return false;
  });
  return out;
}

struct GenusValue {
  Rational genus;
  bool parity_admissible = true;
};

/// g = (-4 + sum_{m odd} alpha_m + 2) / 2
inline GenusValue genus_from_config(const SingConfig& cfg) {
  int odd = 0;
  for (auto [m, a] : cfg.alpha)
    if (m % 2 == 1) odd += a;
  GenusValue g;
  g.genus = make_rational(Integer(-4 + odd + 2), Integer(2));
  g.parity_admissible = is_integral(g.genus) && g.genus >= 0;
  return g;
}

inline std::string config_list_string(const std::vector<SingConfig>& cs) {
  std::string s = "[";
  for (std::size_t i = 0; i < cs.size(); ++i) s += (i ? ", " : "") + cs[i].to_string();
  return s + "]";
}

inline VerificationReport covers_report(const KummerContext& ctx) {
  VerificationReport r;
  r.k = ctx.k;
  const std::string cite = "bidouble cover invariants";
  const long k = ctx.k;
  const CoverInvariants c = cover_invariants(ctx);
  r.expect("L_i^2", "(-8,-8," + std::to_string(2 * k) + ")",
           "(" + c.l_squares[0].get_str() + "," + c.l_squares[1].get_str() + "," + c.l_squares[2].get_str() + ")", cite);
  r.expect("chi(O_V)", std::to_string(k), c.chi.get_str(), cite);
  r.expect("K_V^2", std::to_string(8 * k - 30), c.k_v_sq.get_str(), cite);
  r.expect("p_g(V)", std::to_string(k + 3), c.p_g_v.get_str(), cite);
  r.expect("K_Z^2", std::to_string(8 * k), c.k_z_sq.get_str(), cite);
  r.expect("K_Z^2=8chi", Integer(8 * c.chi).get_str(), c.k_z_sq.get_str(), "c1^2 = 2 c2");
  r.note("q(Z)", "4", c.q.get_str(), cite, Status::paper_established);

  const std::string gcite = "hyperelliptic curve Gamma proposition";
  const GammaInvariants g = gamma_invariants(ctx);
  r.expect("Gamma^2", Integer(16 * ctx.m_square).get_str(), g.self_intersection.get_str(), gcite);
  r.expect("Gamma_multiplicity", std::to_string(4 * k + 2), g.singular_multiplicity.get_str(), gcite);
  r.expect("Gamma_genus_bound", std::to_string(2 * k), g.genus_bound.get_str(), gcite);
  r.expect("h_constant", "-4", g.h_constant.get_str(), "H-constant of Gamma");

  const auto configs = sing_configs(ctx);
  bool pure = false, bounded = true;
  for (const auto& cfg : configs) {
    pure = pure || (cfg.alpha.size() == 1 && cfg.count(1) == 4 * k + 2);
    const GenusValue gv = genus_from_config(cfg);
    bounded = bounded && (!gv.parity_admissible || gv.genus <= Rational(2 * k));
  }
  const std::string scite = "Miyaoka bound on singularities";
  r.note("sing_configs", "sum m alpha_m = 4k+2", config_list_string(configs), scite, Status::pass);
  r.expect_true("sing_configs_contain_pure_nodes", pure, scite);
  r.expect_true("sing_config_genus_at_most_2k", bounded, scite);
  return r;
}

}  // namespace kummer::covers
