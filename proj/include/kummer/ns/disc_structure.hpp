#pragma once

#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kummer/lattice/discriminant.hpp"
#include "kummer/lattice/glue.hpp"
#include "kummer/lattice/gram_lattice.hpp"
#include "kummer/lattice/matrix.hpp"
#include "kummer/ns/ns_basis.hpp"
#include "kummer/report.hpp"

namespace kummer::ns {

/// U(2) + U(2) + <4d>: the model whose form NS(X)^v/NS(X) carries.
inline lattice::GramLattice ns_form_model(const KummerContext& ctx) {
  auto u2 = lattice::hyperbolic_plane(2);
  return direct_sum(direct_sum(u2, u2), lattice::GramLattice::diagonal({ctx.four_d()}));
}

/// T_X = U(-2) + U(-2) + <-4d> in the basis e_1..e_5.
inline lattice::GramLattice transcendental_model(const KummerContext& ctx) { return ns_form_model(ctx).negated(); }

/// Generators e_i/2 (i <= 4) and e_5/(4d) of T_X^v/T_X.
inline std::array<RatVector, 5> transcendental_generators(const KummerContext& ctx) {
  std::array<RatVector, 5> w;
  for (int i = 0; i < 5; ++i) {
    w[i] = RatVector(5, Rational(0));
    w[i][i] = i < 4 ? Rational(1, 2) : make_rational(Integer(1), ctx.four_d());
  }
  return w;
}

/// The explicit generators w_1..w_5 (v-coordinates) for d = 4 or 0 mod 8.
inline std::optional<std::array<RatVector, 5>> explicit_w_generators(const KummerContext& ctx) {
  const Integer r = mod_floor(ctx.d, Integer(8));
  if (r != 4 && r != 0) return std::nullopt;
  auto half = [](std::initializer_list<int> idx) {
    RatVector v(kNsRank, Rational(0));
    for (int i : idx) v[i - 1] += Rational(1, 2);
    return v;
  };
  const Rational q = make_rational(Integer(1), ctx.four_d());
  std::array<RatVector, 5> w;
  if (r == 4) {
    w[0] = half({6, 8, 10, 12});
    w[1] = half({12, 13, 14, 15});
    w[2] = half({11, 13, 14, 16});
    w[3] = half({9, 10, 12, 13});
    w[4] = half({6, 12, 13});
    for (int i : {7, 8, 9, 10, 16}) w[4][i - 1] += q;
    w[4][11 - 1] += q * Rational(1 + 2 * ctx.d);
  } else {
    w[0] = half({6, 12, 14, 16});
    w[1] = half({6, 13, 15, 16});
    w[2] = half({6, 8, 10, 12});
    w[3] = half({6, 8, 9, 13});
    w[4] = half({11, 12, 13});
    for (int i : {7, 8, 16}) w[4][i - 1] += q;
    w[4][6 - 1] += q * Rational(1 + 2 * ctx.d);
  }
  w[4][17 - 1] -= 2 * q;
  return w;
}

inline std::string histogram_string(const lattice::FormHistogram& h) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [value, count] : h) {
    os << (first ? "" : ", ") << value << ':' << count;
    first = false;
  }
  os << '}';
  return os.str();
}

inline std::string factors_string(const IntVector& f) { return vector_to_string(f); }

/// Pairing matrix (b(x_i, x_j) mod Z) of dual vectors, as "[[..],[..]]".
inline std::string pairing_string(const RatMatrix& gram, const std::vector<RatVector>& xs) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < xs.size(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < xs.size(); ++j)
      os << (j ? "," : "") << mod_rational(bilinear(xs[i], gram, xs[j]), Rational(1));
    os << ']';
  }
  os << ']';
  return os.str();
}

/// The pairing matrix of a U(2) + U(2) + <4d> generator system.
inline std::string expected_pairing_string(const KummerContext& ctx) {
  const Rational q = make_rational(Integer(1), ctx.four_d());
  std::vector<std::vector<Rational>> m(5, std::vector<Rational>(5, Rational(0)));
  m[0][1] = m[1][0] = m[2][3] = m[3][2] = Rational(1, 2);
  m[4][4] = q;
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < 5; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < 5; ++j) os << (j ? "," : "") << m[i][j];
    os << ']';
  }
  os << ']';
  return os.str();
}

struct NsDiscStructure {
  lattice::FiniteQuadraticForm form;
  /// Split generators e_1, f_1, e_2, f_2, w (v-coordinate lifts) when the search ran.
  std::optional<std::array<RatVector, 5>> w;
  VerificationReport report;

  const lattice::DiscriminantGroup& group() const { return form.group(); }
};

/// Lifts of a split basis in lattice coordinates.
inline std::array<RatVector, 5> split_lifts(const lattice::FiniteQuadraticForm& form,
                                            const lattice::SplitBasis& basis) {
  std::array<RatVector, 5> out;
  auto els = basis.elements();
  for (std::size_t i = 0; i < 5 && i < els.size(); ++i) out[i] = form.group().lift(els[i]);
  return out;
}

inline NsDiscStructure disc_structure_ns(const NsBasis& basis,
                                         std::uint64_t witness_cap = lattice::kWitnessSearchCap) {
  const KummerContext& ctx = basis.context();
  VerificationReport r;
  r.k = ctx.k;
  const std::string cite_group = "NS discriminant group lemma";

  auto kummer = build_kummer_gram(ctx);
  r.expect("kummer_disc_factors", "(2,2,2,2,2,2)",
           factors_string(lattice::discriminant_group(kummer).invariant_factors()), "Kummer lattice discriminant");

  const auto& ns = basis.gram();
  r.expect("ns_abs_det", Integer(64 * ctx.d).get_str(), Integer(abs(ns.determinant())).get_str(), cite_group);
  r.expect("ns_signature", "(1,16)",
           "(" + std::to_string(ns.signature().positive) + "," + std::to_string(ns.signature().negative) + ")",
           "NS signature");

  lattice::FiniteQuadraticForm form = lattice::disc_form(ns);
  const IntVector expected_factors{2, 2, 2, 2, ctx.four_d()};
  r.expect("ns_disc_factors", factors_string(expected_factors), factors_string(form.group().invariant_factors()),
           cite_group);

  auto model = lattice::disc_form(ns_form_model(ctx));
  auto ns_hist = lattice::form_histogram(form);
  auto model_hist = lattice::form_histogram(model);
  r.expect("ns_form_histogram", histogram_string(model_hist), histogram_string(ns_hist), cite_group);

  auto tx = lattice::disc_form(transcendental_model(ctx));
  r.expect("transcendental_histogram_is_negated_ns", histogram_string(lattice::negate(ns_hist)),
           histogram_string(lattice::form_histogram(tx)), "gluing lemma");

  NsDiscStructure out{form, std::nullopt, {}};
  const RatMatrix g = to_rational(ns.gram());
  if (form.group().order() <= Integer(static_cast<unsigned long>(witness_cap))) {
    auto split = lattice::find_split_basis(form, ctx.four_d(), make_rational(Integer(1), ctx.four_d()), 2,
                                           witness_cap);
    r.expect_true("form_isometry_witness", split.has_value(), cite_group);
    if (split) {
      out.w = split_lifts(form, *split);
      r.expect("witness_pairing_matrix", expected_pairing_string(ctx),
               pairing_string(g, {out.w->begin(), out.w->end()}), cite_group);
    }
  } else {
    r.note("form_isometry_witness", "search", "group order above witness cap", cite_group, Status::not_applicable);
  }

  if (auto w = explicit_w_generators(ctx)) {
    std::vector<RatVector> ws(w->begin(), w->end());
    bool dual = true;
    for (const auto& x : ws) dual = dual && form.group().is_dual_vector(x);
    r.expect_true("explicit_w_in_dual", dual, cite_group);
    if (dual) {
      r.expect("explicit_w_pairing_matrix", expected_pairing_string(ctx), pairing_string(g, ws), cite_group);
      std::vector<std::string> squares;
      for (const auto& x : ws) squares.push_back(mod_rational(bilinear(x, g, x), Rational(2)).get_str());
      std::string sq;
      for (std::size_t i = 0; i < squares.size(); ++i) sq += (i ? "," : "") + squares[i];
      r.expect("explicit_w_squares_mod_2", "0,0,0,0," + make_rational(Integer(1), ctx.four_d()).get_str(), sq,
               cite_group);
      r.expect("explicit_w_generate", form.group().order().get_str(),
               lattice::subgroup_order(ns, ws).get_str(), cite_group);
    }
  }
  out.report = std::move(r);
  return out;
}

}  // namespace kummer::ns
