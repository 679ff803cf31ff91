#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kummer/lattice/discriminant.hpp"
#include "kummer/lattice/glue.hpp"
#include "kummer/lattice/gram_lattice.hpp"
#include "kummer/lattice/matrix.hpp"
#include "kummer/lattice/polynomial.hpp"
#include "kummer/ns/disc_structure.hpp"
#include "kummer/ns/ns_basis.hpp"
#include "kummer/report.hpp"

namespace kummer::isometry {

using ns::KummerContext;
using ns::NsBasis;

struct NsIsometry {
  IntMatrix matrix_v;   // action on v-coordinates (columns are images of v_i)
  RatMatrix matrix_la;  // action on (L, A_1, ..., A_16) coordinates
  std::string label;
};

inline NsIsometry from_la_action(const NsBasis& basis, RatMatrix la, std::string label) {
  auto v = to_integer(basis.from_la() * la * basis.to_la());
  if (!v) throw std::domain_error(label + " does not preserve NS");
  if (!lattice::is_isometry(basis.gram(), *v)) throw std::domain_error(label + " is not an isometry");
  return {std::move(*v), std::move(la), std::move(label)};
}

/// theta_t: L -> (2k+1) L - 2k(k+1) A_t, A_t -> 2L - (2k+1) A_t, A_j fixed.
inline NsIsometry theta(const NsBasis& basis, int t) {
  const KummerContext& ctx = basis.context();
  ns::check_curve_index(t);
  RatMatrix m = RatMatrix::identity(ns::kNsRank);
  const Rational c(2 * ctx.k + 1);
  m(0, 0) = c;
  m(t, 0) = -Rational(Integer(2 * ctx.m_square));
  m(0, t) = 2;
  m(t, t) = -c;
  return from_la_action(basis, std::move(m), "theta" + std::to_string(t));
}

/// phi(i, j) = theta_i theta_j
inline NsIsometry phi(const NsBasis& basis, int i, int j) {
  if (i == j) throw std::invalid_argument("identity, not an infinite-order isometry");
  NsIsometry a = theta(basis, i);
  NsIsometry b = theta(basis, j);
  return from_la_action(basis, a.matrix_la * b.matrix_la, "phi" + std::to_string(i) + "," + std::to_string(j));
}

inline NsIsometry identity_isometry(const NsBasis& basis) {
  return from_la_action(basis, RatMatrix::identity(ns::kNsRank), "id");
}

/// Action on NS^v/NS in the canonical generators: column i holds the
/// coordinates of the image of generator i.
inline IntMatrix disc_action(const lattice::DiscriminantGroup& group, const IntMatrix& matrix_v) {
  const std::size_t r = group.num_generators();
  IntMatrix a(r, r);
  const RatMatrix m = to_rational(matrix_v);
  for (std::size_t i = 0; i < r; ++i) {
    IntVector c = group.coordinates(m * group.generator_lifts()[i]);
    for (std::size_t j = 0; j < r; ++j) a(j, i) = c[j];
  }
  return a;
}

inline IntMatrix disc_action(const NsBasis& basis, const NsIsometry& iso) {
  return disc_action(lattice::discriminant_group(basis.gram()), iso.matrix_v);
}

/// True if the action is multiplication by `scalar` on every generator.
inline bool is_scalar_action(const lattice::DiscriminantGroup& group, const IntMatrix& action, const Integer& scalar) {
  for (std::size_t i = 0; i < group.num_generators(); ++i)
    for (std::size_t j = 0; j < group.num_generators(); ++j) {
      const Integer want = i == j ? mod_floor(scalar, group.invariant_factors()[i]) : Integer(0);
      if (action(i, j) != want) return false;
    }
  return true;
}

/// Checks q(g x) = q(x) over all elements of the group (order at most cap).
inline bool preserves_form(const lattice::FiniteQuadraticForm& form, const IntMatrix& action,
                           std::uint64_t cap = lattice::kDefaultGroupCap) {
  bool ok = true;
  form.group().for_each_element(
      [&](const IntVector& x) {
        if (ok) ok = form.q(form.group().normalize(action * x)) == form.q(x);
      },
      cap);
  return ok;
}

/// The glued unimodular lattice NS + T_X, together with the data needed to
/// extend isometries.
struct GluedModel {
  lattice::Overlattice overlattice;
  lattice::DiscriminantGroup ns_group;
};

/// Glues NS with U(-2)^2 + <-4d> along a split basis of the NS form.
inline GluedModel glue_ns_with_transcendental(const NsBasis& basis,
                                              std::uint64_t witness_cap = lattice::kWitnessSearchCap) {
  const KummerContext& ctx = basis.context();
  lattice::FiniteQuadraticForm form = lattice::disc_form(basis.gram());
  if (form.group().order() > Integer(static_cast<unsigned long>(witness_cap))) throw lattice::GroupTooLarge();
  auto split = lattice::find_split_basis(form, ctx.four_d(), make_rational(Integer(1), ctx.four_d()), 2, witness_cap);
  if (!split) throw std::domain_error("no split basis for the NS discriminant form");
  auto lifts = ns::split_lifts(form, *split);
  auto t_gens = ns::transcendental_generators(ctx);
  auto map = lattice::gluing_map({lifts.begin(), lifts.end()}, {t_gens.begin(), t_gens.end()});
  return {lattice::glue(basis.gram(), ns::transcendental_model(ctx), map), form.group()};
}

/// Matrix on the glued lattice induced by diag(m_v, sign * I_5), if integral.
inline std::optional<IntMatrix> extend_to_glued(const lattice::Overlattice& glued, const IntMatrix& matrix_v, int sign) {
  const std::size_t n = matrix_v.rows();
  const std::size_t total = glued.basis.rows();
  RatMatrix f(total, total);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) f(i, j) = matrix_v(i, j);
  for (std::size_t i = n; i < total; ++i) f(i, i) = sign;
  // glued coordinates c correspond to B^T c in NS + T_X
  const RatMatrix bt = glued.basis.transpose();
  return to_integer(inverse(bt) * f * bt);
}

struct ExtensionVerdict {
  std::string label;
  int sign_on_t = 1;
  IntMatrix disc_action;
  bool extends = false;
  std::string witness;
  std::optional<IntMatrix> extended;
  std::optional<lattice::GramLattice> glued;
};

inline ExtensionVerdict extension_check(const NsBasis& basis, const NsIsometry& iso, int sign_on_t) {
  if (sign_on_t != 1 && sign_on_t != -1) throw std::invalid_argument("sign on T must be +1 or -1");
  ExtensionVerdict v;
  v.label = iso.label;
  v.sign_on_t = sign_on_t;
  const auto group = lattice::discriminant_group(basis.gram());
  v.disc_action = disc_action(group, iso.matrix_v);
  v.extends = is_scalar_action(group, v.disc_action, Integer(sign_on_t));
  if (!v.extends) {
    for (std::size_t i = 0; i < group.num_generators(); ++i) {
      IntVector col(group.num_generators());
      for (std::size_t j = 0; j < col.size(); ++j) col[j] = v.disc_action(j, i);
      IntVector want(group.num_generators(), Integer(0));
      want[i] = mod_floor(Integer(sign_on_t), group.invariant_factors()[i]);
      if (col != want) {
        v.witness = "generator " + std::to_string(i + 1) + " maps to " + vector_to_string(col) + ", expected " +
                    vector_to_string(want);
        break;
      }
    }
    return v;
  }
  GluedModel model = glue_ns_with_transcendental(basis);
  v.glued = model.overlattice.lattice;
  v.extended = extend_to_glued(model.overlattice, iso.matrix_v, sign_on_t);
  if (!v.extended) {
    v.extends = false;
    v.witness = "extension is not integral";
  } else if (!lattice::is_isometry(*v.glued, *v.extended)) {
    v.extends = false;
    v.witness = "extension is not an isometry";
  } else {
    v.witness = "action equals " + std::to_string(sign_on_t) + " on all generators";
  }
  return v;
}

/// 2 + trace of the extension of phi(1, 2) acting trivially on T_X.
inline Integer lefschetz_number(const NsBasis& basis) {
  auto v = extension_check(basis, phi(basis, 2, 1), 1);
  if (!v.extends) throw std::domain_error("phi does not extend");
  return 2 + v.extended->trace();
}

inline Integer expected_lefschetz(const KummerContext& ctx) { return Integer(20) + 4 * ctx.k * ctx.k; }

/// Characteristic polynomial of phi split as (T - 1)^15 times a quadratic.
struct PhiSpectrum {
  lattice::Polynomial charpoly;
  lattice::Polynomial quadratic;
  bool divisible = false;
  lattice::QuadraticClass kind = lattice::QuadraticClass::other;
  bool is_identity = false;
};

inline PhiSpectrum phi_spectrum(const NsIsometry& iso) {
  PhiSpectrum s;
  s.charpoly = lattice::characteristic_polynomial(iso.matrix_v);
  auto [q, exact] = s.charpoly.divide_monic(lattice::Polynomial::linear(Integer(1)).pow(15));
  s.quadratic = q;
  s.divisible = exact;
  if (exact && q.degree() == 2) s.kind = lattice::quadratic_salem_check(q);
  s.is_identity = iso.matrix_v == IntMatrix::identity(iso.matrix_v.rows());
  return s;
}

}  // namespace kummer::isometry
