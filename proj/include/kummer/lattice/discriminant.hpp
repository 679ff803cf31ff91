#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kummer/lattice/gram_lattice.hpp"
#include "kummer/lattice/matrix.hpp"
#include "kummer/lattice/smith.hpp"

namespace kummer::lattice {

inline constexpr std::uint64_t kDefaultGroupCap = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kWitnessSearchCap = std::uint64_t{1} << 12;

struct GroupTooLarge : std::length_error {
  GroupTooLarge() : std::length_error("group too large") {}
};

/// L^v / L as a product of cyclic groups with dual-lattice generator lifts.
///
/// Element coordinates are tuples (c_1, ..., c_r) with 0 <= c_i < d_i; the
/// element is the class of sum c_i * g_i.
class DiscriminantGroup {
 public:
  DiscriminantGroup() = default;
  DiscriminantGroup(IntVector factors, std::vector<RatVector> lifts, IntMatrix coordinate_map, IntMatrix gram)
      : factors_(std::move(factors)),
        lifts_(std::move(lifts)),
        coordinate_map_(std::move(coordinate_map)),
        gram_(std::move(gram)) {}

  const IntVector& invariant_factors() const noexcept { return factors_; }
  const std::vector<RatVector>& generator_lifts() const noexcept { return lifts_; }
  std::size_t num_generators() const noexcept { return factors_.size(); }
  const IntMatrix& gram() const noexcept { return gram_; }

  Integer order() const {
    Integer o = 1;
    for (const auto& f : factors_) o *= f;
    return o;
  }

  /// Exponent of the group (largest invariant factor, 1 if trivial).
  Integer exponent() const { return factors_.empty() ? Integer(1) : factors_.back(); }

  bool is_dual_vector(const RatVector& x) const { return to_integer(to_rational(gram_) * x).has_value(); }

  /// Coordinates of the class of a dual-lattice vector.
  IntVector coordinates(const RatVector& x) const {
    auto gx = to_integer(to_rational(gram_) * x);
    if (!gx) throw std::invalid_argument("vector is not in the dual lattice");
    IntVector z = coordinate_map_ * *gx;
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = mod_floor(z[i], factors_[i]);
    return z;
  }

  IntVector normalize(IntVector c) const {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod_floor(c[i], factors_[i]);
    return c;
  }

  RatVector lift(const IntVector& coords) const {
    RatVector x(gram_.rows(), Rational(0));
    for (std::size_t i = 0; i < coords.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) x[j] += Rational(coords[i]) * lifts_[i][j];
    return x;
  }

  Integer element_order(const IntVector& coords) const {
    Integer o = 1;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      Integer g = gcd(coords[i], factors_[i]);
      Integer oi = factors_[i] / g;
      o = lcm(o, oi);
    }
    return o;
  }

  /// Visits every element in odometer order; throws GroupTooLarge above cap.
  void for_each_element(const std::function<void(const IntVector&)>& visit,
                        std::uint64_t cap = kDefaultGroupCap) const {
    if (order() > Integer(static_cast<unsigned long>(cap))) throw GroupTooLarge();
    IntVector c(factors_.size(), Integer(0));
    for (;;) {
      visit(c);
      std::size_t i = 0;
      for (; i < c.size(); ++i) {
        c[i] += 1;
        if (c[i] < factors_[i]) break;
        c[i] = 0;
      }
      if (i == c.size()) return;
    }
  }

 private:
  IntVector factors_;
  std::vector<RatVector> lifts_;
  IntMatrix coordinate_map_;
  IntMatrix gram_;
};

inline DiscriminantGroup discriminant_group(const IntMatrix& gram) {
  if (!gram.is_square()) throw std::invalid_argument("gram matrix must be square");
  if (determinant(gram) == 0) throw std::domain_error("degenerate lattice");
  const std::size_t n = gram.rows();
  SmithDecomposition snf = smith_normal_form(gram);

  struct Gen {
    Integer factor;
    RatVector lift;
    IntVector map_row;
  };
  std::vector<Gen> gens;
  for (std::size_t i = 0; i < n; ++i) {
    const Integer& d = snf.S(i, i);
    if (d == 1) continue;
    RatVector lift(n);
    for (std::size_t j = 0; j < n; ++j) lift[j] = mod_rational(make_rational(snf.V(j, i), d), Rational(1));
    gens.push_back({d, std::move(lift), snf.U.row(i)});
  }
  // Canonical order: invariant factors ascending, lexicographic lifts within a factor.
  std::stable_sort(gens.begin(), gens.end(), [](const Gen& a, const Gen& b) {
    if (a.factor != b.factor) return a.factor < b.factor;
    return a.lift < b.lift;
  });

  IntVector factors;
  std::vector<RatVector> lifts;
  IntMatrix cmap(gens.size(), n);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    factors.push_back(gens[i].factor);
    lifts.push_back(gens[i].lift);
    for (std::size_t j = 0; j < n; ++j) cmap(i, j) = gens[i].map_row[j];
  }
  return DiscriminantGroup(std::move(factors), std::move(lifts), std::move(cmap), gram);
}

inline DiscriminantGroup discriminant_group(const GramLattice& lattice) { return discriminant_group(lattice.gram()); }

inline bool is_two_elementary(const DiscriminantGroup& group) {
  const auto& f = group.invariant_factors();
  return std::all_of(f.begin(), f.end(), [](const Integer& d) { return d == 2; });
}

inline bool is_two_elementary(const IntVector& invariant_factors) {
  return std::all_of(invariant_factors.begin(), invariant_factors.end(), [](const Integer& d) { return d == 2; });
}

/// Discriminant quadratic form q: L^v/L -> Q/2Z of an even lattice, with the
/// associated bilinear form b: L^v/L x L^v/L -> Q/Z.
class FiniteQuadraticForm {
 public:
  FiniteQuadraticForm(DiscriminantGroup group, std::uint64_t table_cap = kDefaultGroupCap)
      : group_(std::move(group)) {
    const auto& lifts = group_.generator_lifts();
    const std::size_t r = lifts.size();
    const RatMatrix g = to_rational(group_.gram());
    products_ = RatMatrix(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) products_(i, j) = bilinear(lifts[i], g, lifts[j]);
    if (group_.order() <= Integer(static_cast<unsigned long>(table_cap)))
      group_.for_each_element([&](const IntVector& c) { q_table_.emplace(c, q(c)); }, table_cap);
  }

  const DiscriminantGroup& group() const noexcept { return group_; }

  /// q-values keyed by coordinate tuple; empty when the group exceeded the table cap.
  const std::map<IntVector, Rational>& q_table() const noexcept { return q_table_; }

  /// Pairing values b(g_i, g_j) mod Z on the generators.
  RatMatrix b_table() const {
    RatMatrix b = products_;
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) = mod_rational(b(i, j), Rational(1));
    return b;
  }

  Rational exact_square(const IntVector& c) const {
    Rational s = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      for (std::size_t j = 0; j < c.size(); ++j)
        if (c[j] != 0) s += Rational(c[i] * c[j]) * products_(i, j);
    }
    return s;
  }

  Rational q(const IntVector& c) const { return mod_rational(exact_square(c), Rational(2)); }

  Rational b(const IntVector& x, const IntVector& y) const {
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < y.size(); ++j)
        if (y[j] != 0) s += Rational(x[i] * y[j]) * products_(i, j);
    }
    return mod_rational(s, Rational(1));
  }

  IntVector add(const IntVector& x, const IntVector& y) const {
    IntVector s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
    return group_.normalize(std::move(s));
  }
  IntVector scale(const Integer& a, const IntVector& x) const {
    IntVector s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s[i] = a * x[i];
    return group_.normalize(std::move(s));
  }

 private:
  DiscriminantGroup group_;
  RatMatrix products_;
  std::map<IntVector, Rational> q_table_;
};

inline FiniteQuadraticForm disc_form(const GramLattice& lattice, std::uint64_t table_cap = kDefaultGroupCap) {
  if (!lattice.is_even()) throw std::domain_error("form not defined mod 2Z");
  return FiniteQuadraticForm(discriminant_group(lattice), table_cap);
}

using FormHistogram = std::map<Rational, std::uint64_t>;

inline FormHistogram form_histogram(const FiniteQuadraticForm& form, std::uint64_t cap = kDefaultGroupCap) {
  FormHistogram h;
  form.group().for_each_element([&](const IntVector& c) { ++h[form.q(c)]; }, cap);
  return h;
}

inline FormHistogram negate(const FormHistogram& h) {
  FormHistogram out;
  for (const auto& [value, count] : h) out[mod_rational(-value, Rational(2))] += count;
  return out;
}

/// Necessary condition for an isometry of finite quadratic forms.
inline bool same_invariants(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b,
                            std::uint64_t cap = kDefaultGroupCap) {
  return a.group().invariant_factors() == b.group().invariant_factors() &&
         form_histogram(a, cap) == form_histogram(b, cap);
}

/// Generators e_1, f_1, ..., e_h, f_h, w of a decomposition
/// (U(2)-type planes) + (cyclic summand) of a discriminant form:
/// q(e_i) = q(f_i) = 0, b(e_i, f_i) = 1/2, w of the requested order and
/// q-value, all distinct summands mutually orthogonal.
struct SplitBasis {
  std::vector<std::pair<IntVector, IntVector>> planes;
  IntVector cyclic;
  Integer cyclic_order;

  /// Elements in the order e_1, f_1, e_2, f_2, ..., w.
  std::vector<IntVector> elements() const {
    std::vector<IntVector> out;
    for (const auto& [e, f] : planes) {
      out.push_back(e);
      out.push_back(f);
    }
    out.push_back(cyclic);
    return out;
  }
};

namespace detail {

inline bool find_planes(const FiniteQuadraticForm& form, std::vector<IntVector> pool, std::size_t wanted,
                        std::vector<std::pair<IntVector, IntVector>>& out) {
  if (wanted == 0) return true;
  const Rational half(1, 2);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const IntVector& e = pool[i];
    if (form.group().element_order(e) != 2 || form.q(e) != 0) continue;
    for (std::size_t j = 0; j < pool.size(); ++j) {
      const IntVector& f = pool[j];
      if (form.group().element_order(f) != 2 || form.q(f) != 0 || form.b(e, f) != half) continue;
      std::vector<IntVector> rest;
      for (const auto& x : pool)
        if (form.b(x, e) == 0 && form.b(x, f) == 0) rest.push_back(x);
      out.emplace_back(e, f);
      if (find_planes(form, std::move(rest), wanted - 1, out)) return true;
      out.pop_back();
    }
  }
  return false;
}

}  // namespace detail

/// Exhaustive search for a SplitBasis; returns nullopt when none exists.
/// Runs only for groups of order at most `cap`.
inline std::optional<SplitBasis> find_split_basis(const FiniteQuadraticForm& form, const Integer& cyclic_order,
                                                  const Rational& cyclic_q, std::size_t planes,
                                                  std::uint64_t cap = kWitnessSearchCap) {
  const Integer expected = cyclic_order * (Integer(1) << static_cast<unsigned long>(2 * planes));
  if (form.group().order() != expected) return std::nullopt;
  std::vector<IntVector> elements;
  form.group().for_each_element([&](const IntVector& c) { elements.push_back(c); }, cap);
  const Rational target = mod_rational(cyclic_q, Rational(2));
  for (const auto& w : elements) {
    if (form.group().element_order(w) != cyclic_order || form.q(w) != target) continue;
    std::vector<IntVector> perp;
    for (const auto& x : elements)
      if (form.b(x, w) == 0) perp.push_back(x);
    if (Integer(static_cast<unsigned long>(perp.size())) * cyclic_order != form.group().order()) continue;
    std::vector<std::pair<IntVector, IntVector>> found;
    if (detail::find_planes(form, perp, planes, found)) return SplitBasis{std::move(found), w, cyclic_order};
  }
  return std::nullopt;
}

/// Coordinates of x with respect to a SplitBasis, recovered from pairings:
/// the e_i-coefficient is 2 b(x, f_i), the f_i-coefficient 2 b(x, e_i), the
/// w-coefficient b(x, w) / b(w, w) modulo the cyclic order.
inline IntVector split_coordinates(const FiniteQuadraticForm& form, const SplitBasis& basis, const IntVector& x) {
  IntVector out;
  for (const auto& [e, f] : basis.planes) {
    out.push_back(mod_floor(Rational(Rational(2) * form.b(x, f)).get_num(), Integer(2)));
    out.push_back(mod_floor(Rational(Rational(2) * form.b(x, e)).get_num(), Integer(2)));
  }
  const Integer& n = basis.cyclic_order;
  Rational bw = form.b(basis.cyclic, basis.cyclic) * Rational(n);
  Rational bx = form.b(x, basis.cyclic) * Rational(n);
  if (!is_integral(bw) || !is_integral(bx)) throw std::logic_error("cyclic summand pairing not in (1/n)Z");
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), bw.get_num().get_mpz_t(), n.get_mpz_t()) == 0 && n != 1)
    throw std::logic_error("cyclic summand is degenerate");
  out.push_back(mod_floor(bx.get_num() * inv, n));
  return out;
}

}  // namespace kummer::lattice
