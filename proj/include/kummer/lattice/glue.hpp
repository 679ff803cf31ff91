#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kummer/lattice/discriminant.hpp"
#include "kummer/lattice/gram_lattice.hpp"
#include "kummer/lattice/matrix.hpp"
#include "kummer/lattice/smith.hpp"

namespace kummer::lattice {

/// Pairs (x, phi(x)) of dual-lattice lifts, x in L1^v and phi(x) in L2^v.
using GluingMap = std::vector<std::pair<RatVector, RatVector>>;

struct Overlattice {
  GramLattice lattice;
  RatMatrix basis;  // rows, coordinates in the basis of L1 + L2
  Integer index;    // [overlattice : L1 + L2]
};

namespace detail {

inline Integer common_denominator(const std::vector<RatVector>& vs) {
  Integer den = 1;
  for (const auto& v : vs)
    for (const auto& x : v) den = lcm(den, Integer(x.get_den()));
  return den;
}

// Rational row basis of Z^n + span(gens) and its index over Z^n.
inline std::pair<RatMatrix, Integer> saturate_with(std::size_t n, const std::vector<RatVector>& gens) {
  const Integer den = common_denominator(gens);
  IntMatrix rows(n + gens.size(), n);
  for (std::size_t i = 0; i < n; ++i) rows(i, i) = den;
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t j = 0; j < n; ++j) rows(n + g, j) = Rational(gens[g][j] * den).get_num();
  IntMatrix h = row_hnf_basis(rows);
  if (h.rows() != n) throw std::logic_error("overlattice lost rank");
  Integer det_h = abs(determinant(h));
  Integer den_n = 1;
  for (std::size_t i = 0; i < n; ++i) den_n *= den;
  RatMatrix basis(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) basis(i, j) = make_rational(h(i, j), den);
  return {std::move(basis), den_n / det_h};
}

}  // namespace detail

/// Order of the subgroup of L^v/L generated by the given dual vectors.
inline Integer subgroup_order(const GramLattice& lattice, const std::vector<RatVector>& gens) {
  if (gens.empty()) return 1;
  return detail::saturate_with(lattice.rank(), gens).second;
}

/// Overlattice of L1 + L2 generated by the graph of phi.
///
/// Requires the graph to be isotropic for q1 + q2 (that is, q2 = -phi^* q1)
/// and phi to be injective on the subgroup it is defined on.
inline Overlattice glue(const GramLattice& l1, const GramLattice& l2, const GluingMap& phi) {
  const std::size_t n1 = l1.rank();
  const std::size_t n2 = l2.rank();
  const RatMatrix g1 = to_rational(l1.gram());
  const RatMatrix g2 = to_rational(l2.gram());

  std::vector<RatVector> xs, ys, graph;
  for (const auto& [x, y] : phi) {
    if (x.size() != n1 || y.size() != n2) throw std::invalid_argument("gluing lift dimension mismatch");
    if (!to_integer(g1 * x) || !to_integer(g2 * y)) throw std::invalid_argument("gluing lift not in dual lattice");
    xs.push_back(x);
    ys.push_back(y);
    RatVector z = x;
    z.insert(z.end(), y.begin(), y.end());
    graph.push_back(std::move(z));
  }

  for (std::size_t i = 0; i < phi.size(); ++i) {
    Rational qi = bilinear(xs[i], g1, xs[i]) + bilinear(ys[i], g2, ys[i]);
    if (mod_rational(qi, Rational(2)) != 0) throw std::domain_error("gluing condition q2 = -phi*q1 fails");
    for (std::size_t j = i + 1; j < phi.size(); ++j) {
      Rational bij = bilinear(xs[i], g1, xs[j]) + bilinear(ys[i], g2, ys[j]);
      if (!is_integral(bij)) throw std::domain_error("gluing condition q2 = -phi*q1 fails");
    }
  }

  const Integer h1 = subgroup_order(l1, xs);
  const Integer h2 = subgroup_order(l2, ys);
  const GramLattice sum = direct_sum(l1, l2);
  auto [basis, index] = graph.empty() ? std::pair{RatMatrix::identity(n1 + n2), Integer(1)}
                                      : detail::saturate_with(n1 + n2, graph);
  if (index != h1 || index != h2) throw std::domain_error("gluing map is not an isomorphism");

  auto glued = to_integer(basis * to_rational(sum.gram()) * basis.transpose());
  if (!glued) throw std::domain_error("gluing condition q2 = -phi*q1 fails");
  return {GramLattice(std::move(*glued)), std::move(basis), std::move(index)};
}

/// Gluing map sending generator lifts of L1 to lifts of L2 in order.
inline GluingMap gluing_map(const std::vector<RatVector>& lifts1, const std::vector<RatVector>& lifts2) {
  if (lifts1.size() != lifts2.size()) throw std::invalid_argument("gluing generator count mismatch");
  GluingMap m;
  for (std::size_t i = 0; i < lifts1.size(); ++i) m.emplace_back(lifts1[i], lifts2[i]);
  return m;
}

}  // namespace kummer::lattice
