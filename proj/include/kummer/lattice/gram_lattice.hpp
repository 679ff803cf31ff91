#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>

#include "kummer/lattice/matrix.hpp"

namespace kummer::lattice {

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Inertia of a symmetric rational matrix by congruence diagonalization.
inline Signature signature_of(const RatMatrix& sym) {
  if (!sym.is_symmetric()) throw std::invalid_argument("signature of non-symmetric matrix");
  RatMatrix a = sym;
  const std::size_t n = a.rows();
  Signature sig;
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, p) == 0) ++p;
      if (p < n) {
        a.swap_rows(k, p);
        a.swap_cols(k, p);
      } else {
        // zero diagonal: a(k,k) + 2 a(k,j) + a(j,j) = 2 a(k,j) after e_k += e_j
        std::size_t j = k + 1;
        while (j < n && a(k, j) == 0) ++j;
        if (j == n) continue;  // null direction
        a.add_row(k, j, Rational(1));
        a.add_col(k, j, Rational(1));
      }
    }
    const Rational piv = a(k, k);
    if (piv == 0) continue;
    (piv > 0 ? sig.positive : sig.negative) += 1;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = -a(i, k) / piv;
      a.add_row(i, k, f);
      a.add_col(i, k, f);
    }
  }
  return sig;
}

/// A nondegenerate integral lattice given by its symmetric Gram matrix.
class GramLattice {
 public:
  explicit GramLattice(IntMatrix gram) : gram_(std::move(gram)) {
    if (!gram_.is_square() || gram_.rows() == 0) throw std::invalid_argument("gram matrix must be square and non-empty");
    if (!gram_.is_symmetric()) throw std::invalid_argument("gram matrix not symmetric");
    det_ = kummer::determinant(gram_);
    if (det_ == 0) throw std::domain_error("degenerate lattice");
    signature_ = signature_of(to_rational(gram_));
    even_ = true;
    for (std::size_t i = 0; i < gram_.rows(); ++i)
      if (!mpz_even_p(gram_(i, i).get_mpz_t())) even_ = false;
  }

  static GramLattice diagonal(const IntVector& d) { return GramLattice(IntMatrix::diagonal(d)); }

  const IntMatrix& gram() const noexcept { return gram_; }
  std::size_t rank() const noexcept { return gram_.rows(); }
  const Integer& determinant() const noexcept { return det_; }
  Signature signature() const noexcept { return signature_; }
  bool is_even() const noexcept { return even_; }
  bool is_unimodular() const { return abs(det_) == 1; }

  GramLattice scaled(const Integer& c) const { return GramLattice(Integer(c) * gram_); }
  GramLattice negated() const { return scaled(Integer(-1)); }

  Rational product(const RatVector& x, const RatVector& y) const { return bilinear(x, to_rational(gram_), y); }

  friend GramLattice direct_sum(const GramLattice& a, const GramLattice& b) {
    return GramLattice(kummer::direct_sum(a.gram_, b.gram_));
  }

 private:
  IntMatrix gram_;
  Integer det_;
  Signature signature_;
  bool even_ = true;
};

/// U(n): the hyperbolic plane scaled by n.
inline GramLattice hyperbolic_plane(long scale = 1) { return GramLattice(IntMatrix{{0, scale}, {scale, 0}}); }

inline bool is_isometry(const GramLattice& lattice, const IntMatrix& m) {
  if (!m.is_square() || m.rows() != lattice.rank())
    throw std::invalid_argument("isometry matrix dimension mismatch");
  return m.transpose() * lattice.gram() * m == lattice.gram();
}

}  // namespace kummer::lattice
