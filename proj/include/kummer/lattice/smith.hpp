#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kummer/lattice/matrix.hpp"

namespace kummer::lattice {

/// U * M * V = S with U, V unimodular and diag(S) a divisibility chain
/// d1 | d2 | ... (zeros last for singular input).
struct SmithDecomposition {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;

  IntVector diagonal() const {
    IntVector d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
    return d;
  }
};

namespace detail {

// Smallest nonzero |entry| in the trailing block starting at (t, t).
inline std::optional<std::pair<std::size_t, std::size_t>> min_pivot(const IntMatrix& a, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Integer best_abs;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      Integer v = abs(a(i, j));
      if (!best || v < best_abs) {
        best = {i, j};
        best_abs = v;
        if (best_abs == 1) return best;
      }
    }
  return best;
}

}  // namespace detail

inline SmithDecomposition smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      auto piv = detail::min_pivot(a, t);
      if (!piv) break;
      a.swap_rows(t, piv->first);
      u.swap_rows(t, piv->first);
      a.swap_cols(t, piv->second);
      v.swap_cols(t, piv->second);

      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        Integer nq = -q;
        a.add_row(i, t, nq);
        u.add_row(i, t, nq);
        if (a(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        Integer nq = -q;
        a.add_col(j, t, nq);
        v.add_col(j, t, nq);
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      // Pivot now isolated; enforce divisibility of the trailing block.
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < rows && !bad_row; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      a.add_row(t, *bad_row, Integer(1));
      u.add_row(t, *bad_row, Integer(1));
    }
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < rows; ++j) u(t, j) = -u(t, j);
    }
  }
  return {std::move(a), std::move(u), std::move(v)};
}

/// Row Hermite normal form basis of the row lattice of m (zero rows dropped).
/// Upper triangular with positive pivots and reduced entries above pivots.
inline IntMatrix row_hnf_basis(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t r = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = r; i < rows; ++i)
        if (a(i, c) != 0 && (!best || abs(a(i, c)) < abs(a(*best, c)))) best = i;
      if (!best) break;
      a.swap_rows(r, *best);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (a(i, c) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(r, c).get_mpz_t());
        a.add_row(i, r, Integer(-q));
        if (a(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0)
      for (std::size_t j = 0; j < cols; ++j) a(r, j) = -a(r, j);
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(r, c).get_mpz_t());
      if (q != 0) a.add_row(i, r, Integer(-q));
    }
    pivot_cols.push_back(c);
    ++r;
  }
  IntMatrix basis(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) basis(i, j) = a(i, j);
  return basis;
}

}  // namespace kummer::lattice
