#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kummer/lattice/discriminant.hpp"
#include "kummer/lattice/glue.hpp"
#include "kummer/lattice/gram_lattice.hpp"
#include "kummer/lattice/polynomial.hpp"
#include "kummer/lattice/smith.hpp"

using namespace kummer;
using namespace kummer::lattice;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
  return m;
}

// gcd of all j x j minors, by brute force over row/column subsets.
Integer minor_gcd(const IntMatrix& m, std::size_t j) {
  const std::size_t n = m.rows();
  Integer g = 0;
  for (unsigned rs = 0; rs < (1u << n); ++rs) {
    if (static_cast<std::size_t>(__builtin_popcount(rs)) != j) continue;
    for (unsigned cs = 0; cs < (1u << n); ++cs) {
      if (static_cast<std::size_t>(__builtin_popcount(cs)) != j) continue;
      IntMatrix sub(j, j);
      std::size_t r = 0;
      for (std::size_t a = 0; a < n; ++a) {
        if (!(rs >> a & 1u)) continue;
        std::size_t c = 0;
        for (std::size_t b = 0; b < n; ++b)
          if (cs >> b & 1u) sub(r, c++) = m(a, b);
        ++r;
      }
      g = gcd(g, determinant(sub));
    }
  }
  return g;
}

IntMatrix random_even_symmetric(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> dist(-4, 4);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 2 * dist(rng);
    for (std::size_t j = i + 1; j < n; ++j) m(i, j) = m(j, i) = dist(rng);
  }
  return m;
}

}  // namespace

TEST(Smith, IdentityAndReorder) {
  auto s = smith_normal_form(IntMatrix::identity(3));
  EXPECT_EQ(s.S, IntMatrix::identity(3));
  auto t = smith_normal_form(IntMatrix::diagonal({Integer(4), Integer(2)}));
  EXPECT_EQ(t.diagonal(), (IntVector{2, 4}));
  EXPECT_EQ(t.U * IntMatrix::diagonal({Integer(4), Integer(2)}) * t.V, t.S);
}

TEST(Smith, RandomAgainstMinorGcdOracle) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix m = random_matrix(rng, 4, -9, 9);
    auto s = smith_normal_form(m);
    ASSERT_EQ(s.U * m * s.V, s.S);
    EXPECT_EQ(abs(determinant(s.U)), 1);
    EXPECT_EQ(abs(determinant(s.V)), 1);
    EXPECT_EQ(abs(determinant(s.S)), abs(determinant(m)));
    auto d = s.diagonal();
    Integer prefix = 1;
    for (std::size_t j = 1; j <= 4; ++j) {
      if (j < 4 && d[j] != 0) { EXPECT_TRUE(mpz_divisible_p(d[j].get_mpz_t(), d[j - 1].get_mpz_t())); }
      prefix *= d[j - 1];
      EXPECT_EQ(prefix, minor_gcd(m, j)) << m;
    }
  }
}

TEST(Smith, SingularAndPermutationInvariant) {
  IntMatrix m{{2, 4, 6}, {1, 2, 3}, {0, 0, 5}};
  auto s = smith_normal_form(m);
  EXPECT_EQ(s.U * m * s.V, s.S);
  EXPECT_EQ(s.diagonal().back(), 0);
  IntMatrix p = m;
  p.swap_rows(0, 2);
  p.swap_cols(1, 2);
  EXPECT_EQ(smith_normal_form(p).S, s.S);
}

TEST(Discriminant, SmallExamples) {
  EXPECT_EQ(discriminant_group(hyperbolic_plane(2)).invariant_factors(), (IntVector{2, 2}));
  auto f = disc_form(GramLattice::diagonal({Integer(4)}));
  EXPECT_EQ(f.group().invariant_factors(), IntVector{4});
  EXPECT_EQ(f.q({Integer(1)}), Rational(1, 4));
  auto m2 = disc_form(GramLattice::diagonal({Integer(-2)}));
  EXPECT_EQ(m2.q({Integer(1)}), Rational(3, 2));
  EXPECT_THROW(discriminant_group(IntMatrix{{1, 1}, {1, 1}}), std::domain_error);
  EXPECT_THROW(disc_form(GramLattice::diagonal({Integer(3)})), std::domain_error);
}

TEST(Discriminant, HyperbolicPlaneForm) {
  auto f = disc_form(hyperbolic_plane(2));
  // q((e+f)/2) = 1, the other three classes are isotropic
  EXPECT_EQ(form_histogram(f), (FormHistogram{{Rational(0), 3}, {Rational(1), 1}}));
  EXPECT_EQ(f.b({Integer(1), Integer(0)}, {Integer(0), Integer(1)}), Rational(1, 2));
}

TEST(Discriminant, Histograms) {
  auto triv = disc_form(hyperbolic_plane(1));
  EXPECT_EQ(form_histogram(triv), (FormHistogram{{Rational(0), 1}}));
  auto c4 = disc_form(GramLattice::diagonal({Integer(4)}));
  EXPECT_EQ(form_histogram(c4), (FormHistogram{{Rational(0), 1}, {Rational(1, 4), 2}, {Rational(1), 1}}));
  EXPECT_THROW(form_histogram(c4, 2), GroupTooLarge);
}

TEST(Discriminant, DeterminantEqualsOrderAndLiftIndependence) {
  std::mt19937 rng(11);
  int tested = 0;
  while (tested < 30) {
    IntMatrix g = random_even_symmetric(rng, 4);
    if (determinant(g) == 0) continue;
    ++tested;
    GramLattice l(g);
    auto f = disc_form(l);
    EXPECT_EQ(f.group().order(), abs(l.determinant()));
    const auto& lifts = f.group().generator_lifts();
    for (std::size_t i = 0; i < lifts.size(); ++i) {
      EXPECT_TRUE(f.group().is_dual_vector(lifts[i]));
      RatVector shifted = lifts[i];
      shifted[i % shifted.size()] += 3;
      shifted[(i + 1) % shifted.size()] -= 1;
      IntVector e(lifts.size(), Integer(0));
      e[i] = 1;
      EXPECT_EQ(f.group().coordinates(shifted), e);
      EXPECT_EQ(mod_rational(l.product(shifted, shifted), Rational(2)), f.q(e));
    }
    if (f.group().order() <= 256) {
      f.group().for_each_element([&](const IntVector& x) {
        EXPECT_EQ(f.q(x), f.q(f.scale(Integer(-1), x)));
        f.group().for_each_element([&](const IntVector& y) {
          Rational lhs = mod_rational(f.q(f.add(x, y)) - f.q(x) - f.q(y), Rational(2));
          EXPECT_EQ(lhs, mod_rational(2 * f.b(x, y), Rational(2)));
        });
      });
    }
  }
}

TEST(Isometry, Basics) {
  auto u2 = hyperbolic_plane(2);
  EXPECT_TRUE(is_isometry(u2, IntMatrix::identity(2)));
  IntMatrix swap{{0, 1}, {1, 0}};
  EXPECT_TRUE(is_isometry(u2, swap));
  IntMatrix neg{{-1, 0}, {0, 1}};
  EXPECT_FALSE(is_isometry(u2, neg));
  EXPECT_TRUE(is_isometry(u2, swap * swap));
  IntMatrix minus = Integer(-1) * IntMatrix::identity(2);
  EXPECT_TRUE(is_isometry(u2, minus * swap));
  EXPECT_THROW(is_isometry(u2, IntMatrix::identity(3)), std::invalid_argument);
}

TEST(Glue, PlusMinusTwo) {
  auto a = GramLattice::diagonal({Integer(2)});
  auto b = GramLattice::diagonal({Integer(-2)});
  auto g = glue(a, b, {{RatVector{Rational(1, 2)}, RatVector{Rational(1, 2)}}});
  EXPECT_EQ(g.lattice.rank(), 2u);
  EXPECT_EQ(g.lattice.determinant(), -1);
  EXPECT_EQ(g.index, 2);
  // index^2 = |det L1| |det L2| / |det glued|
  EXPECT_EQ(g.index * g.index, 4);
}

TEST(Glue, HyperbolicPlanes) {
  auto a = hyperbolic_plane(2);
  auto b = a.negated();
  GluingMap phi{{{Rational(1, 2), Rational(0)}, {Rational(1, 2), Rational(0)}},
                {{Rational(0), Rational(1, 2)}, {Rational(0), Rational(1, 2)}}};
  auto g = glue(a, b, phi);
  EXPECT_TRUE(g.lattice.is_unimodular());
  EXPECT_EQ(g.lattice.rank(), 4u);
  EXPECT_EQ(g.index * g.index, Integer(16) / abs(g.lattice.determinant()));
}

TEST(Glue, RejectsNonIsotropic) {
  auto a = GramLattice::diagonal({Integer(2)});
  auto b = GramLattice::diagonal({Integer(2)});
  EXPECT_THROW(glue(a, b, {{RatVector{Rational(1, 2)}, RatVector{Rational(1, 2)}}}), std::domain_error);
  auto c = GramLattice::diagonal({Integer(4)});
  auto d = GramLattice::diagonal({Integer(-4)});
  // x -> 2y is not injective on Z/4
  EXPECT_THROW(glue(c, d, {{RatVector{Rational(1, 4)}, RatVector{Rational(1, 2)}}}), std::domain_error);
}

TEST(Polynomial, CharPolyAndFormatting) {
  EXPECT_EQ(characteristic_polynomial(IntMatrix::identity(2)), Polynomial::linear(Integer(1)).pow(2));
  IntMatrix companion{{0, -1}, {1, 14}};
  auto p = characteristic_polynomial(companion);
  EXPECT_EQ(p.to_string(), "T^2-14T+1");
  EXPECT_EQ(quadratic_salem_check(p), QuadraticClass::salem);
  EXPECT_EQ(quadratic_salem_check(salem_factor(1)), QuadraticClass::unipotent);
  EXPECT_EQ(quadratic_salem_check(Polynomial({Integer(1), Integer(2), Integer(1)})), QuadraticClass::finite_order);
  EXPECT_THROW(quadratic_salem_check(Polynomial({Integer(2), Integer(2), Integer(1)})), std::domain_error);
  RatMatrix half{{Rational(1, 2), Rational(0)}, {Rational(0), Rational(1)}};
  EXPECT_THROW(characteristic_polynomial(half), std::domain_error);
}

TEST(Polynomial, CharPolyMatchesDeterminantAtIntegers) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    IntMatrix m = random_matrix(rng, 5, -5, 5);
    auto p = characteristic_polynomial(m);
    EXPECT_EQ(p.degree(), 5);
    for (int x = -3; x <= 3; ++x) {
      IntMatrix a = Integer(x) * IntMatrix::identity(5) - m;
      EXPECT_EQ(p(Integer(x)), determinant(a));
    }
  }
}

TEST(Polynomial, SalemCheckAgreesWithFloatingRoots) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> dist(-40, 40);
  for (int trial = 0; trial < 100; ++trial) {
    int s = dist(rng);
    Polynomial p({Integer(1), Integer(-s), Integer(1)});
    double disc = double(s) * s - 4.0;
    QuadraticClass expect;
    if (disc > 0) {
      double r1 = (s + std::sqrt(disc)) / 2, r2 = (s - std::sqrt(disc)) / 2;
      expect = (r1 > 1 && r2 > 0) ? QuadraticClass::salem : QuadraticClass::other;
    } else if (s == 2) {
      expect = QuadraticClass::unipotent;
    } else {
      // |roots| = 1 with integral coefficients: roots of unity
      expect = QuadraticClass::finite_order;
    }
    EXPECT_EQ(quadratic_salem_check(p), expect) << s;
  }
}

TEST(Signature, Examples) {
  EXPECT_EQ(hyperbolic_plane(2).signature(), (Signature{1, 1}));
  EXPECT_EQ(GramLattice::diagonal({Integer(2), Integer(-2), Integer(-4)}).signature(), (Signature{1, 2}));
  GramLattice e{IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, -2}}};
  EXPECT_EQ(e.signature(), (Signature{1, 2}));
}
