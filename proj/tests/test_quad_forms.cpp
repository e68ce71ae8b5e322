#include <gtest/gtest.h>

#include "support.hpp"

using namespace orbitforge;
using testsupport::Gen;

namespace {

Matrix diag(std::initializer_list<long> d) {
  std::vector<Rat> v;
  for (long x : d) v.emplace_back(x);
  return Matrix::diagonal(v);
}

/// Legendre-style oracle at odd p: (a,b)_p from solvability of
/// z^2 = a x^2 + b y^2 modulo p^3 with a primitive solution, for units and
/// single powers of p.
int hilbert_by_search(long a, long b, long p) {
  long m = p * p * p;
  for (long x = 0; x < m; ++x)
    for (long y = 0; y < m; ++y)
      for (long z = 0; z < m; ++z) {
        if (x % p == 0 && y % p == 0 && z % p == 0) continue;
        long v = ((a * x % m) * x + (b * y % m) * y - z * z) % m;
        if (v % m == 0) return 1;
      }
  return -1;
}

}  // namespace

TEST(Hilbert, AgreesWithSearchAtOddPrimes) {
  for (long p : {3L, 5L})
    for (long a : {1L, 2L, -1L, 3L, 5L, 6L, -3L, 10L})
      for (long b : {1L, 2L, -1L, 3L, 5L, -5L, 7L})
        EXPECT_EQ(hilbert_symbol(Rat(a), Rat(b), Int(p)), hilbert_by_search(a, b, p))
            << "(" << a << "," << b << ")_" << p;
}

TEST(Hilbert, KnownValuesAtTwoAndInfinity) {
  EXPECT_EQ(hilbert_symbol(-1, -1, 2), -1);
  EXPECT_EQ(hilbert_symbol(-1, -1, 0), -1);
  EXPECT_EQ(hilbert_symbol(2, 3, 2), -1);
  EXPECT_EQ(hilbert_symbol(2, -1, 2), 1);
  EXPECT_EQ(hilbert_symbol(5, 2, 2), -1);
}

TEST(Hilbert, BimultiplicativeAndProductFormula) {
  Gen g(31);
  for (int t = 0; t < 100; ++t) {
    Rat a = g.nonzero_rational(30), b = g.nonzero_rational(30), c = g.nonzero_rational(30);
    std::set<Int> places{2};
    for (const Rat& v : {a, b, c})
      for (const Int& p : prime_divisors(v.get_num() * v.get_den())) places.insert(p);
    int prod = hilbert_symbol(a, b, 0);
    for (const Int& p : places) {
      EXPECT_EQ(hilbert_symbol(a * c, b, p), hilbert_symbol(a, b, p) * hilbert_symbol(c, b, p));
      prod *= hilbert_symbol(a, b, p);
    }
    EXPECT_EQ(prod, 1);
  }
}

TEST(QuadForms, DiagonalizationIsCongruence) {
  Gen g(32);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = static_cast<std::size_t>(g.range(2, 5));
    Matrix m = g.integer_matrix(n, 4);
    Matrix s = m + m.transpose();
    if (det(s) == 0) continue;
    Diagonalization d = diagonalize(QuadSpace(s));
    EXPECT_EQ(d.u.transpose() * s * d.u, Matrix::diagonal(d.d));
    EXPECT_NE(det(d.u), 0);
  }
}

TEST(QuadForms, IsometryClassics) {
  EXPECT_TRUE(is_isometric(QuadSpace(diag({1, -2})), QuadSpace(diag({2, -1}))));
  EXPECT_FALSE(is_isometric(QuadSpace(diag({1, 1})), QuadSpace(diag({1, 2}))));
  EXPECT_FALSE(is_isometric(QuadSpace(diag({1, 1})), QuadSpace(diag({3, 3}))));
  EXPECT_TRUE(is_isometric(QuadSpace(diag({1, 1})), QuadSpace(diag({5, 5}))));
  EXPECT_TRUE(is_isometric(QuadSpace(diag({1, 1, 1})), QuadSpace(diag({2, 3, 6}))));
}

TEST(QuadForms, InvariantsStableUnderBasisChange) {
  Gen g(33);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = static_cast<std::size_t>(g.range(2, 5));
    std::vector<Rat> d;
    for (std::size_t i = 0; i < n; ++i) d.push_back(g.nonzero_rational(9));
    Matrix s = Matrix::diagonal(d);
    Matrix u = g.elementary(n, 6);
    EXPECT_TRUE(same_invariants(invariants(QuadSpace(s)), invariants(QuadSpace(u.transpose() * s * u))));
  }
}

TEST(QuadForms, StandardSpaceIsSplit) {
  for (std::size_t n = 1; n <= 4; ++n) {
    QuadSpace s(standard_gram(n));
    EXPECT_TRUE(is_split_odd(s));
    Matrix m = maximal_isotropic_subspace(s);
    EXPECT_EQ(m.cols(), n);
    EXPECT_TRUE((m.transpose() * s.gram() * m).is_zero());
    Matrix u = hyperbolic_completion(s, m);
    EXPECT_EQ(u.transpose() * s.gram() * u, standard_gram(n));
  }
  EXPECT_FALSE(is_split_odd(QuadSpace(diag({1, 1, 1}))));
}

TEST(QuadForms, ConicsSolvedWhenLocallySolvable) {
  Gen g(34);
  int solved = 0;
  for (int t = 0; t < 60; ++t) {
    Rat a = g.nonzero_rational(12), b = g.nonzero_rational(12), c = g.nonzero_rational(12);
    bool iso = ternary_isotropic(a, b, c);
    auto sol = solve_conic(a, b, c);
    EXPECT_EQ(iso, sol.has_value());
    if (sol) {
      const auto& v = *sol;
      EXPECT_EQ(a * v[0] * v[0] + b * v[1] * v[1] + c * v[2] * v[2], 0);
      EXPECT_FALSE(v[0] == 0 && v[1] == 0 && v[2] == 0);
      ++solved;
    }
  }
  EXPECT_GT(solved, 0);
}

TEST(QuadForms, RandomSplitSpacesYieldHyperbolicBases) {
  Gen g(35);
  for (int t = 0; t < 10; ++t) {
    std::size_t n = static_cast<std::size_t>(g.range(1, 3));
    Matrix u = g.elementary(2 * n + 1, 5);
    QuadSpace s(u.transpose() * standard_gram(n) * u);
    ASSERT_TRUE(is_split_odd(s));
    Matrix m = maximal_isotropic_subspace(s, n, 5);
    Matrix h = hyperbolic_completion(s, m);
    EXPECT_EQ(h.transpose() * s.gram() * h, standard_gram(n));
  }
}
