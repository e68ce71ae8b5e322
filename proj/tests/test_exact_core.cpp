#include <gtest/gtest.h>

#include "support.hpp"

using namespace orbitforge;
using testsupport::Gen;

namespace {

Poly P(std::initializer_list<long> asc) {
  std::vector<Rat> c;
  for (long v : asc) c.emplace_back(v);
  return Poly(c);
}

}  // namespace

TEST(NumberTheory, RationalRendering) {
  EXPECT_EQ(to_string(make_rat(6, 4)), "3/2");
  EXPECT_EQ(to_string(make_rat(-6, 4)), "-3/2");
  EXPECT_EQ(to_string(Rat(5)), "5");
}

TEST(NumberTheory, FactorizeAndSquarefree) {
  auto fs = factorize(Int(360));
  ASSERT_EQ(fs.size(), 3u);
  EXPECT_EQ(fs[0].first, 2);
  EXPECT_EQ(fs[0].second, 3u);
  EXPECT_EQ(squarefree_part(Rat(-72)), -2);
  EXPECT_EQ(squarefree_part(make_rat(3, 8)), 6);
  Int big = Int("1000000007") * Int("998244353");
  auto bf = factorize(big);
  ASSERT_EQ(bf.size(), 2u);
  EXPECT_EQ(bf[0].first * bf[1].first, big);
}

TEST(NumberTheory, SqrtModPrimeAgreesWithSquaring) {
  for (long p : {3L, 5L, 7L, 13L, 17L, 101L}) {
    for (long a = 0; a < p; ++a) {
      auto r = sqrt_mod_prime(Int(a), Int(p));
      bool residue = false;
      for (long x = 0; x < p; ++x)
        if ((x * x) % p == a) residue = true;
      ASSERT_EQ(r.has_value(), residue) << a << " mod " << p;
      if (r) EXPECT_EQ(mod_floor(Int(*r * *r - a), Int(p)), 0);
    }
  }
}

TEST(NumberTheory, RationalReconstruction) {
  Int m = 1000003;
  Rat q = make_rat(-17, 23);
  auto inv = invmod(Int(23), m);
  Int x = mod_floor(Int(-17 * *inv), m);
  auto r = rational_reconstruct(x, m);
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, q);
}

TEST(Poly, DiscriminantExamples) {
  EXPECT_EQ(poly_discriminant(P({0, -1, 0, 1})), 4);
  EXPECT_EQ(poly_discriminant(P({-2, 0, 0, 1})), -108);
  EXPECT_THROW(poly_discriminant(P({0, 0, 2})), Error);
}

TEST(Poly, DivmodReconstructs) {
  Gen g(11);
  for (int t = 0; t < 50; ++t) {
    Poly a = g.monic_separable(g.range(1, 6), 9);
    std::vector<Rat> bc;
    for (long i = 0; i < g.range(1, 4); ++i) bc.push_back(g.rational(5));
    bc.push_back(g.nonzero_rational(5));
    Poly b(bc);
    auto [q, r] = divmod(a, b);
    EXPECT_EQ(q * b + r, a);
    EXPECT_LT(r.degree(), b.degree());
  }
}

TEST(Poly, RealRootCountMatchesSturm) {
  EXPECT_EQ(count_real_roots(P({0, -1, 0, 1})), 3);
  EXPECT_EQ(count_real_roots(P({-2, 0, 0, 1})), 1);
  EXPECT_EQ(count_real_roots(P({1, 0, 1})), 0);
  auto iv = isolate_real_roots(P({0, -1, 0, 1}));
  ASSERT_EQ(iv.size(), 3u);
  EXPECT_LT(iv[0].hi, iv[2].lo);
}

TEST(Poly, RationalRoots) {
  auto r = rational_roots(P({-6, 11, -6, 1}));
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0], 1);
  EXPECT_EQ(r[2], 3);
  EXPECT_TRUE(rational_roots(P({-2, 0, 0, 1})).empty());
}

TEST(Matrix, DeterminantMatchesLeibniz) {
  Gen g(5);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = static_cast<std::size_t>(g.range(1, 5));
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) m(i, k) = g.rational(6);
    EXPECT_EQ(det(m), testsupport::leibniz_det(m));
  }
}

TEST(Matrix, CharpolyMatchesPointEvaluation) {
  Gen g(6);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = static_cast<std::size_t>(g.range(1, 5));
    Matrix m = g.integer_matrix(n, 7);
    EXPECT_EQ(charpoly(m), testsupport::charpoly_by_points(m));
  }
  Matrix swap{{0, 1}, {1, 0}};
  EXPECT_EQ(charpoly(swap), P({-1, 0, 1}));
}

TEST(Matrix, InverseAndSolve) {
  Gen g(8);
  for (int t = 0; t < 20; ++t) {
    Matrix m = g.unimodular_ish(4, 5);
    EXPECT_EQ(m * inverse(m), Matrix::identity(4));
  }
  Matrix s{{1, 2}, {2, 4}};
  EXPECT_THROW(inverse(s), Error);
  EXPECT_EQ(kernel(s).cols(), 1u);
}

TEST(Matrix, HermiteNormalForm) {
  Matrix a{{2, 1}, {0, 1}};
  Matrix h = hnf(a);
  ASSERT_EQ(h.cols(), 2u);
  EXPECT_EQ(h(0, 1), 0);
  EXPECT_GT(h(0, 0), 0);
  EXPECT_EQ(det(h) * det(h), det(a) * det(a));
  // same lattice: each basis expresses the other integrally
  EXPECT_TRUE((inverse(h) * a).is_integral());
  EXPECT_TRUE((inverse(a) * h).is_integral());
}

TEST(Matrix, IntegerKernelIsPrimitive) {
  Matrix k = integer_kernel({Int(2), Int(1), Int(2)});
  ASSERT_EQ(k.cols(), 2u);
  for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(2 * k(0, j) + k(1, j) + 2 * k(2, j), 0);
  // index one: some 2x2 minor is +-1
  Rat m01 = k(0, 0) * k(1, 1) - k(1, 0) * k(0, 1);
  Rat m02 = k(0, 0) * k(2, 1) - k(2, 0) * k(0, 1);
  Rat m12 = k(1, 0) * k(2, 1) - k(2, 0) * k(1, 1);
  Int g = gcd(gcd(m01.get_num(), m02.get_num()), m12.get_num());
  EXPECT_EQ(g, 1);
}

TEST(FpPoly, FactorCountsAgainstTrialDivision) {
  EXPECT_EQ(count_factors_fp(FpPoly::from_ints(5, {0, -1, 0, 1})), 3);
  EXPECT_EQ(count_factors_fp(FpPoly::from_ints(3, {1, 0, 1})), 1);
  try {
    count_factors_fp(FpPoly::from_ints(3, {0, 0, 0, 1}));
    FAIL() << "expected NonSeparableModP";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonSeparableModP);
  }
  Gen g(3);
  for (int t = 0; t < 60; ++t) {
    long p = std::vector<long>{3, 5, 7, 11, 13}[static_cast<std::size_t>(g.range(0, 4))];
    Poly f = g.monic_separable(g.range(2, 6), 20);
    FpPoly fp = FpPoly::reduce(f, static_cast<std::uint64_t>(p));
    if (!fp_is_squarefree(fp)) continue;
    EXPECT_EQ(count_factors_fp(fp), testsupport::brute_factor_count(f, p)) << f.to_string() << " mod " << p;
  }
}

TEST(FpPoly, FullFactorizationMultipliesBack) {
  Gen g(4);
  for (int t = 0; t < 40; ++t) {
    std::uint64_t p = std::vector<std::uint64_t>{3, 5, 7, 31}[static_cast<std::size_t>(g.range(0, 3))];
    FpPoly f = FpPoly::reduce(g.monic_separable(g.range(2, 7), 30), p);
    if (!fp_is_squarefree(f)) continue;
    auto fs = factor_squarefree_fp(f, 9);
    FpPoly prod = FpPoly::one(p);
    for (const auto& q : fs) prod = prod * q;
    EXPECT_EQ(prod, f.monic());
    EXPECT_EQ(static_cast<long>(fs.size()), count_factors_fp(f));
  }
}

TEST(FpPoly, TonelliInExtensionField) {
  FpPoly g = FpPoly::from_ints(3, {1, 0, 1});  // F_9
  FpPoly a = FpPoly::from_ints(3, {0, 1});
  FpPoly sq = (a * a) % g;
  auto r = fq_sqrt(sq, g);
  ASSERT_TRUE(r);
  EXPECT_EQ(((*r) * (*r)) % g, sq);
}
