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

bool anti_triangular(const Matrix& g) {
  const std::size_t N = g.rows();
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; i + j < N - 1; ++j)
      if (g(i, j) != 0) return false;
  for (std::size_t i = 0; i < N; ++i)
    if (g(i, N - 1 - i) != 1) return false;
  return true;
}

}  // namespace

TEST(Lattice, ComplementOfSmallVectors) {
  ComplementLattice a = complement_lattice({2, 1, 2}, 1);
  EXPECT_EQ(a.q2, 9);
  EXPECT_TRUE(a.even);
  EXPECT_EQ(a.det, -9);
  ComplementLattice b = complement_lattice({1, 0, 1}, 1);
  EXPECT_EQ(b.q2, 2);
  EXPECT_FALSE(b.even);
  EXPECT_THROW(complement_lattice({2, 0, 2}, 1), Error);
  EXPECT_THROW(complement_lattice({1, 0, 0}, 1), Error);
}

TEST(Lattice, ComplementIsOrthogonalAndSaturated) {
  Gen g(71);
  for (int t = 0; t < 30; ++t) {
    std::vector<Int> w;
    for (int i = 0; i < 5; ++i) w.push_back(g.integer(6));
    Int c = 0;
    for (const auto& v : w) c = gcd(c, v);
    if (c != 1) continue;
    std::vector<Rat> wr(w.begin(), w.end());
    if (pairing(standard_gram(2), wr, wr) == 0) continue;
    ComplementLattice L = complement_lattice(w, 2);
    ASSERT_EQ(L.basis.cols(), 4u);
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(pairing(standard_gram(2), L.basis.column(j), wr), 0);
    // det of the complement of a primitive vector in a unimodular lattice is +-q2
    EXPECT_EQ(L.det * L.det, Rat(L.q2 * L.q2));
  }
}

TEST(Lattice, IdealArithmetic) {
  auto alg = EtaleAlgebra::make(P({-2, 0, 0, 1}));
  FracIdeal R = FracIdeal::unit(alg);
  FracIdeal I = FracIdeal::generated(alg, {EtaleElement::constant(alg, 2), EtaleElement::beta(alg)});
  EXPECT_EQ(ideal_norm(R), 1);
  EXPECT_EQ(ideal_norm(I), 2);
  EXPECT_EQ(I, FracIdeal::principal(EtaleElement::beta(alg)));
  EXPECT_EQ(ideal_norm(ideal_mul(I, I)), 4);
  EXPECT_TRUE(R.contains(I));
  EXPECT_FALSE(I.contains(R));
  FracIdeal half = ideal_scale(EtaleElement::constant(alg, make_rat(1, 2)), R);
  EXPECT_EQ(ideal_norm(half), make_rat(1, 8));
  EXPECT_THROW(FracIdeal::unit(EtaleAlgebra::make(Poly(std::vector<Rat>{make_rat(1, 2), 0, 0, 1}))), Error);
}

TEST(Lattice, NormIsMultiplicativeOnPrincipalIdeals) {
  Gen g(72);
  for (int t = 0; t < 15; ++t) {
    auto alg = EtaleAlgebra::make(g.monic_separable(3, 5));
    std::vector<Rat> a, b;
    for (int i = 0; i < 3; ++i) {
      a.emplace_back(g.integer(4));
      b.emplace_back(g.integer(4));
    }
    EtaleElement x(alg, a), y(alg, b);
    if (!is_unit(x) || !is_unit(y)) continue;
    FracIdeal X = FracIdeal::principal(x), Y = FracIdeal::principal(y);
    EXPECT_EQ(ideal_mul(X, Y), FracIdeal::principal(x * y));
    Rat nx = norm(x);
    EXPECT_EQ(ideal_norm(X), nx < 0 ? Rat(-nx) : nx);
  }
}

TEST(Lattice, UnitPairIsValidForBothReps) {
  Gen g(73);
  for (int t = 0; t < 6; ++t) {
    Poly f = g.monic_separable(t % 2 ? 5 : 3, 8);
    auto alg = EtaleAlgebra::make(f);
    PairVerdict v = verify_pair({FracIdeal::unit(alg), EtaleElement::constant(alg, 1), Rep::Sym2});
    ASSERT_TRUE(v.valid) << f.to_string() << ": " << v.reason;
    EXPECT_TRUE(anti_triangular(v.gram));
    EXPECT_EQ(det(v.gram), f.degree() % 4 == 3 ? -1 : 1);
  }
  for (int t = 0; t < 6; ++t) {
    Poly f = g.odd_separable(t % 2 ? 2 : 1, 8);
    auto alg = EtaleAlgebra::make(f);
    PairVerdict v = verify_pair({FracIdeal::unit(alg), EtaleElement::constant(alg, 1), Rep::Adjoint});
    ASSERT_TRUE(v.valid) << f.to_string() << ": " << v.reason;
    EXPECT_TRUE(is_skew_adjoint(v.op, v.gram));
  }
}

TEST(Lattice, InvalidPairsNameTheFailedCondition) {
  auto alg = EtaleAlgebra::make(P({-2, 0, 0, 1}));
  FracIdeal R = FracIdeal::unit(alg);
  PairVerdict norm_bad = verify_pair({R, EtaleElement::beta(alg), Rep::Sym2});
  EXPECT_FALSE(norm_bad.valid);
  EXPECT_EQ(norm_bad.reason.rfind("norm", 0), 0u);

  auto split = EtaleAlgebra::make(P({0, -1, 0, 1}));
  PairVerdict integ = verify_pair({FracIdeal::unit(split), from_root_values(split, {2, make_rat(1, 2), 1}), Rep::Sym2});
  EXPECT_FALSE(integ.valid);
  EXPECT_EQ(integ.reason.rfind("integrality", 0), 0u);

  PairVerdict sig = verify_pair({FracIdeal::unit(split), EtaleElement(split, P({1, 0, -2})), Rep::Sym2});
  EXPECT_FALSE(sig.valid);
  EXPECT_EQ(sig.reason.rfind("signature", 0), 0u);
}

TEST(Lattice, ScalingGivesEquivalentPairs) {
  auto alg = EtaleAlgebra::make(P({-2, 0, 0, 1}));
  IdealPair a{FracIdeal::unit(alg), EtaleElement::constant(alg, 1), Rep::Sym2};
  EtaleElement c = EtaleElement::beta(alg);
  IdealPair b{ideal_scale(c, a.ideal), c * c, Rep::Sym2};
  EXPECT_TRUE(pair_equivalence_check(a, b, c));
  PairVerdict vb = verify_pair(b);
  EXPECT_TRUE(vb.valid) << vb.reason;
  EXPECT_FALSE(pair_equivalence_check(a, b, EtaleElement::constant(alg, 2)));
}
