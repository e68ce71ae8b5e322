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

TEST(Orbit, RepresentativeIsSelfAdjointWithRightCharpoly) {
  Gen g(41);
  for (long deg : {3L, 5L, 7L}) {
    Poly f = g.monic_separable(deg, 10);
    OrbitRepresentative r = construct_representative(f, Rep::Sym2);
    EXPECT_EQ(charpoly(r.T), f);
    EXPECT_TRUE(is_self_adjoint(r.T, r.space.gram));
  }
}

TEST(Orbit, AdjointRepresentativeIsSkew) {
  Gen g(42);
  for (long n : {1L, 2L, 3L}) {
    Poly f = g.odd_separable(n, 10);
    OrbitRepresentative r = construct_representative(f, Rep::Adjoint);
    EXPECT_EQ(charpoly(r.T), f);
    EXPECT_TRUE(is_skew_adjoint(r.T, r.space.gram));
    EXPECT_EQ(r.T.trace(), 0);
  }
}

TEST(Orbit, RejectsInputsOutsideTheDomain) {
  EXPECT_THROW(construct_representative(P({0, 0, 0, 1}), Rep::Sym2), Error);
  EXPECT_THROW(construct_representative(P({1, 0, 1}), Rep::Sym2), Error);
  EXPECT_THROW(construct_representative(P({-2, 0, 0, 1}), Rep::Adjoint), Error);
}

TEST(Orbit, ConjugatesAreRecognisedAsOneOrbit) {
  Gen g(43);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 4; ++t) {
    Poly f = g.monic_separable(3, 6);
    OrbitRepresentative r = construct_representative(f, Rep::Sym2);
    Matrix h = random_so_element(r.space, rng);
    ASSERT_EQ(h.transpose() * r.space.gram * h, r.space.gram);
    ASSERT_EQ(det(h), 1);
    Matrix t2 = h * r.T * inverse(h);
    OrbitComparison c = same_orbit(r.T, t2, Rep::Sym2);
    ASSERT_EQ(c.relation, OrbitRelation::Equal) << f.to_string();
    ASSERT_TRUE(c.witness);
    EXPECT_EQ(*c.witness * r.T, t2 * *c.witness);
    EXPECT_EQ(c.witness->transpose() * r.space.gram * *c.witness, r.space.gram);
  }
}

TEST(Orbit, TwistByDescentClassIsADistinctOrbit) {
  Poly f = P({-2, 0, 0, 1});
  auto alg = EtaleAlgebra::make(f);
  EtaleElement alpha(alg, P({3, -1}));
  ASSERT_TRUE(in_kernel_gamma(f, alpha, Rep::Sym2));
  OrbitRepresentative t0 = construct_representative(f, Rep::Sym2);
  OrbitRepresentative t1 = construct_twisted(f, alpha, Rep::Sym2);
  EXPECT_EQ(charpoly(t1.T), f);
  OrbitComparison c = same_orbit(t0.T, t1.T, Rep::Sym2);
  EXPECT_EQ(c.relation, OrbitRelation::Distinct);
  EXPECT_TRUE(c.certificate);
}

TEST(Orbit, RecoveredAlphaHasTheSameSquareClass) {
  Poly f = P({-2, 0, 0, 1});
  auto alg = EtaleAlgebra::make(f);
  EtaleElement alpha(alg, P({3, -1}));
  OrbitRepresentative t = construct_twisted(f, alpha, Rep::Sym2);
  RecoveredAlpha r = recover_alpha(t.T, Rep::Sym2);
  EXPECT_EQ(is_square(r.alpha * alpha).decision, Decision::True);
}

TEST(Orbit, DifferentCharpolysAreDistinct) {
  OrbitRepresentative a = construct_representative(P({-2, 0, 0, 1}), Rep::Sym2);
  OrbitRepresentative b = construct_representative(P({-3, 0, 0, 1}), Rep::Sym2);
  OrbitComparison c = same_orbit(a.T, b.T, Rep::Sym2);
  EXPECT_EQ(c.relation, OrbitRelation::Distinct);
  EXPECT_EQ(c.reason, "charpoly");
}

TEST(Orbit, StandardVectorsClassifiedByLength) {
  StandardSpace s = standard_space(2);
  for (long d : {-3L, 1L, 2L, 7L}) {
    OrbitRepresentative r = standard_representative(2, Rat(d));
    VectorLabel l = classify_vector(r.w, s);
    EXPECT_EQ(l.kind, VectorLabel::Kind::Value);
    EXPECT_EQ(l.d, d);
  }
  std::vector<Rat> null{1, 0, 0, 0, 0};
  EXPECT_EQ(classify_vector(null, s).kind, VectorLabel::Kind::NullNonzero);
  EXPECT_EQ(classify_vector(std::vector<Rat>(5), s).kind, VectorLabel::Kind::Zero);
}

TEST(Orbit, StabilizerDescriptions) {
  StabilizerInfo s = stabilizer_info(P({-2, 0, 0, 1}), Rep::Sym2);
  EXPECT_EQ(s.order, 4);
  StabilizerInfo a = stabilizer_info(P({0, 2, 0, 3, 0, 1}), Rep::Adjoint);
  EXPECT_EQ(a.dimension, 2u);
  StabilizerInfo w = stabilizer_info_standard(2, Rat(-12));
  EXPECT_EQ(w.disc_class, -3);
  EXPECT_EQ(w.dimension, 6u);
}

TEST(Orbit, ReflectionsAreOrthogonalInvolutions) {
  Matrix J = standard_gram(2);
  std::vector<Rat> v{1, 2, 1, 0, 3};
  Matrix r = reflection(J, v);
  EXPECT_EQ(r * r, Matrix::identity(5));
  EXPECT_EQ(r.transpose() * J * r, J);
  EXPECT_EQ(det(r), -1);
}
