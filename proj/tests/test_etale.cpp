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

EtaleElement random_element(Gen& g, const AlgebraPtr& alg, long h) {
  std::vector<Rat> c;
  for (std::size_t i = 0; i < alg->dim(); ++i) c.push_back(g.rational(h));
  return EtaleElement(alg, c);
}

}  // namespace

TEST(Etale, RejectsBadModulus) {
  EXPECT_THROW(EtaleAlgebra::make(P({0, 0, 0, 1})), Error);
  EXPECT_THROW(EtaleAlgebra::make(P({1, 0, 2})), Error);
}

TEST(Etale, RingAxiomsOnRandomElements) {
  Gen g(21);
  for (int t = 0; t < 20; ++t) {
    auto alg = EtaleAlgebra::make(g.monic_separable(g.range(2, 5), 6));
    EtaleElement a = random_element(g, alg, 5), b = random_element(g, alg, 5), c = random_element(g, alg, 5);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
  }
}

TEST(Etale, NormIsMultiplicativeAndTraceAdditive) {
  Gen g(22);
  for (int t = 0; t < 25; ++t) {
    auto alg = EtaleAlgebra::make(g.monic_separable(g.range(2, 5), 6));
    EtaleElement a = random_element(g, alg, 4), b = random_element(g, alg, 4);
    EXPECT_EQ(norm(a * b), norm(a) * norm(b));
    EXPECT_EQ(trace(a + b), trace(a) + trace(b));
  }
}

TEST(Etale, InverseOfUnits) {
  Gen g(23);
  for (int t = 0; t < 25; ++t) {
    auto alg = EtaleAlgebra::make(g.monic_separable(g.range(2, 6), 6));
    EtaleElement a = random_element(g, alg, 4);
    if (!is_unit(a)) continue;
    EXPECT_EQ(a * elem_inv(a), EtaleElement::constant(alg, 1));
    EXPECT_EQ(elem_pow(a, -2) * elem_pow(a, 2), EtaleElement::constant(alg, 1));
  }
  auto split = EtaleAlgebra::make(P({0, -1, 0, 1}));
  EtaleElement zd(split, P({0, 1}));  // vanishes at the root 0
  EXPECT_FALSE(is_unit(zd));
  EXPECT_THROW(elem_inv(zd), Error);
}

TEST(Etale, BetaSatisfiesModulus) {
  Poly f = P({-2, 0, 0, 1});
  auto alg = EtaleAlgebra::make(f);
  EtaleElement b = EtaleElement::beta(alg);
  EXPECT_EQ(b * b * b, EtaleElement::constant(alg, 2));
  EXPECT_EQ(charpoly(mult_matrix(b)), f);
  EXPECT_EQ(norm(b), 2);
}

TEST(Etale, TauOnOddModulus) {
  Poly f = P({0, -1, 0, 1});
  auto alg = EtaleAlgebra::make(f);
  EtaleElement a(alg, P({3, 5, 7}));
  EXPECT_EQ(apply_tau(apply_tau(a)), a);
  EXPECT_FALSE(is_tau_fixed(a));
  EXPECT_TRUE(is_tau_fixed(a + apply_tau(a)));
  EXPECT_THROW(apply_tau(EtaleElement::beta(EtaleAlgebra::make(P({-2, 0, 0, 1})))), Error);
}

TEST(Etale, RootValuesRoundTrip) {
  auto alg = EtaleAlgebra::make(P({0, -1, 0, 1}));
  std::vector<Rat> vals{2, make_rat(1, 2), -1};
  EtaleElement a = from_root_values(alg, vals);
  EXPECT_EQ(values_at_rational_roots(a), vals);
  EXPECT_EQ(norm(a), -1);
}

TEST(Etale, KappaEmbeddingIsTauFixedWithUnitLastComponent) {
  Poly f = P({0, 2, 0, -3, 0, 1});  // x(x^4 - 3x^2 + 2)
  auto alg = EtaleAlgebra::make(f);
  EtaleElement a = embed_kappa(alg, P({5, 1}));
  EXPECT_TRUE(is_tau_fixed(a));
  EXPECT_EQ(a.to_poly().eval(0), 1);
}

TEST(Etale, SquaresAreRecognised) {
  Gen g(24);
  for (int t = 0; t < 15; ++t) {
    auto alg = EtaleAlgebra::make(g.monic_separable(g.range(2, 5), 5));
    EtaleElement a = random_element(g, alg, 3);
    if (!is_unit(a)) continue;
    SquareResult r = is_square(a * a);
    ASSERT_EQ(r.decision, Decision::True);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(*r.witness * *r.witness, a * a);
  }
}

TEST(Etale, NonSquaresCarryCertificates) {
  auto alg = EtaleAlgebra::make(P({-2, 0, 0, 1}));
  SquareResult r = is_square(EtaleElement::constant(alg, 3));
  EXPECT_EQ(r.decision, Decision::False);
  ASSERT_TRUE(r.certificate);
  EXPECT_EQ(r.certificate->kind, SquareCertificate::Kind::Norm);

  // norm 1 but negative at the unique real embedding
  auto split = EtaleAlgebra::make(P({0, -1, 0, 1}));
  SquareResult s = is_square(from_root_values(split, {-1, -1, 1}));
  EXPECT_EQ(s.decision, Decision::False);
  ASSERT_TRUE(s.certificate);
  EXPECT_EQ(s.certificate->kind, SquareCertificate::Kind::Real);

  // norm a square, positive everywhere real, not a square: 3 - b has norm 25
  SquareResult u = is_square(EtaleElement(alg, P({3, -1})));
  EXPECT_EQ(u.decision, Decision::False);
  ASSERT_TRUE(u.certificate);
  EXPECT_EQ(u.certificate->kind, SquareCertificate::Kind::Local);
}
