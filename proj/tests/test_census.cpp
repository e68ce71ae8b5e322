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

TEST(Census, GroupOrderFormula) {
  EXPECT_EQ(so_order(1, 3), 24);
  EXPECT_EQ(so_order(1, 5), 120);
  EXPECT_EQ(so_order(2, 3), 51840);
  EXPECT_EQ(so_order(1, 3), testsupport::so3_order_blind(3));
  EXPECT_THROW(so_order(1, 4), Error);
}

TEST(Census, BlindEnumerationAtFive) {
  EXPECT_EQ(so_order(1, 5), testsupport::so3_order_blind(5));
}

TEST(Census, FpCharpolyMatchesRationalCharpoly) {
  Gen g(61);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = static_cast<std::size_t>(g.range(2, 5));
    Matrix m = g.integer_matrix(n, 9);
    FpMat fm(n, n, 7);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        fm(i, k) = static_cast<std::uint32_t>(mod_floor(m(i, k).get_num(), 7).get_ui());
    FpPoly want = FpPoly::reduce(charpoly(m), 7);
    auto got = detail::fp_charpoly(fm);
    EXPECT_EQ(FpPoly(7, std::vector<std::uint64_t>(got.begin(), got.end())), want);
  }
}

TEST(Census, Sym2DimensionThreeAtThree) {
  FiniteCensusReport r = finite_census(3, 1, Rep::Sym2);
  EXPECT_TRUE(r.all_checks_pass());
  EXPECT_EQ(r.group_order_enumerated, 24u);
  EXPECT_EQ(r.group_order_closure, 24u);
  EXPECT_EQ(r.total_operators, 729u);
  for (const auto& row : r.rows) {
    if (!row.separable) continue;
    EXPECT_EQ(row.operator_count, 24u);
    EXPECT_EQ(row.orbit_count(), 1ull << (row.factor_count - 1));
  }
}

TEST(Census, AdjointOrbitSizesAtThree) {
  FiniteCensusReport r = finite_census(3, 1, Rep::Adjoint);
  EXPECT_TRUE(r.all_checks_pass());
  const CensusRow* a = r.find({0, 1, 0, 1});
  const CensusRow* b = r.find({0, 2, 0, 1});
  ASSERT_TRUE(a && b);
  ASSERT_EQ(a->orbit_count(), 1u);
  ASSERT_EQ(b->orbit_count(), 1u);
  EXPECT_EQ(a->orbit_sizes[0], static_cast<std::uint64_t>(testsupport::adjoint_count_mod3(1)));
  EXPECT_EQ(b->orbit_sizes[0], static_cast<std::uint64_t>(testsupport::adjoint_count_mod3(2)));
}

TEST(Census, JobsDoNotChangeTheReport) {
  CensusOptions one, four;
  four.jobs = 4;
  FiniteCensusReport a = finite_census(5, 1, Rep::Sym2, one);
  FiniteCensusReport b = finite_census(5, 1, Rep::Sym2, four);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].key, b.rows[i].key);
    EXPECT_EQ(a.rows[i].orbit_sizes, b.rows[i].orbit_sizes);
  }
}

TEST(Census, StandardVectors) {
  FiniteCensusReport r = finite_census(3, 1, Rep::Standard);
  EXPECT_TRUE(r.all_checks_pass());
  EXPECT_EQ(r.total_operators, 27u);
}

TEST(Census, GenerationModeDimensionFive) {
  CensusOptions opt;
  opt.selected = {{1, 0, 0, 0, 0, 1}, {0, 2, 0, 0, 0, 1}};
  FiniteCensusReport r = finite_census(3, 2, Rep::Sym2, opt);
  EXPECT_EQ(r.mode, "generation");
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.orbit_count(), 1ull << (row.factor_count - 1));
    std::uint64_t sum = 0;
    for (auto s : row.orbit_sizes) sum += s;
    EXPECT_EQ(Int(static_cast<unsigned long>(sum)), so_order(2, 3));
  }
}

TEST(Census, RefusesOutOfRangeRequests) {
  EXPECT_THROW(finite_census(4, 1, Rep::Sym2), Error);
  EXPECT_THROW(finite_census(2, 1, Rep::Sym2), Error);
  EXPECT_THROW(finite_census(3, 3, Rep::Sym2), Error);
}

TEST(LocalCounts, Sym2FormulaAgainstBruteFactorCount) {
  EXPECT_EQ(orbit_count_local(P({0, -1, 0, 1}), 5, Rep::Sym2), 10);
  Gen g(62);
  int done = 0;
  while (done < 10) {
    Poly f = g.monic_separable(g.range(1, 2) * 2 + 1, 10);
    long p = std::vector<long>{3, 5, 7, 11}[static_cast<std::size_t>(g.range(0, 3))];
    Rat d = poly_discriminant(f);
    if (mpz_divisible_ui_p(d.get_num().get_mpz_t(), static_cast<unsigned long>(p))) continue;
    long m = testsupport::brute_factor_count(f, p) - 1;
    Int want = m == 0 ? Int(1) : Int(pow_int(2, 2 * m - 1) + pow_int(2, m - 1));
    EXPECT_EQ(orbit_count_local(f, p, Rep::Sym2), want) << f.to_string() << " at " << p;
    ++done;
  }
}

TEST(LocalCounts, BadPrimesRejected) {
  EXPECT_THROW(orbit_count_local(P({0, -1, 0, 1}), 2, Rep::Sym2), Error);
  EXPECT_THROW(orbit_count_local(P({-2, 0, 0, 1}), 3, Rep::Sym2), Error);
}

TEST(LocalCounts, AdjointCounts) {
  // g = y + 1: x^2 + 1 is inert at 3 and split at 5
  EXPECT_EQ(orbit_count_local(P({0, 1, 0, 1}), 3, Rep::Adjoint), 1);
  EXPECT_EQ(orbit_count_local(P({0, 1, 0, 1}), 5, Rep::Adjoint), 1);
  // g = (y+1)(y+2): at 7 both x^2+1 and x^2+2 are inert, at 5 only x^2+2
  EXPECT_EQ(orbit_count_local(P({0, 2, 0, 3, 0, 1}), 7, Rep::Adjoint), 2);
  EXPECT_EQ(orbit_count_local(P({0, 2, 0, 3, 0, 1}), 5, Rep::Adjoint), 1);
}

TEST(RealCounts, Sym2AndAdjoint) {
  RealCount r = orbit_count_real(P({0, 4, 0, -5, 0, 1}), Rep::Sym2);  // roots 0, +-1, +-2
  EXPECT_EQ(r.kernel, 10);
  EXPECT_EQ(r.fiber_total, 16);
  RealCount a = orbit_count_real(P({0, 2, 0, 3, 0, 1}), Rep::Adjoint);  // g roots -1, -2
  EXPECT_EQ(a.kernel, 2);
  EXPECT_THROW(orbit_count_real(P({-2, 0, 0, 1}), Rep::Sym2), Error);
}
