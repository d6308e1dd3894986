#include <gtest/gtest.h>

#include "ncplane/error.hpp"
#include "ncplane/grmod/module.hpp"

using namespace ncplane;

namespace {

const FieldSpec F101 = FieldSpec::prime(101);

template <class K>
GradedMap<K> row_map(AlgebraPtr<K> alg, const std::vector<std::string>& entries, int src_twist) {
  TwistedFree src(entries.size(), src_twist);
  GradedMap<K> m = GradedMap<K>::zero(alg, src, {0});
  for (std::size_t j = 0; j < entries.size(); ++j) m.entries[0][j] = alg->parse(entries[j], -src_twist);
  return m;
}

void expect_euler(const Resolution<Fp>& res, int from, int to) {
  Invariants inv = res.invariants();
  for (const auto& row : cohomology_table(res, from, to))
    EXPECT_EQ(row.h0 - row.h1 + row.h2, inv.hilbert_poly(row.twist)) << "twist " << row.twist;
}

void expect_rr(const GradedModule<Fp>& m, const Resolution<Fp>& res) {
  Invariants inv = res.invariants();
  int reg = res.regularity();
  for (int d = m.lo(); d <= m.hi(); ++d) {
    EXPECT_EQ(m.hilbert(d), res.hilbert(d)) << d;
    if (d >= reg) EXPECT_EQ(m.hilbert(d), inv.hilbert_poly(d)) << d;
  }
}

}  // namespace

namespace ncplane {
void PrintTo(const AlgebraSpec& s, std::ostream* os) { *os << family_name(s.family); }
}  // namespace ncplane

namespace {

class GrModFamilies : public ::testing::TestWithParam<AlgebraSpec> {};

}  // namespace

TEST_P(GrModFamilies, FreeModuleInvariants) {
  auto alg = build_algebra<Fp>(GetParam());
  for (int m = -2; m <= 2; ++m) {
    auto mod = GradedModule<Fp>::free(alg, {m});
    auto res = free_resolution(mod);
    ASSERT_EQ(res.twists.size(), 1u);
    EXPECT_EQ(res.invariants(), (Invariants{1, m, (m + 1) * (m + 2) / 2}));
  }
  auto o = GradedModule<Fp>::free(alg, {0});
  EXPECT_EQ(o.hilbert(2), 6);
}

TEST_P(GrModFamilies, TrivialModule) {
  auto alg = build_algebra<Fp>(GetParam());
  auto k = GradedModule<Fp>::cokernel(row_map<Fp>(alg, {"x", "y", "z"}, -1));
  EXPECT_EQ(k.hilbert(0), 1);
  EXPECT_EQ(k.hilbert(1), 0);
  auto res = free_resolution(k);
  ASSERT_EQ(res.twists.size(), 4u);
  EXPECT_EQ(res.twists[1], (TwistedFree{-1, -1, -1}));
  EXPECT_EQ(res.twists[2], (TwistedFree{-2, -2, -2}));
  EXPECT_EQ(res.twists[3], (TwistedFree{-3}));
  EXPECT_EQ(res.invariants(), (Invariants{0, 0, 0}));
  // finite length modules vanish in qgr
  for (const auto& row : cohomology_table(res, -4, 3)) EXPECT_EQ(row, (CohomologyRow{row.twist, 0, 0, 0}));
}

TEST_P(GrModFamilies, LinearPointModule) {
  auto alg = build_algebra<Fp>(GetParam());
  // S/(l1 S + l2 S) for two linear forms vanishing at a point of E
  Family fam = GetParam().family;
  std::string l2 = fam == Family::HomogenizedWeyl ? "z" : "y";
  auto m = GradedModule<Fp>::cokernel(row_map<Fp>(alg, {"x", l2}, -1));
  bool point = true;
  for (int d = 0; d <= m.hi(); ++d) point = point && m.hilbert(d) == 1;
  if (fam == Family::Sklyanin) {
    // [0:0:1] is off the Sklyanin curve
    EXPECT_FALSE(point);
    return;
  }
  ASSERT_TRUE(point);
  auto res = free_resolution(m);
  ASSERT_EQ(res.twists.size(), 3u);
  EXPECT_EQ(res.twists[1], (TwistedFree{-1, -1}));
  EXPECT_EQ(res.twists[2], (TwistedFree{-2}));
  EXPECT_EQ(res.invariants(), (Invariants{0, 0, 1}));
  auto table = cohomology_table(res, 0, 0);
  EXPECT_EQ(table[0], (CohomologyRow{0, 1, 0, 0}));
  expect_euler(res, -6, 4);
  expect_rr(m, res);

  // its ideal: 0 -> I -> O -> P -> 0 gives additive invariants
  auto ideal = right_ideal<Fp>(alg, {alg->parse("x"), alg->parse(l2)});
  auto ires = free_resolution(ideal);
  EXPECT_EQ(ires.invariants(), (Invariants{1, 0, 0}));
  Invariants o = free_resolution(GradedModule<Fp>::free(alg, {0})).invariants();
  Invariants ip = ires.invariants(), pp = res.invariants();
  EXPECT_EQ(o, (Invariants{ip.r + pp.r, ip.c1 + pp.c1, ip.chi + pp.chi}));
  auto vc = verify_vanishing_condition(ires);
  EXPECT_TRUE(vc.holds);
  EXPECT_EQ(vc.h1_minus1, 1);
  EXPECT_EQ(vc.h1_minus2, 1);
  EXPECT_EQ(vc.predicted_minus1, 1);
  EXPECT_EQ(vc.predicted_minus2, 1);
  expect_euler(ires, -6, 4);
  expect_rr(ideal, ires);
  EXPECT_TRUE(ideal.is_closed());
}

TEST_P(GrModFamilies, SerreDualityOnLineBundles) {
  auto alg = build_algebra<Fp>(GetParam());
  auto res = free_resolution(GradedModule<Fp>::free(alg, {0}));
  for (const auto& row : cohomology_table(res, -8, 8)) {
    EXPECT_EQ(row.h1, 0);
    EXPECT_EQ(row.h2, h0_line(-3 - row.twist));
    EXPECT_EQ(row.h0, h0_line(row.twist));
  }
  auto t = cohomology_table(res, -3, 0);
  EXPECT_EQ(t[0], (CohomologyRow{-3, 0, 0, 1}));
  EXPECT_EQ(t[3], (CohomologyRow{0, 1, 0, 0}));
}

TEST_P(GrModFamilies, VanishingConditionOnLineBundles) {
  auto alg = build_algebra<Fp>(GetParam());
  EXPECT_TRUE(verify_vanishing_condition(free_resolution(GradedModule<Fp>::free(alg, {0}))).holds);
  EXPECT_FALSE(verify_vanishing_condition(free_resolution(GradedModule<Fp>::free(alg, {1}))).holds);
}

TEST_P(GrModFamilies, ShiftAndGTwist) {
  auto alg = build_algebra<Fp>(GetParam());
  auto o = GradedModule<Fp>::free(alg, {0});
  EXPECT_EQ(invariants(shift_twist(o, 1)), (Invariants{1, 1, 3}));
  auto og = g_twist(o);
  auto res = free_resolution(og);
  EXPECT_EQ(res.invariants(), (Invariants{1, -3, 1}));
  for (int d = 0; d <= og.hi(); ++d) EXPECT_EQ(og.hilbert(d), expected_dim(d - 3));
  auto ideal = right_ideal<Fp>(alg, {alg->parse("x"), alg->parse("y")});
  Invariants i = invariants(ideal), ig = invariants(g_twist(ideal));
  EXPECT_EQ(ig.r, i.r);
  EXPECT_EQ(ig.c1, i.c1 - 3);
}

TEST_P(GrModFamilies, ResolutionIsMinimalAndExact) {
  auto alg = build_algebra<Fp>(GetParam());
  auto ideal = right_ideal<Fp>(alg, {alg->parse("x^2"), alg->parse("y*z"), alg->parse("x*z + y^2")});
  auto res = free_resolution(ideal);
  for (const auto& phi : res.maps)
    for (std::size_t i = 0; i < phi.target.size(); ++i)
      for (std::size_t j = 0; j < phi.source.size(); ++j)
        if (!phi.entries[i][j].is_zero()) EXPECT_GE(phi.entry_degree(i, j), 1);
  for (std::size_t q = 1; q < res.maps.size(); ++q) EXPECT_TRUE(compose(res.maps[q - 1], res.maps[q]).is_zero());
  for (int d = 0; d <= ideal.hi(); ++d) {
    Matrix<Fp> prev;
    for (std::size_t q = 1; q < res.twists.size(); ++q) {
      Matrix<Fp> phi = res.maps[q - 1].at_degree(d);
      long long dim_q = free_dim(*alg, res.twists[q], d);
      long long next = q < res.maps.size() ? static_cast<long long>(rank(res.maps[q].at_degree(d))) : 0;
      EXPECT_EQ(dim_q, static_cast<long long>(rank(phi)) + next) << "q=" << q << " d=" << d;
    }
  }
  expect_rr(ideal, res);
  expect_euler(res, -5, 3);
}

INSTANTIATE_TEST_SUITE_P(Families, GrModFamilies,
                         ::testing::Values(AlgebraSpec::polynomial(F101, "x*y*z", 9), AlgebraSpec::weyl(F101, 9),
                                           AlgebraSpec::qdeform(F101, 2, 1, 1, 9),
                                           AlgebraSpec::sklyanin(F101, 1, 2, 3, 9)),
                         [](const auto& info) { return std::string(family_name(info.param.family)); });

TEST(GrMod, DegreeBoundTooSmall) {
  auto alg = build_algebra<Fp>(AlgebraSpec::polynomial(F101, "x*y*z", 5));
  auto ideal = right_ideal<Fp>(alg, {alg->parse("x^4"), alg->parse("y^4")});
  try {
    free_resolution(ideal);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegreeBoundTooSmall);
  }
}
