#include <gtest/gtest.h>

#include <random>

#include "ncplane/error.hpp"
#include "ncplane/ncalgebra/algebra.hpp"

using namespace ncplane;

namespace {

const FieldSpec F101 = FieldSpec::prime(101);
const FieldSpec QQ = FieldSpec::rational_numbers();

template <class K>
Element<K> random_element(const GradedAlgebra<K>& a, int d, std::mt19937_64& rng) {
  Vec<K> c(a.dim(d));
  for (K& x : c) x = random_scalar(rng, a.one());
  return a.from_coords(d, c);
}

std::vector<AlgebraSpec> all_families(FieldSpec f, int D) {
  return {AlgebraSpec::sklyanin(f, 1, 2, 3, D), AlgebraSpec::weyl(f, D), AlgebraSpec::qdeform(f, 2, 1, 1, D),
          AlgebraSpec::polynomial(f, "x*y*z", D)};
}

}  // namespace

TEST(NcAlgebra, HilbertFunctionAllFamiliesFp) {
  for (const auto& spec : all_families(F101, 10)) {
    auto a = build_algebra<Fp>(spec);
    for (int d = 0; d <= 10; ++d) EXPECT_EQ(a->dim(d), (d + 1) * (d + 2) / 2) << family_name(spec.family);
  }
}

TEST(NcAlgebra, HilbertFunctionAllFamiliesQ) {
  for (const auto& spec : all_families(QQ, 8)) {
    auto a = build_algebra<Rational>(spec);
    for (int d = 0; d <= 8; ++d) EXPECT_EQ(a->dim(d), (d + 1) * (d + 2) / 2) << family_name(spec.family);
  }
}

TEST(NcAlgebra, SklyaninExamples) {
  auto a = build_algebra<Fp>(AlgebraSpec::sklyanin(F101, 1, 2, 3, 10));
  EXPECT_EQ(a->dim(3), 10);
  EXPECT_EQ(a->dim(5), 21);
  EXPECT_EQ(a->dim(0), 1);
  EXPECT_THROW(a->dim(11), Error);
  try {
    build_algebra<Fp>(AlgebraSpec::sklyanin(F101, 1, 1, 1, 6));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateParameters);
  }
}

TEST(NcAlgebra, DegreeBoundTooSmallRejected) {
  EXPECT_THROW(build_algebra<Fp>(AlgebraSpec::weyl(F101, 3)), Error);
}

TEST(NcAlgebra, QDeformDegenerate) {
  try {
    build_algebra<Rational>(AlgebraSpec::qdeform(QQ, 2, Param(1, 2), 1, 5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateParameters);
  }
}

TEST(NcAlgebra, PolynomialDegreeTwo) {
  auto a = build_algebra<Rational>(AlgebraSpec::polynomial(QQ, "x*y*z", 6));
  EXPECT_EQ(a->dim(2), 6);
  auto x = a->generator(0), y = a->generator(1);
  EXPECT_EQ(a->multiply(x, y), a->multiply(y, x));
}

TEST(NcAlgebra, WeylRelation) {
  auto a = build_algebra<Rational>(AlgebraSpec::weyl(QQ, 6));
  auto x = a->generator(0), y = a->generator(1), z = a->generator(2);
  EXPECT_EQ(a->multiply(y, x), a->multiply(x, y) - a->multiply(z, z));
  EXPECT_EQ(a->multiply(x, z), a->multiply(z, x));
  EXPECT_EQ(a->multiply(y, z), a->multiply(z, y));
}

TEST(NcAlgebra, QDeformRelation) {
  auto a = build_algebra<Rational>(AlgebraSpec::qdeform(QQ, 2, 1, 1, 6));
  auto x = a->generator(0), y = a->generator(1);
  EXPECT_EQ(a->multiply(y, x), Rational(2) * a->multiply(x, y));
}

TEST(NcAlgebra, UnitAndAssociativity) {
  std::mt19937_64 rng(3);
  for (const auto& spec : all_families(F101, 8)) {
    auto a = build_algebra<Fp>(spec);
    for (int t = 0; t < 20; ++t) {
      int d1 = rng() % 4, d2 = rng() % 3, d3 = rng() % 2;
      auto u = random_element(*a, d1, rng), v = random_element(*a, d2, rng), w = random_element(*a, d3, rng);
      EXPECT_EQ(a->multiply(a->multiply(u, v), w), a->multiply(u, a->multiply(v, w)));
      EXPECT_EQ(a->multiply(a->unit(), v), v);
      EXPECT_EQ(a->multiply(v, a->unit()), v);
    }
  }
}

TEST(NcAlgebra, MultiplyOverflow) {
  auto a = build_algebra<Fp>(AlgebraSpec::weyl(F101, 4));
  auto u = a->word_element({0, 0, 0});
  try {
    a->multiply(u, a->word_element({1, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegreeOverflow);
  }
}

TEST(NcAlgebra, NormalElementFixedFamilies) {
  auto w = build_algebra<Fp>(AlgebraSpec::weyl(F101, 6));
  EXPECT_EQ(w->g(), w->word_element({2, 2, 2}));
  EXPECT_EQ(w->format(w->g()), "z^3");
  auto q = build_algebra<Rational>(AlgebraSpec::qdeform(QQ, 2, 1, 1, 6));
  EXPECT_EQ(q->g(), q->word_element({0, 1, 2}));
}

TEST(NcAlgebra, SklyaninNormalElementOracle) {
  auto a = build_algebra<Fp>(AlgebraSpec::sklyanin(F101, 1, 2, 3, 8));
  const auto& g = a->g();
  ASSERT_EQ(g.degree, 3);
  ASSERT_FALSE(g.is_zero());
  // products through the generic multiply path, not the cached tables
  Matrix<Fp> lg(a->dim(4), 3), gl(a->dim(4), 3);
  for (int k = 0; k < 3; ++k) {
    lg.set_column(k, a->multiply(a->generator(k), g).c);
    gl.set_column(k, a->multiply(g, a->generator(k)).c);
  }
  EXPECT_EQ(rank(lg), 3u);
  EXPECT_EQ(rank(gl), 3u);
  EXPECT_EQ(rank(lg.hstack(gl)), 3u);
  // conjugation matrix C with g x_k = sum_j C_kj x_j g exists
  for (int k = 0; k < 3; ++k) EXPECT_TRUE(in_column_span(lg, gl.column(k)));
  // unique up to scalar among degree-3 normal elements: the linearized
  // system {v : v x_k in S_1 g for all k} is one-dimensional
  Matrix<Fp> sys(0, a->dim(3));
  Matrix<Fp> proj = kernel_matrix(lg.transpose(), a->one()).transpose();  // annihilator of S_1 g
  for (int k = 0; k < 3; ++k) sys = sys.vstack(proj * a->right_gen(3, k));
  EXPECT_EQ(kernel_basis(sys, a->one()).size(), 1u);
}

TEST(NcAlgebra, QuotientBDims) {
  for (const auto& spec : all_families(F101, 9)) {
    auto a = build_algebra<Fp>(spec);
    EXPECT_EQ(a->quotient_B_dim(0), 1);
    for (int d = 1; d <= 8; ++d) EXPECT_EQ(a->quotient_B_dim(d), 3 * d) << family_name(spec.family);
    EXPECT_EQ(a->quotient_B_dim(3), 9);
  }
}

TEST(NcAlgebra, ParseFormatRoundTrip) {
  auto a = build_algebra<Rational>(AlgebraSpec::weyl(QQ, 6));
  auto e = a->parse("3*x^2*y - 1/2*z^3 + y*x*z");
  EXPECT_EQ(e.degree, 3);
  EXPECT_EQ(a->parse(a->format(e)), e);
  EXPECT_EQ(a->parse("0", 2), a->zero(2));
  EXPECT_THROW(a->parse("x + y*z"), Error);
  EXPECT_THROW(a->parse("x + w"), Error);
  auto f = build_algebra<Fp>(AlgebraSpec::weyl(F101, 6));
  EXPECT_EQ(f->format(f->parse("-x")), "-x");
  EXPECT_EQ(f->format(f->parse("100*x")), "-x");
}

TEST(NcAlgebra, SpecJsonRoundTrip) {
  std::vector<AlgebraSpec> specs = all_families(F101, 12);
  specs.push_back(AlgebraSpec::qdeform(QQ, Param(2, 3), -1, 5, 7));
  for (const auto& s : specs) {
    auto j = to_json(s);
    auto back = spec_from_json(j);
    EXPECT_EQ(to_json(back).dump(), j.dump());
    EXPECT_EQ(back.params, s.params);
  }
  auto j = nlohmann::json::parse(R"({"field": {"p": 101}, "family": "sklyanin", "params": [1,2,3], "degree_bound": 12})");
  EXPECT_EQ(to_json(spec_from_json(j)).dump(), j.dump());
  EXPECT_THROW(spec_from_json(nlohmann::json::parse(R"({"field": {"p": 100}, "family": "weyl"})")), Error);
}
