#include <gtest/gtest.h>

#include <random>

#include "ncplane/chainpoisson/chain.hpp"
#include "ncplane/error.hpp"

using namespace ncplane;

namespace {

const Fp one101(1, 101);

// entrywise triple-loop product, independent of Matrix::operator*
template <class K>
Matrix<K> naive_mul(const Matrix<K>& a, const Matrix<K>& b, const K& zero) {
  Matrix<K> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      K s = zero;
      for (std::size_t k = 0; k < a.cols(); ++k) s = s + a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

}  // namespace

TEST(ChainData, RandomDataComposesToZero) {
  std::mt19937_64 rng(1);
  for (auto dims : std::vector<std::vector<int>>{{2, 3, 2}, {1, 2, 3, 2, 1}, {3, 3, 3, 3}, {2}, {0, 2, 1}}) {
    auto c = random_chain_data(dims, one101, rng);
    EXPECT_NO_THROW(check_shapes(c));
    for (std::size_t t = 0; t + 1 < c.phi.size(); ++t)
      EXPECT_TRUE(naive_mul(c.phi[t], c.phi[t + 1], Fp(0, 101)).is_zero());
    EXPECT_FALSE(c.composition_defect().has_value());
  }
  auto q = random_chain_data(std::vector<int>{2, 3, 2}, Rational(1), rng);
  EXPECT_TRUE((q.phi[0] * q.phi[1]).is_zero());
  EXPECT_FALSE(q.phi[0].is_zero());
}

TEST(ChainData, ShapeErrors) {
  std::mt19937_64 rng(2);
  auto c = random_chain_data(std::vector<int>{2, 3, 2}, one101, rng);
  c.phi[0] = Matrix<Fp>(3, 3);
  try {
    check_shapes(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ShapeMismatch);
  }
  auto ok = random_chain_data(std::vector<int>{2, 3, 2}, one101, rng);
  EXPECT_THROW(differential(ok, Tuple<Fp>{Matrix<Fp>(2, 2)}), Error);
}

TEST(Differentials, HandExample) {
  // E_1 = E_2 = k, phi_1 = 1; d(e) = e_1 - e_2, d*(f) = (f_1, -f_1)
  Rational one(1);
  ChainData<Rational> c{{1, 1}, {Matrix<Rational>::identity(1, one)}, one};
  Matrix<Rational> a(1, 1), b(1, 1);
  a(0, 0) = Rational(5);
  b(0, 0) = Rational(2);
  auto d = differential(c, Tuple<Rational>{a, b});
  EXPECT_EQ(d[0](0, 0), Rational(3));
  auto ds = dual_differential(c, Tuple<Rational>{a});
  EXPECT_EQ(ds[0](0, 0), Rational(5));
  EXPECT_EQ(ds[1](0, 0), Rational(-5));
  // psi_0 carries (-1)^{i+1}: (+5, +5)
  auto p = psi0(c, Tuple<Rational>{a});
  EXPECT_EQ(p[0](0, 0), Rational(5));
  EXPECT_EQ(p[1](0, 0), Rational(5));
  // h = ((-1)^i e_i): (-5, 2)
  auto h = homotopy(Tuple<Rational>{a, b}, one);
  EXPECT_EQ(h[0](0, 0), Rational(-5));
  EXPECT_EQ(h[1](0, 0), Rational(2));
}

TEST(Differentials, MatchNaiveFormulas) {
  std::mt19937_64 rng(3);
  Fp z(0, 101);
  auto c = random_chain_data(std::vector<int>{2, 3, 2, 1}, one101, rng);
  for (int t = 0; t < 10; ++t) {
    auto e = random_endo_tuple(c, one101, rng);
    auto f = random_dual_tuple(c, one101, rng);
    auto d = differential(c, e);
    for (std::size_t s = 0; s < c.phi.size(); ++s)
      EXPECT_EQ(d[s], naive_mul(e[s], c.phi[s], z) - naive_mul(c.phi[s], e[s + 1], z));
    auto ds = dual_differential(c, f);
    EXPECT_EQ(ds[0], naive_mul(c.phi[0], f[0], z));
    EXPECT_EQ(ds[1], naive_mul(c.phi[1], f[1], z) - naive_mul(f[0], c.phi[0], z));
    EXPECT_EQ(ds[3], -one101 * naive_mul(f[2], c.phi[2], z));
  }
}

TEST(Identities, HoldOnRandomDataOverBothFields) {
  std::mt19937_64 rng(4);
  for (auto dims : std::vector<std::vector<int>>{{2, 3, 2}, {1, 3, 3, 1}, {2, 2, 2, 2, 2}}) {
    auto c = random_chain_data(dims, one101, rng);
    auto rep = verify_chain_identities(c, 100, rng);
    EXPECT_TRUE(rep.holds());
    EXPECT_EQ(rep.trials, 100);
    auto q = random_chain_data(dims, Rational(1), rng);
    EXPECT_TRUE(verify_chain_identities(q, 20, rng).holds());
  }
}

TEST(Identities, LiteralHomotopySignFailsGenerically) {
  // psi_0 agrees with -h d*, never with +h d* unless d* f = 0
  std::mt19937_64 rng(5);
  auto c = random_chain_data(std::vector<int>{2, 3, 2}, one101, rng);
  auto rep = chain_identity_report(c, 50, rng);
  EXPECT_TRUE(rep.holds());
  EXPECT_LT(rep.psi0_equals_h_dstar, 5);
}

TEST(Identities, NegativeControlWithoutSquareZero) {
  std::mt19937_64 rng(6);
  auto c = random_unconstrained_data(std::vector<int>{2, 3, 2}, one101, rng);
  ASSERT_TRUE(c.composition_defect().has_value());
  auto rep = chain_identity_report(c, 20, rng);
  EXPECT_FALSE(rep.holds());
  EXPECT_GT(rep.failures_d_psi0, 0);
  EXPECT_FALSE(rep.witness.empty());
  try {
    verify_chain_identities(c, 20, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IdentityViolated);
  }
}

TEST(Moment, HoldsWhenAlphaSquaresToZero) {
  std::mt19937_64 rng(7);
  for (auto dims : std::vector<std::vector<int>>{{2, 3, 2}, {1, 2, 2, 1}}) {
    auto a = random_chain_data(dims, one101, rng);
    auto rep = verify_moment_identity(a, 100, rng);
    EXPECT_TRUE(rep.holds());
    // the variant with + between the two terms leaves 2 alpha beta alpha
    EXPECT_GT(rep.plus_variant_failures, 0);
    auto q = random_chain_data(dims, Rational(1), rng);
    EXPECT_TRUE(verify_moment_identity(q, 20, rng).holds());
  }
}

TEST(Moment, NegativeControl) {
  std::mt19937_64 rng(8);
  auto a = random_unconstrained_data(std::vector<int>{2, 3, 2}, one101, rng);
  try {
    verify_moment_identity(a, 10, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IdentityViolated);
    EXPECT_NE(std::string(e.what()).find("residual"), std::string::npos);
  }
}
