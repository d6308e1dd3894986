#include "ncplane/kronecker/ext.hpp"

#include "ncplane/error.hpp"

namespace ncplane {

namespace {

template <class K>
Matrix<K> unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j, const K& one) {
  Matrix<K> m(rows, cols);
  m(i, j) = one;
  return m;
}

template <class K>
void put(Vec<K>& v, std::size_t offset, const Matrix<K>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v[offset + i * m.cols() + j] += m(i, j);
}

}  // namespace

template <class K>
ExtDims ext_dims(const KroneckerComplex<K>& k, const KroneckerComplex<K>& l) {
  for (const auto* c : {&k, &l}) {
    MonadReport rep = is_monad(*c);
    if (rep.verdict != MonadVerdict::Monad) throw Error(ErrorKind::NotAMonad, rep.reason);
  }
  const GradedAlgebra<K>& alg = *k.alg;
  K one = alg.one();
  const std::size_t a = k.a, n = k.n, c = k.c, a2 = l.a, n2 = l.n, c2 = l.c;
  const std::size_t s2 = alg.dim(2);
  // Hom^1 coordinates: g_A (n2 x a) per x_k, then g_B (c2 x n) per x_k
  const std::size_t ga = n2 * a, gb = c2 * n;
  const std::size_t dim0 = a2 * a + n2 * n + c2 * c, dim1 = 3 * (ga + gb), dim2 = s2 * c2 * a;

  Matrix<K> d0(dim1, dim0);
  std::size_t col = 0;
  auto add_col = [&](const Vec<K>& v) {
    d0.set_column(col++, v);
  };
  // f_{-1}: A_L f
  for (std::size_t i = 0; i < a2; ++i)
    for (std::size_t j = 0; j < a; ++j) {
      Vec<K> v(dim1);
      Matrix<K> e = unit(a2, a, i, j, one);
      for (int x = 0; x < 3; ++x) put(v, x * ga, l.A[x] * e);
      add_col(v);
    }
  // f_0: -f A_K and B_L f
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec<K> v(dim1);
      Matrix<K> e = unit(n2, n, i, j, one);
      for (int x = 0; x < 3; ++x) {
        put(v, x * ga, -one * (e * k.A[x]));
        put(v, 3 * ga + x * gb, l.B[x] * e);
      }
      add_col(v);
    }
  // f_1: -f B_K
  for (std::size_t i = 0; i < c2; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      Vec<K> v(dim1);
      Matrix<K> e = unit(c2, c, i, j, one);
      for (int x = 0; x < 3; ++x) put(v, 3 * ga + x * gb, -one * (e * k.B[x]));
      add_col(v);
    }

  // delta_1(g) = B_L g_A + g_B A_K, coordinates (basis of S_2, c2 x a)
  Matrix<K> d1(dim2, dim1);
  auto quad_col = [&](std::size_t column, const std::vector<Matrix<K>>& q) {
    for (std::size_t b = 0; b < s2; ++b)
      for (std::size_t i = 0; i < c2; ++i)
        for (std::size_t j = 0; j < a; ++j) d1(b * c2 * a + i * a + j, column) += q[b](i, j);
  };
  for (int x = 0; x < 3; ++x)
    for (std::size_t i = 0; i < n2; ++i)
      for (std::size_t j = 0; j < a; ++j) {
        LinearMatrix<K> g = zero_linear<K>(n2, a);
        g[x](i, j) = one;
        quad_col(x * ga + i * a + j, linear_product(alg, l.B, g));
      }
  for (int x = 0; x < 3; ++x)
    for (std::size_t i = 0; i < c2; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        LinearMatrix<K> g = zero_linear<K>(c2, n);
        g[x](i, j) = one;
        quad_col(3 * ga + x * gb + i * n + j, linear_product(alg, g, k.A));
      }

  long long r0 = dim0 && dim1 ? static_cast<long long>(rank(d0)) : 0;
  long long r1 = dim1 && dim2 ? static_cast<long long>(rank(d1)) : 0;
  ExtDims e;
  e.e0 = static_cast<long long>(dim0) - r0;
  e.e1 = static_cast<long long>(dim1) - r0 - r1;
  e.e2 = static_cast<long long>(dim2) - r1;
  return e;
}

template ExtDims ext_dims<Fp>(const KroneckerComplex<Fp>&, const KroneckerComplex<Fp>&);
template ExtDims ext_dims<Rational>(const KroneckerComplex<Rational>&, const KroneckerComplex<Rational>&);

}  // namespace ncplane
