#include "ncplane/kronecker/klpair.hpp"

#include "ncplane/error.hpp"

namespace ncplane {

template <class K>
KLPair<K> to_kl_pair(const KroneckerComplex<K>& c) {
  KLPair<K> p;
  p.n = c.n;
  p.k = Matrix<K>(3 * c.n, c.a);
  p.pi = Matrix<K>(c.c, 3 * c.n);
  for (int i = 0; i < c.n; ++i)
    for (int k = 0; k < 3; ++k) {
      for (int j = 0; j < c.a; ++j) p.k(3 * i + k, j) = c.A[k](i, j);
      for (int r = 0; r < c.c; ++r) p.pi(r, 3 * i + k) = c.B[k](r, i);
    }
  if (rank(p.k) != static_cast<std::size_t>(c.a))
    throw Error(ErrorKind::InvalidInput, "A is not injective on global sections; K would drop dimension");
  if (rank(p.pi) != static_cast<std::size_t>(c.c))
    throw Error(ErrorKind::InvalidInput, "B does not give a quotient of the expected dimension");
  return p;
}

template <class K>
KroneckerComplex<K> from_kl_pair(AlgebraPtr<K> alg, const KLPair<K>& p) {
  int n = p.n, a = static_cast<int>(p.k.cols()), c = static_cast<int>(p.pi.rows());
  if (p.k.rows() != std::size_t(3 * n) || p.pi.cols() != std::size_t(3 * n))
    throw Error(ErrorKind::ShapeMismatch, "KL-pair matrices do not match 3n");
  KroneckerComplex<K> out{alg, a, n, c, zero_linear<K>(n, a), zero_linear<K>(c, n)};
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < 3; ++k) {
      for (int j = 0; j < a; ++j) out.A[k](i, j) = p.k(3 * i + k, j);
      for (int r = 0; r < c; ++r) out.B[k](r, i) = p.pi(r, 3 * i + k);
    }
  if (auto w = complex_defect(out))
    throw Error(ErrorKind::NotInNLocus, "composite K -> L (x) S_2 is nonzero at (" + std::to_string(w->row) + ", " +
                                            std::to_string(w->col) + "): " + w->entry);
  return out;
}

template KLPair<Fp> to_kl_pair<Fp>(const KroneckerComplex<Fp>&);
template KLPair<Rational> to_kl_pair<Rational>(const KroneckerComplex<Rational>&);
template KroneckerComplex<Fp> from_kl_pair<Fp>(AlgebraPtr<Fp>, const KLPair<Fp>&);
template KroneckerComplex<Rational> from_kl_pair<Rational>(AlgebraPtr<Rational>, const KLPair<Rational>&);

}  // namespace ncplane
