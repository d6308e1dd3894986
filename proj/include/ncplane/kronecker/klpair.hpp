#pragma once

#include "ncplane/kronecker/complex.hpp"

namespace ncplane {

// K: subspace of H (x) S_1 spanned by the columns of A, coordinates 3i + k.
// pi: H (x) S_1 -> L read off from B, pi(:, 3i + k) = B_k(:, i).
template <class K>
struct KLPair {
  int n = 0;
  Matrix<K> k;   // 3n x d_{-1}
  Matrix<K> pi;  // d_1 x 3n
};

template <class K>
KLPair<K> to_kl_pair(const KroneckerComplex<K>& c);

// Throws NotInNLocus when the composite K -> L (x) S_2 is nonzero.
template <class K>
KroneckerComplex<K> from_kl_pair(AlgebraPtr<K> alg, const KLPair<K>& p);

}  // namespace ncplane
