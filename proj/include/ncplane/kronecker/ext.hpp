#pragma once

#include "ncplane/kronecker/complex.hpp"

namespace ncplane {

struct ExtDims {
  long long e0 = 0, e1 = 0, e2 = 0;
  long long euler() const { return e0 - e1 + e2; }
};

// Cohomology of Hom(K, L): Hom^0 = scalar maps V_i -> W_i, Hom^1 = linear maps
// V_{-1} -> W_0 and V_0 -> W_1, Hom^2 = quadratic maps V_{-1} -> W_1.
// Throws NotAMonad unless both complexes certify as monads.
template <class K>
ExtDims ext_dims(const KroneckerComplex<K>& k, const KroneckerComplex<K>& l);

}  // namespace ncplane
