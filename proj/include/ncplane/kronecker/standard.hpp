#pragma once

#include <optional>

#include "ncplane/kronecker/complex.hpp"

namespace ncplane {

struct StandardType {
  int type = 0;  // 1..7, 0 when the complex matches none
  Invariants expected;
};

// Rows of the table of subcomplexes with shape at most (1,2,1).
Invariants standard_invariants(int type);

template <class K>
StandardType classify_standard(const KroneckerComplex<K>& k);

// A representative complex of the given type over alg. Type 3 needs a quadratic
// relation of rank 2; NormalElementNotFound-style failures raise InvalidInput.
template <class K>
KroneckerComplex<K> standard_representative(AlgebraPtr<K> alg, int type);

}  // namespace ncplane
