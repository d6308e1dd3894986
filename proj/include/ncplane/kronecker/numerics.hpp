#pragma once

#include "ncplane/grmod/module.hpp"

namespace ncplane {

// Dimensions (d_{-1}, n, d_1) of a complex with invariants (r, c1, chi).
struct MonadShape {
  long long d_minus1 = 0, n = 0, d1 = 0;
  bool operator==(const MonadShape&) const = default;
};
MonadShape monad_shape(long long r, long long c1, long long chi);

struct GitWeights {
  long long n = 0, k = 0, l = 0;
};
GitWeights git_weights(long long r, long long c1, long long chi, long long m);

// Both sides of k[n dK' - n' dK] - l[n dL' - n' dL] = 2n[r(c1' m + chi') - r'(c1 m + chi)]
// for subspace data (n', dK', dL').
struct GitIdentity {
  long long lhs = 0, rhs = 0;
  bool holds() const { return lhs == rhs; }
};
GitIdentity git_identity(long long r, long long c1, long long chi, long long m, long long n1, long long dk1,
                         long long dl1);

// Unique twist with -r < c1 <= 0.
Invariants normalize_invariants(long long r, long long c1, long long chi);
// chi(M(s)) and c1(M(s))
Invariants twist_invariants(const Invariants& inv, long long s);

bool fine_moduli_predicate(long long r, long long c1, long long chi);
long long moduli_dimension(long long r, long long c1, long long chi);

// chi(E, F) from invariants.
long long euler_pairing(const Invariants& e, const Invariants& f);

// Least m >= 1 past which every achievable comparison r(c1' m + chi') - r'(c1 m + chi)
// has the sign of its leading coefficient; subspace data ranges over n' <= n,
// dK' <= a, dL' <= c.
long long effective_m(long long a, long long n, long long c);

}  // namespace ncplane
