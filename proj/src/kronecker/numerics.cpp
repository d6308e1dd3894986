#include "ncplane/kronecker/numerics.hpp"

#include <cstdlib>
#include <numeric>

#include "ncplane/error.hpp"

namespace ncplane {

MonadShape monad_shape(long long r, long long c1, long long chi) {
  return {2 * c1 + r - chi, 3 * r + 3 * c1 - 2 * chi, c1 + r - chi};
}

GitWeights git_weights(long long r, long long c1, long long chi, long long m) {
  GitWeights w;
  w.n = 3 * r + 3 * c1 - 2 * chi;
  w.k = (2 * m + 3) * (c1 + r) - w.n;
  w.l = -(2 * m + 3) * (c1 - r) + w.n;
  return w;
}

GitIdentity git_identity(long long r, long long c1, long long chi, long long m, long long n1, long long dk1,
                         long long dl1) {
  GitWeights w = git_weights(r, c1, chi, m);
  MonadShape s = monad_shape(r, c1, chi);
  long long r1 = n1 - dk1 - dl1, c11 = dk1 - dl1, chi1 = n1 - 3 * dl1;
  GitIdentity g;
  g.lhs = w.k * (w.n * dk1 - n1 * s.d_minus1) - w.l * (w.n * dl1 - n1 * s.d1);
  g.rhs = 2 * w.n * (r * (c11 * m + chi1) - r1 * (c1 * m + chi));
  return g;
}

Invariants twist_invariants(const Invariants& inv, long long s) {
  return {inv.r, inv.c1 + s * inv.r, inv.hilbert_poly(s)};
}

Invariants normalize_invariants(long long r, long long c1, long long chi) {
  if (r < 1) throw Error(ErrorKind::InvalidInput, "normalization needs positive rank");
  // s = floor(-c1 / r)
  long long num = -c1;
  long long s = num >= 0 ? num / r : -((-num + r - 1) / r);
  return twist_invariants({r, c1, chi}, s);
}

bool fine_moduli_predicate(long long r, long long c1, long long chi) {
  Invariants n = normalize_invariants(r, c1, chi);
  MonadShape s = monad_shape(n.r, n.c1, n.chi);
  long long g = std::gcd(std::gcd(std::llabs(s.d_minus1), std::llabs(s.n)), std::llabs(s.d1));
  return g == 1;
}

long long moduli_dimension(long long r, long long c1, long long chi) {
  return r * r + 3 * r * c1 + c1 * c1 - 2 * r * chi + 1;
}

long long euler_pairing(const Invariants& e, const Invariants& f) {
  return e.r * (f.chi - f.r) - e.c1 * (3 * f.r + f.c1) + e.chi * f.r;
}

long long effective_m(long long a, long long n, long long c) {
  long long r = n - a - c, c1 = a - c, chi = n - 3 * c;
  long long m = 1;
  for (long long n1 = 0; n1 <= n; ++n1)
    for (long long dk = 0; dk <= a; ++dk)
      for (long long dl = 0; dl <= c; ++dl) {
        long long r1 = n1 - dk - dl, c11 = dk - dl, chi1 = n1 - 3 * dl;
        long long x = r * c11 - r1 * c1, y = r * chi1 - r1 * chi;
        if (x == 0 || y == 0 || (x > 0) == (y > 0)) continue;
        m = std::max(m, std::llabs(y) / std::llabs(x) + 1);
      }
  return m;
}

}  // namespace ncplane
