#pragma once

#include <random>

#include "ncplane/kronecker/complex.hpp"

namespace ncplane {

template <class K>
struct AdhmDatum {
  int n = 0, r = 0;
  Matrix<K> b1, b2;  // n x n
  Matrix<K> i;       // n x r
  Matrix<K> j;       // r x n
};

// Scalar kappa with B*A = ([b1,b2] + ij + kappa) z^2 for the standard complex,
// read off by expanding B*A at n = r = 1.
template <class K>
K calibrate_kappa(const AlgebraPtr<K>& alg);

template <class K>
struct AdhmCheck {
  bool valid = false;
  Matrix<K> residual;  // [b1,b2] + ij + kappa
};

template <class K>
AdhmCheck<K> validate_adhm(const AdhmDatum<K>& d, const K& kappa);

// O(-1)^n -> O^{2n+r} -> O(1)^n with A = (1;0;0)x + (0;1;0)y + (b1;b2;j)z and
// B = (0 1 0)x + (-1 0 0)y + (-b2 b1 i)z.
template <class K>
KroneckerComplex<K> monad_from_adhm(const AlgebraPtr<K>& alg, const AdhmDatum<K>& d);

// Uniform entries; almost never satisfies the moment equation.
template <class K>
AdhmDatum<K> random_adhm(int n, int r, const K& one, std::mt19937_64& rng);

// A datum satisfying the moment equation: solved for j when r >= n, a
// conjugated Calogero-Moser datum (rank-one defect) otherwise.
template <class K>
AdhmDatum<K> random_valid_adhm(int n, int r, const K& kappa, std::mt19937_64& rng);

struct FramingReport {
  bool framed = false;
  std::vector<long long> hf;  // middle cohomology over k[x,y] after z = 0
  long long generators_in_degree0 = 0;
  bool generated_in_degree0 = false;
};

// Restriction to the line z = 0: free of rank n - a - c over k[x,y].
template <class K>
FramingReport check_framing(const KroneckerComplex<K>& k, int max_degree = -1);

}  // namespace ncplane
