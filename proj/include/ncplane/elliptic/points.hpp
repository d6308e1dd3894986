#pragma once

#include <random>
#include <vector>

#include "ncplane/elliptic/point_scheme.hpp"
#include "ncplane/grmod/module.hpp"
#include "ncplane/kronecker/complex.hpp"

namespace ncplane {

// p, sigma(p), ..., sigma^{depth-1}(p); NotOnPointScheme if p is off E or sigma
// is not determined along the way.
template <class K>
std::vector<Point<K>> sigma_orbit(const PointScheme<K>& ps, const Point<K>& p, int depth);

// lambda_d on the basis of S_d: the scalar by which a degree-d element moves
// the generator of the point module.
template <class K>
std::vector<Vec<K>> point_functionals(const PointScheme<K>& ps, const std::vector<Point<K>>& orbit, int dmax);

// S / ker(lambda), HF = 1 in degrees 0..D.
template <class K>
GradedModule<K> point_module(const PointScheme<K>& ps, const Point<K>& p);

// Degreewise kernel of S -> sum of point modules.
template <class K>
GradedModule<K> ideal_of_points(const PointScheme<K>& ps, const std::vector<Point<K>>& pts);

// k points of E drawn with the generator, redrawn until pairwise distinct with
// disjoint sigma-orbits up to the degree bound and independent evaluations in
// degree k - 1.
std::vector<Point<Fp>> random_generic_points(const PointScheme<Fp>& ps, int k, std::mt19937_64& rng);

// Monad O(-1)^k -> O^{2k+1} -> O(1)^k whose cohomology is the ideal of the
// points, built one point at a time as an extension by the type-3 complex
// attached to sigma^{-1}(p).
template <class K>
KroneckerComplex<K> ideal_monad(const PointScheme<K>& ps, const std::vector<Point<K>>& pts, std::mt19937_64& rng);

struct RestrictionRow {
  int degree;
  long long hf, hf_shifted, restricted;  // HF(M,d), HF(M,d-3), HF(M/Mg,d)
};

// HF of M/Mg; GNotInjective if right multiplication by g has a kernel on M.
template <class K>
std::vector<RestrictionRow> restrict_to_E(const GradedModule<K>& m);

struct SigmaHomDims {
  long long over_s, over_b;
  bool equal() const { return over_s == over_b; }
};
template <class K>
SigmaHomDims sigma_hom_dims(const GradedAlgebra<K>& alg, int i);

struct CounterexampleReport {
  bool alpha_in_m = false, beta_in_m = false;
  bool alpha_identity = false, beta_identity = false;
  // degree d, true if some x z^{d-1} + r with r in k[y,z] lies in M_d
  std::vector<std::pair<int, bool>> gamma_found;
  std::vector<std::pair<int, long long>> m_dims;
  bool holds() const;
};

// M = {t : (z+y) t in (x+z) T} over T = QDeform(p,1,1).
CounterexampleReport counterexample_module(const AlgebraPtr<Rational>& alg, int max_degree = 6);

}  // namespace ncplane
