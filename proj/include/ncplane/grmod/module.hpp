#pragma once

#include <vector>

#include "ncplane/ncalgebra/algebra.hpp"

namespace ncplane {

// Twists (m_1..m_k) of O(m_1) + ... + O(m_k); O(m)_d = S_{d+m}.
using TwistedFree = std::vector<int>;

template <class K>
int free_dim(const GradedAlgebra<K>& alg, const TwistedFree& f, int d) {
  int n = 0;
  for (int m : f) n += d + m < 0 ? 0 : alg.dim(d + m);
  return n;
}

// Right multiplication by x_k on F_d -> F_{d+1}, block diagonal.
template <class K>
Matrix<K> free_right_gen(const GradedAlgebra<K>& alg, const TwistedFree& f, int d, int k);

// Right multiplication by g on F_d -> F_{d+3}.
template <class K>
Matrix<K> free_right_g(const GradedAlgebra<K>& alg, const TwistedFree& f, int d);

// tower[t] has columns u*s for s running over the basis of S_t; u in F_d.
template <class K>
std::vector<Matrix<K>> right_orbit(const GradedAlgebra<K>& alg, const TwistedFree& f, int d, const Vec<K>& u,
                                   int tmax);

// Map F_source -> F_target; entry (i, j) has degree target_i - source_j and
// acts on column vectors by left multiplication.
template <class K>
struct GradedMap {
  AlgebraPtr<K> alg;
  TwistedFree source, target;
  std::vector<std::vector<Element<K>>> entries;  // [target][source]

  static GradedMap zero(AlgebraPtr<K> alg, TwistedFree source, TwistedFree target);
  int entry_degree(std::size_t i, std::size_t j) const { return target[i] - source[j]; }
  Matrix<K> at_degree(int d) const;
  bool is_zero() const;
};

// Compose: (b o a), a: F -> G, b: G -> H.
template <class K>
GradedMap<K> compose(const GradedMap<K>& b, const GradedMap<K>& a);

// Degreewise subquotient U/W of an ambient free module, valid for d in [lo, hi].
// U(d) and W(d) hold column bases inside F_d with W(d) contained in U(d).
template <class K>
class GradedModule {
 public:
  GradedModule() = default;
  GradedModule(AlgebraPtr<K> alg, TwistedFree ambient, int lo, int hi);

  static GradedModule free(AlgebraPtr<K> alg, TwistedFree twists);
  static GradedModule cokernel(const GradedMap<K>& phi);

  const AlgebraPtr<K>& alg() const { return alg_; }
  const TwistedFree& ambient() const { return ambient_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  int ambient_dim(int d) const { return free_dim(*alg_, ambient_, d); }

  const Matrix<K>& U(int d) const;
  const Matrix<K>& W(int d) const;
  void set(int d, Matrix<K> u, Matrix<K> w);

  int hilbert(int d) const;
  // S_1-stability of U and W across consecutive degrees.
  bool is_closed() const;

  static int default_lo(const TwistedFree& f);
  static int default_hi(const GradedAlgebra<K>& alg, const TwistedFree& f);

 private:
  AlgebraPtr<K> alg_;
  TwistedFree ambient_;
  int lo_ = 0, hi_ = -1;
  std::vector<Matrix<K>> U_, W_;
};

// Right ideal sum a_i S inside O.
template <class K>
GradedModule<K> right_ideal(AlgebraPtr<K> alg, const std::vector<Element<K>>& gens);

template <class K>
GradedModule<K> shift_twist(const GradedModule<K>& m, int s);

// Mg as a submodule of M.
template <class K>
GradedModule<K> g_twist(const GradedModule<K>& m);

struct Invariants {
  long long r = 0, c1 = 0, chi = 0;

  // p(t) = r t(t+1)/2 + (c1 + r) t + chi
  long long hilbert_poly(long long t) const { return r * t * (t + 1) / 2 + (c1 + r) * t + chi; }
  // coefficients of t^2, t, 1
  std::array<Rational, 3> hilbert_coefficients() const {
    return {Rational(r, 2), Rational(r, 2) + Rational(c1 + r), Rational(chi)};
  }
  bool operator==(const Invariants&) const = default;
};

inline long long chi_of_twist(long long m) { return (m + 1) * (m + 2) / 2; }

template <class K>
struct Resolution {
  AlgebraPtr<K> alg;
  int lo = 0, hi = -1;
  // twists[q] describes F_q, the q-th free module.
  std::vector<TwistedFree> twists;
  // generators of M: column q of gens is an element of M's ambient, degree gen_degrees[q]
  std::vector<Vec<K>> generators;
  std::vector<int> generator_degrees;
  // maps[q-1] : F_q -> F_{q-1}
  std::vector<GradedMap<K>> maps;

  Invariants invariants() const;
  // Alternating sum of free dimensions; exact for every d.
  long long hilbert(int d) const;
  // Smallest d0 >= lo with HF(d) = p_M(d) for all d >= d0.
  int regularity() const;
};

template <class K>
Resolution<K> free_resolution(const GradedModule<K>& m, int max_length = 3);

template <class K>
Invariants invariants(const GradedModule<K>& m) {
  return free_resolution(m).invariants();
}

struct CohomologyRow {
  int twist;
  long long h0, h1, h2;
  bool operator==(const CohomologyRow&) const = default;
};

template <class K>
std::vector<CohomologyRow> cohomology_table(const Resolution<K>& res, int from, int to);

struct VanishingReport {
  bool holds = false;
  long long h1_minus1 = 0, h1_minus2 = 0;
  // predicted sizes d_1 = c1 + r - chi and d_{-1} = 2c1 + r - chi
  long long predicted_minus1 = 0, predicted_minus2 = 0;
  std::vector<CohomologyRow> rows;
};

template <class K>
VanishingReport verify_vanishing_condition(const Resolution<K>& res);

// Closed forms on a single line bundle.
inline long long h0_line(long long m) { return m < 0 ? 0 : (m + 1) * (m + 2) / 2; }
inline long long h2_line(long long m) { return h0_line(-3 - m); }

}  // namespace ncplane
