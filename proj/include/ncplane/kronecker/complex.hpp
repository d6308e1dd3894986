#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ncplane/elliptic/point_scheme.hpp"
#include "ncplane/grmod/module.hpp"

namespace ncplane {

// Matrix with entries in S_1, stored as sum_k M[k] x_k.
template <class K>
using LinearMatrix = std::array<Matrix<K>, 3>;

template <class K>
LinearMatrix<K> zero_linear(std::size_t rows, std::size_t cols) {
  return {Matrix<K>(rows, cols), Matrix<K>(rows, cols), Matrix<K>(rows, cols)};
}

// Product of two linear matrices as a matrix over S_2: one coefficient matrix
// per basis element of S_2.
template <class K>
std::vector<Matrix<K>> linear_product(const GradedAlgebra<K>& alg, const LinearMatrix<K>& p, const LinearMatrix<K>& q);

// Left multiplication by a linear matrix, (cols * S_{d-1}) -> (rows * S_d), block (i, j).
template <class K>
Matrix<K> linear_at_degree(const GradedAlgebra<K>& alg, const LinearMatrix<K>& m, int d);

// O(-1)^a --A--> O^n --B--> O(1)^c
template <class K>
struct KroneckerComplex {
  AlgebraPtr<K> alg;
  int a = 0, n = 0, c = 0;
  LinearMatrix<K> A;  // n x a
  LinearMatrix<K> B;  // c x n

  // a S_{d-1} -> n S_d
  Matrix<K> A_at(int d) const { return linear_at_degree(*alg, A, d); }
  // n S_d -> c S_{d+1}
  Matrix<K> B_at(int d) const { return linear_at_degree(*alg, B, d + 1); }
  // A at a point: sum_k A_k p_k (n x a)
  Matrix<K> A_at_point(const Point<K>& p) const;
  Element<K> A_entry(int i, int j) const;
  Element<K> B_entry(int i, int j) const;
  GradedMap<K> A_map() const;
  GradedMap<K> B_map() const;
  Invariants invariants() const { return {n - a - c, a - c, n - 3 * c}; }
};

struct ComplexWitness {
  int row = -1, col = -1;
  std::string entry;  // formatted nonzero entry of B*A
};

// Validates B*A = 0; throws NotAComplex naming the first nonzero entry.
template <class K>
KroneckerComplex<K> build_complex(AlgebraPtr<K> alg, int a, int n, int c, LinearMatrix<K> A, LinearMatrix<K> B);

// First nonzero entry of B*A, if any.
template <class K>
std::optional<ComplexWitness> complex_defect(const KroneckerComplex<K>& k);

// Entries given as linear forms "x - 2*z".
template <class K>
LinearMatrix<K> parse_linear_matrix(const GradedAlgebra<K>& alg, const std::vector<std::vector<std::string>>& rows,
                                    std::size_t rows_expected, std::size_t cols_expected);

enum class MonadVerdict { Monad, NotMonad, Inconclusive };
const char* monad_verdict_name(MonadVerdict v);

struct MonadReport {
  MonadVerdict verdict = MonadVerdict::Inconclusive;
  bool b_surjective = false;
  int b_surjective_degree = -1;  // first d with coker(B)_{d+1} = 0
  bool a_injective_degreewise = false;
  int a_kernel_degree = -1;       // degree of a kernel witness, if found
  int checked_up_to = -1;         // degrees checked for A-injectivity
  bool a_generic_rank_full = false;
  int samples_tried = 0;
  std::string reason;
};

// Sample points used for the generic-rank part of the certificate; empty means
// a default set is computed from the algebra.
template <class K>
MonadReport is_monad(const KroneckerComplex<K>& k, const std::vector<Point<K>>& samples = {});

template <class K>
std::vector<Point<K>> default_monad_samples(const AlgebraPtr<K>& alg);

// ker B / im A degreewise, as a module inside O^n.
template <class K>
GradedModule<K> monad_cohomology(const KroneckerComplex<K>& k, bool require_monad = true);

}  // namespace ncplane
