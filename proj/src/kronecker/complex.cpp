#include "ncplane/kronecker/complex.hpp"

#include "ncplane/error.hpp"

namespace ncplane {

template <class K>
std::vector<Matrix<K>> linear_product(const GradedAlgebra<K>& alg, const LinearMatrix<K>& p, const LinearMatrix<K>& q) {
  std::size_t r = p[0].rows(), s = q[0].cols();
  std::vector<Matrix<K>> out(alg.dim(2), Matrix<K>(r, s));
  for (int j = 0; j < 3; ++j) {
    if (p[j].is_zero()) continue;
    for (int k = 0; k < 3; ++k) {
      if (q[k].is_zero()) continue;
      Matrix<K> pq = p[j] * q[k];
      const Matrix<K>& xk = alg.right_gen(1, k);
      for (int b = 0; b < alg.dim(2); ++b)
        if (!xk(b, j).is_zero()) out[b] = out[b] + xk(b, j) * pq;
    }
  }
  return out;
}

template <class K>
Matrix<K> linear_at_degree(const GradedAlgebra<K>& alg, const LinearMatrix<K>& m, int d) {
  std::size_t rows = m[0].rows(), cols = m[0].cols();
  std::size_t sd = d < 0 ? 0 : alg.dim(d), sd1 = d - 1 < 0 ? 0 : alg.dim(d - 1);
  Matrix<K> out(rows * sd, cols * sd1);
  if (!sd1) return out;
  for (int k = 0; k < 3; ++k) {
    if (m[k].is_zero()) continue;
    const Matrix<K>& l = alg.left_gen(d - 1, k);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        const K& s = m[k](i, j);
        if (s.is_zero()) continue;
        for (std::size_t u = 0; u < sd; ++u)
          for (std::size_t v = 0; v < sd1; ++v)
            if (!l(u, v).is_zero()) out(i * sd + u, j * sd1 + v) += s * l(u, v);
      }
  }
  return out;
}

template <class K>
Matrix<K> KroneckerComplex<K>::A_at_point(const Point<K>& p) const {
  Matrix<K> m(n, a);
  for (int k = 0; k < 3; ++k) m = m + p[k] * A[k];
  return m;
}

template <class K>
Element<K> KroneckerComplex<K>::A_entry(int i, int j) const {
  return alg->linear(A[0](i, j), A[1](i, j), A[2](i, j));
}

template <class K>
Element<K> KroneckerComplex<K>::B_entry(int i, int j) const {
  return alg->linear(B[0](i, j), B[1](i, j), B[2](i, j));
}

template <class K>
GradedMap<K> KroneckerComplex<K>::A_map() const {
  GradedMap<K> m = GradedMap<K>::zero(alg, TwistedFree(a, -1), TwistedFree(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < a; ++j) m.entries[i][j] = A_entry(i, j);
  return m;
}

template <class K>
GradedMap<K> KroneckerComplex<K>::B_map() const {
  GradedMap<K> m = GradedMap<K>::zero(alg, TwistedFree(n, 0), TwistedFree(c, 1));
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < n; ++j) m.entries[i][j] = B_entry(i, j);
  return m;
}

template <class K>
std::optional<ComplexWitness> complex_defect(const KroneckerComplex<K>& k) {
  if (!k.a || !k.c) return std::nullopt;
  auto prod = linear_product(*k.alg, k.B, k.A);
  for (int i = 0; i < k.c; ++i)
    for (int j = 0; j < k.a; ++j) {
      Vec<K> v(prod.size());
      for (std::size_t b = 0; b < prod.size(); ++b) v[b] = prod[b](i, j);
      if (!is_zero_vector(v)) return ComplexWitness{i, j, k.alg->format(k.alg->from_coords(2, v))};
    }
  return std::nullopt;
}

template <class K>
KroneckerComplex<K> build_complex(AlgebraPtr<K> alg, int a, int n, int c, LinearMatrix<K> A, LinearMatrix<K> B) {
  if (a < 0 || n < 0 || c < 0) throw Error(ErrorKind::ShapeMismatch, "negative dimension");
  for (int k = 0; k < 3; ++k) {
    if (A[k].rows() != std::size_t(n) || A[k].cols() != std::size_t(a))
      throw Error(ErrorKind::ShapeMismatch, "A must be n x a");
    if (B[k].rows() != std::size_t(c) || B[k].cols() != std::size_t(n))
      throw Error(ErrorKind::ShapeMismatch, "B must be c x n");
  }
  KroneckerComplex<K> kc{alg, a, n, c, std::move(A), std::move(B)};
  if (auto w = complex_defect(kc))
    throw Error(ErrorKind::NotAComplex, "B*A has nonzero entry (" + std::to_string(w->row) + ", " +
                                            std::to_string(w->col) + ") = " + w->entry);
  return kc;
}

template <class K>
LinearMatrix<K> parse_linear_matrix(const GradedAlgebra<K>& alg, const std::vector<std::vector<std::string>>& rows,
                                    std::size_t rows_expected, std::size_t cols_expected) {
  if (rows.size() != rows_expected) throw Error(ErrorKind::ShapeMismatch, "matrix has wrong number of rows");
  LinearMatrix<K> m = zero_linear<K>(rows_expected, cols_expected);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols_expected) throw Error(ErrorKind::ShapeMismatch, "matrix has wrong number of columns");
    for (std::size_t j = 0; j < cols_expected; ++j) {
      Element<K> e = alg.parse(rows[i][j], 1);
      for (int k = 0; k < 3; ++k) m[k](i, j) = e.c[k];
    }
  }
  return m;
}

const char* monad_verdict_name(MonadVerdict v) {
  switch (v) {
    case MonadVerdict::Monad: return "monad";
    case MonadVerdict::NotMonad: return "not_monad";
    case MonadVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

template <class K>
std::vector<Point<K>> default_monad_samples(const AlgebraPtr<K>& alg) {
  if (alg->spec().family == Family::Polynomial) return plane_points(alg->one(), 64);
  return curve_points(point_scheme(alg), 64);
}

template <class K>
MonadReport is_monad(const KroneckerComplex<K>& k, const std::vector<Point<K>>& samples) {
  const GradedAlgebra<K>& alg = *k.alg;
  int D = alg.degree_bound();
  MonadReport rep;
  // B: coker(B) is generated in degree -1 of O(1)^c, so vanishing in one degree persists
  if (k.c == 0) {
    rep.b_surjective = true;
    rep.b_surjective_degree = 0;
  } else {
    std::vector<long long> coker;
    for (int d = 0; d < D; ++d) {
      long long target = static_cast<long long>(k.c) * alg.dim(d + 1);
      long long cd = target - static_cast<long long>(rank(k.B_at(d)));
      coker.push_back(cd);
      if (cd == 0) {
        rep.b_surjective = true;
        rep.b_surjective_degree = d;
        break;
      }
    }
    if (!rep.b_surjective) {
      std::size_t t = coker.size();
      bool growing = t >= 2 && coker[t - 1] >= coker[t - 2];
      rep.verdict = growing ? MonadVerdict::NotMonad : MonadVerdict::Inconclusive;
      rep.reason = growing ? "B is not surjective: cokernel does not shrink up to the degree bound"
                           : "B-surjectivity undecided within the degree bound";
      return rep;
    }
  }
  // A: degreewise kernel search
  rep.a_injective_degreewise = true;
  if (k.a > 0)
    for (int d = 1; d <= D; ++d) {
      rep.checked_up_to = d;
      if (rank(k.A_at(d)) != static_cast<std::size_t>(k.a) * alg.dim(d - 1)) {
        rep.a_injective_degreewise = false;
        rep.a_kernel_degree = d;
        rep.verdict = MonadVerdict::NotMonad;
        rep.reason = "A has a kernel in degree " + std::to_string(d);
        return rep;
      }
    }
  else
    rep.checked_up_to = D;
  // A: generic rank on the sample points
  if (k.a == 0) {
    rep.a_generic_rank_full = true;
  } else {
    std::vector<Point<K>> pts = samples.empty() ? default_monad_samples(k.alg) : samples;
    for (const auto& p : pts) {
      ++rep.samples_tried;
      if (rank(k.A_at_point(p)) == static_cast<std::size_t>(k.a)) {
        rep.a_generic_rank_full = true;
        break;
      }
    }
  }
  if (!rep.a_generic_rank_full) {
    rep.verdict = MonadVerdict::Inconclusive;
    rep.reason = "no sampled point certifies full generic rank of A";
    return rep;
  }
  rep.verdict = MonadVerdict::Monad;
  return rep;
}

template <class K>
GradedModule<K> monad_cohomology(const KroneckerComplex<K>& k, bool require_monad) {
  if (require_monad) {
    MonadReport rep = is_monad(k);
    if (rep.verdict != MonadVerdict::Monad) throw Error(ErrorKind::NotAMonad, rep.reason);
  }
  const GradedAlgebra<K>& alg = *k.alg;
  int D = alg.degree_bound();
  GradedModule<K> m(k.alg, TwistedFree(k.n, 0), 0, D - 1);
  for (int d = 0; d < D; ++d) {
    Matrix<K> u = k.c ? kernel_matrix(k.B_at(d), alg.one()) : Matrix<K>::identity(k.n * alg.dim(d), alg.one());
    Matrix<K> w = k.a ? column_basis(k.A_at(d)) : Matrix<K>(k.n * alg.dim(d), 0);
    m.set(d, std::move(u), std::move(w));
  }
  return m;
}

#define NCPLANE_INSTANTIATE(K)                                                                                \
  template std::vector<Matrix<K>> linear_product<K>(const GradedAlgebra<K>&, const LinearMatrix<K>&,          \
                                                    const LinearMatrix<K>&);                                  \
  template Matrix<K> linear_at_degree<K>(const GradedAlgebra<K>&, const LinearMatrix<K>&, int);               \
  template struct KroneckerComplex<K>;                                                                        \
  template std::optional<ComplexWitness> complex_defect<K>(const KroneckerComplex<K>&);                       \
  template KroneckerComplex<K> build_complex<K>(AlgebraPtr<K>, int, int, int, LinearMatrix<K>, LinearMatrix<K>); \
  template LinearMatrix<K> parse_linear_matrix<K>(const GradedAlgebra<K>&,                                    \
                                                  const std::vector<std::vector<std::string>>&, std::size_t,  \
                                                  std::size_t);                                               \
  template std::vector<Point<K>> default_monad_samples<K>(const AlgebraPtr<K>&);                              \
  template MonadReport is_monad<K>(const KroneckerComplex<K>&, const std::vector<Point<K>>&);                 \
  template GradedModule<K> monad_cohomology<K>(const KroneckerComplex<K>&, bool);

NCPLANE_INSTANTIATE(Fp)
NCPLANE_INSTANTIATE(Rational)

}  // namespace ncplane
