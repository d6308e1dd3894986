#include "ncplane/kronecker/standard.hpp"

#include "ncplane/error.hpp"

namespace ncplane {

Invariants standard_invariants(int type) {
  switch (type) {
    case 1: return {-1, 1, 0};
    case 2: return {0, 1, 1};
    case 3: return {0, 0, -1};
    case 4: return {0, -1, -2};
    case 5: return {-1, -1, -3};
    case 6: return {1, -1, -1};
    case 7: return {1, 1, 2};
  }
  throw Error(ErrorKind::InvalidInput, "standard types are numbered 1..7");
}

namespace {

// Middle homology of a (1,2,1) complex vanishes in all high degrees.
template <class K>
bool exact_at_middle(const KroneckerComplex<K>& k) {
  const GradedAlgebra<K>& alg = *k.alg;
  int D = alg.degree_bound();
  for (int d = std::max(1, D - 3); d < D; ++d) {
    long long ker = static_cast<long long>(k.n) * alg.dim(d) - static_cast<long long>(rank(k.B_at(d)));
    long long im = static_cast<long long>(rank(k.A_at(d)));
    if (ker != im) return false;
  }
  return true;
}

}  // namespace

template <class K>
StandardType classify_standard(const KroneckerComplex<K>& k) {
  StandardType out;
  auto shape = std::make_tuple(k.a, k.n, k.c);
  int t = 0;
  if (shape == std::make_tuple(1, 0, 0)) t = 1;
  else if (shape == std::make_tuple(1, 1, 0)) t = 2;
  else if (shape == std::make_tuple(1, 2, 1)) t = exact_at_middle(k) ? 3 : 0;
  else if (shape == std::make_tuple(0, 1, 1)) t = 4;
  else if (shape == std::make_tuple(0, 0, 1)) t = 5;
  else if (shape == std::make_tuple(0, 2, 1)) t = 6;
  else if (shape == std::make_tuple(1, 2, 0)) t = 7;
  out.type = t;
  if (t) out.expected = standard_invariants(t);
  return out;
}

namespace {

// l_i = sum_j c(j, i) x_j, l'_i = sum_k x(i, k) x_k with sum_i l_i l'_i a relation.
template <class K>
std::optional<std::pair<Matrix<K>, Matrix<K>>> rank_two_relation(const GradedAlgebra<K>& alg) {
  const auto& rel = alg.relations();
  K one = alg.one();
  std::vector<Point<K>> coeffs = plane_points(one, std::size_t(-1));
  for (const auto& lam : coeffs) {
    Matrix<K> r(3, 3);
    for (int m = 0; m < 3; ++m) r = r + lam[m] * rel[m];
    if (rank(r) != 2) continue;
    Matrix<K> c = column_basis(r);
    Matrix<K> x(2, 3);
    for (int k = 0; k < 3; ++k) {
      auto sol = solve(c, r.column(k));
      x(0, k) = (*sol)[0];
      x(1, k) = (*sol)[1];
    }
    return std::make_pair(c, x);
  }
  return std::nullopt;
}

}  // namespace

template <class K>
KroneckerComplex<K> standard_representative(AlgebraPtr<K> alg, int type) {
  K one = alg->one();
  standard_invariants(type);
  auto lin = [&](int rows, int cols) { return zero_linear<K>(rows, cols); };
  switch (type) {
    case 1: return build_complex(alg, 1, 0, 0, lin(0, 1), lin(0, 0));
    case 2: {
      auto A = lin(1, 1);
      A[0](0, 0) = one;
      return build_complex(alg, 1, 1, 0, A, lin(0, 1));
    }
    case 3: {
      auto f = rank_two_relation(*alg);
      if (!f) throw Error(ErrorKind::InvalidInput, "no quadratic relation of rank 2 found");
      auto A = lin(2, 1), B = lin(1, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) {
          B[j](0, i) = f->first(j, i);
          A[j](i, 0) = f->second(i, j);
        }
      return build_complex(alg, 1, 2, 1, A, B);
    }
    case 4: {
      auto B = lin(1, 1);
      B[0](0, 0) = one;
      return build_complex(alg, 0, 1, 1, lin(1, 0), B);
    }
    case 5: return build_complex(alg, 0, 0, 1, lin(0, 0), lin(1, 0));
    case 6: {
      auto B = lin(1, 2);
      B[0](0, 0) = one;
      B[1](0, 1) = one;
      return build_complex(alg, 0, 2, 1, lin(2, 0), B);
    }
    case 7: {
      auto A = lin(2, 1);
      A[0](0, 0) = one;
      A[1](1, 0) = one;
      return build_complex(alg, 1, 2, 0, A, lin(0, 2));
    }
  }
  throw Error(ErrorKind::InvalidInput, "standard types are numbered 1..7");
}

template StandardType classify_standard<Fp>(const KroneckerComplex<Fp>&);
template StandardType classify_standard<Rational>(const KroneckerComplex<Rational>&);
template KroneckerComplex<Fp> standard_representative<Fp>(AlgebraPtr<Fp>, int);
template KroneckerComplex<Rational> standard_representative<Rational>(AlgebraPtr<Rational>, int);

}  // namespace ncplane
